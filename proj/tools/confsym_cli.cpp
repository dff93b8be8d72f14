#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "confsym/algebra.hpp"
#include "confsym/errors.hpp"
#include "confsym/fixtures.hpp"
#include "confsym/invariance.hpp"
#include "confsym/numeric.hpp"
#include "confsym/parse.hpp"
#include "confsym/registry.hpp"
#include "confsym/repfile.hpp"

using json = nlohmann::ordered_json;
using namespace confsym;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string verb;
  std::string format = "text";
  std::vector<std::string> targets;
  std::vector<std::string> params;
  std::string grid = "1:2:33";
  double eps = 0.01;
  std::uint64_t seed = 1;
  std::string rep_file;
  std::string regime;
  std::size_t option = 0;
  std::vector<std::string> generators;
  std::string op = "S0";
  std::string solution = "exp(r + t/2 + zeta)";
  std::string expect = "invariant";
  bool printed = false;
};

std::string joined(const std::vector<std::string>& v, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::vector<std::string> sorted_ids(std::vector<std::string> ids) {
  std::stable_sort(ids.begin(), ids.end());
  return ids;
}

std::vector<std::string> case_ids() {
  std::vector<std::string> out;
  for (const auto& c : Registry::instance().cases()) out.push_back(c.id);
  return sorted_ids(out);
}

std::vector<std::string> algebra_ids() {
  std::vector<std::string> out;
  for (const auto& a : Registry::instance().algebras()) out.push_back(a.id);
  return sorted_ids(out);
}

std::vector<std::string> potential_ids(bool printed) {
  std::vector<std::string> out;
  for (const auto& p : printed ? printed_potentials() : potentials()) out.push_back(p.id);
  return sorted_ids(out);
}

std::vector<std::string> fixture_ids() {
  std::vector<std::string> out;
  for (const auto& f : fixtures()) out.push_back(f.id);
  return sorted_ids(out);
}

void require_known(const std::string& id, const std::vector<std::string>& known, const std::string& what) {
  if (std::find(known.begin(), known.end(), id) == known.end())
    throw UsageError("unknown " + what + " '" + id + "'; known: " + joined(known));
}

/// Targets, with "all" expanded; an empty list means all.
std::vector<std::string> expand_targets(const std::vector<std::string>& targets, const std::vector<std::string>& known,
                                        const std::string& what) {
  if (targets.empty() || (targets.size() == 1 && targets[0] == "all")) return known;
  for (const auto& t : targets) require_known(t, known, what);
  return targets;
}

std::map<std::string, Expr> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, Expr> out;
  const SymbolTable table = SymbolTable::standard();
  for (const auto& p : raw) {
    auto eq = p.find('=');
    if (eq == std::string::npos) throw UsageError("--param expects NAME=EXPR, got '" + p + "'");
    std::string name = p.substr(0, eq);
    if (table.kind(name) != SymbolTable::Kind::Parameter)
      throw UsageError("'" + name + "' is not a parameter; known: " + joined({table.parameters().begin(), table.parameters().end()}));
    try {
      out[name] = parse(p.substr(eq + 1), table);
    } catch (const ParseError& e) {
      throw UsageError("--param " + name + ": " + e.what());
    }
  }
  return out;
}

json entry_json(const std::string& case_id, const InvarianceEntry& e) {
  return {{"case", case_id},
          {"generator", e.generator},
          {"lambda", e.lambda.render()},
          {"remainder", e.remainder.render()},
          {"status", to_string(e.status)},
          {"aux_used", e.aux_used}};
}

json structure_json(const StructureReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks)
    checks.push_back({{"bracket", "[" + c.a + ", " + c.b + "]"},
                      {"expected", render_combination(c.expected)},
                      {"residual", c.residual.render()},
                      {"ok", c.ok}});
  return {{"ok", rep.ok()}, {"brackets", rep.checks.size()}, {"mismatches", rep.mismatches()}, {"checks", checks}};
}

// ---- verbs ---------------------------------------------------------------

json list(const Options& o) {
  if (o.targets.size() != 1) throw UsageError("list expects one of: algebras, cases, potentials, fixtures");
  const std::string& kind = o.targets[0];
  json items = json::array();
  if (kind == "algebras") {
    for (const auto& id : algebra_ids()) {
      const auto& a = Registry::instance().algebra(id);
      std::vector<std::string> gens;
      for (const auto& g : a.generators) gens.push_back(g.name());
      items.push_back({{"id", id}, {"summary", a.summary}, {"params", a.params}, {"generators", gens}});
    }
  } else if (kind == "cases") {
    for (const auto& id : case_ids()) {
      const auto& c = Registry::instance().find_case(id);
      std::vector<std::string> regimes;
      for (const auto& r : c.regimes) regimes.push_back(r.label);
      items.push_back({{"id", id}, {"algebra", c.algebra}, {"summary", c.summary}, {"params", c.params},
                       {"regimes", regimes}});
    }
  } else if (kind == "potentials") {
    for (bool printed : {false, true})
      for (const auto& id : potential_ids(printed)) {
        const auto& all = printed ? printed_potentials() : potentials();
        const auto& F = *std::find_if(all.begin(), all.end(), [&](const PotentialForm& p) { return p.id == id; });
        items.push_back({{"id", id}, {"printed", printed}, {"case", F.case_id}, {"regime", F.regime},
                         {"condition", F.condition}, {"summary", F.summary}, {"form", F.expression().render()}});
      }
  } else if (kind == "fixtures") {
    for (const auto& id : fixture_ids()) {
      const auto& f = find_fixture(id);
      std::vector<std::string> bindings;
      for (const auto& [name, def] : f.bindings) bindings.push_back(name);
      items.push_back({{"id", id}, {"summary", f.summary}, {"constraints", f.constraints.size()}, {"bindings", bindings}});
    }
  } else {
    throw UsageError("unknown list kind '" + kind + "'; known: algebras, cases, fixtures, potentials");
  }
  return {{"verb", "list"}, {"kind", kind}, {"ok", true}, {"items", items}};
}

json verify_algebra(const Options& o) {
  auto params = parse_params(o.params);
  json algebras = json::array();
  bool ok = true;
  if (!o.rep_file.empty()) {
    if (!o.targets.empty()) throw UsageError("verify-algebra takes either an id or --rep-file");
    RepFile rep = load_repfile(o.rep_file);
    auto gens = bind_parameters(rep.generators, params);
    auto r = verify_structure(gens, rep.spec);
    json j = structure_json(r);
    j["algebra"] = rep.name;
    ok = ok && r.ok();
    algebras.push_back(j);
  } else {
    if (o.targets.empty()) throw UsageError("verify-algebra needs an id or --rep-file; known: " + joined(algebra_ids()));
    std::vector<std::string> known = algebra_ids();
    for (const auto& c : case_ids()) known.push_back(c);
    for (const auto& id : expand_targets(o.targets, known, "algebra or case")) {
      auto gens = build_representation(id, params);
      const auto& reg = Registry::instance();
      AlgebraSpec spec = reg.has_algebra(id) ? reg.algebra(id).spec : reg.spec_for(reg.find_case(id));
      auto r = verify_structure(gens, spec);
      bool partial = reg.has_algebra(id) && reg.algebra(id).partial_table;
      if (partial)
        std::erase_if(r.checks, [&](const BracketCheck& c) {
          return !spec.brackets.count({c.a, c.b}) && !spec.brackets.count({c.b, c.a});
        });
      json j = structure_json(r);
      j["algebra"] = id;
      bool aok = r.ok();
      if (partial) {
        try {
          j["closure"] = {{"ok", true}, {"table", closure_check(gens).render()}};
        } catch (const ClosureFailure& e) {
          j["closure"] = {{"ok", false}, {"error", e.what()}};
          aok = false;
        }
      }
      j["ok"] = aok;
      ok = ok && aok;
      algebras.push_back(j);
    }
  }
  return {{"verb", "verify-algebra"}, {"ok", ok}, {"algebras", algebras}};
}

json case_report(const std::string& id, const std::map<std::string, Expr>& params) {
  const auto& reg = Registry::instance();
  auto structure = verify_structure(build_representation(id, params), reg.spec_for(reg.find_case(id)));
  json regimes = json::array();
  bool ok = structure.ok();
  for (const auto& rep : check_case(id, params)) {
    if (regimes.empty() || regimes.back()["regime"] != rep.regime)
      regimes.push_back({{"regime", rep.regime}, {"ok", false}, {"options", json::array()}});
    std::vector<std::string> aux;
    for (const auto& a : rep.aux) aux.push_back(a);
    json entries = json::array();
    for (const auto& e : rep.entries) entries.push_back(entry_json(id, e));
    regimes.back()["options"].push_back(
        {{"operator", to_string(rep.variant)}, {"aux", aux}, {"ok", rep.ok()}, {"entries", entries}});
    if (rep.ok()) regimes.back()["ok"] = true;
  }
  for (const auto& r : regimes) ok = ok && r["ok"].get<bool>();
  json s = structure_json(structure);
  return {{"case", id}, {"ok", ok}, {"structure", s}, {"regimes", regimes}};
}

json verify_case(const Options& o) {
  auto params = parse_params(o.params);
  auto ids = expand_targets(o.targets, case_ids(), "case");
  std::vector<std::future<json>> jobs;
  for (const auto& id : ids) jobs.push_back(std::async(std::launch::async, case_report, id, params));
  json cases = json::array();
  bool ok = true;
  for (auto& j : jobs) {
    json c = j.get();
    ok = ok && c["ok"].get<bool>();
    cases.push_back(std::move(c));
  }
  return {{"verb", "verify-case"}, {"ok", ok}, {"cases", cases}};
}

const PotentialForm& potential_by_id(const std::string& id, bool printed) {
  const auto& all = printed ? printed_potentials() : potentials();
  for (const auto& p : all)
    if (p.id == id) return p;
  throw UsageError("unknown potential '" + id + "'; known: " + joined(potential_ids(printed)));
}

json residuals_json(const PotentialCheck& c) {
  json out = json::array();
  for (const auto& [g, r] : c.residuals) out.push_back({{"generator", g}, {"residual", r.render()}, {"ok", r.is_zero()}});
  return out;
}

json verify_potential(const Options& o) {
  auto ids = expand_targets(o.targets, potential_ids(o.printed), o.printed ? "printed potential" : "potential");
  json out = json::array();
  bool ok = true;
  for (const auto& id : ids) {
    PotentialForm F = potential_by_id(id, o.printed);
    for (const auto& [k, v] : parse_params(o.params)) F.bindings[k] = v;
    auto c = evaluate_potential(F);
    ok = ok && c.ok();
    out.push_back({{"potential", id}, {"case", F.case_id}, {"regime", F.regime}, {"form", F.expression().render()},
                   {"ok", c.ok()}, {"residuals", residuals_json(c)}});
  }
  return {{"verb", "verify-potential"}, {"ok", ok}, {"potentials", out}};
}

json derive_determining(const Options& o) {
  if (o.targets.size() != 1) throw UsageError("derive-determining expects one case id; known: " + joined(case_ids()));
  require_known(o.targets[0], case_ids(), "case");
  auto sys = determining_system(o.targets[0], parse_params(o.params), o.regime, o.option);
  json eqs = json::array();
  for (const auto& de : sys)
    eqs.push_back({{"generator", de.generator}, {"lambda", de.lambda.render()}, {"operator", de.render()}});
  return {{"verb", "derive-determining"}, {"ok", true}, {"case", o.targets[0]}, {"regime", o.regime},
          {"option", o.option}, {"equations", eqs}};
}

json solve_potential(const Options& o) {
  if (o.targets.size() != 1)
    throw UsageError("solve-potential expects one potential or case id");
  const std::string& id = o.targets[0];
  auto ids = potential_ids(false);
  bool is_potential = std::find(ids.begin(), ids.end(), id) != ids.end();
  if (!is_potential) {
    auto cases = case_ids();
    if (std::find(cases.begin(), cases.end(), id) == cases.end())
      throw UsageError("unknown potential or case '" + id + "'; known: " + joined(ids) + "; " + joined(cases));
  }
  json out = {{"verb", "solve-potential"}, {"target", id}};
  std::vector<DeterminingEquation> sys;
  PotentialForm ref;
  if (is_potential) {
    ref = find_potential(id);
    sys = system_for(ref);
  } else {
    sys = determining_system(id, parse_params(o.params), o.regime, o.option);
  }
  try {
    PotentialForm S = solve_characteristics(sys);
    json args = json::array();
    for (const auto& a : S.arguments) args.push_back(a.render());
    out["form"] = S.expression().render();
    out["prefactor"] = S.prefactor.render();
    out["arguments"] = args;
    if (is_potential) {
      S.case_id = ref.case_id;
      S.regime = ref.regime;
      S.option = ref.option;
    }
    auto check = evaluate_potential(S, sys);
    out["residuals"] = residuals_json(check);
    bool ok = check.ok();
    if (is_potential) {
      bool eq = equivalent_forms(S, ref);
      out["catalogue_form"] = ref.expression().render();
      out["equivalent"] = eq;
      ok = ok && eq;
    }
    out["ok"] = ok;
  } catch (const NotMonomial& e) {
    out["ok"] = false;
    out["error"] = std::string("not monomial: ") + e.what();
  } catch (const IncompatibleSystem& e) {
    out["ok"] = false;
    out["error"] = std::string("incompatible system: ") + e.what();
  }
  return out;
}

Grid parse_grid(const std::string& spec, const std::set<std::string>& coords) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw UsageError("--grid expects LO:HI:N, got '" + spec + "'");
  double lo = 0, hi = 0;
  std::size_t n = 0;
  try {
    lo = std::stod(parts[0]);
    hi = std::stod(parts[1]);
    n = std::stoul(parts[2]);
  } catch (const std::exception&) {
    throw UsageError("--grid expects LO:HI:N, got '" + spec + "'");
  }
  std::vector<Axis> axes;
  for (const auto& c : coords) axes.push_back(Axis{c, lo, hi, n});
  try {
    Grid g(axes);
    g.require_safe_domain();
    return g;
  } catch (const Error& e) {
    throw UsageError(std::string("--grid: ") + e.what());
  }
}

json numeric_check(const Options& o) {
  if (o.targets.size() != 1) throw UsageError("numeric-check expects one algebra or case id");
  std::vector<std::string> known = algebra_ids();
  for (const auto& c : case_ids()) known.push_back(c);
  require_known(o.targets[0], known, "algebra or case");
  if (o.expect != "invariant" && o.expect != "broken") throw UsageError("--expect must be invariant or broken");
  auto params = parse_params(o.params);
  auto gens = build_representation(o.targets[0], params);
  SVariant v;
  try {
    v = svariant_from_string(o.op);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  DiffOperator S = (v == SVariant::Native ? schrodinger_operator(v, gens) : schrodinger_operator(v)).op;
  Expr sol;
  try {
    sol = parse(o.solution);
  } catch (const ParseError& e) {
    throw UsageError(std::string("--solution: ") + e.what());
  }
  std::vector<Generator> chosen;
  if (o.generators.empty()) {
    chosen = gens;
  } else {
    std::vector<std::string> names;
    for (const auto& g : gens) names.push_back(g.name());
    for (const auto& n : o.generators) {
      require_known(n, names, "generator");
      chosen.push_back(generator_named(gens, n));
    }
  }

  const std::set<std::string> all_coords{"t", "r", "zeta", "g"};
  std::set<std::string> coords, needed;
  auto note = [&](const Expr& e) {
    for (const auto& s : e.symbols())
      if (all_coords.count(s)) coords.insert(s);
    for (const auto& p : e.parameters()) needed.insert(p);
    if (!e.function_names().empty())
      throw UsageError("numeric-check needs closed-form coefficients; bind " + joined({e.function_names().begin(), e.function_names().end()}));
  };
  note(sol);
  for (const auto& [m, c] : S.terms()) {
    note(c);
    for (const auto& [var, n] : m) coords.insert(var);
  }
  for (const auto& X : chosen) {
    note(X.multiplier());
    for (const auto& [var, c] : X.coeffs()) {
      note(c);
      coords.insert(var);
    }
  }
  Assignment fixed;
  for (const auto& p : needed) {
    auto it = params.find(p);
    if (it == params.end()) throw UsageError("parameter " + p + " needs a value (--param " + p + "=...)");
    fixed[p] = eval_numeric(it->second, {});
  }
  Grid grid = parse_grid(o.grid, coords);
  auto f = NumericField::sample(grid, sol, fixed);
  double base = baseline_residual(S, f, fixed);
  json checks = json::array();
  bool ok = true;
  for (const auto& X : chosen) {
    json c = {{"generator", X.name()}, {"expect", o.expect}};
    try {
      double res = invariance_residual(S, X, f, o.eps, fixed);
      bool pass = o.expect == "invariant" ? res <= 5 * base : res > 10 * base;
      c["residual"] = res;
      c["ratio"] = base > 0 ? res / base : 0.0;
      c["ok"] = pass;
    } catch (const FlowLeftDomain& e) {
      c["ok"] = false;
      c["error"] = e.what();
    }
    ok = ok && c["ok"].get<bool>();
    checks.push_back(c);
  }
  std::vector<std::string> axes;
  for (const auto& a : grid.axes()) axes.push_back(a.name);
  return {{"verb", "numeric-check"},
          {"ok", ok},
          {"target", o.targets[0]},
          {"operator", o.op},
          {"solution", sol.render()},
          {"grid", {{"axes", axes}, {"lo", grid.axes()[0].lo}, {"hi", grid.axes()[0].hi}, {"n", grid.axes()[0].n},
                    {"h", grid.axes()[0].step()}}},
          {"eps", o.eps},
          {"baseline", base},
          {"checks", checks}};
}

json fixture_check(const Options& o) {
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<int> num(1, 9), den(1, 9), sign(0, 1);
  json out = json::array();
  bool ok = true;
  for (const auto& id : expand_targets(o.targets, fixture_ids(), "fixture")) {
    const auto& f = find_fixture(id);
    auto r = evaluate_fixture(f);
    json residuals = json::array();
    for (const auto& e : r.residuals) residuals.push_back(e.render());
    json perturbations = json::array();
    bool all_broken = true;
    for (const auto& [name, def] : f.bindings) {
      Rational q(num(rng) * (sign(rng) ? 1 : -1), den(rng));
      q.canonicalize();
      bool broken = !evaluate_fixture(perturbed(f, name, q)).ok();
      all_broken = all_broken && broken;
      perturbations.push_back({{"binding", name}, {"q", q.get_str()}, {"broken", broken}});
    }
    bool fok = r.ok() && all_broken;
    ok = ok && fok;
    out.push_back({{"fixture", id}, {"ok", fok}, {"residuals", residuals}, {"perturbations", perturbations}});
  }
  return {{"verb", "fixture-check"}, {"ok", ok}, {"seed", o.seed}, {"fixtures", out}};
}

// ---- text rendering --------------------------------------------------------

std::string verdict(const json& j) { return j["ok"].get<bool>() ? "pass" : "FAIL"; }

void text_structure(std::ostream& os, const json& s, const std::string& indent) {
  os << indent << "structure  " << verdict(s) << " (" << s["brackets"].get<std::size_t>() << " brackets, "
     << s["mismatches"].get<std::size_t>() << " mismatches)\n";
  for (const auto& c : s["checks"])
    if (!c["ok"].get<bool>())
      os << indent << "  " << c["bracket"].get<std::string>() << " expected " << c["expected"].get<std::string>()
         << ", residual " << c["residual"].get<std::string>() << "\n";
}

void render_text(std::ostream& os, const json& r) {
  const std::string verb = r["verb"];
  if (verb == "list") {
    for (const auto& it : r["items"]) {
      os << it["id"].get<std::string>();
      for (const auto& [k, v] : it.items()) {
        if (k == "id") continue;
        os << "  " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
      }
      os << "\n";
    }
    return;
  }
  if (verb == "verify-algebra") {
    for (const auto& a : r["algebras"]) {
      os << "algebra " << a["algebra"].get<std::string>() << "  " << verdict(a) << "\n";
      json listed = a;
      listed["ok"] = a["mismatches"].get<std::size_t>() == 0;
      text_structure(os, listed, "  ");
      if (a.contains("closure")) {
        os << "  closure  " << verdict(a["closure"]) << "\n";
        if (a["closure"].contains("error")) os << "    " << a["closure"]["error"].get<std::string>() << "\n";
      }
    }
  } else if (verb == "verify-case") {
    for (const auto& c : r["cases"]) {
      os << "case " << c["case"].get<std::string>() << "  " << verdict(c) << "\n";
      text_structure(os, c["structure"], "  ");
      for (const auto& reg : c["regimes"]) {
        os << "  regime " << reg["regime"].get<std::string>() << "  " << verdict(reg) << "\n";
        for (const auto& opt : reg["options"]) {
          os << "    option " << opt["operator"].get<std::string>();
          if (!opt["aux"].empty()) os << " aux {" << joined(opt["aux"].get<std::vector<std::string>>()) << "}";
          os << "  " << verdict(opt) << "\n";
          for (const auto& e : opt["entries"]) {
            os << "      " << e["generator"].get<std::string>() << "  lambda=" << e["lambda"].get<std::string>()
               << "  remainder=" << e["remainder"].get<std::string>() << "  " << e["status"].get<std::string>();
            if (!e["aux_used"].empty()) os << " via {" << joined(e["aux_used"].get<std::vector<std::string>>()) << "}";
            os << "\n";
          }
        }
      }
    }
  } else if (verb == "verify-potential") {
    for (const auto& p : r["potentials"]) {
      os << "potential " << p["potential"].get<std::string>() << "  " << verdict(p) << "\n";
      os << "  F = " << p["form"].get<std::string>() << "\n";
      for (const auto& res : p["residuals"])
        os << "  " << res["generator"].get<std::string>() << "  residual=" << res["residual"].get<std::string>() << "\n";
    }
  } else if (verb == "derive-determining") {
    for (const auto& e : r["equations"])
      os << e["generator"].get<std::string>() << "  lambda=" << e["lambda"].get<std::string>() << "\n  "
         << e["operator"].get<std::string>() << "\n";
  } else if (verb == "solve-potential") {
    os << "target " << r["target"].get<std::string>() << "  " << verdict(r) << "\n";
    if (r.contains("error")) os << "  " << r["error"].get<std::string>() << "\n";
    if (r.contains("form")) os << "  F = " << r["form"].get<std::string>() << "\n";
    if (r.contains("catalogue_form"))
      os << "  catalogue F = " << r["catalogue_form"].get<std::string>() << "  equivalent="
         << (r["equivalent"].get<bool>() ? "yes" : "no") << "\n";
    if (r.contains("residuals"))
      for (const auto& res : r["residuals"])
        os << "  " << res["generator"].get<std::string>() << "  residual=" << res["residual"].get<std::string>() << "\n";
  } else if (verb == "numeric-check") {
    os << "operator " << r["operator"].get<std::string>() << " on " << r["solution"].get<std::string>() << "\n";
    os << "grid h=" << r["grid"]["h"].get<double>() << " eps=" << r["eps"].get<double>()
       << " baseline=" << r["baseline"].get<double>() << "\n";
    for (const auto& c : r["checks"]) {
      os << "  " << c["generator"].get<std::string>() << "  expect " << c["expect"].get<std::string>();
      if (c.contains("error"))
        os << "  " << c["error"].get<std::string>();
      else
        os << "  residual=" << c["residual"].get<double>() << "  ratio=" << c["ratio"].get<double>();
      os << "  " << verdict(c) << "\n";
    }
  } else if (verb == "fixture-check") {
    for (const auto& f : r["fixtures"]) {
      os << "fixture " << f["fixture"].get<std::string>() << "  " << verdict(f) << "\n";
      for (const auto& res : f["residuals"]) os << "  residual " << res.get<std::string>() << "\n";
      for (const auto& p : f["perturbations"])
        os << "  perturb " << p["binding"].get<std::string>() << " by " << p["q"].get<std::string>() << "*u^2  "
           << (p["broken"].get<bool>() ? "breaks" : "does NOT break") << "\n";
    }
  }
  os << (r["ok"].get<bool>() ? "all checks pass" : "check failure") << "\n";
}

std::string file_stem(const Options& o) {
  std::string s = o.verb;
  if (!o.targets.empty()) s += "-" + joined(o.targets, "+");
  for (char& ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '+' && ch != '_') ch = '_';
  return s;
}

json run(const Options& o) {
  if (o.verb == "list") return list(o);
  if (o.verb == "verify-algebra") return verify_algebra(o);
  if (o.verb == "verify-case") return verify_case(o);
  if (o.verb == "verify-potential") return verify_potential(o);
  if (o.verb == "derive-determining") return derive_determining(o);
  if (o.verb == "solve-potential") return solve_potential(o);
  if (o.verb == "numeric-check") return numeric_check(o);
  if (o.verb == "fixture-check") return fixture_check(o);
  throw UsageError("unknown verb '" + o.verb + "'");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Symmetry checks for semilinear Schrodinger equations"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--param", o.params, "Parameter override NAME=EXPR (repeatable)");
  };
  struct Verb {
    const char* name;
    const char* help;
  };
  const std::vector<Verb> verbs = {
      {"list", "List algebras, cases, potentials or fixtures"},
      {"verify-algebra", "Check commutation relations of an algebra or case representation"},
      {"verify-case", "Structure and invariance checks for representation cases (default: all)"},
      {"verify-potential", "Apply the determining system to catalogued potentials (default: all)"},
      {"derive-determining", "Print the determining equations of a case"},
      {"solve-potential", "Solve a monomial determining system by characteristics"},
      {"numeric-check", "Finite-difference invariance residuals along generator flows"},
      {"fixture-check", "Substitute solved forms into functional-equation fixtures (default: all)"},
  };
  for (const auto& v : verbs) {
    auto* sub = app.add_subcommand(v.name, v.help);
    common(sub);
    sub->add_option("targets", o.targets, "Target ids");
    sub->callback([&o, name = std::string(v.name)] { o.verb = name; });
    const std::string n = v.name;
    if (n == "verify-algebra") sub->add_option("--rep-file", o.rep_file, "Representation file")->check(CLI::ExistingFile);
    if (n == "verify-potential") sub->add_flag("--printed", o.printed, "Use the forms as originally printed");
    if (n == "derive-determining" || n == "solve-potential") {
      sub->add_option("--regime", o.regime, "Regime label");
      sub->add_option("--option", o.option, "Regime option index");
    }
    if (n == "numeric-check") {
      sub->add_option("--grid", o.grid, "LO:HI:N on every active coordinate");
      sub->add_option("--eps", o.eps, "Flow parameter");
      sub->add_option("--generator", o.generators, "Generator names (repeatable; default all)");
      sub->add_option("--operator", o.op, "Schrodinger operator variant");
      sub->add_option("--solution", o.solution, "Sampled solution");
      sub->add_option("--expect", o.expect, "invariant or broken");
    }
    if (n == "fixture-check") sub->add_option("--seed", o.seed, "Seed for the perturbation rationals");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  json report;
  try {
    report = run(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownCase& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ConstraintViolation& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }

  if (o.format == "json")
    std::cout << report.dump(2) << "\n";
  else
    render_text(std::cout, report);

  if (const char* dir = std::getenv("CONFSYM_REPORT_DIR"); dir && *dir) {
    std::filesystem::create_directories(dir);
    std::ofstream out(std::filesystem::path(dir) / (file_stem(o) + ".json"));
    out << report.dump(2) << "\n";
  }
  return report["ok"].get<bool>() ? 0 : 1;
}
