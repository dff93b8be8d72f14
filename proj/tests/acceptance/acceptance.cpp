// Acceptance run: one verdict line per criterion, with the tolerance and time
// budget it was judged against. Arguments select criteria by name.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "confsym/algebra.hpp"
#include "confsym/errors.hpp"
#include "confsym/fixtures.hpp"
#include "confsym/invariance.hpp"
#include "confsym/numeric.hpp"
#include "confsym/parse.hpp"
#include "confsym/registry.hpp"
#include "properties.hpp"

using namespace confsym;

namespace {

struct Verdict {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  int index;
  std::string name;
  double budget_s;
  std::function<Verdict()> run;
};

Expr E(const std::string& s) { return parse(s); }

const InvarianceEntry& entry(const InvarianceReport& r, const std::string& name) {
  for (const auto& e : r.entries)
    if (e.generator == name) return e;
  throw Error("no entry for " + name);
}

std::string sci(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << v;
  return os.str();
}

Verdict structure_constants() {
  std::ostringstream d;
  bool ok = true;
  for (const char* id : {"sch1-mass", "sch1-zeta"}) {
    const auto& a = Registry::instance().algebra(id);
    auto rep = verify_structure(build_representation(id), a.spec);
    ok = ok && rep.ok();
    d << id << " " << rep.checks.size() - rep.mismatches() << "/" << rep.checks.size() << " brackets exact; ";
  }
  return {ok, d.str()};
}

Verdict conformal_closure() {
  const auto& gens = Registry::instance().algebra("conf3").generators;
  StructureTable t;
  try {
    t = closure_check(gens);
  } catch (const ClosureFailure& e) {
    return {false, e.what()};
  }
  auto w = adjoint_weights(gens, generator_named(gens, "X0"), generator_named(gens, "N"));
  std::set<Weight> nonzero;
  int zeros = 0;
  for (const auto& [n, wt] : w) {
    if (wt.first == 0 && wt.second == 0)
      ++zeros;
    else
      nonzero.insert(wt);
  }
  bool ok = gens.size() == 10 && t.entries.size() == 45 && nonzero.size() == 8 && zeros == 2;
  return {ok, std::to_string(t.entries.size()) + " brackets close with rational constants; weights: " +
                  std::to_string(nonzero.size()) + " distinct nonzero, " + std::to_string(zeros) + " zero"};
}

InvarianceReport conformal_brackets() {
  const auto& all = Registry::instance().algebra("conf3").generators;
  std::vector<Generator> gens;
  for (const auto& n : {"Xm1", "X0", "X1", "Ym", "Yp", "M0", "N", "Vp"}) gens.push_back(generator_named(all, n));
  return check_lie_invariance(schrodinger_operator(SVariant::S0), gens);
}

Verdict bracket_table(const std::string& x1_factor) {
  const auto& all = Registry::instance().algebra("conf3").generators;
  auto rep = conformal_brackets();
  DiffOperator M0(generator_named(all, "M0")), Ym(generator_named(all, "Ym"));
  std::ostringstream d;
  bool ok = true;
  auto want = [&](const std::string& g, const Expr& lambda, const DiffOperator& rem) {
    const auto& e = entry(rep, g);
    bool good = e.lambda == lambda && e.remainder == rem;
    if (!good) d << g << ": lambda " << e.lambda << ", remainder " << e.remainder << " (expected " << rem << "); ";
    ok = ok && good;
  };
  want("X0", E("-1"), {});
  want("X1", E("-2*t"), M0.scaled(E(x1_factor)));
  want("Vp", E("-4*r"), Ym.scaled(E("-4*(x - 1/2)")));
  for (const auto& n : {"Xm1", "Ym", "Yp", "M0", "N"}) want(n, entry(rep, n).lambda, {});
  if (ok) d << "X1 remainder " << x1_factor << "*M0, Vp remainder -4*(x - 1/2)*Ym, others zero";
  return {ok, d.str()};
}

Verdict central_extension() {
  auto sch = build_representation("kmod-sch1~");
  auto alt = build_representation("kmod-alt1~");
  const Expr k = Expr::parameter("k");
  Generator r1 = commutator(generator_named(sch, "X1"), generator_named(sch, "Xm1")) -
                 (generator_named(sch, "X0").scaled(Expr(2)) + generator_named(sch, "Z0").scaled(k));
  Generator r2 = commutator(generator_named(alt, "Vp"), generator_named(alt, "Ym")) -
                 (generator_named(sch, "X0").scaled(Expr(4)) - generator_named(alt, "N").scaled(Expr(2)) +
                  generator_named(alt, "Z0").scaled(Expr(2) * k));
  return {r1.is_zero() && r2.is_zero(),
          "[X1,Xm1] - (2X0 + kZ0) = " + r1.render() + "; [Vp,Ym] - (4X0 - 2N + 2kZ0) = " + r2.render()};
}

Verdict kmod_potentials() {
  std::ostringstream d;
  bool ok = true;
  for (const char* id : {"kmod-sch1", "kmod-age1", "kmod-alt1-1", "kmod-alt1-2"}) {
    bool good = evaluate_potential(find_potential(id)).ok();
    ok = ok && good;
    d << id << (good ? " zero" : " NONZERO") << "; ";
  }
  bool age_breaks = !evaluate_potential(find_potential("kmod-age1"), determining_system("kmod-age1~", {})).ok();
  bool alt_breaks = !evaluate_potential(find_potential("kmod-alt1-1"), determining_system("kmod-alt1~", {})).ok();
  PotentialForm F = find_potential("kmod-age1");
  F.bindings["x"] = Expr(Rational(1, 2));
  bool zero_k = evaluate_potential(F, determining_system("kmod-age1~", F.bindings)).ok();
  ok = ok && age_breaks && alt_breaks && zero_k;
  d << "N added: age1~ " << (age_breaks ? "nonzero" : "ZERO") << ", alt1~ " << (alt_breaks ? "nonzero" : "ZERO")
    << "; k = 0 restores " << (zero_k ? "zero" : "NONZERO");
  return {ok, d.str()};
}

Verdict case_table(bool literal) {
  std::ostringstream d;
  bool ok = true;
  int lie_regimes = 0, conditional_regimes = 0;
  for (int n = 0; n <= 8; ++n) {
    const std::string id = std::to_string(n);
    const auto& reg = Registry::instance();
    if (!verify_structure(build_representation(id), reg.spec_for(reg.find_case(id))).ok()) {
      ok = false;
      d << "case " << id << " structure; ";
    }
    std::map<std::string, bool> any, lie, conditional, unconditional_listed;
    for (const auto& r : check_case(id)) {
      if (literal && !r.ok()) {
        ok = false;
        d << "case " << id << " " << r.regime << " " << to_string(r.variant) << " fails on";
        for (const auto& e : r.entries)
          if (e.status == Status::Fail) d << " " << e.generator;
        d << "; ";
      }
      any[r.regime] = any[r.regime] || r.ok();
      if (r.aux.empty()) unconditional_listed[r.regime] = true;
      if (r.ok() && r.aux.empty()) lie[r.regime] = true;
      if (r.ok() && !r.aux.empty()) conditional[r.regime] = true;
    }
    if (literal) continue;
    for (const auto& [regime, good] : any) {
      bool want_lie = unconditional_listed[regime];
      bool shape = want_lie ? lie[regime] : conditional[regime];
      if (!good || !shape) {
        ok = false;
        d << "case " << id << " " << regime << " has no passing " << (want_lie ? "Lie" : "conditional")
          << " option; ";
      }
      ++(want_lie ? lie_regimes : conditional_regimes);
    }
  }
  if (ok && literal) d << "every registered option of cases 0-8 passes";
  if (ok && !literal)
    d << "cases 0-8: structure exact; " << lie_regimes << " regimes Lie invariant, " << conditional_regimes
      << " conditionally invariant through their aux operators";
  return {ok, d.str()};
}

Verdict potential_table(bool printed) {
  std::ostringstream d;
  bool ok = true;
  const auto& all = printed ? printed_potentials() : potentials();
  std::size_t rows = 0;
  for (const auto& F : all) {
    if (F.id.rfind("table2-", 0) != 0) continue;
    ++rows;
    if (!evaluate_potential(F).ok()) {
      ok = false;
      d << F.id << " nonzero; ";
    }
  }
  if (!age0_condition_residual(printed).is_zero()) {
    ok = false;
    d << "case-0 integral condition nonzero; ";
  }
  if (!printed) {
    for (const char* id : {"table2-row1", "table2-row3", "table2-row5", "table2-row6", "table2-row7"}) {
      const auto& F = find_potential(id);
      PotentialForm S = solve_characteristics(system_for(F));
      S.case_id = F.case_id;
      S.regime = F.regime;
      S.option = F.option;
      if (!equivalent_forms(S, F) || !evaluate_potential(S).ok()) {
        ok = false;
        d << "characteristics differ on " << id << "; ";
      }
    }
  }
  if (ok) d << rows << " rows zero" << (printed ? "" : "; characteristics reproduce rows 1 3 5 6 7");
  return {ok, d.str()};
}

Verdict derivation_fixtures() {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> num(1, 9), den(1, 9), sign(0, 1);
  std::ostringstream d;
  bool ok = true;
  std::size_t perturbations = 0;
  for (const auto& f : fixtures()) {
    if (!evaluate_fixture(f).ok()) {
      ok = false;
      d << f.id << " nonzero; ";
    }
    for (const auto& [name, def] : f.bindings) {
      Rational q(num(rng) * (sign(rng) ? 1 : -1), den(rng));
      q.canonicalize();
      ++perturbations;
      if (evaluate_fixture(perturbed(f, name, q)).ok()) {
        ok = false;
        d << f.id << "/" << name << " survives perturbation by " << q.get_str() << "; ";
      }
    }
  }
  if (ok) d << fixtures().size() << " fixtures zero; " << perturbations << " perturbations all break a constraint";
  return {ok, d.str()};
}

Verdict numeric_oracle() {
  std::ostringstream d;
  DiffOperator S0 = schrodinger_operator(SVariant::S0).op;
  const auto& sch = Registry::instance().algebra("sch1-zeta").generators;
  Expr sol = E("exp(r + t/2 + zeta)");
  auto cube = [](double h) { return Grid::uniform({"t", "r", "zeta"}, 1, 2, h); };

  double e32 = baseline_residual(S0, NumericField::sample(cube(1.0 / 32), sol));
  auto f = NumericField::sample(cube(1.0 / 64), sol);
  double e64 = baseline_residual(S0, f);
  double order = std::log2(e32 / e64);
  bool ok = std::abs(order - 2.0) <= 0.2;
  d << "order " << std::fixed << std::setprecision(3) << order << " (2.0 +- 0.2); ";

  double yp = invariance_residual(S0, generator_named(sch, "Yp"), f, 0.01);
  double x1 = invariance_residual(S0, generator_named(sch, "X1"), f, 0.01, {{"x", 0.5}});
  double broken = invariance_residual(S0, generator_named(sch, "X1"), f, 0.01, {{"x", 1}});
  ok = ok && yp <= 5 * e64 && x1 <= 5 * e64 && broken > 10 * e64;
  d << "baseline " << sci(e64) << ", Yp " << yp / e64 << "x, X1(x=1/2) " << x1 / e64 << "x (<= 5x), X1(x=1) "
    << broken / e64 << "x (> 10x); ";

  auto g = NumericField::sample(Grid({Axis{"zeta", -12, 12, 481}}), E("exp(-zeta^2/2)"));
  double worst = 0;
  for (double m : {-2.0, -1.0, 0.0, 0.5, 2.0}) {
    auto out = mass_transform(g, m);
    worst = std::max(worst, std::abs(out.values[0] - std::complex<double>(std::exp(-m * m / 2), 0)));
  }
  ok = ok && worst <= 1e-6;
  d << "Gaussian transform error " << sci(worst) << " (<= 1e-6)";
  return {ok, d.str()};
}

Verdict property_suites() {
  using namespace confsym::testing;
  std::ostringstream d;
  auto jac = jacobi_suite(20240611, 100);
  auto prod = product_rule_suite(7, 1000);
  auto mixed = mixed_partial_suite(11, 1000);
  auto agree = operator_agreement_suite(13, 100, 1e-8);
  auto again = jacobi_suite(20240611, 100);
  bool deterministic = again.failures == jac.failures && again.trials == jac.trials && again.worst == jac.worst;
  bool ok = jac.ok() && prod.ok() && mixed.ok() && agree.ok() && deterministic;
  auto line = [&](const char* name, const SuiteResult& r) {
    d << name << " " << r.trials - r.failures << "/" << r.trials;
    if (!r.first_failure.empty()) d << " (first failure: " << r.first_failure << ")";
    d << "; ";
  };
  line("jacobi", jac);
  line("product rule", prod);
  line("mixed partials", mixed);
  line("symbolic vs numeric", agree);
  d << "worst relative error " << sci(agree.worst) << " (<= 1e-8); " << (deterministic ? "deterministic" : "NOT deterministic");
  return {ok, d.str()};
}

std::vector<Criterion> criteria() {
  return {
      {1, "structure-constants", 1, structure_constants},
      {2, "conformal-closure", 5, conformal_closure},
      {3, "bracket-table-as-stated", 1, [] { return bracket_table("-2*(x - 1/2)"); }},
      {3, "bracket-table-sign-consistent", 1, [] { return bracket_table("2*(x - 1/2)"); }},
      {4, "central-extension", 1, central_extension},
      {5, "kmod-potentials", 5, kmod_potentials},
      {6, "case-table", 10, [] { return case_table(false); }},
      {6, "case-table-every-listed-option", 10, [] { return case_table(true); }},
      {7, "potential-table", 10, [] { return potential_table(false); }},
      {7, "potential-table-as-printed", 10, [] { return potential_table(true); }},
      {8, "derivation-fixtures", 5, derivation_fixtures},
      {9, "numeric-oracle", 60, numeric_oracle},
      {10, "property-suites", 60, property_suites},
  };
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::string> only(argv + 1, argv + argc);
  auto all = criteria();
  if (only.count("--list")) {
    for (const auto& c : all) std::cout << c.name << "\n";
    return 0;
  }
  for (const auto& name : only)
    if (std::none_of(all.begin(), all.end(), [&](const Criterion& c) { return c.name == name; })) {
      std::cerr << "unknown criterion '" << name << "'\n";
      return 2;
    }
  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.name)) continue;
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs < c.budget_s;
    bool pass = v.ok && in_time;
    failed += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << "  " << std::setw(2) << c.index << " " << std::left << std::setw(32)
              << c.name << std::right << std::fixed << std::setprecision(2) << std::setw(7) << secs << " s < "
              << c.budget_s << " s" << (in_time ? "" : " (over budget)") << "  " << v.detail << std::endl;
    std::cout.unsetf(std::ios::fixed);
  }
  return failed ? 1 : 0;
}
