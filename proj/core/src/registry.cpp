#include "confsym/registry.hpp"

#include <algorithm>

#include "confsym/errors.hpp"
#include "confsym/parse.hpp"

namespace confsym {

namespace {

Generator G(const std::string& name, const std::string& src) { return Generator::parse(name, src); }
DiffOperator Op(const std::string& src) { return DiffOperator::parse(src); }
Expr E(const std::string& src) { return parse(src); }

std::vector<Generator> pick(const std::map<std::string, Generator>& pool,
                            const std::vector<std::string>& names) {
  std::vector<Generator> out;
  for (const auto& n : names) out.push_back(pool.at(n));
  return out;
}

// Zeta representation of the conformal algebra, with the k-modified X1, V+
// and the central generator.
std::map<std::string, Generator> zeta_pool() {
  std::map<std::string, Generator> p;
  p["Xm1"] = G("Xm1", "-dt");
  p["X0"] = G("X0", "-t*dt - 1/2*r*dr - x/2");
  p["X1"] = G("X1", "-t^2*dt - t*r*dr - 1/2*r^2*dzeta - x*t");
  p["Ym"] = G("Ym", "-dr");
  p["Yp"] = G("Yp", "-t*dr - r*dzeta");
  p["M0"] = G("M0", "-dzeta");
  p["N"] = G("N", "-t*dt + zeta*dzeta");
  p["D"] = G("D", "-t*dt - r*dr - zeta*dzeta - x");
  p["Vm"] = G("Vm", "-zeta*dr - r*dt");
  p["Vp"] = G("Vp", "-2*t*r*dt - 2*zeta*r*dzeta - (r^2 + 2*zeta*t)*dr - 2*x*r");
  p["W"] = G("W", "-zeta^2*dzeta - zeta*r*dr - 1/2*r^2*dt - x*zeta");
  p["X1k"] = G("X1", "-t^2*dt - t*r*dr - 1/2*r^2*dzeta - (x + k)*t");
  p["Vpk"] = G("Vp", "-2*t*r*dt - 2*zeta*r*dzeta - (r^2 + 2*zeta*t)*dr - 2*(x + k)*r");
  p["X0k"] = G("X0", "-t*dt - 1/2*r*dr - (x + k)/2");
  p["Z0"] = G("Z0", "-1");
  return p;
}

std::map<std::string, Generator> coupling_pool() {
  std::map<std::string, Generator> p;
  p["Xm1"] = G("Xm1", "-dt");
  p["X0"] = G("X0", "-t*dt - 1/2*r*dr - y*g*dg - x/2");
  p["Ym"] = G("Ym", "-dr");
  p["M0"] = G("M0", "-dzeta");
  p["Yp"] = G("Yp", "-t*dr - r*dzeta");
  p["X1m"] = G("X1", "-t^2*dt - t*r*dr - 1/2*r^2*dzeta - p01*t^(y + 1)*m(t^y/g)*dg - x*t");
  p["X1p"] = G("X1", "-t^2*dt - t*r*dr - 1/2*r^2*dzeta - p01*t*g*dg - x*t");
  p["N"] = G("N", "-t*dt + zeta*dzeta - k0*g*dg");
  p["M0mmg"] = G("M0", "-dzeta + 2*y/zeta*g*dg");
  p["Ypmmg"] = G("Yp", "-t*dr - r*dzeta + 2*y/zeta*r*g*dg");
  p["X1mmg"] = G("X1", "-t^2*dt - t*r*dr - 1/2*r^2*dzeta + y/zeta*r^2*g*dg - x*t");
  p["Ypmmgh"] = G("Yp", "-t*dr - r*dzeta + 2*y/zeta*(r*g + h0*t*g^((2*y - 1)/(2*y)))*dg");
  p["D"] = G("D", "-t*dt - r*dr - zeta*dzeta - s*g*dg - x");
  p["M0alt"] = G("M0", "-dzeta - l0/zeta*g*dg");
  p["Ypalt"] = G("Yp", "-t*dr - r*dzeta - l0/zeta*r*g*dg");
  p["X1alt"] = G("X1", "-t^2*dt - t*r*dr - 1/2*r^2*dzeta - (l0/(2*zeta)*r^2 + (s - l0)*t)*g*dg - x*t");
  p["Vpalt"] = G("Vp", "-2*t*r*dt - 2*zeta*r*dzeta - (r^2 + 2*zeta*t)*dr - 2*s*r*g*dg - 2*x*r");
  p["Nalt"] = G("N", "-t*dt + zeta*dzeta - k0p*g*dg");
  return p;
}

Regime lie(const std::string& label, std::map<std::string, Expr> bindings, SVariant s) {
  Regime r;
  r.label = label;
  r.bindings = std::move(bindings);
  r.options.push_back(AuxOption{{}, s});
  return r;
}

Regime conditional(const std::string& label, std::vector<AuxOption> options) {
  Regime r;
  r.label = label;
  r.options = std::move(options);
  return r;
}

const std::map<std::string, Expr> kHalf = {{"x", Expr(Rational(1, 2))}};

std::map<std::string, Expr> half_with(const std::string& p, const Expr& v) {
  auto b = kHalf;
  b[p] = v;
  return b;
}

std::vector<RepresentationCase> build_cases() {
  auto cp = coupling_pool();
  auto zp = zeta_pool();
  std::vector<RepresentationCase> out;

  const std::vector<std::string> age = {"X0", "X1m", "Ym", "Yp", "M0"};
  const DiffOperator dz = Op("dzeta");

  {
    RepresentationCase c;
    c.id = "0";
    c.algebra = "age1";
    c.summary = "NMG, L = Q = 0, P = p01 t^(y+1) m(t^y/g), m arbitrary";
    c.params = {"x", "y", "p01"};
    c.functions = {"m"};
    c.generators = pick(cp, age);
    Regime half = lie("x=1/2", kHalf, SVariant::S0);
    half.bindings = kHalf;
    half.functions["m"] = FunctionDef{{"v"}, E("m0") * Expr::coordinate("v").pow(parse_constant("-(y + 1)/y"))};
    c.regimes.push_back(half);
    c.regimes.push_back(conditional(
        "x!=1/2",
        {AuxOption{{Op("2*p01*t^y*((y + 1)*m(t^y/g) + y*t^y/g*m'(t^y/g))*dg - (1 - 2*x)")}, SVariant::S0},
         AuxOption{{dz}, SVariant::DegenerateRR}}));
    out.push_back(c);
  }

  auto nmg_p = [&](const std::string& id, bool with_n) {
    RepresentationCase c;
    c.id = id;
    c.algebra = with_n ? "age1~" : "age1";
    c.summary = with_n ? "NMG, L = Q = 0, P = p01 t g, K = k0 g" : "NMG, L = Q = 0, P = p01 t g";
    c.params = {"x", "y", "p01"};
    std::vector<std::string> names = {"X0", "X1p", "Ym", "Yp", "M0"};
    if (with_n) {
      c.params.push_back("k0");
      names.push_back("N");
    }
    c.generators = pick(cp, names);
    c.regimes.push_back(lie("x=1/2", half_with("p01", Expr(0)), SVariant::S0));
    c.regimes.push_back(conditional(
        "x!=1/2", {AuxOption{{Op("2*p01*g*dg + (2*x - 1)")}, SVariant::S0},
                   AuxOption{{dz}, SVariant::DegenerateRR}}));
    return c;
  };
  out.push_back(nmg_p("1", false));
  out.push_back(nmg_p("2", true));

  auto mmg = [&](const std::string& id, bool with_n) {
    RepresentationCase c;
    c.id = id;
    c.algebra = with_n ? "age1~" : "age1";
    c.summary = with_n ? "MMG, L = -2y g/zeta, Q = -2y g r/zeta, P = -y g r^2/zeta, K = k0 g"
                       : "MMG, L = -2y g/zeta, Q = -2y g r/zeta, P = -y g r^2/zeta";
    c.params = {"x", "y"};
    std::vector<std::string> names = {"X0", "X1mmg", "Ym", "Ypmmg", "M0mmg"};
    if (with_n) {
      c.params.push_back("k0");
      names.push_back("N");
    }
    c.generators = pick(cp, names);
    c.regimes.push_back(lie("x=1/2", kHalf, SVariant::EMMG));
    DiffOperator aux = Op("dzeta - 2*y/zeta*g*dg");
    c.regimes.push_back(conditional(
        "x!=1/2", {AuxOption{{aux}, SVariant::EMMG}, AuxOption{{aux}, SVariant::S0}}));
    return c;
  };
  out.push_back(mmg("3", false));
  out.push_back(mmg("4", true));

  {
    RepresentationCase c;
    c.id = "3a";
    c.algebra = "age1";
    c.summary = "MMG without X1, Q = -2y (r g + h0 t g^((2y-1)/(2y)))/zeta, h0 arbitrary";
    c.params = {"x", "y", "h0"};
    c.generators = pick(cp, {"X0", "Ym", "Ypmmgh", "M0mmg"});
    c.regimes.push_back(conditional("any x", {AuxOption{{Op("dzeta - 2*y/zeta*g*dg")}, SVariant::EMMG}}));
    out.push_back(c);
  }

  auto alt = [&](const std::string& id, bool with_n, bool with_x1) {
    RepresentationCase c;
    c.id = id;
    c.algebra = with_n ? "alt1~" : "alt1";
    c.params = {"x", "s", "l0"};
    std::vector<std::string> names = {"D", "Ym", "Ypalt", "M0alt"};
    if (with_x1) {
      names.insert(names.begin() + 1, "X1alt");
      names.push_back("Vpalt");
    }
    if (with_n) {
      c.params.push_back("k0p");
      names.push_back("Nalt");
    }
    c.generators = pick(cp, names);
    if (with_x1) {
      c.summary = "L = l0 g/zeta, Q = l0 r g/zeta, P = l0 r^2 g/(2 zeta) + (s - l0) t g, F = 2 s r g";
      c.constraints.push_back(Constraint{E("l0"), E("s"), false});
    } else {
      c.summary = "without X1 and V+, L = l0 g/zeta, Q = l0 r g/zeta, l0 arbitrary";
    }
    if (with_n) {
      c.summary += ", K = k0p g";
      c.constraints.push_back(Constraint{E("k0p + s"), E("2*y"), true});
    }
    c.regimes.push_back(lie("x=1/2", kHalf, SVariant::Native));
    c.regimes.push_back(conditional(
        "x!=1/2", {AuxOption{{Op("dzeta + l0/zeta*g*dg"), Op("dr")}, SVariant::DegenerateZT},
                   AuxOption{{Op("dzeta + l0/zeta*g*dg"), Op("dr")}, SVariant::Native}}));
    return c;
  };
  out.push_back(alt("5", false, true));
  out.push_back(alt("5a", false, false));
  out.push_back(alt("6", true, true));

  auto sch = [&](const std::string& id, bool with_n) {
    RepresentationCase c;
    c.id = id;
    c.algebra = with_n ? "sch1~" : "sch1";
    c.summary = with_n ? "L = Q = 0, P = 2y t g, K = k0 g" : "L = Q = 0, P = 2y t g";
    c.params = {"x", "y"};
    std::vector<std::string> names = {"Xm1", "X0", "X1p", "Ym", "Yp", "M0"};
    if (with_n) {
      c.params.push_back("k0");
      names.push_back("N");
    }
    c.generators = pick(cp, names);
    c.constraints.push_back(Constraint{E("p01"), E("2*y"), false});
    c.regimes.push_back(conditional(
        "x=1/2", {AuxOption{{Op("dg")}, SVariant::S0}, AuxOption{{dz}, SVariant::DegenerateRR}}));
    c.regimes.back().bindings = kHalf;
    c.regimes.push_back(conditional(
        "x!=1/2", {AuxOption{{dz}, SVariant::DegenerateRR},
                   AuxOption{{Op("4*y*g*dg + (2*x - 1)")}, SVariant::S0}}));
    return c;
  };
  out.push_back(sch("7", false));
  out.push_back(sch("8", true));

  auto kmod = [&](const std::string& id, const std::string& algebra,
                  std::vector<std::string> names, const std::string& summary) {
    RepresentationCase c;
    c.id = id;
    c.algebra = algebra;
    c.summary = summary;
    c.params = {"x", "k"};
    c.generators = pick(zp, names);
    c.regimes.push_back(lie("x+k=1/2", {{"k", E("1/2 - x")}}, SVariant::S0));
    return c;
  };
  const std::string ks = "k-modified X1 = ... - (x+k) t, central Z0";
  out.push_back(kmod("kmod-sch1", "sch1", {"Xm1", "X0", "X1k", "Ym", "Yp", "M0", "Z0"}, ks));
  out.push_back(kmod("kmod-sch1~", "sch1~", {"Xm1", "X0", "X1k", "Ym", "Yp", "M0", "N", "Z0"}, ks));
  out.push_back(kmod("kmod-age1", "age1", {"X0", "X1k", "Ym", "Yp", "M0", "Z0"}, ks));
  out.push_back(kmod("kmod-age1~", "age1~", {"X0", "X1k", "Ym", "Yp", "M0", "N", "Z0"}, ks));
  out.push_back(kmod("kmod-alt1", "alt1", {"D", "X1k", "Ym", "Yp", "M0", "Vpk", "Z0"},
                     ks + ", V+ = ... - 2(x+k) r"));
  out.push_back(kmod("kmod-alt1~", "alt1~", {"D", "X1k", "Ym", "Yp", "M0", "Vpk", "N", "Z0"},
                     ks + ", V+ = ... - 2(x+k) r"));
  out.push_back(kmod("kmod-sch1-absorbed", "sch1", {"Xm1", "X0k", "X1k", "Ym", "Yp", "M0"},
                     "k-modified X1 with the central term absorbed: X0 = ... - (x+k)/2"));
  return out;
}

std::vector<std::string> names_of(const std::vector<Generator>& gens) {
  std::vector<std::string> out;
  for (const auto& g : gens) out.push_back(g.name());
  return out;
}

std::vector<AlgebraEntry> build_algebras() {
  auto zp = zeta_pool();
  std::vector<AlgebraEntry> out;
  auto add = [&](const std::string& id, const std::string& family, const std::string& summary,
                 std::vector<Generator> gens, std::vector<std::string> params) {
    AlgebraEntry a;
    a.id = id;
    a.summary = summary;
    a.params = std::move(params);
    a.generators = std::move(gens);
    a.spec = standard_spec(family, names_of(a.generators));
    out.push_back(std::move(a));
  };
  add("sch1-mass", "sch1", "Schrodinger algebra with fixed mass",
      {G("Xm1", "-dt"), G("X0", "-t*dt - 1/2*r*dr - x/2"),
       G("X1", "-t^2*dt - t*r*dr - mass/2*r^2 - x*t"), G("Ym", "-dr"), G("Yp", "-t*dr - mass*r"),
       G("M0", "-mass")},
      {"x", "mass"});
  add("sch1-zeta", "sch1", "Schrodinger algebra, mass traded for zeta",
      pick(zp, {"Xm1", "X0", "X1", "Ym", "Yp", "M0"}), {"x"});
  add("sch1~-zeta", "sch1~", "Schrodinger algebra with N, zeta form",
      pick(zp, {"Xm1", "X0", "X1", "Ym", "Yp", "M0", "N"}), {"x"});
  add("age1-zeta", "age1", "ageing algebra, zeta form", pick(zp, {"X0", "X1", "Ym", "Yp", "M0"}),
      {"x"});
  add("age1~-zeta", "age1~", "ageing algebra with N, zeta form",
      pick(zp, {"X0", "X1", "Ym", "Yp", "M0", "N"}), {"x"});
  add("alt1-zeta", "alt1", "alt algebra, zeta form",
      pick(zp, {"D", "X1", "Ym", "Yp", "M0", "Vp"}), {"x"});
  add("alt1~-zeta", "alt1~", "alt algebra with N, zeta form",
      pick(zp, {"D", "X1", "Ym", "Yp", "M0", "Vp", "N"}), {"x"});
  add("conf3", "conf3", "complexified conformal algebra, ten generators",
      pick(zp, {"Xm1", "X0", "X1", "Ym", "Yp", "M0", "N", "Vm", "Vp", "W"}), {"x"});
  out.back().partial_table = true;
  return out;
}

}  // namespace

std::string to_string(SVariant v) {
  switch (v) {
    case SVariant::Native: return "native";
    case SVariant::S0: return "S0";
    case SVariant::EMMG: return "S-EMMG";
    case SVariant::AMMG: return "S-AMMG";
    case SVariant::DegenerateRR: return "S-degenerate-dr2";
    case SVariant::DegenerateZT: return "S-degenerate-dzeta-dt";
  }
  return "?";
}

SVariant svariant_from_string(const std::string& s) {
  for (SVariant v : {SVariant::Native, SVariant::S0, SVariant::EMMG, SVariant::AMMG,
                     SVariant::DegenerateRR, SVariant::DegenerateZT})
    if (to_string(v) == s) return v;
  throw Error("unknown Schrodinger operator variant '" + s + "'");
}

std::string Constraint::render() const { return lhs.render() + " = " + rhs.render(); }

AlgebraSpec standard_spec(const std::string& algebra, const std::vector<std::string>& generators,
                          bool central) {
  AlgebraSpec spec;
  spec.name = algebra;
  spec.generators = generators;
  auto has = [&](const std::string& n) {
    return std::find(generators.begin(), generators.end(), n) != generators.end();
  };
  auto put = [&](const std::string& a, const std::string& b, Combination rhs) {
    if (has(a) && has(b)) spec.set(a, b, std::move(rhs));
  };

  const std::vector<std::pair<std::string, int>> xs = {{"Xm1", -1}, {"X0", 0}, {"X1", 1}};
  const std::vector<std::pair<std::string, Rational>> ys = {{"Ym", Rational(-1, 2)},
                                                            {"Yp", Rational(1, 2)}};
  auto x_named = [&](int n) -> std::string {
    for (const auto& [name, i] : xs)
      if (i == n) return name;
    return "";
  };
  auto y_named = [&](const Rational& m) -> std::string {
    for (const auto& [name, i] : ys)
      if (i == m) return name;
    return "";
  };
  for (const auto& [a, n] : xs)
    for (const auto& [b, np] : xs) {
      if (n <= np) continue;
      std::string target = x_named(n + np);
      if (!target.empty() && has(target)) put(a, b, {{target, Expr(n - np)}});
    }
  for (const auto& [a, n] : xs)
    for (const auto& [b, m] : ys) {
      std::string target = y_named(Rational(n) + m);
      if (!target.empty() && has(target)) put(a, b, {{target, Expr(Rational(n, 2) - m)}});
    }
  put("Yp", "Ym", {{"M0", Expr(1)}});

  put("Xm1", "N", {{"Xm1", Expr(-1)}});
  put("X1", "N", {{"X1", Expr(1)}});
  put("Yp", "N", {{"Yp", Expr(1)}});
  put("M0", "N", {{"M0", Expr(1)}});

  put("D", "X1", {{"X1", Expr(-1)}});
  put("D", "M0", {{"M0", Expr(1)}});
  put("D", "Vp", {{"Vp", Expr(-1)}});
  put("D", "Ym", {{"Ym", Expr(1)}});
  put("X1", "Ym", {{"Yp", Expr(1)}});
  put("Vp", "M0", {{"Yp", Expr(2)}});
  put("Vp", "Yp", {{"X1", Expr(2)}});
  if (has("D"))
    put("Vp", "Ym", {{"D", Expr(2)}});
  else if (has("X0") && has("N"))
    put("Vp", "Ym", {{"X0", Expr(4)}, {"N", Expr(-2)}});

  if (central && has("Z0")) {
    const Expr k = Expr::parameter("k");
    if (has("X1") && has("Xm1")) {
      auto c = spec.expected("X1", "Xm1");
      c.emplace_back("Z0", k);
      spec.set("X1", "Xm1", c);
    }
    if (has("Vp") && has("Ym")) {
      auto c = spec.expected("Vp", "Ym");
      c.emplace_back("Z0", Expr(2) * k);
      spec.set("Vp", "Ym", c);
    }
  }
  return spec;
}

const Registry& Registry::instance() {
  static const Registry r;
  return r;
}

Registry::Registry() : algebras_(build_algebras()), cases_(build_cases()) {}

const AlgebraEntry& Registry::algebra(const std::string& id) const {
  for (const auto& a : algebras_)
    if (a.id == id) return a;
  std::string known;
  for (const auto& a : algebras_) known += (known.empty() ? "" : ", ") + a.id;
  throw UnknownCase("unknown algebra '" + id + "' (known: " + known + ")");
}

bool Registry::has_algebra(const std::string& id) const {
  return std::any_of(algebras_.begin(), algebras_.end(), [&](const auto& a) { return a.id == id; });
}

const RepresentationCase& Registry::find_case(const std::string& id) const {
  for (const auto& c : cases_)
    if (c.id == id) return c;
  std::string known;
  for (const auto& c : cases_) known += (known.empty() ? "" : ", ") + c.id;
  throw UnknownCase("unknown case '" + id + "' (known: " + known + ")");
}

bool Registry::has_case(const std::string& id) const {
  return std::any_of(cases_.begin(), cases_.end(), [&](const auto& c) { return c.id == id; });
}

AlgebraSpec Registry::spec_for(const RepresentationCase& c) const {
  return standard_spec(c.algebra, names_of(c.generators), true);
}

std::map<std::string, Expr> resolve_parameters(const RepresentationCase& c,
                                               const std::map<std::string, Expr>& params,
                                               bool enforce) {
  std::map<std::string, Expr> out = params;
  for (const auto& con : c.constraints) {
    if (con.informational) continue;
    const auto syms = con.lhs.parameters();
    if (syms.size() != 1 || con.lhs != Expr::parameter(*syms.begin())) continue;
    const std::string& p = *syms.begin();
    Expr value = substitute(con.rhs, out);
    auto it = out.find(p);
    if (it == out.end()) {
      out[p] = value;
    } else if (enforce && !(it->second - value).is_zero()) {
      throw ConstraintViolation("case " + c.id + " requires " + con.render() + " (got " + p +
                                " = " + it->second.render() + ")");
    }
  }
  return out;
}

std::vector<Generator> bind_parameters(const std::vector<Generator>& gens,
                            const std::map<std::string, Expr>& bindings,
                            const std::map<std::string, FunctionDef>& functions) {
  std::vector<Generator> out;
  for (const auto& g : gens) {
    Generator h = bindings.empty() ? g : g.substituted(bindings);
    if (!functions.empty()) h = h.with_functions(functions);
    h.set_name(g.name());
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<Generator> build_representation(const std::string& id,
                                            const std::map<std::string, Expr>& params,
                                            bool enforce) {
  const Registry& reg = Registry::instance();
  if (reg.has_case(id)) {
    const auto& c = reg.find_case(id);
    return bind_parameters(c.generators, resolve_parameters(c, params, enforce));
  }
  if (reg.has_algebra(id)) return bind_parameters(reg.algebra(id).generators, params);
  reg.find_case(id);
  return {};
}

const Generator& generator_named(const std::vector<Generator>& gens, const std::string& name) {
  for (const auto& g : gens)
    if (g.name() == name) return g;
  throw Error("no generator named '" + name + "'");
}

}  // namespace confsym
