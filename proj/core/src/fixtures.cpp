#include "confsym/fixtures.hpp"

#include <algorithm>

#include "confsym/errors.hpp"

namespace confsym {

namespace {

SymbolTable fixture_table(const std::vector<std::string>& coords, const std::vector<std::string>& params,
                          const std::map<std::string, int>& functions) {
  SymbolTable t;
  for (const auto& c : coords) t.declare_coordinate(c);
  for (const auto& p : params) t.declare_parameter(p);
  for (const auto& [f, a] : functions) t.declare_function(f, a);
  return t;
}

DerivationFixture make(std::string id, std::string summary, SymbolTable table,
                       std::vector<std::string> sources,
                       const std::vector<std::pair<std::string, std::pair<std::vector<std::string>, std::string>>>& bindings) {
  DerivationFixture f;
  f.id = std::move(id);
  f.summary = std::move(summary);
  f.table = std::move(table);
  f.sources = std::move(sources);
  for (const auto& s : f.sources) f.constraints.push_back(parse(s, f.table));
  for (const auto& [name, def] : bindings) f.bindings[name] = FunctionDef{def.first, parse(def.second, f.table)};
  return f;
}

const std::vector<std::string> kAgeEquations = {
    "p0(zeta)*y*(l(v) + v*l'(v)) + p0(zeta)^2*v^2*(l(v)*m'(v) - m(v)*l'(v)) - p0'(zeta)*m(v)",
    "(2*y - 1)*n(v) + 2*y*v*n'(v) + 2*p0(zeta)*v^2*(n(v)*m'(v) - m(v)*n'(v))",
    "p0'(zeta)*n(v) - p0(zeta)^2*v^2*(l(v)*n'(v) - n(v)*l'(v))",
};

const std::vector<std::string> kAgeNEquations = {
    "y*k0z(zeta)*(k(v) + v*k'(v)) - y*p0(zeta)*(m(v) + v*m'(v)) + zeta*p0'(zeta)*m(v)"
    " - k0z(zeta)*p0(zeta)*v^2*(m(v)*k'(v) - m'(v)*k(v))",
    "2*y*p0(zeta)*(n(v) + v*n'(v)) - p0(zeta)*n(v) - 2*zeta*p0'(zeta)*n(v)"
    " + 2*k0z(zeta)*p0(zeta)*v^2*(n(v)*k'(v) - n'(v)*k(v))",
    "y*p0(zeta)*(l(v) + v*l'(v)) - (p0(zeta) + zeta*p0'(zeta))*l(v)"
    " + k0z(zeta)*p0(zeta)*v^2*(l(v)*k'(v) - l'(v)*k(v)) - k0z'(zeta)*k(v)",
};

const std::vector<std::string> kAltEquations = {
    "n[0,1](v,w) + l(v,w)*n[1,0](v,w) - n(v,w)*l[1,0](v,w)",
    "(s - 1)*l(v,w) - s*v*l[1,0](v,w) - w*l[0,1](v,w) - m[0,1](v,w) + m(v,w)*l[1,0](v,w)"
    " - l(v,w)*m[1,0](v,w)",
    "(s - 1)*n(v,w) - s*v*n[1,0](v,w) - w*n[0,1](v,w) + m(v,w)*n[1,0](v,w) - n(v,w)*m[1,0](v,w)",
    "2*n(v,w) + z(v,w)*l[1,0](v,w) - l(v,w)*z[1,0](v,w)",
    "2*n(v,w) + z(v,w)*l[1,0](v,w) - l(v,w)*z[1,0](v,w) - z[0,1](v,w)",
    "2*m(v,w) + 2*w*l(v,w) - 2*s*v + z(v,w)*n[1,0](v,w) - n(v,w)*z[1,0](v,w)",
    "2*w*n(v,w) - (s + 1)*z(v,w) + s*v*z[1,0](v,w) + w*z[0,1](v,w) + z(v,w)*n[1,0](v,w)"
    " - n(v,w)*z[1,0](v,w)",
};

const std::vector<std::string> kAltNEquations = {
    "(2 - s)*l(v,w) + s*v*l[1,0](v,w) + 2*w*l[0,1](v,w) + k[0,1](v,w) + l(v,w)*k[1,0](v,w)"
    " - k(v,w)*l[1,0](v,w)",
    "(1 - s)*n(v,w) + s*v*n[1,0](v,w) + 2*w*n[0,1](v,w) + n(v,w)*k[1,0](v,w) - k(v,w)*n[1,0](v,w)",
    "s*k(v,w) - s*v*k[1,0](v,w) - w*k[0,1](v,w) - s*m(v,w) + s*v*m[1,0](v,w) + 2*w*m[0,1](v,w)"
    " + m(v,w)*k[1,0](v,w) - k(v,w)*m[1,0](v,w)",
    "(s + 1)*z(v,w) - s*v*z[1,0](v,w) - 2*w*z[0,1](v,w) + z(v,w)*k[1,0](v,w) - k(v,w)*z[1,0](v,w)",
};

std::vector<DerivationFixture> build() {
  std::vector<DerivationFixture> out;
  const std::vector<std::string> zv = {"v", "zeta"};
  const std::vector<std::string> vw = {"v", "w"};
  const std::map<std::string, int> age_fns = {{"l", 1}, {"n", 1}, {"m", 1}, {"p0", 1}};
  const std::map<std::string, int> agen_fns = {{"l", 1}, {"n", 1}, {"m", 1}, {"p0", 1}, {"k", 1}, {"k0z", 1}};
  const std::map<std::string, int> alt_fns = {{"l", 2}, {"n", 2}, {"m", 2}, {"z", 2}, {"k", 2}, {"l1", 1}};

  out.push_back(make("age1-nmg", "age1 commutator system, non-modified mass generator: l = n = 0, p0 constant",
                     fixture_table(zv, {"y", "p01"}, age_fns), kAgeEquations,
                     {{"l", {{"v"}, "0"}}, {"n", {{"v"}, "0"}}, {"p0", {{"zeta"}, "p01"}}}));

  out.push_back(make("age1-mmg",
                     "age1 commutator system, modified mass generator: p0 = -2y/(l0 zeta), l = l0/v, "
                     "n = n0 v^((1-2y)/(2y)), m = c n",
                     fixture_table(zv, {"y", "l0", "n0", "c"}, age_fns), kAgeEquations,
                     {{"p0", {{"zeta"}, "-2*y/(l0*zeta)"}},
                      {"l", {{"v"}, "l0/v"}},
                      {"n", {{"v"}, "n0*v^((1 - 2*y)/(2*y))"}},
                      {"m", {{"v"}, "c*n0*v^((1 - 2*y)/(2*y))"}}}));

  {
    auto eqs = kAgeNEquations;
    eqs.push_back("y*k0z(zeta)*(k(v) + v*k'(v)) - y*p0(zeta)*(m(v) + v*m'(v))"
                  " - k0z(zeta)*p0(zeta)*v^2*(m'(v)*k(v) - m(v)*k'(v))");
    out.push_back(make("age1~-nmg",
                       "age1~ N-commutator system, non-modified mass generator: k = m = 1/v, "
                       "l = n = 0, p0 and k0 constant",
                       fixture_table(zv, {"y", "p01", "k0"}, agen_fns), eqs,
                       {{"p0", {{"zeta"}, "p01"}},
                        {"k0z", {{"zeta"}, "k0"}},
                        {"l", {{"v"}, "0"}},
                        {"n", {{"v"}, "0"}},
                        {"m", {{"v"}, "1/v"}},
                        {"k", {{"v"}, "1/v"}}}));
  }
  {
    auto eqs = kAgeNEquations;
    eqs.push_back("y*k0z(zeta)*(k(v) + v*k'(v)) + p0(zeta)*m(v)");
    out.push_back(make("age1~-mmg",
                       "age1~ N-commutator system, modified mass generator: k = kappa/v, n = m = 0, "
                       "k0 constant, p0 = -2y/(l0 zeta), l = l0/v",
                       fixture_table(zv, {"y", "l0", "k0", "kappa"}, agen_fns), eqs,
                       {{"p0", {{"zeta"}, "-2*y/(l0*zeta)"}},
                        {"k0z", {{"zeta"}, "k0"}},
                        {"l", {{"v"}, "l0/v"}},
                        {"n", {{"v"}, "0"}},
                        {"m", {{"v"}, "0"}},
                        {"k", {{"v"}, "kappa/v"}}}));
  }

  out.push_back(make("alt1", "alt1 commutator system: z = n = 0, l = v l1(w), m = s v - w v l1(w)",
                     fixture_table(vw, {"s"}, alt_fns), kAltEquations,
                     {{"z", {{"v", "w"}, "0"}},
                      {"n", {{"v", "w"}, "0"}},
                      {"l", {{"v", "w"}, "v*l1(w)"}},
                      {"m", {{"v", "w"}, "s*v - w*v*l1(w)"}}}));

  out.push_back(make("alt1~",
                     "alt1~ N-commutator system: k = k0p v, l1 = l0/w on top of the alt1 solution",
                     fixture_table(vw, {"s", "l0", "k0p"}, alt_fns), kAltNEquations,
                     {{"z", {{"v", "w"}, "0"}},
                      {"n", {{"v", "w"}, "0"}},
                      {"l", {{"v", "w"}, "v*l0/w"}},
                      {"m", {{"v", "w"}, "s*v - l0*v"}},
                      {"k", {{"v", "w"}, "k0p*v"}}}));

  out.push_back(make("alt1~-reduced", "reduced alt1~ equation for k and l1: k = k0p v, l1 = l0/w",
                     fixture_table(vw, {"s", "l0", "k0p"}, alt_fns),
                     {"2*v*l1(w) + 2*v*w*l1'(w) + k[0,1](v,w) - k(v,w)*l1(w) + v*l1(w)*k[1,0](v,w)"},
                     {{"k", {{"v", "w"}, "k0p*v"}}, {"l1", {{"w"}, "l0/w"}}}));
  return out;
}

}  // namespace

bool FixtureResult::ok() const {
  return std::all_of(residuals.begin(), residuals.end(), [](const Expr& e) { return e.is_zero(); });
}

const std::vector<DerivationFixture>& fixtures() {
  static const std::vector<DerivationFixture> all = build();
  return all;
}

const DerivationFixture& find_fixture(const std::string& id) {
  for (const auto& f : fixtures())
    if (f.id == id) return f;
  std::string known;
  for (const auto& f : fixtures()) known += (known.empty() ? "" : ", ") + f.id;
  throw UnknownCase("unknown fixture '" + id + "' (known: " + known + ")");
}

FixtureResult evaluate_fixture(const DerivationFixture& f) {
  FixtureResult r;
  r.id = f.id;
  for (const auto& c : f.constraints) r.residuals.push_back(substitute_functions(c, f.bindings));
  return r;
}

FixtureResult verify_derivation_fixture(const std::string& id) {
  FixtureResult r = evaluate_fixture(find_fixture(id));
  for (std::size_t i = 0; i < r.residuals.size(); ++i)
    if (!r.residuals[i].is_zero())
      throw FixtureViolation("fixture " + id + ", equation " + std::to_string(i + 1) +
                             ": residual " + r.residuals[i].render());
  return r;
}

DerivationFixture perturbed(const DerivationFixture& f, const std::string& name, const Rational& q) {
  DerivationFixture out = f;
  auto it = out.bindings.find(name);
  if (it == out.bindings.end()) throw Error("fixture " + f.id + " has no binding for " + name);
  it->second.body = it->second.body + Expr(q) * Expr::coordinate(it->second.formals.front()).pow(RatFunc(Rational(2)));
  return out;
}

}  // namespace confsym
