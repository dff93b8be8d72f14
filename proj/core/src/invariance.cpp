#include "confsym/invariance.hpp"

#include <algorithm>
#include <set>

#include "confsym/errors.hpp"
#include "confsym/parse.hpp"

namespace confsym {

namespace {

const std::vector<std::string> kVariables = {"t", "r", "zeta", "g", "psi", "psis"};

SymbolTable local_table() {
  SymbolTable t = SymbolTable::standard();
  t.declare_coordinate("v");
  t.declare_function("D", 1);
  return t;
}

Expr P(const std::string& s) {
  static const SymbolTable table = local_table();
  return parse(s, table);
}

std::map<std::string, Expr> closed(std::map<std::string, Expr> b) {
  for (int round = 0; round < 8; ++round) {
    bool changed = false;
    for (auto& [k, v] : b) {
      auto others = b;
      others.erase(k);
      Expr w = substitute(v, others);
      if (!(w == v)) {
        v = w;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return b;
}

const Generator* find_generator(const std::vector<Generator>& gens, const std::string& prefix) {
  for (const auto& g : gens)
    if (g.name() == prefix) return &g;
  for (const auto& g : gens)
    if (g.name().rfind(prefix, 0) == 0) return &g;
  return nullptr;
}

const Regime& find_regime(const RepresentationCase& c, const std::string& label) {
  if (label.empty()) return c.regimes.front();
  for (const auto& r : c.regimes)
    if (r.label == label) return r;
  std::string known;
  for (const auto& r : c.regimes) known += (known.empty() ? "" : ", ") + r.label;
  throw UnknownCase("case " + c.id + " has no regime '" + label + "' (known: " + known + ")");
}

struct Bound {
  std::map<std::string, Expr> params;
  std::vector<Generator> gens;
};

Bound bind_case(const RepresentationCase& c, const Regime& r, const std::map<std::string, Expr>& params) {
  std::map<std::string, Expr> merged = params;
  for (const auto& [k, v] : r.bindings) merged[k] = v;
  Bound b;
  b.params = closed(resolve_parameters(c, closed(merged), true));
  b.gens = bind_parameters(c.generators, b.params, r.functions);
  return b;
}

InvarianceEntry conditional_entry(const SchrodingerOperator& S, const Generator& X,
                                  const std::vector<DiffOperator>& aux) {
  InvarianceEntry e;
  e.generator = X.name();
  DiffOperator C = op_commutator(S.op, DiffOperator(X));
  Decomposition d = decompose(C, {S.op});
  e.lambda = d.coeffs.at(0);
  e.remainder = d.remainder;
  if (d.remainder.is_zero()) {
    e.status = Status::Pass;
    return e;
  }
  if (aux.empty()) return e;

  auto used = [&](const RightDivision& rd) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < aux.size(); ++i)
      if (!rd.quotients[i].is_zero()) names.push_back(aux[i].render());
    return names;
  };

  RightDivision rd = right_divide(d.remainder, aux);
  if (rd.remainder.is_zero()) {
    e.status = Status::Conditional;
    e.aux_used = used(rd);
    return e;
  }
  RightDivision rc = right_divide(C, aux);
  RightDivision rs = right_divide(S.op, aux);
  if (rs.remainder.is_zero()) {
    if (rc.remainder.is_zero()) {
      e.status = Status::Conditional;
      e.aux_used = used(rc);
      return e;
    }
  } else {
    Decomposition d2 = decompose(rc.remainder, {rs.remainder});
    if (d2.remainder.is_zero()) {
      e.lambda = d2.coeffs.at(0);
      e.status = Status::Conditional;
      e.aux_used = used(rc);
      return e;
    }
  }
  std::vector<DiffOperator> ideal = aux;
  ideal.push_back(S.op);
  if (!rs.remainder.is_zero() && !(rs.remainder == S.op)) ideal.push_back(rs.remainder);
  std::vector<DiffOperator> consequences;
  for (std::size_t i = 0; i < aux.size(); ++i) {
    consequences.push_back(op_commutator(S.op, aux[i]));
    for (std::size_t j = i + 1; j < aux.size(); ++j) consequences.push_back(op_commutator(aux[i], aux[j]));
  }
  for (const auto& k : consequences) {
    DiffOperator r = right_divide(k, ideal).remainder;
    if (!r.is_zero()) ideal.push_back(r);
  }
  RightDivision ri = right_divide(d.remainder, ideal);
  if (ri.remainder.is_zero()) {
    e.status = Status::Conditional;
    e.aux_used = used(ri);
    return e;
  }
  e.remainder = ri.remainder;
  return e;
}

// Linear algebra over Q(parameters).

struct Reduced {
  std::vector<std::vector<RatFunc>> rows;
  std::vector<std::size_t> pivots;
  bool consistent = true;
};

Reduced rref(std::vector<std::vector<RatFunc>> m, std::size_t ncols) {
  Reduced out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    RatFunc inv = m[r][c].inverse();
    for (auto& x : m[r]) x = x * inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      RatFunc f = m[i][c];
      for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m.size(); ++i)
    for (std::size_t j = ncols; j < m[i].size(); ++j)
      if (!m[i][j].is_zero()) out.consistent = false;
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

std::size_t rank(const std::vector<std::vector<RatFunc>>& vs, std::size_t n) {
  if (vs.empty()) return 0;
  return rref(vs, n).pivots.size();
}

Expr variable(const std::string& v) {
  return (v == "psi" || v == "psis") ? Expr::field(v) : Expr::coordinate(v);
}

std::optional<std::vector<RatFunc>> exponents(const Expr& e) {
  if (e.is_zero() || e.terms().size() != 1) return std::nullopt;
  std::vector<RatFunc> out(kVariables.size());
  for (const auto& f : e.terms()[0].mono) {
    if (!f.atom.is_symbol()) return std::nullopt;
    auto it = std::find(kVariables.begin(), kVariables.end(), f.atom.name);
    if (it == kVariables.end()) return std::nullopt;
    out[static_cast<std::size_t>(it - kVariables.begin())] = f.exponent;
  }
  return out;
}

std::optional<RatFunc> constant_ratio(const Expr& a, const Expr& phi) {
  try {
    Expr q = a / phi;
    if (q.is_zero()) return RatFunc();
    if (!q.is_constant()) return std::nullopt;
    return q.constant_value();
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Row of a determining operator restricted to the variables F still depends on.
struct Row {
  std::map<std::string, Expr> coeff;
  Expr constant;
  std::string name;
  std::size_t size() const { return coeff.size(); }
};

Row restrict(const DeterminingEquation& de, const std::set<std::string>& gone) {
  Row r;
  r.name = de.generator;
  for (const auto& [k, v] : de.op.coeffs())
    if (!gone.count(k) && !v.is_zero()) r.coeff[k] = v;
  r.constant = de.op.multiplier();
  return r;
}

Row combine(const Row& a, const Expr& f, const Row& b) {
  Row out = a;
  for (const auto& [k, v] : b.coeff) {
    Expr w = out.coeff.count(k) ? out.coeff[k] - f * v : -(f * v);
    if (w.is_zero())
      out.coeff.erase(k);
    else
      out.coeff[k] = w;
  }
  out.constant = out.constant - f * b.constant;
  return out;
}

std::size_t var_index(const std::string& v) {
  return static_cast<std::size_t>(std::find(kVariables.begin(), kVariables.end(), v) - kVariables.begin());
}

const std::string& leading_var(const Row& r) {
  const std::string* best = nullptr;
  for (const auto& [k, v] : r.coeff)
    if (!best || var_index(k) < var_index(*best)) best = &k;
  return *best;
}

}  // namespace

SchrodingerOperator schrodinger_operator(SVariant v) {
  switch (v) {
    case SVariant::S0:
      return {v, DiffOperator::parse("2*dzeta*dt - dr*dr")};
    case SVariant::EMMG:
      return {v, DiffOperator::parse("2*dzeta*dt - 4*y/zeta*g*dg*dt - dr*dr")};
    case SVariant::AMMG:
      return {v, DiffOperator::parse("2*dzeta*dt + 2*s/zeta*g*dg*dt - dr*dr")};
    case SVariant::DegenerateRR:
      return {v, DiffOperator::parse("dr*dr")};
    case SVariant::DegenerateZT:
      return {v, DiffOperator::parse("dzeta*dt")};
    case SVariant::Native:
      break;
  }
  throw Unsupported("the native operator is built from a generator set");
}

SchrodingerOperator native_operator(const std::vector<Generator>& gens) {
  const Generator* m0 = find_generator(gens, "M0");
  const Generator* ym = find_generator(gens, "Ym");
  if (!m0 || !ym) throw Unsupported("native operator needs M0 and Ym");
  const Generator* xm1 = find_generator(gens, "Xm1");
  Generator dt("Xm1", {{"t", Expr(-1)}});
  if (!xm1) xm1 = &dt;
  for (const Generator* g : {m0, ym, xm1})
    if (!g->multiplier().is_zero())
      throw Unsupported("native operator: " + g->name() + " carries the multiplier " + g->multiplier().render());
  DiffOperator M(*m0), X(*xm1), Y(*ym);
  DiffOperator S = compose(M, X).scaled(Expr(2)) - compose(Y, Y);
  return {SVariant::Native, S};
}

SchrodingerOperator schrodinger_operator(SVariant v, const std::vector<Generator>& gens) {
  return v == SVariant::Native ? native_operator(gens) : schrodinger_operator(v);
}

BracketResult bracket_S(const SchrodingerOperator& S, const Generator& X) {
  Decomposition d = decompose(op_commutator(S.op, DiffOperator(X)), {S.op});
  return {d.coeffs.at(0), d.remainder};
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Conditional:
      return "conditional";
    case Status::Fail:
      return "fail";
  }
  return "fail";
}

bool InvarianceReport::ok() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.status != Status::Fail; });
}

InvarianceReport check_lie_invariance(const SchrodingerOperator& S, const std::vector<Generator>& gens) {
  InvarianceReport rep;
  rep.variant = S.variant;
  for (const auto& g : gens) rep.entries.push_back(conditional_entry(S, g, {}));
  return rep;
}

InvarianceReport check_conditional_invariance(const SchrodingerOperator& S, const std::vector<Generator>& gens,
                                              const std::vector<DiffOperator>& aux) {
  InvarianceReport rep;
  rep.variant = S.variant;
  for (const auto& a : aux) rep.aux.push_back(a.render());
  for (const auto& g : gens) rep.entries.push_back(conditional_entry(S, g, aux));
  return rep;
}

std::vector<InvarianceReport> check_case(const std::string& case_id, const std::map<std::string, Expr>& params) {
  const auto& c = Registry::instance().find_case(case_id);
  std::vector<InvarianceReport> out;
  for (const auto& regime : c.regimes) {
    Bound b = bind_case(c, regime, params);
    for (const auto& opt : regime.options) {
      SchrodingerOperator S = schrodinger_operator(opt.s, b.gens);
      S.op = S.op.substituted(b.params);
      std::vector<DiffOperator> aux;
      for (const auto& a : opt.aux) aux.push_back(a.substituted(b.params));
      InvarianceReport rep = aux.empty() ? check_lie_invariance(S, b.gens)
                                         : check_conditional_invariance(S, b.gens, aux);
      rep.case_id = c.id;
      rep.regime = regime.label;
      out.push_back(std::move(rep));
    }
  }
  return out;
}

std::string DeterminingEquation::render() const { return "(" + op.render() + ") F = 0"; }

DeterminingEquation determining_equation(const Generator& X, const Expr& lambda) {
  Generator::Coeffs coeffs = X.coeffs();
  const Expr& c = X.multiplier();
  if (!c.is_zero()) {
    coeffs["psi"] = -(c * Expr::field("psi"));
    coeffs["psis"] = -(c * Expr::field("psis"));
  }
  return {X.name(), lambda, Generator(X.name(), std::move(coeffs), c + lambda)};
}

std::vector<DeterminingEquation> determining_system(const std::string& case_id,
                                                    const std::map<std::string, Expr>& params,
                                                    const std::string& regime, std::size_t option) {
  const auto& c = Registry::instance().find_case(case_id);
  const Regime& r = find_regime(c, regime);
  if (option >= r.options.size())
    throw Error("case " + case_id + " regime " + r.label + " has no option " + std::to_string(option));
  Bound b = bind_case(c, r, params);
  const AuxOption& opt = r.options[option];
  SchrodingerOperator S = schrodinger_operator(opt.s, b.gens);
  S.op = S.op.substituted(b.params);
  std::vector<DiffOperator> aux;
  for (const auto& a : opt.aux) aux.push_back(a.substituted(b.params));
  std::vector<DeterminingEquation> out;
  for (const auto& g : b.gens) {
    if (g.coeffs().empty()) continue;
    out.push_back(determining_equation(g, conditional_entry(S, g, aux).lambda));
  }
  return out;
}

Expr clear_denominators(const Expr& e, const std::map<std::string, FunctionDef>& defs) {
  if (defs.empty() || e.is_zero()) return e;
  std::vector<std::pair<Atom, RatFunc>> lowest;
  for (const auto& t : e.terms())
    for (const auto& f : t.mono) {
      if (!defs.count(f.atom.name) || f.atom.kind != Atom::Kind::Function) continue;
      auto it = std::find_if(lowest.begin(), lowest.end(), [&](const auto& p) { return p.first == f.atom; });
      if (it == lowest.end()) {
        lowest.emplace_back(f.atom, f.exponent);
      } else if (!(f.exponent - it->second).is_constant()) {
        throw Unsupported("symbolic exponent on " + f.atom.name);
      } else if ((f.exponent - it->second).constant_value() < Rational(0)) {
        it->second = f.exponent;
      }
    }
  Expr cleared = e;
  for (const auto& [a, ex] : lowest) cleared *= Expr::symbol(a).pow(-ex);
  return substitute_functions(cleared, defs);
}

Expr apply_derivative_rules(const Expr& e, const std::map<std::string, FunctionDef>& rules) {
  std::function<Expr(const Expr&)> walk;
  auto atom = [&](const Atom& a) -> Expr {
    if (a.is_symbol()) return Expr::symbol(a);
    std::vector<Expr> args;
    for (const auto& x : a.arguments()) args.push_back(walk(x));
    if (a.kind == Atom::Kind::Exp) return Expr::exp(args[0]);
    if (a.kind == Atom::Kind::Log) return Expr::log(args[0]);
    auto it = rules.find(a.name);
    if (it == rules.end() || a.orders.size() != 1 || a.orders[0] == 0)
      return Expr::function(a.name, std::move(args), a.orders);
    const FunctionDef& d = it->second;
    Expr body = differentiate(d.body, d.formals.at(0), a.orders[0] - 1);
    return substitute(body, {{d.formals.at(0), args[0]}});
  };
  walk = [&](const Expr& x) {
    Expr out;
    for (const auto& t : x.terms()) {
      Expr term(t.coeff);
      for (const auto& f : t.mono) term *= atom(f.atom).pow(f.exponent);
      out += term;
    }
    return out;
  };
  Expr cur = e;
  for (int i = 0; i < 32; ++i) {
    Expr next = walk(cur);
    if (next == cur) return cur;
    cur = next;
  }
  return cur;
}

Expr PotentialForm::expression() const { return prefactor * Expr::function("f", arguments); }

bool PotentialCheck::ok() const {
  return std::all_of(residuals.begin(), residuals.end(), [](const auto& r) { return r.second.is_zero(); });
}

PotentialCheck evaluate_potential(const PotentialForm& F, const std::vector<DeterminingEquation>& system) {
  auto b = closed(F.bindings);
  std::map<std::string, FunctionDef> fns;
  if (Registry::instance().has_case(F.case_id)) {
    const auto& c = Registry::instance().find_case(F.case_id);
    const Regime& r = find_regime(c, F.regime);
    b = bind_case(c, r, F.bindings).params;
    fns = r.functions;
  }
  Expr f = b.empty() ? F.expression() : substitute(F.expression(), b);
  if (!fns.empty()) f = substitute_functions(f, fns);
  std::map<std::string, FunctionDef> rules;
  for (const auto& [k, d] : F.rules) rules[k] = FunctionDef{d.formals, b.empty() ? d.body : substitute(d.body, b)};
  std::map<std::string, FunctionDef> denoms;
  for (const auto& [k, d] : F.denominators) {
    denoms[k] = FunctionDef{d.formals, b.empty() ? d.body : substitute(d.body, b)};
    rules[k] = FunctionDef{d.formals, differentiate(denoms[k].body, d.formals.at(0))};
  }
  PotentialCheck out;
  out.id = F.id;
  for (const auto& de : system)
    out.residuals.emplace_back(de.generator,
                               clear_denominators(apply_derivative_rules(apply(de.op, f), rules), denoms));
  return out;
}

PotentialCheck verify_potential(const PotentialForm& F, const std::vector<DeterminingEquation>& system) {
  PotentialCheck c = evaluate_potential(F, system);
  for (const auto& [g, r] : c.residuals)
    if (!r.is_zero())
      throw NonzeroResidual("potential " + F.id + ", generator " + g + ": residual " + r.render());
  return c;
}

std::vector<DeterminingEquation> system_for(const PotentialForm& F) {
  return determining_system(F.case_id, F.bindings, F.regime, F.option);
}

PotentialCheck evaluate_potential(const PotentialForm& F) { return evaluate_potential(F, system_for(F)); }

namespace {

const Expr kPhase = P("psi/psis");

PotentialForm form(std::string id, std::string case_id, std::string regime, std::size_t option,
                   std::string summary, std::string condition, std::map<std::string, Expr> bindings,
                   const std::string& prefactor, std::vector<std::string> args) {
  PotentialForm F;
  F.id = std::move(id);
  F.case_id = std::move(case_id);
  F.regime = std::move(regime);
  F.option = option;
  F.summary = std::move(summary);
  F.condition = std::move(condition);
  F.bindings = std::move(bindings);
  F.prefactor = P(prefactor);
  for (const auto& a : args) F.arguments.push_back(P(a));
  F.arguments.push_back(kPhase);
  return F;
}

FunctionDef row0_rule() { return {{"v"}, P("(p01*v*m(v) - 2*y)*v^(-1)*D(v)^(-1)")}; }
FunctionDef row0_denominator() { return {{"v"}, P("p01*v*m(v) - y")}; }

const char* kGeneric = "psi^((x + 2)/x)";

std::vector<PotentialForm> build_potentials() {
  std::vector<PotentialForm> out;
  const std::string ne = "x!=1/2";
  {
    auto F = form("table2-row0", "0", ne, 0, "age1 NMG, m arbitrary, v = t^y/g", "m(v) arbitrary", {},
                  kGeneric, {"log(psi) + x/(2*y)*(log(g) + I(t^y/g))"});
    F.rules["I"] = row0_rule();
    F.denominators["D"] = row0_denominator();
    out.push_back(F);
  }
  const std::string a1 = "((t^(p01 - 2*y)*g)^(1/(2*(p01 - y))))";
  out.push_back(form("table2-row1", "1", ne, 0, "age1 NMG, a = [t^(p01-2y) g]^(1/(2(p01-y)))", "",
                     {}, a1 + "^(-(x + 2))", {a1 + "^x*psi"}));
  out.push_back(form("table2-row2-generic", "2", ne, 0, "age1~ NMG, generic", "p01 != 2*y - k0", {},
                     kGeneric, {}));
  const std::string a2 = "((g*t^(-k0))^(1/(2*(y - k0))))";
  out.push_back(form("table2-row2-nongeneric", "2", ne, 0, "age1~ NMG, a = [g t^(-k0)]^(1/(2(y-k0)))",
                     "p01 = 2*y - k0", {{"p01", P("2*y - k0")}}, a2 + "^(-(x + 2))", {a2 + "^x*psi"}));
  const std::string b = "(t^(-1)*zeta*g^(1/(2*y)))";
  out.push_back(form("table2-row3", "3", ne, 0, "age1 MMG, b = zeta g^(1/(2y))/t", "", {},
                     b + "^(x + 2)", {b + "^(-x)*psi"}));
  out.push_back(form("table2-row4-generic", "4", ne, 0, "age1~ MMG, generic", "k0 != 4*y", {}, kGeneric, {}));
  out.push_back(form("table2-row4-nongeneric", "4", ne, 0, "age1~ MMG, b = zeta g^(1/(2y))/t", "k0 = 4*y",
                     {{"k0", P("4*y")}}, b + "^(x + 2)", {b + "^(-x)*psi"}));
  out.push_back(form("table2-row5", "5", ne, 1, "alt1", "", {}, "t^(-x - 2)",
                     {"zeta^(-s)*g", "t^x*psi"}));
  const std::string c = "((zeta^s*g^(-1))^(1/(s + k0p))*t)";
  out.push_back(form("table2-row6", "6", ne, 1, "alt1~, c = (zeta^s/g)^(1/(s+k0p)) t", "", {},
                     c + "^(-x - 2)", {c + "^x*psi"}));
  const std::string gp = "g^(-(x + 2)/(2*y))";
  const std::string ga = "g^(x/(2*y))*psi";
  out.push_back(form("table2-row7", "7", ne, 1, "sch1 with coupling", "", {}, gp, {ga}));
  out.push_back(form("table2-row8-generic", "8", ne, 1, "sch1~ with coupling, generic", "k0 != 0", {},
                     kGeneric, {}));
  out.push_back(form("table2-row8-nongeneric", "8", ne, 1, "sch1~ with coupling", "k0 = 0",
                     {{"k0", Expr(0)}}, gp, {ga}));

  const std::string kh = "x+k=1/2";
  out.push_back(form("kmod-sch1", "kmod-sch1", kh, 0, "k-modified sch1", "k = 0",
                     {{"x", Expr(Rational(1, 2))}}, "psi^5", {}));
  out.push_back(form("kmod-age1", "kmod-age1", kh, 0, "k-modified age1", "", {},
                     "t^(-4*k/(2*k + 1))*psi^((2*k + 5)/(2*k + 1))", {}));
  out.push_back(form("kmod-alt1-1", "kmod-alt1", kh, 0, "k-modified alt1, first solution", "", {},
                     "t^(-2)*psi", {}));
  out.push_back(form("kmod-alt1-2", "kmod-alt1", kh, 0, "k-modified alt1, second solution", "k = 0",
                     {{"x", Expr(Rational(1, 2))}}, "psi^5", {}));
  return out;
}

std::vector<PotentialForm> build_printed() {
  std::vector<PotentialForm> out;
  const std::string ne = "x!=1/2";
  {
    auto F = form("table2-row0", "0", ne, 0, "as printed", "m(v) arbitrary", {}, kGeneric,
                  {"log(psi) + I(t^y/g)"});
    F.rules["I"] = row0_rule();
    F.denominators["D"] = row0_denominator();
    out.push_back(F);
  }
  const std::string a1 = "((t^(p01 - 2*y)*g)^(1/(2*(p01 - y))))";
  out.push_back(form("table2-row1", "1", ne, 0, "as printed", "", {}, a1 + "^(x + 2)", {a1 + "^x*psi"}));
  const std::string a2 = "((g*t^(-k0))^(1/(2*(y - k0))))";
  out.push_back(form("table2-row2-nongeneric", "2", ne, 0, "as printed", "p01 = 2*y - k0",
                     {{"p01", P("2*y - k0")}}, a2 + "^(x + 2)", {a2 + "^x*psi"}));
  return out;
}

}  // namespace

const std::vector<PotentialForm>& potentials() {
  static const std::vector<PotentialForm> all = build_potentials();
  return all;
}

const std::vector<PotentialForm>& printed_potentials() {
  static const std::vector<PotentialForm> all = build_printed();
  return all;
}

const PotentialForm& find_potential(const std::string& id) {
  for (const auto& p : potentials())
    if (p.id == id) return p;
  std::string known;
  for (const auto& p : potentials()) known += (known.empty() ? "" : ", ") + p.id;
  throw UnknownCase("unknown potential '" + id + "' (known: " + known + ")");
}

Expr age0_condition_residual(bool printed) {
  DiffOperator Q = DiffOperator::parse("2*p01*t^y*((y + 1)*m(t^y/g) + y*t^y/g*m'(t^y/g))*dg - (1 - 2*x)");
  const std::string h = "((y + 1)*m(v) + y*v*m'(v))";
  Expr psi;
  std::map<std::string, FunctionDef> rules;
  if (printed) {
    psi = P("Psi0(t, r, zeta)*(1 - 2*x)/(2*p01)*I(t^y/g)");
    rules["I"] = FunctionDef{{"v"}, P("v^(-2)*D(v)^(-1)")};
  } else {
    psi = P("Psi0(t, r, zeta)*E(t^y/g)");
    rules["E"] = FunctionDef{{"v"}, P("-(1 - 2*x)/(2*p01)*E(v)*v^(-2)*D(v)^(-1)")};
  }
  std::map<std::string, FunctionDef> denoms{{"D", FunctionDef{{"v"}, P(h)}}};
  rules["D"] = FunctionDef{{"v"}, differentiate(denoms["D"].body, "v")};
  return clear_denominators(apply_derivative_rules(apply(Q, psi), rules), denoms);
}

PotentialForm solve_characteristics(const std::vector<DeterminingEquation>& system) {
  std::set<std::string> gone;
  for (bool again = true; again;) {
    again = false;
    for (const auto& de : system) {
      Row r = restrict(de, gone);
      if (r.size() == 1 && r.constant.is_zero()) {
        const std::string& v = r.coeff.begin()->first;
        if (v == "psi" || v == "psis") throw NotMonomial(de.generator + " scales a single field component");
        gone.insert(v);
        again = true;
      }
    }
  }

  std::vector<Row> rows;
  for (const auto& de : system) rows.push_back(restrict(de, gone));
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.size() < b.size(); });

  std::vector<Row> basis;
  for (Row r : rows) {
    for (const auto& piv : basis) {
      const std::string& v = leading_var(piv);
      auto it = r.coeff.find(v);
      if (it == r.coeff.end()) continue;
      Expr f;
      try {
        f = it->second / piv.coeff.at(v);
      } catch (const Error&) {
        throw NotMonomial("cannot eliminate " + v + " from " + r.name);
      }
      r = combine(r, f, piv);
    }
    if (r.coeff.empty()) {
      if (!r.constant.is_zero()) throw IncompatibleSystem(r.name + " reduces to the constant " + r.constant.render());
      continue;
    }
    basis.push_back(r);
  }

  std::vector<std::string> vars;
  for (const auto& v : kVariables)
    if (!gone.count(v)) vars.push_back(v);
  const std::size_t n = vars.size();
  std::vector<std::vector<RatFunc>> m;
  for (const auto& r : basis) {
    const std::string& v0 = leading_var(r);
    Expr phi = r.coeff.at(v0) / variable(v0);
    std::vector<RatFunc> row(n + 1);
    for (std::size_t j = 0; j < n; ++j) {
      auto it = r.coeff.find(vars[j]);
      if (it == r.coeff.end()) continue;
      auto w = constant_ratio(it->second, phi * variable(vars[j]));
      if (!w) throw NotMonomial(r.name + ": coefficient of d" + vars[j] + " is not a constant weight");
      row[j] = *w;
    }
    auto k = constant_ratio(r.constant, phi);
    if (!k) throw NotMonomial(r.name + ": inhomogeneous term is not a constant weight");
    row[n] = -*k;
    m.push_back(std::move(row));
  }

  Reduced red = rref(m, n);
  if (!red.consistent) throw IncompatibleSystem("no scaling prefactor solves the system");
  std::vector<RatFunc> particular(n);
  for (std::size_t i = 0; i < red.pivots.size(); ++i) particular[red.pivots[i]] = red.rows[i][n];

  PotentialForm out;
  out.id = "solved";
  auto mono = [&](const std::vector<RatFunc>& e) {
    Expr x(1);
    for (std::size_t j = 0; j < n; ++j)
      if (!e[j].is_zero()) x *= variable(vars[j]).pow(e[j]);
    return x;
  };
  out.prefactor = mono(particular);
  std::set<std::size_t> pivots(red.pivots.begin(), red.pivots.end());
  for (std::size_t fcol = 0; fcol < n; ++fcol) {
    if (pivots.count(fcol)) continue;
    std::vector<RatFunc> e(n);
    e[fcol] = RatFunc(1);
    for (std::size_t i = 0; i < red.pivots.size(); ++i) e[red.pivots[i]] = -red.rows[i][fcol];
    out.arguments.push_back(mono(e));
  }
  return out;
}

bool equivalent_forms(const PotentialForm& a, const PotentialForm& b) {
  auto collect = [](const PotentialForm& f, std::vector<std::vector<RatFunc>>& args) -> std::optional<std::vector<RatFunc>> {
    for (const auto& x : f.arguments) {
      auto e = exponents(x);
      if (!e) return std::nullopt;
      args.push_back(*e);
    }
    return exponents(f.prefactor);
  };
  auto sub = [](const PotentialForm& f) {
    PotentialForm g = f;
    auto bnd = closed(f.bindings);
    if (bnd.empty()) return g;
    g.prefactor = substitute(f.prefactor, bnd);
    for (auto& x : g.arguments) x = substitute(x, bnd);
    return g;
  };
  PotentialForm A = sub(a), B = sub(b);
  std::vector<std::vector<RatFunc>> va, vb;
  auto pa = collect(A, va);
  auto pb = collect(B, vb);
  if (!pa || !pb) return false;
  const std::size_t n = kVariables.size();
  std::size_t ra = rank(va, n), rb = rank(vb, n);
  auto both = va;
  both.insert(both.end(), vb.begin(), vb.end());
  if (ra != rb || rank(both, n) != ra) return false;
  std::vector<RatFunc> diff(n);
  for (std::size_t j = 0; j < n; ++j) diff[j] = (*pa)[j] - (*pb)[j];
  auto with = va;
  with.push_back(diff);
  return rank(with, n) == ra;
}

}  // namespace confsym
