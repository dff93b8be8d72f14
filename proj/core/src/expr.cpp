#include "confsym/expr.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "confsym/errors.hpp"

namespace confsym {

int symbol_rank(const std::string& name) {
  static const std::map<std::string, int> ranks = {{"t", 0},   {"r", 1},   {"zeta", 2},
                                                   {"g", 3},   {"psi", 4}, {"psis", 5}};
  auto it = ranks.find(name);
  return it == ranks.end() ? 6 : it->second;
}

bool symbol_less(const std::string& a, const std::string& b) {
  int ra = symbol_rank(a), rb = symbol_rank(b);
  if (ra != rb) return ra < rb;
  return a < b;
}

Atom Atom::coordinate(std::string name) {
  Atom a;
  a.kind = Kind::Coordinate;
  a.name = std::move(name);
  return a;
}

Atom Atom::field(std::string name) {
  Atom a;
  a.kind = Kind::Field;
  a.name = std::move(name);
  return a;
}

Atom Atom::function(std::string name, std::vector<int> orders, std::vector<Expr> args) {
  Atom a;
  a.kind = Kind::Function;
  a.name = std::move(name);
  if (orders.empty()) orders.assign(args.size(), 0);
  if (orders.size() != args.size())
    throw DomainError("derivative orders do not match arity of " + a.name);
  a.orders = std::move(orders);
  a.args = std::make_shared<const std::vector<Expr>>(std::move(args));
  return a;
}

Atom Atom::exp(Expr arg) {
  Atom a;
  a.kind = Kind::Exp;
  a.name = "exp";
  a.orders = {0};
  a.args = std::make_shared<const std::vector<Expr>>(std::vector<Expr>{std::move(arg)});
  return a;
}

Atom Atom::log(Expr arg) {
  Atom a;
  a.kind = Kind::Log;
  a.name = "log";
  a.orders = {0};
  a.args = std::make_shared<const std::vector<Expr>>(std::vector<Expr>{std::move(arg)});
  return a;
}

const std::vector<Expr>& Atom::arguments() const {
  static const std::vector<Expr> none;
  return args ? *args : none;
}

int Atom::total_order() const {
  int n = 0;
  for (int o : orders) n += o;
  return n;
}

int compare_atoms(const Atom& a, const Atom& b) {
  if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind) ? -1 : 1;
  if (a.name != b.name) return symbol_less(a.name, b.name) ? -1 : 1;
  if (a.orders != b.orders) return a.orders < b.orders ? -1 : 1;
  const auto& aa = a.arguments();
  const auto& ba = b.arguments();
  if (aa.size() != ba.size()) return aa.size() < ba.size() ? -1 : 1;
  for (std::size_t i = 0; i < aa.size(); ++i)
    if (int c = compare(aa[i], ba[i]); c != 0) return c;
  return 0;
}

bool operator==(const Atom& a, const Atom& b) { return compare_atoms(a, b) == 0; }

int compare_monomials(const Monomial& a, const Monomial& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare_atoms(a[i].atom, b[i].atom); c != 0) return c < 0 ? 1 : -1;
    if (auto c = a[i].exponent <=> b[i].exponent; c != 0) return c < 0 ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() > b.size() ? 1 : -1;
  return 0;
}

namespace {

bool mono_equal(const Monomial& a, const Monomial& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i].exponent == b[i].exponent)) return false;
    if (compare_atoms(a[i].atom, b[i].atom) != 0) return false;
  }
  return true;
}

bool exponent_is_integer(const RatFunc& e) { return e.is_integer(); }

void require_integer_exponent(const Atom& a, const RatFunc& e) {
  if (!exponent_is_integer(e))
    throw Unsupported("non-integer power of " + a.name + "(...) is outside the supported fragment");
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? 1 : j == b.size() ? -1 : compare_atoms(a[i].atom, b[j].atom);
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      out.push_back(b[j++]);
    } else {
      RatFunc e = a[i].exponent + b[j].exponent;
      if (!e.is_zero()) out.push_back(Factor{a[i].atom, e});
      ++i;
      ++j;
    }
  }
  std::size_t exps = 0;
  bool plain = true;
  for (const auto& f : out)
    if (f.atom.kind == Atom::Kind::Exp) {
      ++exps;
      plain = plain && f.exponent.is_one();
    }
  if (exps == 0 || (exps == 1 && plain)) return out;
  Expr arg;
  Monomial rest;
  for (const auto& f : out) {
    if (f.atom.kind == Atom::Kind::Exp)
      arg += f.atom.arguments()[0].scaled(f.exponent);
    else
      rest.push_back(f);
  }
  if (arg.is_zero()) return rest;
  Factor e{Atom::exp(arg), RatFunc(1)};
  auto pos = std::find_if(rest.begin(), rest.end(), [&](const Factor& f) { return compare_atoms(e.atom, f.atom) < 0; });
  rest.insert(pos, std::move(e));
  return rest;
}

Expr single(RatFunc c, Monomial m) {
  std::vector<Term> t;
  if (!c.is_zero()) t.push_back(Term{std::move(c), std::move(m)});
  return Expr::from_terms(std::move(t));
}

Expr factor_expr(const Atom& a, const RatFunc& e) {
  if (e.is_zero()) return Expr(1);
  return single(RatFunc(1), Monomial{Factor{a, e}});
}

std::string render_atom(const Atom& a) {
  std::ostringstream os;
  switch (a.kind) {
    case Atom::Kind::Coordinate:
    case Atom::Kind::Field:
      return a.name;
    case Atom::Kind::Exp:
    case Atom::Kind::Log:
      return a.name + "(" + a.arguments()[0].render() + ")";
    case Atom::Kind::Function: {
      os << a.name;
      int total = a.total_order();
      if (a.orders.size() == 1 && total > 0 && total <= 2) {
        os << std::string(static_cast<std::size_t>(total), '\'');
      } else if (total > 0) {
        os << "[";
        for (std::size_t i = 0; i < a.orders.size(); ++i) os << (i ? "," : "") << a.orders[i];
        os << "]";
      }
      os << "(";
      const auto& args = a.arguments();
      for (std::size_t i = 0; i < args.size(); ++i) os << (i ? ", " : "") << args[i].render();
      os << ")";
      return os.str();
    }
  }
  return a.name;
}

std::string render_factor(const Factor& f) {
  std::string s = render_atom(f.atom);
  if (f.exponent.is_one()) return s;
  if (f.exponent.is_integer()) return s + "^" + f.exponent.constant_value().get_str();
  return s + "^(" + f.exponent.render() + ")";
}

void collect_symbols(const Expr& e, std::set<std::string>& out);

void collect_atom_symbols(const Atom& a, std::set<std::string>& out) {
  if (a.is_symbol()) {
    out.insert(a.name);
    return;
  }
  for (const auto& arg : a.arguments()) collect_symbols(arg, out);
}

void collect_symbols(const Expr& e, std::set<std::string>& out) {
  for (const auto& t : e.terms())
    for (const auto& f : t.mono) collect_atom_symbols(f.atom, out);
}

void collect_params(const Expr& e, std::set<std::string>& out) {
  for (const auto& t : e.terms()) {
    for (const auto& v : t.coeff.variables()) out.insert(v);
    for (const auto& f : t.mono) {
      for (const auto& v : f.exponent.variables()) out.insert(v);
      for (const auto& arg : f.atom.arguments()) collect_params(arg, out);
    }
  }
}

void collect_functions(const Expr& e, std::set<std::string>& out) {
  for (const auto& t : e.terms())
    for (const auto& f : t.mono) {
      if (f.atom.kind == Atom::Kind::Function) out.insert(f.atom.name);
      for (const auto& arg : f.atom.arguments()) collect_functions(arg, out);
    }
}

bool atom_depends_on(const Atom& a, const std::string& s) {
  if (a.is_symbol()) return a.name == s;
  for (const auto& arg : a.arguments())
    if (arg.depends_on(s)) return true;
  return false;
}

}  // namespace

Expr::Expr(const RatFunc& c) {
  if (!c.is_zero()) terms_.push_back(Term{c, {}});
}

Expr Expr::symbol(const Atom& atom) { return factor_expr(atom, RatFunc(1)); }
Expr Expr::coordinate(const std::string& name) { return symbol(Atom::coordinate(name)); }
Expr Expr::field(const std::string& name) { return symbol(Atom::field(name)); }
Expr Expr::parameter(const std::string& name) { return Expr(RatFunc::parameter(name)); }

Expr Expr::function(const std::string& name, std::vector<Expr> args, std::vector<int> orders) {
  return symbol(Atom::function(name, std::move(orders), std::move(args)));
}

Expr Expr::exp(const Expr& arg) {
  if (arg.is_zero()) return Expr(1);
  return symbol(Atom::exp(arg));
}

Expr Expr::log(const Expr& arg) {
  if (arg.is_constant() && arg.constant_value().is_one()) return Expr();
  return symbol(Atom::log(arg));
}

Expr Expr::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return compare_monomials(a.mono, b.mono) > 0;
  });
  Expr out;
  for (auto& t : terms) {
    if (t.coeff.is_zero()) continue;
    if (!out.terms_.empty() && mono_equal(out.terms_.back().mono, t.mono)) {
      out.terms_.back().coeff += t.coeff;
      if (out.terms_.back().coeff.is_zero()) out.terms_.pop_back();
    } else {
      out.terms_.push_back(std::move(t));
    }
  }
  return out;
}

bool Expr::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.empty());
}

RatFunc Expr::constant_value() const {
  if (terms_.empty()) return RatFunc();
  if (!is_constant()) throw DomainError("expression is not constant: " + render());
  return terms_[0].coeff;
}

bool Expr::depends_on(const std::string& s) const {
  for (const auto& t : terms_)
    for (const auto& f : t.mono)
      if (atom_depends_on(f.atom, s)) return true;
  return false;
}

std::set<std::string> Expr::symbols() const {
  std::set<std::string> out;
  collect_symbols(*this, out);
  return out;
}

std::set<std::string> Expr::parameters() const {
  std::set<std::string> out;
  collect_params(*this, out);
  return out;
}

std::set<std::string> Expr::function_names() const {
  std::set<std::string> out;
  collect_functions(*this, out);
  return out;
}

Expr Expr::operator-() const {
  Expr e = *this;
  for (auto& t : e.terms_) t.coeff = -t.coeff;
  return e;
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  Expr out;
  out.terms_.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    int c = i == a.terms_.size()   ? -1
            : j == b.terms_.size() ? 1
                                   : compare_monomials(a.terms_[i].mono, b.terms_[j].mono);
    if (c > 0) {
      out.terms_.push_back(a.terms_[i++]);
    } else if (c < 0) {
      out.terms_.push_back(b.terms_[j++]);
    } else {
      RatFunc s = a.terms_[i].coeff + b.terms_[j].coeff;
      if (!s.is_zero()) out.terms_.push_back(Term{s, a.terms_[i].mono});
      ++i;
      ++j;
    }
  }
  return out;
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr Expr::scaled(const RatFunc& c) const {
  if (c.is_zero()) return Expr();
  Expr e = *this;
  for (auto& t : e.terms_) t.coeff = t.coeff * c;
  return e;
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  if (a.is_constant()) return b.scaled(a.terms_[0].coeff);
  if (b.is_constant()) return a.scaled(b.terms_[0].coeff);
  std::vector<Term> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) terms.push_back(Term{ta.coeff * tb.coeff, mono_mul(ta.mono, tb.mono)});
  return Expr::from_terms(std::move(terms));
}

Expr Expr::inverse() const {
  if (is_zero()) throw DomainError("division by zero");
  if (terms_.size() != 1)
    throw Unsupported("division by a sum containing coordinates: " + render());
  const Term& t = terms_[0];
  Monomial m;
  m.reserve(t.mono.size());
  for (const auto& f : t.mono) {
    if (f.atom.kind == Atom::Kind::Exp)
      m.push_back(Factor{Atom::exp(-f.atom.arguments()[0]), f.exponent});
    else
      m.push_back(Factor{f.atom, -f.exponent});
  }
  return Expr::from_terms({Term{t.coeff.inverse(), std::move(m)}});
}

Expr operator/(const Expr& a, const Expr& b) { return a * b.inverse(); }

Expr Expr::pow(const RatFunc& e) const {
  if (e.is_zero()) return Expr(1);
  if (e.is_integer()) {
    long n = e.constant_value().get_num().get_si();
    Expr base = n < 0 ? inverse() : *this;
    unsigned long m = static_cast<unsigned long>(n < 0 ? -n : n);
    if (base.terms_.size() == 1) {
      const Term& t = base.terms_[0];
      Monomial mono;
      for (const auto& f : t.mono) {
        if (f.atom.kind == Atom::Kind::Exp)
          mono.push_back(Factor{Atom::exp(f.atom.arguments()[0].scaled(RatFunc(static_cast<long>(m)))), f.exponent});
        else
          mono.push_back(Factor{f.atom, f.exponent * RatFunc(static_cast<long>(m))});
      }
      return Expr::from_terms({Term{t.coeff.pow(static_cast<int>(m)), std::move(mono)}});
    }
    Expr out(1);
    while (m) {
      if (m & 1u) out = out * base;
      m >>= 1u;
      if (m) base = base * base;
    }
    return out;
  }
  if (is_zero()) return Expr();
  if (terms_.size() != 1)
    throw Unsupported("non-integer power of a sum: (" + render() + ")^(" + e.render() + ")");
  const Term& t = terms_[0];
  if (!t.coeff.is_one())
    throw Unsupported("non-integer power of a coefficient: (" + render() + ")^(" + e.render() + ")");
  Monomial mono;
  for (const auto& f : t.mono) {
    if (f.atom.kind == Atom::Kind::Exp) {
      mono.push_back(Factor{Atom::exp(f.atom.arguments()[0].scaled(e)), f.exponent});
      continue;
    }
    RatFunc ne = f.exponent * e;
    if (f.atom.kind == Atom::Kind::Function || f.atom.kind == Atom::Kind::Log)
      require_integer_exponent(f.atom, ne);
    if (!ne.is_zero()) mono.push_back(Factor{f.atom, ne});
  }
  return Expr::from_terms({Term{RatFunc(1), std::move(mono)}});
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
    if (!mono_equal(a.terms_[i].mono, b.terms_[i].mono)) return false;
  }
  return true;
}

int compare(const Expr& a, const Expr& b) {
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare_monomials(a.terms_[i].mono, b.terms_[i].mono); c != 0) return c;
    if (auto c = a.terms_[i].coeff <=> b.terms_[i].coeff; c != 0) return c < 0 ? -1 : 1;
  }
  if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size() ? -1 : 1;
  return 0;
}

std::string Expr::render() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    RatFunc c = t.coeff;
    bool neg = c.renders_negative();
    if (neg) c = -c;
    bool leading = first && !neg;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (t.mono.empty()) {
      os << c.render(!leading && !c.numerator().is_monomial());
      continue;
    }
    bool star = false;
    if (!c.is_one()) {
      os << c.render(!c.numerator().is_monomial());
      star = true;
    }
    for (const auto& f : t.mono) {
      if (star) os << "*";
      os << render_factor(f);
      star = true;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << e.render(); }

Expr differentiate(const Expr& e, const std::string& var) {
  Expr out;
  for (const auto& t : e.terms()) {
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      const Factor& f = t.mono[i];
      if (!atom_depends_on(f.atom, var)) continue;
      Monomial rest;
      rest.reserve(t.mono.size() - 1);
      for (std::size_t j = 0; j < t.mono.size(); ++j)
        if (j != i) rest.push_back(t.mono[j]);
      Expr df;
      switch (f.atom.kind) {
        case Atom::Kind::Coordinate:
        case Atom::Kind::Field:
          df = factor_expr(f.atom, f.exponent - RatFunc(1)).scaled(f.exponent);
          break;
        case Atom::Kind::Function: {
          const auto& args = f.atom.arguments();
          Expr chain;
          for (std::size_t k = 0; k < args.size(); ++k) {
            Expr da = differentiate(args[k], var);
            if (da.is_zero()) continue;
            auto orders = f.atom.orders;
            ++orders[k];
            chain += da * Expr::function(f.atom.name, args, orders);
          }
          df = chain * factor_expr(f.atom, f.exponent - RatFunc(1)).scaled(f.exponent);
          break;
        }
        case Atom::Kind::Exp:
          df = differentiate(f.atom.arguments()[0], var) * factor_expr(f.atom, f.exponent).scaled(f.exponent);
          break;
        case Atom::Kind::Log: {
          const Expr& u = f.atom.arguments()[0];
          df = differentiate(u, var) * u.inverse() *
               factor_expr(f.atom, f.exponent - RatFunc(1)).scaled(f.exponent);
          break;
        }
      }
      out += df * single(t.coeff, std::move(rest));
    }
  }
  return out;
}

Expr differentiate(const Expr& e, const std::string& var, int times) {
  Expr out = e;
  for (int i = 0; i < times && !out.is_zero(); ++i) out = differentiate(out, var);
  return out;
}

namespace {

Expr subst_ratfunc(const RatFunc& c, const std::map<std::string, Expr>& pb,
                   const std::map<std::string, RatFunc>& constant_pb, bool all_constant) {
  bool touched = false;
  for (const auto& v : c.variables())
    if (pb.count(v)) touched = true;
  if (!touched) return Expr(c);
  if (all_constant) return Expr(c.substitute(constant_pb));
  auto poly_expr = [&](const Poly& p) {
    Expr out;
    for (const auto& [m, q] : p.terms()) {
      Expr t{RatFunc(q)};
      for (const auto& [n, e] : m) {
        auto it = pb.find(n);
        t *= (it != pb.end() ? it->second : Expr::parameter(n)).pow(RatFunc(e));
      }
      out += t;
    }
    return out;
  };
  return poly_expr(c.numerator()) / poly_expr(c.denominator());
}

struct Substituter {
  const std::map<std::string, Expr>& bindings;
  std::map<std::string, Expr> pb;
  std::map<std::string, RatFunc> constant_pb;
  bool all_constant = true;

  RatFunc exponent(const RatFunc& e) const {
    Expr v = subst_ratfunc(e, pb, constant_pb, all_constant);
    if (!v.is_constant()) throw Unsupported("exponent would depend on coordinates: " + v.render());
    return v.constant_value();
  }

  Expr atom(const Atom& a) const {
    switch (a.kind) {
      case Atom::Kind::Coordinate:
      case Atom::Kind::Field: {
        auto it = bindings.find(a.name);
        return it != bindings.end() ? it->second : Expr::symbol(a);
      }
      case Atom::Kind::Function: {
        std::vector<Expr> args;
        for (const auto& x : a.arguments()) args.push_back(expr(x));
        return Expr::function(a.name, std::move(args), a.orders);
      }
      case Atom::Kind::Exp:
        return Expr::exp(expr(a.arguments()[0]));
      case Atom::Kind::Log:
        return Expr::log(expr(a.arguments()[0]));
    }
    return Expr::symbol(a);
  }

  Expr expr(const Expr& e) const {
    Expr out;
    for (const auto& t : e.terms()) {
      Expr term = subst_ratfunc(t.coeff, pb, constant_pb, all_constant);
      for (const auto& f : t.mono) term *= atom(f.atom).pow(exponent(f.exponent));
      out += term;
    }
    return out;
  }
};

}  // namespace

Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings) {
  Substituter s{bindings, {}, {}, true};
  for (const auto& [k, v] : bindings) {
    if (v.depends_on(k) || v.parameters().count(k))
      throw CyclicSubstitution("binding for " + k + " contains " + k);
    s.pb.emplace(k, v);
    if (v.is_constant())
      s.constant_pb.emplace(k, v.constant_value());
    else
      s.all_constant = false;
  }
  return s.expr(e);
}

namespace {

struct FunctionSubstituter {
  const std::map<std::string, FunctionDef>& defs;

  Expr atom(const Atom& a) const {
    if (a.kind == Atom::Kind::Coordinate || a.kind == Atom::Kind::Field) return Expr::symbol(a);
    std::vector<Expr> args;
    for (const auto& x : a.arguments()) args.push_back(expr(x));
    if (a.kind == Atom::Kind::Exp) return Expr::exp(args[0]);
    if (a.kind == Atom::Kind::Log) return Expr::log(args[0]);
    auto it = defs.find(a.name);
    if (it == defs.end()) return Expr::function(a.name, std::move(args), a.orders);
    const FunctionDef& def = it->second;
    if (def.formals.size() != args.size())
      throw DomainError("arity mismatch substituting " + a.name);
    Expr body = def.body;
    for (std::size_t k = 0; k < args.size(); ++k) body = differentiate(body, def.formals[k], a.orders[k]);
    std::map<std::string, Expr> b;
    for (std::size_t k = 0; k < args.size(); ++k) b.emplace(def.formals[k], args[k]);
    Substituter s{b, {}, {}, true};
    return s.expr(body);
  }

  Expr expr(const Expr& e) const {
    Expr out;
    for (const auto& t : e.terms()) {
      Expr term(t.coeff);
      for (const auto& f : t.mono) term *= atom(f.atom).pow(f.exponent);
      out += term;
    }
    return out;
  }
};

double lookup(const Assignment& values, const std::string& name) {
  auto it = values.find(name);
  if (it == values.end()) throw MissingBinding("no value bound for " + name);
  return it->second;
}

double eval_ratfunc(const RatFunc& c, const Assignment& values) {
  if (c.is_constant()) return c.constant_value().get_d();
  return c.evaluate([&](const std::string& n) { return lookup(values, n); });
}

double power(double base, double ex, bool integral) {
  if (integral || ex == std::floor(ex)) return std::pow(base, ex);
  if (base < 0) throw DomainError("negative base with non-integer exponent");
  return std::pow(base, ex);
}

}  // namespace

Expr substitute_functions(const Expr& e, const std::map<std::string, FunctionDef>& defs) {
  return FunctionSubstituter{defs}.expr(e);
}

FunctionImpl univariate(std::function<double(int order, double u)> f) {
  return [f = std::move(f)](const std::vector<int>& orders, const std::vector<double>& args) {
    return f(orders.at(0), args.at(0));
  };
}

double eval_numeric(const Expr& e, const Assignment& values, const FunctionImpls& funcs) {
  double sum = 0;
  for (const auto& t : e.terms()) {
    double v = eval_ratfunc(t.coeff, values);
    for (const auto& f : t.mono) {
      double ex = eval_ratfunc(f.exponent, values);
      bool integral = f.exponent.is_integer();
      switch (f.atom.kind) {
        case Atom::Kind::Coordinate:
        case Atom::Kind::Field:
          v *= power(lookup(values, f.atom.name), ex, integral);
          break;
        case Atom::Kind::Exp:
          v *= std::exp(eval_numeric(f.atom.arguments()[0], values, funcs));
          break;
        case Atom::Kind::Log: {
          double u = eval_numeric(f.atom.arguments()[0], values, funcs);
          if (u <= 0) throw DomainError("log of a non-positive value");
          v *= power(std::log(u), ex, integral);
          break;
        }
        case Atom::Kind::Function: {
          auto it = funcs.find(f.atom.name);
          if (it == funcs.end()) throw MissingBinding("no implementation for function " + f.atom.name);
          std::vector<double> args;
          for (const auto& a : f.atom.arguments()) args.push_back(eval_numeric(a, values, funcs));
          v *= power(it->second(f.atom.orders, args), ex, integral);
          break;
        }
      }
    }
    sum += v;
  }
  return sum;
}

}  // namespace confsym
