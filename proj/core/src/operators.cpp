#include "confsym/operators.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>

#include "confsym/errors.hpp"

namespace confsym {

int order_of(const MultiIndex& m) {
  int n = 0;
  for (const auto& [s, o] : m) n += o;
  return n;
}

int compare_multi_index(const MultiIndex& a, const MultiIndex& b) {
  int oa = order_of(a), ob = order_of(b);
  if (oa != ob) return oa < ob ? -1 : 1;
  std::set<std::string, SymbolOrder> names;
  for (const auto& [s, o] : a) names.insert(s);
  for (const auto& [s, o] : b) names.insert(s);
  for (const auto& s : names) {
    auto ia = a.find(s), ib = b.find(s);
    int ea = ia == a.end() ? 0 : ia->second;
    int eb = ib == b.end() ? 0 : ib->second;
    if (ea != eb) return ea < eb ? -1 : 1;
  }
  return 0;
}

namespace {

std::string render_derivs(const MultiIndex& m) {
  std::vector<std::pair<std::string, int>> v(m.begin(), m.end());
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return symbol_less(a.first, b.first); });
  std::string s;
  for (const auto& [n, o] : v) {
    if (!s.empty()) s += "*";
    s += "d" + n;
    if (o != 1) s += "^" + std::to_string(o);
  }
  return s;
}

bool renders_as_sum(const Expr& e) {
  if (e.terms().size() != 1) return e.terms().size() > 1;
  const Term& t = e.terms()[0];
  return t.mono.empty() && !t.coeff.numerator().is_monomial();
}

// Renders a sum of coefficient*derivative pieces with proper signs.
std::string render_pieces(const std::vector<std::pair<Expr, std::string>>& pieces) {
  if (pieces.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [c, d] : pieces) {
    Expr coeff = c;
    bool neg = coeff.terms().size() == 1 && coeff.terms()[0].coeff.renders_negative();
    if (neg) coeff = -coeff;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    if (d.empty()) {
      std::string s = coeff.render();
      os << (renders_as_sum(coeff) && (neg || os.tellp() > 1) ? "(" + s + ")" : s);
      continue;
    }
    if (coeff == Expr(1)) {
      os << d;
    } else if (renders_as_sum(coeff)) {
      os << "(" << coeff.render() << ")*" << d;
    } else {
      os << coeff.render() << "*" << d;
    }
  }
  return os.str();
}

MultiIndex add_index(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex m = a;
  for (const auto& [s, o] : b) m[s] += o;
  return m;
}

std::optional<MultiIndex> sub_index(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex m = a;
  for (const auto& [s, o] : b) {
    auto it = m.find(s);
    if (it == m.end() || it->second < o) return std::nullopt;
    it->second -= o;
    if (it->second == 0) m.erase(it);
  }
  return m;
}

Expr derivative(const Expr& e, const MultiIndex& m) {
  Expr out = e;
  for (const auto& [s, o] : m) out = differentiate(out, s, o);
  return out;
}

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// All gamma <= alpha with the multinomial weight prod C(alpha_i, gamma_i).
void sub_indices(const MultiIndex& alpha, std::vector<std::pair<MultiIndex, long>>& out) {
  out.assign(1, {MultiIndex{}, 1L});
  for (const auto& [s, o] : alpha) {
    std::vector<std::pair<MultiIndex, long>> next;
    for (const auto& [g, w] : out)
      for (int k = 0; k <= o; ++k) {
        MultiIndex h = g;
        if (k) h[s] = k;
        next.emplace_back(h, w * binomial(o, k));
      }
    out.swap(next);
  }
}

}  // namespace

Generator::Generator(std::string name, Coeffs coeffs, Expr multiplier)
    : name_(std::move(name)), coeffs_(std::move(coeffs)), multiplier_(std::move(multiplier)) {
  prune();
}

void Generator::prune() {
  for (auto it = coeffs_.begin(); it != coeffs_.end();)
    it = it->second.is_zero() ? coeffs_.erase(it) : std::next(it);
}

Generator Generator::parse(const std::string& name, const std::string& src, const SymbolTable& table) {
  auto terms = parse_operator_terms(src, table);
  Coeffs coeffs;
  Expr mult;
  for (const auto& [m, c] : terms) {
    if (m.empty()) {
      mult = c;
    } else if (m.size() == 1 && m.begin()->second == 1) {
      coeffs[m.begin()->first] = c;
    } else {
      throw ParseError("generator must be first order: " + src, 0, {"first-order term"});
    }
  }
  return Generator(name, std::move(coeffs), std::move(mult));
}

Expr Generator::coeff(const std::string& var) const {
  auto it = coeffs_.find(var);
  return it == coeffs_.end() ? Expr() : it->second;
}

Generator Generator::operator-() const {
  Generator g = *this;
  for (auto& [k, v] : g.coeffs_) v = -v;
  g.multiplier_ = -g.multiplier_;
  return g;
}

Generator operator+(const Generator& a, const Generator& b) {
  Generator g = a;
  for (const auto& [k, v] : b.coeffs_) g.coeffs_[k] += v;
  g.multiplier_ += b.multiplier_;
  g.prune();
  return g;
}

Generator operator-(const Generator& a, const Generator& b) { return a + (-b); }

Generator Generator::scaled(const Expr& e) const {
  Generator g = *this;
  for (auto& [k, v] : g.coeffs_) v = e * v;
  g.multiplier_ = e * g.multiplier_;
  g.prune();
  return g;
}

bool operator==(const Generator& a, const Generator& b) {
  return a.coeffs_ == b.coeffs_ && a.multiplier_ == b.multiplier_;
}

Generator Generator::substituted(const std::map<std::string, Expr>& bindings) const {
  Generator g = *this;
  for (auto& [k, v] : g.coeffs_) v = substitute(v, bindings);
  g.multiplier_ = substitute(g.multiplier_, bindings);
  g.prune();
  return g;
}

Generator Generator::with_functions(const std::map<std::string, FunctionDef>& defs) const {
  Generator g = *this;
  for (auto& [k, v] : g.coeffs_) v = substitute_functions(v, defs);
  g.multiplier_ = substitute_functions(g.multiplier_, defs);
  g.prune();
  return g;
}

std::string Generator::render() const {
  std::vector<std::pair<Expr, std::string>> pieces;
  for (const auto& [k, v] : coeffs_) pieces.emplace_back(v, "d" + k);
  if (!multiplier_.is_zero()) pieces.emplace_back(multiplier_, "");
  return render_pieces(pieces);
}

Expr apply(const Generator& X, const Expr& e) {
  Expr out = X.multiplier() * e;
  for (const auto& [k, v] : X.coeffs()) out += v * differentiate(e, k);
  return out;
}

Generator commutator(const Generator& X, const Generator& Y) {
  Generator::Coeffs coeffs;
  std::set<std::string, SymbolOrder> vars;
  for (const auto& [k, v] : X.coeffs()) vars.insert(k);
  for (const auto& [k, v] : Y.coeffs()) vars.insert(k);
  auto vf = [](const Generator& G, const Expr& e) {
    Expr out;
    for (const auto& [k, v] : G.coeffs()) out += v * differentiate(e, k);
    return out;
  };
  for (const auto& k : vars) coeffs[k] = vf(X, Y.coeff(k)) - vf(Y, X.coeff(k));
  Expr mult = vf(X, Y.multiplier()) - vf(Y, X.multiplier());
  return Generator("[" + X.name() + "," + Y.name() + "]", std::move(coeffs), std::move(mult));
}

DiffOperator::DiffOperator(Terms terms) {
  for (auto& [m, c] : terms) add_term(m, c);
}

DiffOperator::DiffOperator(const Generator& X) {
  for (const auto& [k, v] : X.coeffs()) add_term(MultiIndex{{k, 1}}, v);
  add_term(MultiIndex{}, X.multiplier());
}

DiffOperator DiffOperator::scalar(const Expr& e) {
  DiffOperator d;
  d.add_term(MultiIndex{}, e);
  return d;
}

DiffOperator DiffOperator::partial(const MultiIndex& m, const Expr& coeff) {
  DiffOperator d;
  MultiIndex clean;
  for (const auto& [s, o] : m)
    if (o) clean[s] = o;
  d.add_term(clean, coeff);
  return d;
}

DiffOperator DiffOperator::parse(const std::string& src, const SymbolTable& table) {
  Terms t;
  for (auto& [m, c] : parse_operator_terms(src, table)) t.emplace(m, c);
  return DiffOperator(std::move(t));
}

void DiffOperator::add_term(const MultiIndex& m, const Expr& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Expr DiffOperator::coeff(const MultiIndex& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Expr() : it->second;
}

int DiffOperator::order() const { return terms_.empty() ? 0 : order_of(leading_index()); }

std::optional<Generator> DiffOperator::as_generator(const std::string& name) const {
  Generator::Coeffs coeffs;
  Expr mult;
  for (const auto& [m, c] : terms_) {
    int o = order_of(m);
    if (o > 1) return std::nullopt;
    if (o == 0)
      mult = c;
    else
      coeffs[m.begin()->first] = c;
  }
  return Generator(name, std::move(coeffs), std::move(mult));
}

DiffOperator DiffOperator::operator-() const {
  DiffOperator d = *this;
  for (auto& [m, c] : d.terms_) c = -c;
  return d;
}

DiffOperator operator+(const DiffOperator& a, const DiffOperator& b) {
  DiffOperator d = a;
  for (const auto& [m, c] : b.terms_) d.add_term(m, c);
  return d;
}

DiffOperator operator-(const DiffOperator& a, const DiffOperator& b) { return a + (-b); }

DiffOperator DiffOperator::scaled(const Expr& e) const {
  DiffOperator d;
  for (const auto& [m, c] : terms_) d.add_term(m, e * c);
  return d;
}

DiffOperator DiffOperator::substituted(const std::map<std::string, Expr>& bindings) const {
  DiffOperator d;
  for (const auto& [m, c] : terms_) d.add_term(m, substitute(c, bindings));
  return d;
}

std::string DiffOperator::render() const {
  std::vector<std::pair<Expr, std::string>> pieces;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
    pieces.emplace_back(it->second, render_derivs(it->first));
  return render_pieces(pieces);
}

std::ostream& operator<<(std::ostream& os, const Generator& g) { return os << g.render(); }
std::ostream& operator<<(std::ostream& os, const DiffOperator& d) { return os << d.render(); }

Expr apply(const DiffOperator& D, const Expr& e) {
  Expr out;
  for (const auto& [m, c] : D.terms()) out += c * derivative(e, m);
  return out;
}

DiffOperator compose(const DiffOperator& A, const DiffOperator& B) {
  DiffOperator out;
  std::vector<std::pair<MultiIndex, long>> gammas;
  for (const auto& [alpha, a] : A.terms()) {
    sub_indices(alpha, gammas);
    for (const auto& [gamma, w] : gammas) {
      MultiIndex rest = *sub_index(alpha, gamma);
      for (const auto& [beta, b] : B.terms()) {
        Expr db = derivative(b, gamma);
        if (db.is_zero()) continue;
        out = out + DiffOperator::partial(add_index(rest, beta), (a * db).scaled(RatFunc(w)));
      }
    }
  }
  return out;
}

DiffOperator op_commutator(const DiffOperator& S, const DiffOperator& X) {
  return compose(S, X) - compose(X, S);
}

std::optional<Expr> try_divide(const Expr& a, const Expr& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return Expr();
  if (b.is_single_term()) return a * b.inverse();
  const Term& lb = b.terms().front();
  Expr lead_inv = Expr::from_terms({lb}).inverse();
  Expr r = a;
  Expr q;
  std::size_t bound = 4 * (a.terms().size() + b.terms().size()) + 16;
  for (std::size_t i = 0; i < bound && !r.is_zero(); ++i) {
    Expr t = Expr::from_terms({r.terms().front()}) * lead_inv;
    q += t;
    r -= t * b;
  }
  if (!r.is_zero()) return std::nullopt;
  return q;
}

Decomposition decompose(const DiffOperator& R, const std::vector<DiffOperator>& basis) {
  Decomposition out;
  out.coeffs.assign(basis.size(), Expr());
  DiffOperator rest = R;
  while (!rest.is_zero()) {
    const MultiIndex lead = rest.leading_index();
    const Expr c = rest.leading_coeff();
    bool divided = false;
    for (std::size_t i = 0; i < basis.size() && !divided; ++i) {
      if (basis[i].is_zero() || compare_multi_index(basis[i].leading_index(), lead) != 0) continue;
      auto q = try_divide(c, basis[i].leading_coeff());
      if (!q) continue;
      out.coeffs[i] += *q;
      rest = rest - basis[i].scaled(*q);
      divided = true;
    }
    if (!divided) {
      out.remainder = out.remainder + DiffOperator::partial(lead, c);
      rest = rest - DiffOperator::partial(lead, c);
    }
  }
  return out;
}

RightDivision right_divide(const DiffOperator& R, const std::vector<DiffOperator>& aux) {
  RightDivision out;
  out.quotients.assign(aux.size(), DiffOperator());
  DiffOperator rest = R;
  while (!rest.is_zero()) {
    const MultiIndex lead = rest.leading_index();
    const Expr c = rest.leading_coeff();
    bool divided = false;
    for (std::size_t i = 0; i < aux.size() && !divided; ++i) {
      if (aux[i].is_zero()) continue;
      auto shift = sub_index(lead, aux[i].leading_index());
      if (!shift) continue;
      auto q = try_divide(c, aux[i].leading_coeff());
      if (!q) continue;
      DiffOperator qop = DiffOperator::partial(*shift, *q);
      out.quotients[i] = out.quotients[i] + qop;
      rest = rest - compose(qop, aux[i]);
      divided = true;
    }
    if (!divided) {
      out.remainder = out.remainder + DiffOperator::partial(lead, c);
      rest = rest - DiffOperator::partial(lead, c);
    }
  }
  return out;
}

}  // namespace confsym
