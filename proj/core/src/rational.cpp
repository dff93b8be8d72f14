#include "confsym/rational.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "confsym/errors.hpp"

namespace confsym {

int compare_pmono(const PMono& a, const PMono& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) return 1;
    if (b[j].first < a[i].first) return -1;
    if (a[i].second != b[j].second) return a[i].second > b[j].second ? 1 : -1;
    ++i;
    ++j;
  }
  if (i < a.size()) return 1;
  if (j < b.size()) return -1;
  return 0;
}

namespace {

struct PMonoLess {
  bool operator()(const PMono& a, const PMono& b) const {
    return compare_pmono(a, b) > 0;
  }
};

PMono mono_mul(const PMono& a, const PMono& b) {
  PMono out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

std::optional<PMono> mono_div(const PMono& a, const PMono& b) {
  PMono out;
  std::size_t i = 0;
  for (const auto& [name, e] : b) {
    while (i < a.size() && a[i].first < name) out.push_back(a[i++]);
    if (i == a.size() || a[i].first != name || a[i].second < e) return std::nullopt;
    if (a[i].second > e) out.emplace_back(name, a[i].second - e);
    ++i;
  }
  while (i < a.size()) out.push_back(a[i++]);
  return out;
}

PMono mono_gcd(const PMono& a, const PMono& b) {
  PMono out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) {
      ++i;
    } else if (b[j].first < a[i].first) {
      ++j;
    } else {
      out.emplace_back(a[i].first, std::min(a[i].second, b[j].second));
      ++i;
      ++j;
    }
  }
  return out;
}

int exponent_of(const PMono& m, const std::string& var) {
  for (const auto& [n, e] : m)
    if (n == var) return e;
  return 0;
}

PMono without(const PMono& m, const std::string& var) {
  PMono out;
  for (const auto& p : m)
    if (p.first != var) out.push_back(p);
  return out;
}

// p as a polynomial in var: coefficient list indexed by degree.
std::vector<Poly> to_univariate(const Poly& p, const std::string& var) {
  std::vector<Poly> out(static_cast<std::size_t>(p.degree(var)) + 1);
  std::vector<std::vector<Poly::Term>> buckets(out.size());
  for (const auto& [m, c] : p.terms()) {
    int d = exponent_of(m, var);
    buckets[d].emplace_back(without(m, var), c);
  }
  for (std::size_t d = 0; d < out.size(); ++d) {
    Poly acc;
    for (auto& [m, c] : buckets[d]) {
      Poly t(c);
      if (!m.empty()) {
        Poly mono(Rational(1));
        for (const auto& [n, e] : m) mono = mono * Poly::variable(n, e);
        t = t * mono;
      }
      acc = acc + t;
    }
    out[d] = acc;
  }
  return out;
}

Poly from_univariate(const std::vector<Poly>& coeffs, const std::string& var) {
  Poly out;
  for (std::size_t d = 0; d < coeffs.size(); ++d) {
    if (coeffs[d].is_zero()) continue;
    out = out + (d == 0 ? coeffs[d] : coeffs[d] * Poly::variable(var, static_cast<int>(d)));
  }
  return out;
}

void trim(std::vector<Poly>& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

Poly content(const std::vector<Poly>& u) {
  Poly g;
  for (const auto& c : u) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : Poly::gcd(g, c);
    if (g.is_constant()) return Poly(Rational(1));
  }
  return g;
}

std::vector<Poly> divide_all(const std::vector<Poly>& u, const Poly& d) {
  std::vector<Poly> out;
  out.reserve(u.size());
  for (const auto& c : u) out.push_back(*Poly::divide_exact(c, d));
  return out;
}

// Pseudo-remainder of a by b (both univariate in the main variable).
std::vector<Poly> prem(std::vector<Poly> a, const std::vector<Poly>& b) {
  const std::size_t db = b.size() - 1;
  const Poly& lb = b.back();
  while (a.size() >= b.size()) {
    Poly la = a.back();
    std::size_t shift = a.size() - b.size();
    for (auto& c : a) c = c * lb;
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] = a[i + shift] - la * b[i];
    trim(a);
  }
  return a;
}

std::string first_variable(const Poly& a, const Poly& b) {
  std::set<std::string> vars;
  for (const auto& v : a.variables()) vars.insert(v);
  for (const auto& v : b.variables()) vars.insert(v);
  return vars.empty() ? std::string() : *vars.begin();
}

}  // namespace

Poly::Poly(Rational c) {
  c.canonicalize();
  if (c != 0) terms_.emplace_back(PMono{}, std::move(c));
}

Poly Poly::variable(const std::string& name, int power) {
  Poly p;
  if (power == 0) return Poly(Rational(1));
  p.terms_.emplace_back(PMono{{name, power}}, Rational(1));
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.empty());
}

Rational Poly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  return terms_[0].second;
}

std::vector<std::string> Poly::variables() const {
  std::set<std::string> vars;
  for (const auto& [m, c] : terms_)
    for (const auto& [n, e] : m) vars.insert(n);
  return {vars.begin(), vars.end()};
}

bool Poly::contains(const std::string& var) const {
  for (const auto& [m, c] : terms_)
    if (exponent_of(m, var) != 0) return true;
  return false;
}

int Poly::degree(const std::string& var) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, exponent_of(m, var));
  return d;
}

Poly Poly::coefficient(const std::string& var, int d) const {
  auto u = to_univariate(*this, var);
  if (d < 0 || static_cast<std::size_t>(d) >= u.size()) return Poly();
  return u[d];
}

void Poly::normalize() {
  std::map<PMono, Rational, PMonoLess> acc;
  for (auto& [m, c] : terms_) acc[m] += c;
  terms_.clear();
  for (auto& [m, c] : acc)
    if (c != 0) terms_.emplace_back(m, c);
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.second = -t.second;
  return p;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly out;
  out.terms_.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    int cmp = i == a.terms_.size()   ? -1
              : j == b.terms_.size() ? 1
                                     : compare_pmono(a.terms_[i].first, b.terms_[j].first);
    if (cmp > 0) {
      out.terms_.push_back(a.terms_[i++]);
    } else if (cmp < 0) {
      out.terms_.push_back(b.terms_[j++]);
    } else {
      Rational c = a.terms_[i].second + b.terms_[j].second;
      if (c != 0) out.terms_.emplace_back(a.terms_[i].first, c);
      ++i;
      ++j;
    }
  }
  return out;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (b.is_constant()) return a.scaled(b.constant_value());
  if (a.is_constant()) return b.scaled(a.constant_value());
  std::map<PMono, Rational, PMonoLess> acc;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) acc[mono_mul(ma, mb)] += ca * cb;
  Poly out;
  for (auto& [m, c] : acc)
    if (c != 0) out.terms_.emplace_back(m, c);
  return out;
}

Poly Poly::scaled(const Rational& c) const {
  if (c == 0) return Poly();
  Poly p = *this;
  for (auto& t : p.terms_) t.second *= c;
  return p;
}

Poly Poly::pow(unsigned n) const {
  Poly out(Rational(1));
  Poly base = *this;
  while (n) {
    if (n & 1u) out = out * base;
    n >>= 1u;
    if (n) base = base * base;
  }
  return out;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].first != b.terms_[i].first) return false;
    if (a.terms_[i].second != b.terms_[i].second) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare_pmono(a.terms_[i].first, b.terms_[i].first);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    int q = cmp(a.terms_[i].second, b.terms_[i].second);
    if (q != 0) return q < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.terms_.size() <=> b.terms_.size();
}

std::optional<Poly> Poly::divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (b.is_constant()) return a.scaled(1 / b.constant_value());
  Poly r = a;
  Poly q;
  const auto& [lm, lc] = b.leading();
  while (!r.is_zero()) {
    auto m = mono_div(r.leading().first, lm);
    if (!m) return std::nullopt;
    Poly t;
    t.terms_.emplace_back(*m, r.leading().second / lc);
    q = q + t;
    r = r - t * b;
  }
  return q;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(1 / leading().second);
}

Poly Poly::gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly(Rational(1));
  if (a.is_monomial() || b.is_monomial()) {
    const Poly& mono = a.is_monomial() ? a : b;
    const Poly& other = a.is_monomial() ? b : a;
    PMono g = mono.leading().first;
    for (const auto& [m, c] : other.terms_) g = mono_gcd(g, m);
    Poly p;
    p.terms_.emplace_back(g, Rational(1));
    return p;
  }
  const std::string var = first_variable(a, b);
  auto ua = to_univariate(a, var);
  auto ub = to_univariate(b, var);
  Poly ca = content(ua);
  Poly cb = content(ub);
  Poly cg = gcd(ca, cb);
  ua = divide_all(ua, ca);
  ub = divide_all(ub, cb);
  if (ua.size() < ub.size()) std::swap(ua, ub);
  while (ub.size() > 1) {
    auto r = prem(ua, ub);
    ua = std::move(ub);
    if (r.empty()) {
      ub.clear();
      break;
    }
    ub = divide_all(r, content(r));
  }
  std::vector<Poly> g = ub.empty() ? ua : (ub.size() == 1 ? std::vector<Poly>{Poly(Rational(1))} : ub);
  if (g.size() > 1) g = divide_all(g, content(g));
  return (from_univariate(g, var) * cg).monic();
}

double Poly::evaluate(const std::function<double(const std::string&)>& value) const {
  double sum = 0;
  for (const auto& [m, c] : terms_) {
    double t = c.get_d();
    for (const auto& [n, e] : m) t *= std::pow(value(n), e);
    sum += t;
  }
  return sum;
}

RatFunc Poly::substitute(const std::map<std::string, RatFunc>& bindings) const {
  RatFunc out;
  for (const auto& [m, c] : terms_) {
    RatFunc t(c);
    Poly rest(Rational(1));
    for (const auto& [n, e] : m) {
      auto it = bindings.find(n);
      if (it != bindings.end())
        t = t * it->second.pow(e);
      else
        rest = rest * Poly::variable(n, e);
    }
    out = out + t * RatFunc(rest);
  }
  return out;
}

std::string render_rational(const Rational& q) {
  return q.get_str();
}

std::string Poly::render() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (m.empty() || mag != 1) {
      os << render_rational(mag);
      need_star = true;
    }
    for (const auto& [n, e] : m) {
      if (need_star) os << "*";
      os << n;
      if (e != 1) os << "^" << e;
      need_star = true;
    }
  }
  return os.str();
}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

RatFunc RatFunc::parameter(const std::string& name) {
  return RatFunc(Poly::variable(name));
}

void RatFunc::normalize() {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Poly(Rational(1));
    return;
  }
  if (!den_.is_constant()) {
    Poly g = Poly::gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *Poly::divide_exact(num_, g);
      den_ = *Poly::divide_exact(den_, g);
    }
  }
  Rational lc = den_.leading().second;
  if (lc != 1) {
    num_ = num_.scaled(1 / lc);
    den_ = den_.scaled(1 / lc);
  }
}

Rational RatFunc::constant_value() const {
  if (!is_constant()) throw DomainError("rational function is not constant: " + render());
  return num_.constant_value() / den_.constant_value();
}

bool RatFunc::is_integer() const {
  return is_constant() && constant_value().get_den() == 1;
}

bool RatFunc::is_one() const { return is_constant() && num_.constant_value() == 1; }

std::vector<std::string> RatFunc::variables() const {
  std::set<std::string> vars;
  for (const auto& v : num_.variables()) vars.insert(v);
  for (const auto& v : den_.variables()) vars.insert(v);
  return {vars.begin(), vars.end()};
}

bool RatFunc::contains(const std::string& var) const {
  return num_.contains(var) || den_.contains(var);
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) {
    RatFunc r;
    r.num_ = a.num_ + b.num_;
    r.den_ = a.den_;
    if (!r.den_.is_constant()) r.normalize();
    else if (r.num_.is_zero()) r.den_ = Poly(Rational(1));
    return r;
  }
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  if (a.den_.is_constant() && b.den_.is_constant()) {
    RatFunc r;
    r.num_ = a.num_ * b.num_;
    r.den_ = Poly(Rational(1));
    return r;
  }
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  return RatFunc(den_, num_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

RatFunc RatFunc::pow(int n) const {
  if (n == 0) return RatFunc(1);
  RatFunc base = n < 0 ? inverse() : *this;
  unsigned m = static_cast<unsigned>(n < 0 ? -n : n);
  RatFunc r;
  r.num_ = base.num_.pow(m);
  r.den_ = base.den_.pow(m);
  return r;
}

std::strong_ordering operator<=>(const RatFunc& a, const RatFunc& b) {
  bool ca = a.is_constant(), cb = b.is_constant();
  if (ca && cb) {
    int c = cmp(a.constant_value(), b.constant_value());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  if (ca != cb) return ca ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto c = a.num_ <=> b.num_; c != 0) return c;
  return a.den_ <=> b.den_;
}

double RatFunc::evaluate(const std::function<double(const std::string&)>& value) const {
  return num_.evaluate(value) / den_.evaluate(value);
}

RatFunc RatFunc::substitute(const std::map<std::string, RatFunc>& bindings) const {
  return num_.substitute(bindings) / den_.substitute(bindings);
}

bool RatFunc::renders_negative() const {
  return !num_.is_zero() && num_.leading().second < 0;
}

std::string RatFunc::render(bool atomic) const {
  if (den_.is_constant() && num_.is_constant()) {
    Rational q = constant_value();
    std::string s = render_rational(q);
    if (atomic && (q < 0 || q.get_den() != 1)) return "(" + s + ")";
    return s;
  }
  Poly num = num_, den = den_;
  if (!den_.is_constant()) {
    // Present with integer coefficients: (x + 2)/(2*y) rather than (1/2*x + 1)/y.
    mpz_class l = 1, g = 0;
    for (const auto* p : {&num_, &den_})
      for (const auto& [m, c] : p->terms()) l = lcm(l, c.get_den());
    for (const auto* p : {&num_, &den_})
      for (const auto& [m, c] : p->terms()) g = gcd(g, mpz_class(c.get_num() * (l / c.get_den())));
    Rational f(l, g);
    num = num.scaled(f);
    den = den.scaled(f);
  }
  std::string n = num.render();
  if (den_.is_constant()) {
    if (!atomic) return n;
    if (num_.is_monomial() && num_.leading().second == 1) return n;
    return "(" + n + ")";
  }
  std::string d = den.render();
  if (!num.is_monomial() || num.leading().second < 0) n = "(" + n + ")";
  if (!den.is_monomial() || den.leading().second != 1 || den.leading().first.size() != 1 ||
      den.leading().first[0].second != 1)
    d = "(" + d + ")";
  std::string s = n + "/" + d;
  return atomic ? "(" + s + ")" : s;
}

}  // namespace confsym
