#pragma once

// Exact multivariate polynomials and rational functions over Q in the
// parameter symbols (x, y, k, s, ...). Rational functions are kept reduced
// (numerator and denominator coprime, denominator monic in lex order), so
// structural equality is mathematical equality.

#include <gmpxx.h>

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace confsym {

using Rational = mpq_class;

/// Power product of parameters; sorted by name, strictly positive exponents.
using PMono = std::vector<std::pair<std::string, int>>;

/// Lex order on power products, earlier names weigh more.
int compare_pmono(const PMono& a, const PMono& b);

class RatFunc;

class Poly {
 public:
  using Term = std::pair<PMono, Rational>;

  Poly() = default;
  explicit Poly(Rational c);
  static Poly variable(const std::string& name, int power = 1);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of a constant polynomial (0 for the zero polynomial).
  Rational constant_value() const;
  bool is_monomial() const { return terms_.size() == 1; }

  /// Terms in descending lex order; front() is the leading term.
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }

  std::vector<std::string> variables() const;
  bool contains(const std::string& var) const;
  int degree(const std::string& var) const;
  /// Coefficient of var^d, as a polynomial in the remaining variables.
  Poly coefficient(const std::string& var, int d) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const Rational& c) const;
  Poly pow(unsigned n) const;

  friend bool operator==(const Poly& a, const Poly& b);
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b);

  /// Exact quotient a/b, or nullopt when b does not divide a.
  static std::optional<Poly> divide_exact(const Poly& a, const Poly& b);
  /// Monic greatest common divisor.
  static Poly gcd(const Poly& a, const Poly& b);
  /// Divide by the leading coefficient.
  Poly monic() const;

  double evaluate(const std::function<double(const std::string&)>& value) const;
  RatFunc substitute(const std::map<std::string, RatFunc>& bindings) const;

  std::string render() const;

 private:
  void normalize();
  std::vector<Term> terms_;
};

class RatFunc {
 public:
  RatFunc() : num_(), den_(Rational(1)) {}
  RatFunc(Rational c) : num_(std::move(c)), den_(Rational(1)) {}  // NOLINT
  RatFunc(long c) : RatFunc(Rational(c)) {}                         // NOLINT
  RatFunc(int c) : RatFunc(Rational(c)) {}                          // NOLINT
  explicit RatFunc(Poly p) : num_(std::move(p)), den_(Rational(1)) {}
  RatFunc(Poly num, Poly den);

  static RatFunc parameter(const std::string& name);

  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const;
  bool is_integer() const;
  bool is_one() const;
  /// Denominator is 1 and the numerator has a single term.
  bool is_monomial() const { return den_.is_constant() && num_.is_monomial(); }
  std::vector<std::string> variables() const;
  bool contains(const std::string& var) const;

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc pow(int n) const;
  RatFunc inverse() const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  /// Total order: constants numerically first, then structural.
  friend std::strong_ordering operator<=>(const RatFunc& a, const RatFunc& b);

  double evaluate(const std::function<double(const std::string&)>& value) const;
  RatFunc substitute(const std::map<std::string, RatFunc>& bindings) const;

  /// Text in the expression grammar. Wrapped in parentheses when it is not a
  /// single signed factor and `atomic` is requested.
  std::string render(bool atomic = false) const;
  /// True if the rendering starts with a minus sign.
  bool renders_negative() const;

 private:
  void normalize();
  Poly num_;
  Poly den_;
};

std::string render_rational(const Rational& q);

}  // namespace confsym
