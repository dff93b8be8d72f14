#pragma once

// Canonical symbolic expressions: a sorted sum of terms, each term a
// coefficient in Q(parameters) times a product of atoms raised to exponents in
// Q(parameters). Atoms are coordinates, fields (psi, psis), applications of
// arbitrary function symbols (with derivative orders), exp and log.

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "confsym/rational.hpp"

namespace confsym {

class Expr;

/// Ordering rank of a symbol: t, r, zeta, g, psi, psis, then others.
int symbol_rank(const std::string& name);
/// Total order on symbol names consistent with symbol_rank.
bool symbol_less(const std::string& a, const std::string& b);

struct Atom {
  enum class Kind { Coordinate = 0, Field = 1, Function = 2, Log = 3, Exp = 4 };

  Kind kind = Kind::Coordinate;
  std::string name;
  std::vector<int> orders;
  std::shared_ptr<const std::vector<Expr>> args;

  static Atom coordinate(std::string name);
  static Atom field(std::string name);
  static Atom function(std::string name, std::vector<int> orders, std::vector<Expr> args);
  static Atom exp(Expr arg);
  static Atom log(Expr arg);

  const std::vector<Expr>& arguments() const;
  bool is_symbol() const { return kind == Kind::Coordinate || kind == Kind::Field; }
  int total_order() const;

  friend bool operator==(const Atom& a, const Atom& b);
};

int compare_atoms(const Atom& a, const Atom& b);

struct Factor {
  Atom atom;
  RatFunc exponent;
};

using Monomial = std::vector<Factor>;

struct Term {
  RatFunc coeff;
  Monomial mono;
};

int compare_monomials(const Monomial& a, const Monomial& b);

class Expr {
 public:
  Expr() = default;
  Expr(const RatFunc& c);  // NOLINT
  Expr(Rational c) : Expr(RatFunc(std::move(c))) {}  // NOLINT
  Expr(int c) : Expr(RatFunc(c)) {}                  // NOLINT
  Expr(long c) : Expr(RatFunc(c)) {}                 // NOLINT

  static Expr symbol(const Atom& atom);
  static Expr coordinate(const std::string& name);
  static Expr field(const std::string& name);
  static Expr parameter(const std::string& name);
  static Expr function(const std::string& name, std::vector<Expr> args,
                       std::vector<int> orders = {});
  static Expr exp(const Expr& arg);
  static Expr log(const Expr& arg);
  static Expr from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// No atoms at all: the expression is an element of Q(parameters).
  bool is_constant() const;
  RatFunc constant_value() const;
  bool is_single_term() const { return terms_.size() == 1; }

  /// True when the symbol (coordinate or field) occurs anywhere, including
  /// inside function arguments.
  bool depends_on(const std::string& symbol) const;
  /// Coordinates and fields occurring anywhere.
  std::set<std::string> symbols() const;
  /// Parameters occurring in coefficients, exponents or arguments.
  std::set<std::string> parameters() const;
  /// Names of arbitrary function symbols applied anywhere.
  std::set<std::string> function_names() const;

  Expr operator-() const;
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }
  Expr pow(const RatFunc& e) const;
  /// Multiplicative inverse; defined for single-term expressions only.
  Expr inverse() const;
  Expr scaled(const RatFunc& c) const;

  friend bool operator==(const Expr& a, const Expr& b);
  friend int compare(const Expr& a, const Expr& b);
  friend bool operator<(const Expr& a, const Expr& b) { return compare(a, b) < 0; }

  std::string render() const;

 private:
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const Expr& e);

/// Exact partial derivative with respect to a coordinate or field.
Expr differentiate(const Expr& e, const std::string& var);
Expr differentiate(const Expr& e, const std::string& var, int times);

/// Simultaneous substitution of symbols and parameters by expressions.
/// Throws CyclicSubstitution if a value contains its own key.
Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings);

/// Replacement of an arbitrary function symbol by a closed form in formal
/// variables; derivative orders are realized by differentiating the body.
struct FunctionDef {
  std::vector<std::string> formals;
  Expr body;
};
Expr substitute_functions(const Expr& e, const std::map<std::string, FunctionDef>& defs);

/// Numerical implementation of a function symbol: value of the derivative
/// with the given orders at the given arguments.
using FunctionImpl = std::function<double(const std::vector<int>& orders,
                                          const std::vector<double>& args)>;
/// Wrap a univariate family n -> d^n f/du^n.
FunctionImpl univariate(std::function<double(int order, double u)> f);

using Assignment = std::map<std::string, double>;
using FunctionImpls = std::map<std::string, FunctionImpl>;

/// Floating evaluation. Throws MissingBinding for unassigned symbols and
/// DomainError for a negative base with a non-integer exponent.
double eval_numeric(const Expr& e, const Assignment& values, const FunctionImpls& funcs = {});

/// Canonical form of an expression. Construction already canonicalizes, so
/// this is the identity; it is exposed for API symmetry and tests.
inline Expr normalize(const Expr& e) { return e; }

}  // namespace confsym
