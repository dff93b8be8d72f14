#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "confsym/expr.hpp"
#include "confsym/parse.hpp"

namespace confsym {

struct SymbolOrder {
  bool operator()(const std::string& a, const std::string& b) const { return symbol_less(a, b); }
};

/// Graded lexicographic order on multi-indices with t > r > zeta > g > psi > ...
int compare_multi_index(const MultiIndex& a, const MultiIndex& b);
struct MultiIndexOrder {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    return compare_multi_index(a, b) < 0;
  }
};
int order_of(const MultiIndex& m);

/// First-order operator sum_i a_i d_i + multiplier.
class Generator {
 public:
  using Coeffs = std::map<std::string, Expr, SymbolOrder>;

  Generator() = default;
  Generator(std::string name, Coeffs coeffs, Expr multiplier = {});

  /// Operator syntax, e.g. "-t^2*dt - t*r*dr - x*t".
  static Generator parse(const std::string& name, const std::string& src,
                         const SymbolTable& table = SymbolTable::standard());

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  const Coeffs& coeffs() const { return coeffs_; }
  Expr coeff(const std::string& var) const;
  const Expr& multiplier() const { return multiplier_; }

  bool is_zero() const { return coeffs_.empty() && multiplier_.is_zero(); }
  Generator operator-() const;
  friend Generator operator+(const Generator& a, const Generator& b);
  friend Generator operator-(const Generator& a, const Generator& b);
  /// Left multiplication of every coefficient and the multiplier by e.
  Generator scaled(const Expr& e) const;
  friend bool operator==(const Generator& a, const Generator& b);

  Generator substituted(const std::map<std::string, Expr>& bindings) const;
  Generator with_functions(const std::map<std::string, FunctionDef>& defs) const;

  std::string render() const;

 private:
  void prune();
  std::string name_;
  Coeffs coeffs_;
  Expr multiplier_;
};

Expr apply(const Generator& X, const Expr& e);
Generator commutator(const Generator& X, const Generator& Y);

class DiffOperator {
 public:
  using Terms = std::map<MultiIndex, Expr, MultiIndexOrder>;

  DiffOperator() = default;
  explicit DiffOperator(Terms terms);
  DiffOperator(const Generator& X);  // NOLINT
  static DiffOperator scalar(const Expr& e);
  static DiffOperator partial(const MultiIndex& m, const Expr& coeff = Expr(1));
  static DiffOperator parse(const std::string& src, const SymbolTable& table = SymbolTable::standard());

  const Terms& terms() const { return terms_; }
  Expr coeff(const MultiIndex& m) const;
  bool is_zero() const { return terms_.empty(); }
  int order() const;
  /// Largest multi-index; requires a nonzero operator.
  const MultiIndex& leading_index() const { return terms_.rbegin()->first; }
  const Expr& leading_coeff() const { return terms_.rbegin()->second; }
  /// The generator with the same first- and zeroth-order parts, if order <= 1.
  std::optional<Generator> as_generator(const std::string& name = "") const;

  DiffOperator operator-() const;
  friend DiffOperator operator+(const DiffOperator& a, const DiffOperator& b);
  friend DiffOperator operator-(const DiffOperator& a, const DiffOperator& b);
  /// Left multiplication by a function.
  DiffOperator scaled(const Expr& e) const;
  friend bool operator==(const DiffOperator& a, const DiffOperator& b) { return a.terms_ == b.terms_; }

  DiffOperator substituted(const std::map<std::string, Expr>& bindings) const;

  std::string render() const;

 private:
  void add_term(const MultiIndex& m, const Expr& c);
  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const Generator& g);
std::ostream& operator<<(std::ostream& os, const DiffOperator& d);

Expr apply(const DiffOperator& D, const Expr& e);
/// Operator product A o B, expanded with the Leibniz rule.
DiffOperator compose(const DiffOperator& A, const DiffOperator& B);
/// S o X - X o S.
DiffOperator op_commutator(const DiffOperator& S, const DiffOperator& X);

/// Exact quotient a/b when it exists within the supported fragment.
std::optional<Expr> try_divide(const Expr& a, const Expr& b);

struct Decomposition {
  std::vector<Expr> coeffs;
  DiffOperator remainder;
};
/// Greedy division by leading terms: R = sum coeffs[i] * basis[i] + remainder,
/// with the coefficients multiplying on the left.
Decomposition decompose(const DiffOperator& R, const std::vector<DiffOperator>& basis);

struct RightDivision {
  std::vector<DiffOperator> quotients;
  DiffOperator remainder;
};
/// R = sum quotients[i] o aux[i] + remainder, dividing leading terms whose
/// multi-index is a componentwise multiple of an aux leading index.
RightDivision right_divide(const DiffOperator& R, const std::vector<DiffOperator>& aux);

}  // namespace confsym
