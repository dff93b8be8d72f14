#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "confsym/expr.hpp"

namespace confsym {

/// Names known to the parser. Coordinates, fields, parameters and function
/// symbols are pairwise disjoint.
class SymbolTable {
 public:
  enum class Kind { Unknown, Coordinate, Field, Parameter, Function, Builtin };

  /// Coordinates t, r, zeta, g; fields psi, psis; the model parameters; the
  /// arbitrary functions f (any arity), m, n, l, l1, p0, h, I, E (unary) and
  /// Psi0 (ternary).
  static SymbolTable standard();

  void declare_coordinate(const std::string& name);
  void declare_field(const std::string& name);
  void declare_parameter(const std::string& name);
  /// arity 0 accepts any positive number of arguments.
  void declare_function(const std::string& name, int arity);
  /// Remove a name from whatever category it is in.
  void forget(const std::string& name);

  Kind kind(const std::string& name) const;
  int arity(const std::string& name) const;

  const std::vector<std::string>& coordinates() const { return coordinates_; }
  const std::vector<std::string>& fields() const { return fields_; }
  const std::set<std::string>& parameters() const { return parameters_; }
  const std::map<std::string, int>& functions() const { return functions_; }

 private:
  void check_fresh(const std::string& name) const;
  std::vector<std::string> coordinates_;
  std::vector<std::string> fields_;
  std::set<std::string> parameters_;
  std::map<std::string, int> functions_;
};

Expr parse(const std::string& src, const SymbolTable& table = SymbolTable::standard());

/// Parse an expression that must be free of coordinates and fields.
RatFunc parse_constant(const std::string& src, const SymbolTable& table = SymbolTable::standard());

/// Multi-index of partial derivatives: symbol name -> order, zero orders absent.
using MultiIndex = std::map<std::string, int>;

/// Operator-context parse: derivative tokens d<coordinate> (dt, dr, dzeta, dg,
/// dpsi, ...) are accepted and collected per term; coefficients stand to the
/// left of all derivatives. Returns multi-index -> coefficient.
std::map<MultiIndex, Expr> parse_operator_terms(const std::string& src,
                                                const SymbolTable& table = SymbolTable::standard());

}  // namespace confsym
