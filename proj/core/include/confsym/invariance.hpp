#pragma once

// Invariance of linear Schrodinger operators under the registered
// representations, determining equations for semilinear potentials F and the
// catalogue of invariant potentials.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "confsym/operators.hpp"
#include "confsym/registry.hpp"

namespace confsym {

struct SchrodingerOperator {
  SVariant variant = SVariant::S0;
  DiffOperator op;
};

/// The fixed forms. Native needs the case generators; use native_operator.
SchrodingerOperator schrodinger_operator(SVariant v);
/// 2 M0 o Xm1 - Ym^2 from the generators; Xm1 defaults to -dt when absent.
/// Throws Unsupported when one of the three carries a multiplier.
SchrodingerOperator native_operator(const std::vector<Generator>& gens);
SchrodingerOperator schrodinger_operator(SVariant v, const std::vector<Generator>& gens);

struct BracketResult {
  Expr lambda;
  DiffOperator remainder;
};

/// [S, X] = lambda S + remainder.
BracketResult bracket_S(const SchrodingerOperator& S, const Generator& X);

enum class Status { Pass, Conditional, Fail };
std::string to_string(Status s);

struct InvarianceEntry {
  std::string generator;
  Expr lambda;
  DiffOperator remainder;
  Status status = Status::Fail;
  std::vector<std::string> aux_used;
};

struct InvarianceReport {
  std::string case_id;
  std::string regime;
  SVariant variant = SVariant::S0;
  std::vector<std::string> aux;
  std::vector<InvarianceEntry> entries;
  bool ok() const;
};

InvarianceReport check_lie_invariance(const SchrodingerOperator& S, const std::vector<Generator>& gens);

/// Remainders are reduced modulo the aux operators (right division, aux
/// annihilates Psi) and by the reduced S; pass iff nothing is left.
InvarianceReport check_conditional_invariance(const SchrodingerOperator& S,
                                              const std::vector<Generator>& gens,
                                              const std::vector<DiffOperator>& aux);

/// Every option of every regime of a case, with the regime bindings applied
/// on top of `params`.
std::vector<InvarianceReport> check_case(const std::string& case_id,
                                         const std::map<std::string, Expr>& params = {});

/// Linear first-order operator acting on F(coordinates, psi, psis):
/// sum a_i d_i - c (psi dpsi + psis dpsis) + (c + lambda), stored as a
/// generator whose slots include the fields.
struct DeterminingEquation {
  std::string generator;
  Expr lambda;
  Generator op;
  std::string render() const;
};

DeterminingEquation determining_equation(const Generator& X, const Expr& lambda);

/// Determining system of a case under one regime option. Generators without
/// a vector-field part (central elements) impose nothing and are skipped.
std::vector<DeterminingEquation> determining_system(const std::string& case_id,
                                                    const std::map<std::string, Expr>& params,
                                                    const std::string& regime = "",
                                                    std::size_t option = 0);

/// Replace every derivative of a ruled unary symbol by its first-derivative
/// rule (body in the formal variable def.formals[0]); repeats until no
/// derivative of a ruled symbol is left.
Expr apply_derivative_rules(const Expr& e, const std::map<std::string, FunctionDef>& rules);

/// Multiply out the lowest power of every atom named in `defs`, then expand
/// those atoms by their definitions.
Expr clear_denominators(const Expr& e, const std::map<std::string, FunctionDef>& defs);

/// F = prefactor * f(arguments...) for the arbitrary function f.
struct PotentialForm {
  std::string id;
  std::string case_id;
  std::string regime;
  std::size_t option = 0;
  std::string summary;
  std::string condition;
  std::map<std::string, Expr> bindings;
  Expr prefactor;
  std::vector<Expr> arguments;
  std::map<std::string, FunctionDef> rules;
  /// Opaque unary symbols standing for sums; they may appear with negative
  /// powers in rule bodies and are cleared and expanded in the residual.
  std::map<std::string, FunctionDef> denominators;
  Expr expression() const;
};

struct PotentialCheck {
  std::string id;
  std::vector<std::pair<std::string, Expr>> residuals;
  bool ok() const;
};

/// Residual of every determining operator applied to F, f and its partial
/// derivatives treated as independent symbols.
PotentialCheck evaluate_potential(const PotentialForm& F, const std::vector<DeterminingEquation>& system);
/// Throws NonzeroResidual on the first nonzero residual.
PotentialCheck verify_potential(const PotentialForm& F, const std::vector<DeterminingEquation>& system);
/// System taken from the form's case, regime and bindings.
std::vector<DeterminingEquation> system_for(const PotentialForm& F);
PotentialCheck evaluate_potential(const PotentialForm& F);

/// Catalogue of invariant potentials (one or more per case, plus the k-modified family).
const std::vector<PotentialForm>& potentials();
const PotentialForm& find_potential(const std::string& id);
/// The same rows exactly as printed in the original table where the printed
/// form differs from the consistent one.
const std::vector<PotentialForm>& printed_potentials();

/// Solved form of the integral condition attached to case 0 at x != 1/2, and
/// its printed variant. The residual is Q Psi - (1-2x) Psi.
Expr age0_condition_residual(bool printed);

/// Sequential elimination for systems whose operators are, after dividing by
/// a common factor, Euler operators with constant weights or pure
/// translations. Throws NotMonomial or IncompatibleSystem.
PotentialForm solve_characteristics(const std::vector<DeterminingEquation>& system);

/// Mutual functional dependence of two monomial forms: equal invariant
/// exponent spans and prefactors agreeing up to an invariant.
bool equivalent_forms(const PotentialForm& a, const PotentialForm& b);

}  // namespace confsym
