#pragma once

// Catalogue of the differential-operator representations: the Schrodinger
// algebra in its fixed-mass and zeta forms, the conformal completion, the
// coupling-dependent representations of the (almost-)parabolic subalgebras
// and the k-modified family.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "confsym/algebra.hpp"
#include "confsym/operators.hpp"

namespace confsym {

/// Linear Schrodinger operators used by the invariance checks.
enum class SVariant {
  Native,        // 2 M0 o Xm1 - Ym^2 from the case's own generators
  S0,            // 2 dzeta dt - dr^2
  EMMG,          // 2 dzeta dt - (4y/zeta) g dg dt - dr^2
  AMMG,          // 2 dzeta dt + (2s/zeta) g dg dt - dr^2
  DegenerateRR,  // dr^2
  DegenerateZT,  // dzeta dt
};

std::string to_string(SVariant v);
SVariant svariant_from_string(const std::string& s);

/// Relation lhs = rhs among parameters. A non-informational constraint whose
/// lhs is a bare parameter binds that parameter when it is not supplied.
struct Constraint {
  Expr lhs;
  Expr rhs;
  bool informational = false;
  std::string render() const;
};

/// One way of making the linear operator invariant: Lie invariance when aux
/// is empty, conditional invariance on aux Psi = 0 otherwise.
struct AuxOption {
  std::vector<DiffOperator> aux;
  SVariant s = SVariant::Native;
};

struct Regime {
  std::string label;
  std::map<std::string, Expr> bindings;
  std::map<std::string, FunctionDef> functions;
  std::vector<AuxOption> options;
};

struct RepresentationCase {
  std::string id;
  std::string algebra;
  std::string summary;
  std::vector<std::string> params;
  std::vector<std::string> functions;
  std::vector<Constraint> constraints;
  std::vector<Regime> regimes;
  std::vector<Generator> generators;
};

/// Named algebra: generator set plus expected table.
struct AlgebraEntry {
  std::string id;
  std::string summary;
  std::vector<std::string> params;
  std::vector<Generator> generators;
  AlgebraSpec spec;
  /// spec lists only some brackets; the others are only required to close.
  bool partial_table = false;
};

/// Expected brackets for a family of generator names. Recognized families:
/// sch1, sch1~, age1, age1~, alt1, alt1~, conf3; `central` adds the central
/// terms k*Z0 of the k-modified representation.
AlgebraSpec standard_spec(const std::string& algebra, const std::vector<std::string>& generators,
                          bool central = false);

class Registry {
 public:
  static const Registry& instance();

  const std::vector<AlgebraEntry>& algebras() const { return algebras_; }
  const std::vector<RepresentationCase>& cases() const { return cases_; }

  const AlgebraEntry& algebra(const std::string& id) const;
  const RepresentationCase& find_case(const std::string& id) const;
  bool has_case(const std::string& id) const;
  bool has_algebra(const std::string& id) const;

  /// Expected table matching the case's generator names.
  AlgebraSpec spec_for(const RepresentationCase& c) const;

 private:
  Registry();
  std::vector<AlgebraEntry> algebras_;
  std::vector<RepresentationCase> cases_;
};

/// Parameter bindings after applying the case's constraints to `params`.
/// With enforce, a supplied value contradicting a constraint throws
/// ConstraintViolation naming the relation.
std::map<std::string, Expr> resolve_parameters(const RepresentationCase& c,
                                               const std::map<std::string, Expr>& params,
                                               bool enforce = true);

/// Generators of a registered case (or algebra id) with parameters bound.
/// Throws UnknownCase and ConstraintViolation.
std::vector<Generator> build_representation(const std::string& id,
                                            const std::map<std::string, Expr>& params = {},
                                            bool enforce = true);

std::vector<Generator> bind_parameters(const std::vector<Generator>& gens,
                            const std::map<std::string, Expr>& bindings,
                            const std::map<std::string, FunctionDef>& functions = {});

const Generator& generator_named(const std::vector<Generator>& gens, const std::string& name);

}  // namespace confsym
