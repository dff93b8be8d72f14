#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "confsym/operators.hpp"

namespace confsym {

/// Linear combination of named generators, e.g. 2*X0 - N.
using Combination = std::vector<std::pair<std::string, Expr>>;

std::string render_combination(const Combination& c);

/// Expected commutation relations. Pairs not listed are expected to commute.
struct AlgebraSpec {
  std::string name;
  std::vector<std::string> generators;
  std::map<std::pair<std::string, std::string>, Combination> brackets;

  void set(const std::string& a, const std::string& b, Combination rhs);
  /// Expected [a,b], using antisymmetry for the reversed pair.
  Combination expected(const std::string& a, const std::string& b) const;
  bool contains(const std::string& gen) const;
};

struct BracketCheck {
  std::string a;
  std::string b;
  Combination expected;
  /// [a,b] - expected; zero on a match.
  Generator residual;
  bool ok = false;
};

struct StructureReport {
  std::string algebra;
  std::vector<BracketCheck> checks;
  bool ok() const;
  std::size_t mismatches() const;
};

/// Coefficients c_i with target = sum c_i gens[i], solved exactly over
/// Q(parameters); nullopt if target is outside the span.
std::optional<std::vector<RatFunc>> solve_in_span(const Generator& target,
                                                  const std::vector<Generator>& gens);

/// Compare every pairwise commutator of gens with the expected table. The
/// generators are matched to the spec by name.
StructureReport verify_structure(const std::vector<Generator>& gens, const AlgebraSpec& spec);

struct StructureTable {
  std::vector<std::string> names;
  /// (i, j) with i < j -> coefficient vector over names.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Rational>> entries;
  std::string render() const;
};

/// Computed structure constants; throws ClosureFailure naming the first pair
/// whose bracket leaves the span or needs parameter-dependent coefficients.
StructureTable closure_check(const std::vector<Generator>& gens);

using Weight = std::pair<Rational, Rational>;

/// Eigenvalues of ad(H1), ad(H2) on each generator: [H, X] = w X.
/// Throws NotAWeightVector naming the offending generator.
std::vector<std::pair<std::string, Weight>> adjoint_weights(const std::vector<Generator>& gens,
                                                            const Generator& h1,
                                                            const Generator& h2);

}  // namespace confsym
