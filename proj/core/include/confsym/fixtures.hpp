#pragma once

// Functional-equation systems satisfied by the coefficient functions of the
// representations, paired with their solved forms.

#include <map>
#include <string>
#include <vector>

#include "confsym/expr.hpp"
#include "confsym/parse.hpp"

namespace confsym {

struct DerivationFixture {
  std::string id;
  std::string summary;
  SymbolTable table;
  std::vector<std::string> sources;
  std::vector<Expr> constraints;
  std::map<std::string, FunctionDef> bindings;
};

struct FixtureResult {
  std::string id;
  std::vector<Expr> residuals;
  bool ok() const;
};

const std::vector<DerivationFixture>& fixtures();
/// Throws UnknownCase listing the known ids.
const DerivationFixture& find_fixture(const std::string& id);

/// Residual of every constraint after substituting the bindings.
FixtureResult evaluate_fixture(const DerivationFixture& f);

/// Like evaluate_fixture, but throws FixtureViolation carrying the first
/// nonzero residual.
FixtureResult verify_derivation_fixture(const std::string& id);

/// Copy with binding `name` replaced by body + q * u^2, u the first formal variable.
DerivationFixture perturbed(const DerivationFixture& f, const std::string& name, const Rational& q);

}  // namespace confsym
