#pragma once

// Seeded property suites shared by the unit and acceptance tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "confsym/expr.hpp"
#include "confsym/operators.hpp"

namespace confsym::testing {

struct SuiteResult {
  std::size_t trials = 0;
  std::size_t failures = 0;
  double worst = 0;  // largest relative error where one is measured
  std::string first_failure;
  bool ok() const { return failures == 0; }
};

/// Random expression over t r zeta g with parameters, powers, exp, log and
/// applications of m.
Expr random_expression(std::mt19937_64& rng, int depth = 3);
/// Random polynomial of degree <= 4 in each of t r zeta g.
Expr random_polynomial(std::mt19937_64& rng);

/// Every generator of every registered algebra and case, with the
/// representation it came from.
struct Drawn {
  std::string source;
  Generator generator;
};
std::vector<std::vector<Drawn>> registered_generator_sets();

/// Numeric stand-ins for every function symbol: separable products of
/// derivatives of exp(0.3 u) + u^2.
FunctionImpls sample_functions();

SuiteResult jacobi_suite(std::uint64_t seed, std::size_t triples);
SuiteResult product_rule_suite(std::uint64_t seed, std::size_t expressions);
SuiteResult mixed_partial_suite(std::uint64_t seed, std::size_t expressions);
/// Symbolic apply against five-point finite differences at a random point;
/// error measured against max(1, sum of term magnitudes).
SuiteResult operator_agreement_suite(std::uint64_t seed, std::size_t pairs, double tolerance);

}  // namespace confsym::testing
