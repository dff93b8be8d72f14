#include <gtest/gtest.h>

#include "properties.hpp"

using namespace confsym::testing;

TEST(Properties, JacobiOnRegisteredRepresentations) {
  auto r = jacobi_suite(20240611, 100);
  EXPECT_TRUE(r.ok()) << r.failures << " of " << r.trials << ", first: " << r.first_failure;
}

TEST(Properties, ProductRule) {
  auto r = product_rule_suite(7, 1000);
  EXPECT_TRUE(r.ok()) << r.failures << " of " << r.trials << ", first: " << r.first_failure;
}

TEST(Properties, MixedPartialsCommute) {
  auto r = mixed_partial_suite(11, 1000);
  EXPECT_TRUE(r.ok()) << r.failures << " of " << r.trials << ", first: " << r.first_failure;
}

TEST(Properties, SymbolicAndNumericApplyAgree) {
  auto r = operator_agreement_suite(13, 100, 1e-8);
  EXPECT_TRUE(r.ok()) << r.failures << " of " << r.trials << ", worst " << r.worst << ", first: " << r.first_failure;
}

TEST(Properties, EveryRegisteredGeneratorAgreesWithFiniteDifferences) {
  auto r = operator_agreement_suite(17, 400, 1e-6);
  EXPECT_TRUE(r.ok()) << r.failures << " of " << r.trials << ", worst " << r.worst << ", first: " << r.first_failure;
}

TEST(Properties, Deterministic) {
  EXPECT_EQ(operator_agreement_suite(5, 10, 1e-8).worst, operator_agreement_suite(5, 10, 1e-8).worst);
  std::mt19937_64 a(3), b(3);
  EXPECT_EQ(random_expression(a), random_expression(b));
}
