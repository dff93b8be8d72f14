#include <gtest/gtest.h>

#include "confsym/errors.hpp"
#include "confsym/fixtures.hpp"

using namespace confsym;

namespace {

std::string residuals(const FixtureResult& r) {
  std::string s;
  for (std::size_t i = 0; i < r.residuals.size(); ++i)
    if (!r.residuals[i].is_zero()) s += "eq" + std::to_string(i + 1) + ": " + r.residuals[i].render() + "; ";
  return s;
}

}  // namespace

TEST(Fixtures, AllSolvedFormsSatisfyTheirSystems) {
  ASSERT_EQ(fixtures().size(), 7u);
  for (const auto& f : fixtures()) {
    auto r = evaluate_fixture(f);
    EXPECT_TRUE(r.ok()) << f.id << ": " << residuals(r);
    EXPECT_NO_THROW(verify_derivation_fixture(f.id)) << f.id;
  }
}

TEST(Fixtures, EveryPerturbationIsDetected) {
  const Rational q(3, 7);
  for (const auto& f : fixtures()) {
    for (const auto& [name, def] : f.bindings) {
      auto r = evaluate_fixture(perturbed(f, name, q));
      EXPECT_FALSE(r.ok()) << f.id << " perturbing " << name;
    }
  }
}

TEST(Fixtures, ViolationCarriesResidual) {
  EXPECT_THROW(find_fixture("nope"), UnknownCase);
  auto f = perturbed(find_fixture("age1-nmg"), "l", Rational(1));
  auto r = evaluate_fixture(f);
  ASSERT_FALSE(r.ok());
  EXPECT_FALSE(r.residuals[0].is_zero());
}
