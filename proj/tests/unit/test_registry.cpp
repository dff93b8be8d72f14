#include <gtest/gtest.h>

#include <set>

#include "confsym/errors.hpp"
#include "confsym/parse.hpp"
#include "confsym/registry.hpp"

using namespace confsym;

namespace {

std::string mismatch_list(const StructureReport& rep) {
  std::string s;
  for (const auto& c : rep.checks)
    if (!c.ok) s += "[" + c.a + "," + c.b + "] residual " + c.residual.render() + "; ";
  return s;
}

}  // namespace

TEST(Structure, FixedMassSchrodinger) {
  const auto& a = Registry::instance().algebra("sch1-mass");
  auto rep = verify_structure(a.generators, a.spec);
  EXPECT_TRUE(rep.ok()) << mismatch_list(rep);
  EXPECT_EQ(rep.checks.size(), 15u);
}

TEST(Structure, AllAlgebrasWithTables) {
  for (const auto& a : Registry::instance().algebras()) {
    if (a.partial_table) continue;
    auto rep = verify_structure(a.generators, a.spec);
    EXPECT_TRUE(rep.ok()) << a.id << ": " << mismatch_list(rep);
  }
}

TEST(Structure, EveryCaseMatchesItsAlgebra) {
  const auto& reg = Registry::instance();
  for (const auto& c : reg.cases()) {
    auto gens = build_representation(c.id);
    auto rep = verify_structure(gens, reg.spec_for(c));
    EXPECT_TRUE(rep.ok()) << "case " << c.id << ": " << mismatch_list(rep);
  }
}

TEST(Structure, CentralTermMissingFromBasis) {
  auto gens = build_representation("kmod-sch1");
  gens.pop_back();  // drop Z0
  std::vector<std::string> names;
  for (const auto& g : gens) names.push_back(g.name());
  auto rep = verify_structure(gens, standard_spec("sch1", names));
  ASSERT_EQ(rep.mismatches(), 1u);
  for (const auto& c : rep.checks) {
    if (c.ok) continue;
    EXPECT_EQ(c.a + c.b, "Xm1X1");
    // [Xm1,X1] - (-2 X0) = -k, i.e. -k*Z0 with Z0 = -1
    EXPECT_EQ(c.residual, Generator::parse("", "k"));
  }
}

TEST(Structure, CentralExtensionBrackets) {
  auto gens = build_representation("kmod-alt1~");
  const auto& X1 = generator_named(gens, "X1");
  const auto& Vp = generator_named(gens, "Vp");
  const auto& Ym = generator_named(gens, "Ym");
  const auto& D = generator_named(gens, "D");
  const auto& Z0 = generator_named(gens, "Z0");
  EXPECT_EQ(commutator(Vp, Ym), D.scaled(Expr(2)) + Z0.scaled(parse("2*k")));
  auto sch = build_representation("kmod-sch1");
  EXPECT_EQ(commutator(generator_named(sch, "X1"), generator_named(sch, "Xm1")),
            generator_named(sch, "X0").scaled(Expr(2)) + Z0.scaled(parse("k")));
  (void)X1;
}

TEST(Structure, ConstraintPerturbationBreaksStructure) {
  auto gens = build_representation("7", {{"p01", parse("2*y + 1/3")}}, false);
  auto rep = verify_structure(gens, Registry::instance().spec_for(Registry::instance().find_case("7")));
  EXPECT_GE(rep.mismatches(), 1u);
}

TEST(Registry, ConstraintViolationNamed) {
  try {
    build_representation("7", {{"p01", Expr(1)}});
    FAIL();
  } catch (const ConstraintViolation& e) {
    EXPECT_NE(std::string(e.what()).find("p01 = 2*y"), std::string::npos) << e.what();
  }
}

TEST(Registry, UnknownCase) { EXPECT_THROW(build_representation("no-such"), UnknownCase); }

TEST(Registry, CaseOneCoefficients) {
  auto gens = build_representation("1");
  EXPECT_EQ(generator_named(gens, "X1").coeff("g"), parse("-p01*t*g"));
  EXPECT_TRUE(generator_named(gens, "M0").coeff("g").is_zero());
  EXPECT_TRUE(generator_named(gens, "Yp").coeff("g").is_zero());
}

TEST(Registry, CaseThreeCoefficients) {
  auto gens = build_representation("3", {{"y", parse("3/4")}});
  EXPECT_EQ(generator_named(gens, "M0").coeff("g"), parse("3/2*g/zeta"));
  EXPECT_EQ(generator_named(gens, "Yp").coeff("g"), parse("3/2*g*r/zeta"));
  EXPECT_EQ(generator_named(gens, "X1").coeff("g"), parse("3/4*g*r^2/zeta"));
}

TEST(Registry, CaseFiveBindsL0) {
  auto gens = build_representation("5");
  EXPECT_EQ(generator_named(gens, "M0").coeff("g"), parse("-s*g/zeta"));
  EXPECT_EQ(generator_named(gens, "X1").coeff("g"), parse("-s/(2*zeta)*r^2*g"));
}

TEST(Closure, ConformalAlgebra) {
  const auto& a = Registry::instance().algebra("conf3");
  StructureTable t = closure_check(a.generators);
  EXPECT_EQ(t.entries.size(), 45u);
}

TEST(Closure, TimeTranslationAndDilatation) {
  auto gens = build_representation("sch1-zeta");
  StructureTable t = closure_check({generator_named(gens, "Xm1"), generator_named(gens, "X0")});
  ASSERT_EQ(t.entries.size(), 1u);
  // [Xm1, X0] = -Xm1
  EXPECT_EQ(t.entries.begin()->second, (std::vector<Rational>{-1, 0}));
}

TEST(Closure, FailsOutsideSpan) {
  auto gens = build_representation("sch1-zeta");
  EXPECT_THROW(closure_check({generator_named(gens, "X1"), generator_named(gens, "Ym")}),
               ClosureFailure);
}

TEST(Weights, RootDiagram) {
  const auto& a = Registry::instance().algebra("conf3");
  auto w = adjoint_weights(a.generators, generator_named(a.generators, "X0"),
                           generator_named(a.generators, "N"));
  std::set<Weight> nonzero;
  int zeros = 0;
  for (const auto& [n, wt] : w) {
    if (wt.first == 0 && wt.second == 0)
      ++zeros;
    else
      nonzero.insert(wt);
    if (n == "Yp") EXPECT_EQ(wt, Weight(Rational(-1, 2), -1));
    if (n == "M0") EXPECT_EQ(wt, Weight(0, -1));
  }
  EXPECT_EQ(zeros, 2);
  EXPECT_EQ(nonzero.size(), 8u);
}

TEST(Weights, NotAWeightVector) {
  const auto& a = Registry::instance().algebra("conf3");
  Generator mix = generator_named(a.generators, "X1") + generator_named(a.generators, "Ym");
  mix.set_name("X1+Ym");
  EXPECT_THROW(adjoint_weights({mix}, generator_named(a.generators, "X0"),
                               generator_named(a.generators, "N")),
               NotAWeightVector);
}
