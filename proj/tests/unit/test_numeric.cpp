#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "confsym/errors.hpp"
#include "confsym/invariance.hpp"
#include "confsym/numeric.hpp"
#include "confsym/parse.hpp"

using namespace confsym;

namespace {

Expr E(const std::string& s) { return parse(s); }
DiffOperator S0() { return schrodinger_operator(SVariant::S0).op; }
const Generator& sch(const std::string& name) {
  return generator_named(Registry::instance().algebra("sch1-zeta").generators, name);
}

Grid cube(double h) { return Grid::uniform({"t", "r", "zeta"}, 1, 2, h); }

double max_diff(const NumericField& a, const NumericField& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

}  // namespace

TEST(Grid, Invariants) {
  EXPECT_THROW(Grid::uniform({"t"}, 1, 2, 0.1), GridTooCoarse);
  EXPECT_THROW(Grid::uniform({"t"}, 1, 2, -0.1), GridTooCoarse);
  Grid g = Grid::uniform({"zeta", "t"}, 1, 2, 1.0 / 16);
  EXPECT_EQ(g.axes()[0].name, "t");
  EXPECT_EQ(g.size(), 17u * 17u);
  EXPECT_THROW(Grid::uniform({"zeta"}, 0, 1, 1.0 / 32).require_safe_domain(), DomainError);
  EXPECT_EQ(g.flatten(g.unflatten(123)), 123u);
}

TEST(FiniteDifference, SecondOrderConvergence) {
  std::vector<double> errs;
  for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
    auto f = NumericField::sample(cube(h), E("exp(r + t/2 + zeta)"));
    errs.push_back(fd_apply(S0(), f).max_abs());
  }
  for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
    double order = std::log2(errs[i] / errs[i + 1]);
    EXPECT_NEAR(order, 2.0, 0.2) << i;
  }
}

TEST(FiniteDifference, DispersionViolated) {
  auto f = NumericField::sample(cube(1.0 / 32), E("exp(r + t + zeta)"));
  auto r = fd_apply(S0(), f);
  auto expect = NumericField::sample(r.grid, E("exp(r + t + zeta)"));
  EXPECT_LT(max_diff(r, expect) / expect.max_abs(), 1e-2);
}

TEST(FiniteDifference, MatchesSymbolicApply) {
  DiffOperator S = schrodinger_operator(SVariant::EMMG).op;
  Expr psi = E("zeta^(2*y)*t*r^2");
  Assignment fixed{{"y", 1}};
  Grid g = Grid::uniform({"t", "r", "zeta", "g"}, 1, 1.5, 1.0 / 32);
  auto r = fd_apply(S, NumericField::sample(g, psi, fixed), fixed);
  auto expect = NumericField::sample(r.grid, apply(S, psi), fixed);
  EXPECT_LT(max_diff(r, expect) / expect.max_abs(), 1e-6);
}

TEST(FiniteDifference, RejectsInactiveCoordinates) {
  auto f = NumericField::sample(Grid::uniform({"t", "r"}, 1, 2, 1.0 / 16), E("t*r"));
  EXPECT_THROW(fd_apply(S0(), f), GridTooCoarse);
}

TEST(FiniteDifference, PointStencilIsExactOnQuartics) {
  DiffOperator D = DiffOperator::parse("t^2*dt*dr - 3*r*dzeta^2 + dr + 2");
  Expr u = E("t^4*r^3 - zeta^4*r + t*zeta^2");
  Assignment p{{"t", 1.3}, {"r", 1.7}, {"zeta", 1.1}};
  double num = fd_apply_at(D, [&](const Assignment& a) { return eval_numeric(u, a); }, p, 1e-2);
  double sym = eval_numeric(apply(D, u), p);
  EXPECT_NEAR(num, sym, 1e-8 * std::abs(sym));
}

TEST(Flow, TranslationShifts) {
  Grid g = cube(1.0 / 32);
  Expr f = E("exp(-r^2)*t*zeta");
  auto out = flow(sch("Ym"), NumericField::sample(g, f), 0.05);
  auto expect = NumericField::sample(g, E("exp(-(r - 1/20)^2)*t*zeta"));
  double m = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (out.valid[i]) m = std::max(m, std::abs(out.field.values[i] - expect.values[i]));
  EXPECT_LT(m, 1e-5);
  EXPECT_GT(out.invalid_points, 0u);
}

TEST(Flow, EulerScalingClosedForm) {
  Generator X0 = Generator::parse("X0", "-t*dt - 1/2*r*dr - x/2");
  Grid g = Grid::uniform({"t", "r"}, 1, 2, 1.0 / 64);
  Assignment fixed{{"x", 0.7}};
  const double eps = 0.02;
  auto f = NumericField::sample(g, E("t^2*r + r^3"), fixed);
  auto out = flow(X0, f, eps, fixed);
  double a = std::exp(-eps), b = std::exp(-eps / 2), mu = std::exp(-eps * 0.7 / 2);
  double m = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!out.valid[i]) continue;
    auto p = g.point(i);
    double t = a * p[0], r = b * p[1];
    m = std::max(m, std::abs(out.field.values[i] - mu * (t * t * r + r * r * r)));
  }
  EXPECT_LT(m, 1e-8);
  EXPECT_LT(out.max_step_error, 1e-10);
}

TEST(Flow, GalileiKeepsSolutions) {
  auto f = NumericField::sample(cube(1.0 / 64), E("exp(r + t/2 + zeta)"));
  auto out = flow(sch("Yp"), f, 0.01);
  auto r = fd_apply(S0(), out.field);
  double m = 0;
  const Grid& g = f.grid;
  for (std::size_t j = 0; j < r.grid.size(); ++j) {
    auto idx = r.grid.unflatten(j);
    for (auto& i : idx) i += 1;
    bool ok = true;
    for (int dt = -1; dt <= 1; ++dt)
      for (int dr = -1; dr <= 1; ++dr)
        for (int dz = -1; dz <= 1; ++dz)
          ok = ok && out.valid[g.flatten({idx[0] + dt, idx[1] + dr, idx[2] + dz})];
    if (ok) m = std::max(m, std::abs(r.values[j]));
  }
  EXPECT_LT(m / f.max_abs(), 1e-4);
}

TEST(Flow, GroupLaw) {
  Generator X0 = Generator::parse("X0", "-t*dt - 1/2*r*dr - x/2");
  Grid g = Grid::uniform({"t", "r"}, 1, 2, 1.0 / 32);
  Assignment fixed{{"x", 0.7}};
  Expr fe = E("exp(-t*r)*r^2");
  auto f = NumericField::sample(g, fe, fixed);
  const double eps = 0.02;
  auto once = flow(X0, f, 2 * eps, fixed);
  auto twice = flow(X0, flow(X0, f, eps, fixed).field, eps, fixed);
  double interp = 0, law = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto idx = g.unflatten(i);
    if (idx[0] < 8 || idx[1] < 8 || !once.valid[i] || !twice.valid[i]) continue;
    auto p = g.point(i);
    double t = std::exp(-2 * eps) * p[0], r = std::exp(-eps) * p[1];
    double exact = std::exp(-eps * 0.7) * std::exp(-t * r) * r * r;
    interp = std::max(interp, std::abs(once.field.values[i] - exact));
    law = std::max(law, std::abs(twice.field.values[i] - once.field.values[i]));
  }
  EXPECT_GT(interp, 0);
  EXPECT_LE(law, 10 * interp);
}

TEST(Flow, LeavingTheDomainThrows) {
  auto f = NumericField::sample(cube(1.0 / 32), E("t*r*zeta"));
  EXPECT_THROW(flow(sch("Ym"), f, 0.5), FlowLeftDomain);
}

TEST(Invariance, SymmetriesStayAtDiscretizationLevel) {
  auto f = NumericField::sample(cube(1.0 / 64), E("exp(r + t/2 + zeta)"));
  double base = baseline_residual(S0(), f);
  EXPECT_LE(invariance_residual(S0(), sch("Yp"), f, 0.01), 5 * base);
  EXPECT_LE(invariance_residual(S0(), sch("X1"), f, 0.01, {{"x", 0.5}}), 5 * base);
}

TEST(Invariance, BrokenSymmetryGrowsWithEps) {
  auto f = NumericField::sample(cube(1.0 / 32), E("exp(r + t/2 + zeta)"));
  double base = baseline_residual(S0(), f);
  std::vector<double> eps{0.005, 0.01, 0.02}, res;
  for (double e : eps) res.push_back(invariance_residual(S0(), sch("X1"), f, e, {{"x", 1}}));
  EXPECT_GT(res[1], 10 * base);
  double mx = (eps[0] + eps[1] + eps[2]) / 3, my = (res[0] + res[1] + res[2]) / 3, num = 0, den = 0;
  for (int i = 0; i < 3; ++i) {
    num += (eps[i] - mx) * (res[i] - my);
    den += (eps[i] - mx) * (eps[i] - mx);
  }
  EXPECT_GT(num / den, 0);
}

TEST(MassTransform, GaussianIsSelfDual) {
  Grid g({Axis{"zeta", -12, 12, 481}});
  auto f = NumericField::sample(g, E("exp(-zeta^2/2)"));
  for (double m : {-2.0, -1.0, 0.0, 0.5, 2.0}) {
    auto out = mass_transform(f, m);
    ASSERT_EQ(out.values.size(), 1u);
    EXPECT_NEAR(out.values[0].real(), std::exp(-m * m / 2), 1e-6) << m;
    EXPECT_NEAR(out.values[0].imag(), 0, 1e-6) << m;
  }
}

TEST(MassTransform, ShiftTheorem) {
  Grid g({Axis{"zeta", -12, 14, 521}});
  auto f = NumericField::sample(g, E("exp(-(zeta - 1)^2/2)"));
  const double m = 1.3;
  auto out = mass_transform(f, m);
  std::complex<double> expect = std::polar(std::exp(-m * m / 2), -m);
  EXPECT_NEAR(std::abs(out.values[0] - expect), 0, 1e-6);
}

TEST(MassTransform, KeepsOtherAxes) {
  Grid g({Axis{"t", 1, 2, 16}, Axis{"zeta", -12, 12, 481}});
  auto f = NumericField::sample(g, E("t*exp(-zeta^2/2)"));
  auto out = mass_transform(f, 0);
  ASSERT_EQ(out.grid.dims(), 1u);
  for (std::size_t i = 0; i < out.values.size(); ++i) EXPECT_NEAR(out.values[i].real(), out.grid.point(i)[0], 1e-9);
}

TEST(MassTransform, RequiresDecay) {
  Grid g({Axis{"zeta", -2, 2, 41}});
  EXPECT_THROW(mass_transform(NumericField::sample(g, E("exp(-zeta^2/2)")), 0), NoDecay);
}

TEST(Snapshot, RoundTrip) {
  auto f = NumericField::sample(Grid::uniform({"t", "zeta"}, 1, 2, 1.0 / 16), E("t^2 - zeta/3"));
  auto path = (std::filesystem::temp_directory_path() / "confsym_snapshot_test.bin").string();
  save_field(f, path, "test field");
  NumericField back = load_field(path);
  EXPECT_TRUE(back.grid == f.grid);
  EXPECT_EQ(back.values, f.values);
  EXPECT_TRUE(std::filesystem::exists(path + ".meta"));
  EXPECT_EQ(std::filesystem::file_size(path), 8u * (1 + 2 * 5 + f.values.size()));
  std::filesystem::remove(path);
  std::filesystem::remove(path + ".meta");
}

TEST(Invariance, ConditionalSymmetryNeedsTheAuxCondition) {
  const auto& c = Registry::instance().find_case("1");
  const Generator& X1 = generator_named(c.generators, "X1");
  Assignment fixed{{"x", 1}, {"y", 0.5}, {"p01", 1}};
  Grid g = Grid::uniform({"t", "r", "zeta", "g"}, 1, 1.5, 1.0 / 32);
  auto good = NumericField::sample(g, E("g^(-1/2)*exp(r + t/2 + zeta)"));
  auto bad = NumericField::sample(g, E("exp(r + t/2 + zeta)"));
  double base_good = baseline_residual(S0(), good, fixed);
  double base_bad = baseline_residual(S0(), bad, fixed);
  EXPECT_LE(invariance_residual(S0(), X1, good, 0.01, fixed), 5 * base_good);
  EXPECT_GT(invariance_residual(S0(), X1, bad, 0.01, fixed), 10 * base_bad);
}
