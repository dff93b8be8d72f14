#include <benchmark/benchmark.h>

#include <random>

#include "confsym/algebra.hpp"
#include "confsym/invariance.hpp"
#include "confsym/numeric.hpp"
#include "confsym/parse.hpp"
#include "confsym/registry.hpp"

using namespace confsym;

static void BM_ParseRender(benchmark::State& state) {
  const std::string src = "t^(-x - 2)*exp(r + t/2 + zeta)*(zeta^(1/2)*g^(x/(2*y)) + 3*r^2*m(t^y/g))";
  for (auto _ : state) benchmark::DoNotOptimize(parse(src).render());
}
BENCHMARK(BM_ParseRender);

static void BM_ProductAndDerivative(benchmark::State& state) {
  Expr a = parse("(t + r + zeta + g)^4");
  Expr b = parse("t^(x/2)*exp(r)*m(t*g) + zeta^(-1)*g^y");
  for (auto _ : state) benchmark::DoNotOptimize(differentiate(a * b, "t"));
}
BENCHMARK(BM_ProductAndDerivative);

static void BM_ConformalClosure(benchmark::State& state) {
  const auto& gens = Registry::instance().algebra("conf3").generators;
  for (auto _ : state) benchmark::DoNotOptimize(closure_check(gens));
}
BENCHMARK(BM_ConformalClosure)->Unit(benchmark::kMillisecond);

static void BM_CheckCase(benchmark::State& state) {
  const std::string id = std::to_string(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_case(id));
}
BENCHMARK(BM_CheckCase)->DenseRange(0, 8)->Unit(benchmark::kMillisecond);

static void BM_PotentialCatalogue(benchmark::State& state) {
  for (auto _ : state)
    for (const auto& F : potentials()) benchmark::DoNotOptimize(evaluate_potential(F));
}
BENCHMARK(BM_PotentialCatalogue)->Unit(benchmark::kMillisecond);

static void BM_SolveCharacteristics(benchmark::State& state) {
  auto sys = system_for(find_potential("table2-row6"));
  for (auto _ : state) benchmark::DoNotOptimize(solve_characteristics(sys));
}
BENCHMARK(BM_SolveCharacteristics)->Unit(benchmark::kMillisecond);

static void BM_FiniteDifferenceResidual(benchmark::State& state) {
  double h = 1.0 / static_cast<double>(state.range(0));
  auto f = NumericField::sample(Grid::uniform({"t", "r", "zeta"}, 1, 2, h), parse("exp(r + t/2 + zeta)"));
  auto S = schrodinger_operator(SVariant::S0).op;
  for (auto _ : state) benchmark::DoNotOptimize(baseline_residual(S, f));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.values.size()));
}
BENCHMARK(BM_FiniteDifferenceResidual)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_Flow(benchmark::State& state) {
  double h = 1.0 / static_cast<double>(state.range(0));
  auto f = NumericField::sample(Grid::uniform({"t", "r", "zeta"}, 1, 2, h), parse("exp(r + t/2 + zeta)"));
  const auto& X1 = generator_named(Registry::instance().algebra("sch1-zeta").generators, "X1");
  for (auto _ : state) benchmark::DoNotOptimize(flow(X1, f, 0.01, {{"x", 0.5}}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.values.size()));
}
BENCHMARK(BM_Flow)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_MassTransform(benchmark::State& state) {
  auto f = NumericField::sample(Grid({Axis{"zeta", -12, 12, 481}}), parse("exp(-zeta^2/2)"));
  for (auto _ : state) benchmark::DoNotOptimize(mass_transform(f, 0.5));
}
BENCHMARK(BM_MassTransform);

BENCHMARK_MAIN();
