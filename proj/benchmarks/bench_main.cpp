#include <benchmark/benchmark.h>

#include <vector>

#include "aet/character.hpp"
#include "aet/coefficients.hpp"
#include "aet/constants.hpp"
#include "aet/decomposition.hpp"
#include "aet/volterra.hpp"

namespace {

aet::EulerProductSpec mod4() {
  return aet::EulerProductSpec::dirichlet(aet::build_kronecker_character(-4));
}

void BM_SieveAlpha(benchmark::State& state) {
  const auto spec = mod4();
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(aet::sieve_alpha(spec, n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SieveAlpha)->Arg(10'000)->Arg(1'000'000);

void BM_PhiTable(benchmark::State& state) {
  const auto spec = mod4();
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(aet::phi_table(spec, n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PhiTable)->Arg(10'000)->Arg(1'000'000);

void BM_ExactDecomposeBatch(benchmark::State& state) {
  const auto spec = mod4();
  const auto table = aet::phi_table(spec, 500, aet::NumericMode::exact);
  const auto constants = aet::to_exact(aet::compute_constants(spec));
  std::vector<aet::Rational> xs;
  for (int twice = 2; twice <= 1000; ++twice) {
    xs.emplace_back(twice, 2);
    xs.back().canonicalize();
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(aet::decompose_batch<aet::Rational>(xs, table, constants));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(xs.size()));
}
BENCHMARK(BM_ExactDecomposeBatch)->Unit(benchmark::kMillisecond);

void BM_LValue(benchmark::State& state) {
  const auto chi = aet::build_kronecker_character(-4);
  for (auto _ : state) benchmark::DoNotOptimize(aet::l_value(chi, 1.0));
}
BENCHMARK(BM_LValue);

void BM_VolterraResidual(benchmark::State& state) {
  const auto spec = mod4();
  const auto table = aet::phi_table(spec, 22);
  const auto constants = aet::compute_constants(spec);
  const aet::F1Function f1(table.coefficients(), constants, 22);
  const aet::E2Function e2(table, constants.c_f, 22);
  const aet::PiecewiseFunction e2_fn{[&](double x) { return e2(x); },
                                     [&](double x) { return e2.left_limit(x); },
                                     [&](double x) { return e2.right_limit(x); }};
  const aet::SolutionFamily member{[&](double x) { return f1(x); }, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(aet::residual(member, e2_fn, 20.0, 1e-3));
}
BENCHMARK(BM_VolterraResidual)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
