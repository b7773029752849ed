#include <benchmark/benchmark.h>

#include "chiralret/discrim.hpp"
#include "chiralret/greens.hpp"
#include "chiralret/oracle.hpp"
#include "chiralret/rates.hpp"

using namespace chiralret;

namespace {

constexpr double kOmega = 6.44e15;

TransferConfig water_cfg(double r) {
  return make_transfer_config(molecule_3mcp(), molecule_3mcp(), r, reference_medium("water"),
                              LocalField::onsager);
}

}  // namespace

static void BM_DualGreen(benchmark::State& state) {
  const auto rv = greens::SeparationVector::along_default_axis(2e-8);
  const Medium med = reference_medium("mercury");
  for (auto _ : state)
    benchmark::DoNotOptimize(greens::dual_green(greens::kMM, rv, kOmega, med));
}
BENCHMARK(BM_DualGreen);

static void BM_RatesTrace(benchmark::State& state) {
  const auto cfg = water_cfg(2e-8);
  for (auto _ : state) benchmark::DoNotOptimize(rates::reduced_gammas_trace(cfg));
}
BENCHMARK(BM_RatesTrace);

static void BM_RatesClosed(benchmark::State& state) {
  const auto cfg = water_cfg(2e-8);
  for (auto _ : state) benchmark::DoNotOptimize(rates::reduced_gammas_closed(cfg));
}
BENCHMARK(BM_RatesClosed);

static void BM_ScanSeparation(benchmark::State& state) {
  const auto cfg = water_cfg(1e-9);
  for (auto _ : state)
    benchmark::DoNotOptimize(discrim::scan_separation(cfg, 1e-9, 1e-5, state.range(0)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ScanSeparation)->Arg(200)->Arg(2000);

static void BM_ScanComplexN(benchmark::State& state) {
  const discrim::GridSpec spec{{0.0, 3.0, 121}, {0.0, 3.0, 121}};
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(discrim::scan_complex_n(molecule_3mcp(), molecule_3mcp(), spec,
                                                     LocalField::onsager,
                                                     discrim::LimitMode::derived_default, threads));
}
BENCHMARK(BM_ScanComplexN)->Arg(1)->Arg(4)->UseRealTime();

static void BM_OptimizeRealN(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(discrim::optimize_real_n(molecule_3mcp(), molecule_3mcp(),
                                                      discrim::Branch::super_unity,
                                                      discrim::Target::far));
}
BENCHMARK(BM_OptimizeRealN);

static void BM_ValidationSuite(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(oracle::run_validation_suite());
}
BENCHMARK(BM_ValidationSuite)->Unit(benchmark::kMillisecond)->Iterations(2);
BENCHMARK_MAIN();
