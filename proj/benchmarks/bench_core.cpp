#include <benchmark/benchmark.h>

#include "bsqf/divergence.hpp"
#include "bsqf/experiment.hpp"
#include "bsqf/hermitian.hpp"
#include "bsqf/quasi_factorization.hpp"

namespace {

void BM_HermitianEig(benchmark::State& state) {
  bsqf::Rng rng(1);
  const auto d = static_cast<std::size_t>(state.range(0));
  const bsqf::ComplexMatrix m = bsqf::random_hermitian(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(bsqf::hermitian_eig(m));
}
BENCHMARK(BM_HermitianEig)->Arg(4)->Arg(16)->Arg(64);

void BM_BsEntropy(benchmark::State& state) {
  bsqf::Rng rng(2);
  const auto d = static_cast<std::size_t>(state.range(0));
  const bsqf::DensityMatrix rho = bsqf::sample_ginibre_density(d, rng);
  const bsqf::DensityMatrix sigma = bsqf::sample_ginibre_density(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(bsqf::bs_entropy(rho, sigma));
}
BENCHMARK(BM_BsEntropy)->Arg(4)->Arg(16);

void BM_Umegaki(benchmark::State& state) {
  bsqf::Rng rng(3);
  const bsqf::DensityMatrix rho = bsqf::sample_ginibre_density(4, rng);
  const bsqf::DensityMatrix sigma = bsqf::sample_ginibre_density(4, rng);
  for (auto _ : state) benchmark::DoNotOptimize(bsqf::umegaki(rho, sigma));
}
BENCHMARK(BM_Umegaki);

void BM_StepDiagnostics(benchmark::State& state) {
  bsqf::Rng rng(4);
  const bsqf::BipartiteState rho(bsqf::sample_ginibre_density(4, rng), 2, 2);
  const bsqf::BipartiteState sigma(bsqf::sample_ginibre_density(4, rng), 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(bsqf::step_diagnostics(rho, sigma));
}
BENCHMARK(BM_StepDiagnostics);

// Per-sample cost of the superadditivity experiment, measured over 100-sample runs.
void BM_Figure1Samples(benchmark::State& state) {
  bsqf::ExperimentConfig cfg;
  cfg.mode = bsqf::ExperimentMode::Perturbed;
  cfg.n = 100;
  for (auto _ : state) benchmark::DoNotOptimize(bsqf::run_figure1(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.n);
}
BENCHMARK(BM_Figure1Samples)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
