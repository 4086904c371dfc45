#include <benchmark/benchmark.h>

#include <random>

#include "nvmo/dynamics.hpp"
#include "nvmo/linalg.hpp"
#include "nvmo/models.hpp"

namespace {

nvmo::CMatrix random_hermitian(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(0.0, 1.0);
  nvmo::CMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = d(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      h(i, j) = nvmo::Complex(d(rng), d(rng));
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_hermitian(n, 1), b = random_hermitian(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(nvmo::matmul(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Matmul)->RangeMultiplier(2)->Range(16, 256)->Complexity(benchmark::oNCubed);

void BM_JacobiEigenvalues(benchmark::State& state) {
  const auto h = random_hermitian(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(nvmo::hermitian_eigenvalues(h));
}
BENCHMARK(BM_JacobiEigenvalues)->Arg(18)->Arg(64)->Arg(128);

// One generator application on the squeeze space b (x) c.
void BM_LindbladApplySqueeze(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  const nvmo::HilbertSpace bc({nvmo::SubsystemSpec::boson(n_max, "b"), nvmo::SubsystemSpec::boson(n_max, "c")});
  nvmo::ModelParams p;
  p.g = 1.0;
  p.alpha = 1.0;
  p.omega = 1.0;
  p.gamma2 = p.gamma3 = 0.002;
  p.n_bath = 20.0;
  const nvmo::LindbladGenerator gen(nvmo::build_H_squeeze_eff(p, bc), nvmo::bath_terms_squeeze(p, bc));
  const auto rho = random_hermitian(bc.dim(), 4);
  nvmo::CMatrix out;
  for (auto _ : state) {
    gen.apply(0.0, rho, out);
    benchmark::DoNotOptimize(out.data().data());
  }
}
BENCHMARK(BM_LindbladApplySqueeze)->Arg(12)->Arg(18);

}  // namespace
BENCHMARK_MAIN();
