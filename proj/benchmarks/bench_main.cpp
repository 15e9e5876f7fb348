#include <benchmark/benchmark.h>

#include "qdipole/coefficients.hpp"
#include "qdipole/entanglement.hpp"
#include "qdipole/hilbert.hpp"
#include "qdipole/liouvillian.hpp"
#include "qdipole/specfun.hpp"

namespace {

qd::FieldSpec field(double T) {
  qd::FieldSpec f;
  f.temperature = T;
  f.gamma0 = 1e-3;
  f.cutoff = 1e-3;
  return f;
}

void BM_LerchPhi(benchmark::State& state) {
  const double lambda = 1.0 / double(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qd::specfun::lerch_phi1({0.3, 0.7}, lambda));
}
BENCHMARK(BM_LerchPhi)->Arg(1)->Arg(100)->Arg(10000);

void BM_ImagLerch(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qd::coef::imag_lerch(1e-3, 1.0, 1.0, 0.2));
}
BENCHMARK(BM_ImagLerch);

void BM_ImagLowT(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qd::coef::imag_lowT(1e-3, 1.0, 1.0, 0.02));
}
BENCHMARK(BM_ImagLowT);

void BM_BuildLiouvillian(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  const qd::CoefficientModel cm(field(0.1), qd::ring_array(n, 1.0, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(qd::build_liouvillian(qd::LiouvillianModel(cm)));
}
BENCHMARK(BM_BuildLiouvillian)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_SpectrumNumeric(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  const auto L = qd::build_liouvillian(qd::LiouvillianModel(qd::CoefficientModel(field(0.0), qd::ring_array(n, 1.0, 1.0))));
  for (auto _ : state) benchmark::DoNotOptimize(qd::spectrum_numeric(L));
}
BENCHMARK(BM_SpectrumNumeric)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_SpectrumPerturbative(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  const qd::LiouvillianModel model(qd::CoefficientModel(field(0.0), qd::ring_array(n, 1.0, 1.0)));
  for (auto _ : state) benchmark::DoNotOptimize(qd::spectrum_perturbative(model, 1e-3));
}
BENCHMARK(BM_SpectrumPerturbative)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_Concurrence(benchmark::State& state) {
  const qd::Matrix rho = qd::state_from_spec("bell_plus", 2);
  for (auto _ : state) benchmark::DoNotOptimize(qd::unmaximized_concurrence(rho));
}
BENCHMARK(BM_Concurrence);

}  // namespace

BENCHMARK_MAIN();
