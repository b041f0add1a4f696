// Microbenchmarks for the hot paths: transfer products, discriminant
// sampling, band extraction, and the phase-averaged exponent.
#include <benchmark/benchmark.h>

#include "quasispec/discriminant.hpp"
#include "quasispec/lyapunov.hpp"
#include "quasispec/spectrum.hpp"
#include "quasispec/transfer.hpp"

namespace {

using namespace quasispec;

const AnalyticPotential& amo2() {
  static const AnalyticPotential f = AnalyticPotential::cosine(2.0);
  return f;
}

void BM_phi_n(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const Frequency alpha(Rational(8, 13));
  for (auto _ : state) {
    const auto m = phi_n(1.3, amo2(), alpha, 0.37, n);
    benchmark::DoNotOptimize(m.log_scale);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_phi_n)->Arg(64)->Arg(512)->Arg(4096);

void BM_sample_discriminant(benchmark::State& state) {
  const auto q = static_cast<int>(state.range(0));
  const Rational pq(1, q);
  for (auto _ : state) {
    const auto s = sample_discriminant(0.9, amo2(), pq, q);
    benchmark::DoNotOptimize(s.max_abs_value());
  }
}
BENCHMARK(BM_sample_discriminant)->Arg(13)->Arg(55)->Arg(233);

void BM_sigma(benchmark::State& state) {
  const auto q = static_cast<int>(state.range(0));
  const Rational pq(1, q);
  for (auto _ : state) {
    const auto b = sigma(amo2(), pq, 0.2);
    benchmark::DoNotOptimize(b.measure());
  }
}
BENCHMARK(BM_sigma)->Arg(8)->Arg(21)->Arg(55);

void BM_bar_gamma(benchmark::State& state) {
  const auto tc = static_cast<int>(state.range(0));
  const Rational pq(8, 13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bar_gamma_rational(2.7, amo2(), pq, tc));
  }
}
BENCHMARK(BM_bar_gamma)->Arg(256)->Arg(1024)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
