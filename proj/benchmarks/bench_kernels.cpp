#include <benchmark/benchmark.h>

#include "dispersmooth/dissipative.hpp"
#include "dispersmooth/evolution.hpp"
#include "dispersmooth/fft.hpp"
#include "dispersmooth/io.hpp"
#include "dispersmooth/resonance.hpp"
#include "dispersmooth/smoothing.hpp"
#include "dispersmooth/spectral_ops.hpp"

namespace ds = dispersmooth;

namespace {

ds::SystemState kgs_state(int d, int n) {
  const ds::Grid g = ds::Grid::make(d, n);
  ds::SmoothingParams p;
  p.d = d;
  return ds::scan_initial_state(p, g, 7, 1.0);
}

void BM_TransformRoundTrip(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ds::SpectralField f = ds::random_sobolev_field(ds::Grid::make(2, n), 0.0, 1);
  for (auto _ : state) {
    const ds::Samples x = ds::inverse_transform(f);
    benchmark::DoNotOptimize(ds::forward_transform(f.grid(), x));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.size()));
}
BENCHMARK(BM_TransformRoundTrip)->Arg(64)->Arg(128)->Arg(256);

void BM_DealiasedProduct(benchmark::State& state) {
  const ds::Grid g = ds::Grid::make(2, static_cast<int>(state.range(0)));
  const ds::SpectralField a = ds::random_sobolev_field(g, 0.0, 1);
  const ds::SpectralField b = ds::random_sobolev_field(g, 0.0, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ds::dealiased_product(a, b));
}
BENCHMARK(BM_DealiasedProduct)->Arg(64)->Arg(128);

void BM_NonlinearRhs(benchmark::State& state) {
  const ds::SystemState s = kgs_state(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ds::nonlinear_rhs(s));
}
BENCHMARK(BM_NonlinearRhs)->Arg(64)->Arg(128);

void BM_LawsonStep(benchmark::State& state) {
  const ds::SystemState s = kgs_state(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ds::advance(s, 1e-3, 1e-3));
}
BENCHMARK(BM_LawsonStep)->Arg(64)->Arg(128);

void BM_DampedStep(benchmark::State& state) {
  const ds::SystemState s = kgs_state(2, 64);
  ds::DampedParams p;
  const ds::DampedState d0 = ds::make_damped_state(s.u, s.wplus, s.wminus, p);
  ds::IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 1e-3;
  for (auto _ : state) benchmark::DoNotOptimize(ds::integrate_damped(d0, p, cfg));
}
BENCHMARK(BM_DampedStep);

void BM_LatticeConvolution(benchmark::State& state) {
  ds::BilinearOptions o;
  o.xi_points = static_cast<int>(state.range(0));
  o.time_modes = static_cast<int>(state.range(0));
  const auto u = ds::random_bump_field(o, ds::ModulationSurface::schrodinger, 1);
  const auto v = ds::random_bump_field(o, ds::ModulationSurface::wave_plus, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ds::lattice_convolution(u, v, o.max_points));
}
BENCHMARK(BM_LatticeConvolution)->Arg(16)->Arg(32);

void BM_CounterexampleRatio(benchmark::State& state) {
  const double N = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ds::sharpness_counterexample(N, 0.0, 0.0, 0.75, 0.55, 2));
  }
}
BENCHMARK(BM_CounterexampleRatio)->Arg(16)->Arg(128);

void BM_LemmaIntegral(benchmark::State& state) {
  double b = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ds::lemma_integral(1.5, 1.0, 0.0, b));
    b = b > 100.0 ? 0.0 : b + 1.7;
  }
}
BENCHMARK(BM_LemmaIntegral);

void BM_CheckpointEncode(benchmark::State& state) {
  const ds::SystemState s = kgs_state(2, 128);
  for (auto _ : state) benchmark::DoNotOptimize(ds::encode_checkpoint(s));
}
BENCHMARK(BM_CheckpointEncode);

}  // namespace

BENCHMARK_MAIN();
