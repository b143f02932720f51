#include <benchmark/benchmark.h>

#include "cpmec/cpm.hpp"
#include "cpmec/distance.hpp"
#include "cpmec/montecarlo.hpp"
#include "cpmec/scenario.hpp"
#include "cpmec/sweep.hpp"

namespace {

using namespace cpmec;

CpmScheme scheme_of(PulseKind pulse, int m) {
  CpmScheme s;
  s.m_ary = m;
  s.mod_index = 0.75;
  s.pulse_len = 3;
  s.pulse = PulseShape{pulse, 0.3};
  return s;
}

void bm_dmin_search(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const CpmScheme s = scheme_of(PulseKind::Rc, m);
  const int depth = default_search_depth(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dmin_search(s, depth).dmin_sq);
  }
}
BENCHMARK(bm_dmin_search)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void bm_waveform_synthesis(benchmark::State& state) {
  const CpmScheme s = scheme_of(PulseKind::Gmsk, 16);
  std::vector<int> symbols(256);
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    symbols[i] = 2 * static_cast<int>((i * 5 + 1) % 16) - 15;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(synthesize_baseband(s, symbols, 16, 1.0).size());
  }
}
BENCHMARK(bm_waveform_synthesis)->Unit(benchmark::kMicrosecond);

void bm_snr_sweep(benchmark::State& state) {
  const Scenario sc = make_scenario({});
  SweepSpec spec;
  spec.variable = SweepVariable::GammaDb;
  spec.grid = gamma_grid(sc);
  spec.fixed = sc;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep(spec).series.size());
  }
}
BENCHMARK(bm_snr_sweep)->Unit(benchmark::kMicrosecond);

void bm_simulate_link(benchmark::State& state) {
  TrialConfig cfg;
  cfg.sep = 0.01;
  cfg.n_symbols = 74;
  cfg.trials = state.range(0);
  cfg.seed = 12345;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_link(cfg).mean_transmissions);
  }
}
BENCHMARK(bm_simulate_link)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
