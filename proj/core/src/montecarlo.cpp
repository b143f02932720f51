#include "cpmec/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cpmec {
namespace {

// SplitMix64: tiny, well-mixed, and splittable by construction, which is what
// the counter-derived substreams need.
struct splitmix64 {
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double next_unit() {  // uniform in [0, 1) with 53 random bits
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
};

// Scatters a trial counter into a substream start. Without this the streams
// for trials i and i+1 would sit one step apart on the same +gamma orbit and
// overlap almost entirely, correlating neighboring trials.
std::uint64_t scatter(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void validate(const TrialConfig& cfg) {
  if (!(cfg.sep >= 0.0) || !(cfg.sep < 1.0)) {
    throw std::invalid_argument("sep: must be in [0, 1)");
  }
  if (cfg.n_symbols < 1) throw std::invalid_argument("n_symbols: must be >= 1");
  if (cfg.trials < 1) throw std::invalid_argument("trials: must be >= 1");
  if (cfg.max_rounds < 1) throw std::invalid_argument("max_rounds: must be >= 1");
}

}  // namespace

long long simulate_packet_rounds(const TrialConfig& cfg, long long trial_index) {
  validate(cfg);
  splitmix64 rng{scatter(cfg.seed + (static_cast<std::uint64_t>(trial_index) + 1) *
                                        0x9E3779B97F4A7C15ULL)};
  for (long long round = 1; round <= cfg.max_rounds; ++round) {
    bool clean = true;
    for (int s = 0; s < cfg.n_symbols; ++s) {
      if (rng.next_unit() < cfg.sep) {
        clean = false;
        break;
      }
    }
    if (clean) return round;
  }
  return 0;  // not delivered within the cap
}

TrialStats simulate_link(const TrialConfig& cfg, const std::optional<RoundEnergy>& energy) {
  validate(cfg);
  TrialStats stats;
  double sum = 0.0, sum_sq = 0.0;
  for (long long i = 0; i < cfg.trials; ++i) {
    const long long rounds = simulate_packet_rounds(cfg, i);
    if (rounds == 0) {
      ++stats.capped_trials;
      continue;
    }
    ++stats.trials;
    ++stats.histogram[rounds];
    sum += static_cast<double>(rounds);
    sum_sq += static_cast<double>(rounds) * static_cast<double>(rounds);
  }
  if (stats.trials > 0) {
    const auto n = static_cast<double>(stats.trials);
    stats.mean_transmissions = sum / n;
    if (stats.trials > 1) {
      const double variance =
          std::max(0.0, (sum_sq - n * stats.mean_transmissions * stats.mean_transmissions) /
                            (n - 1.0));
      stats.stderr_transmissions = std::sqrt(variance / n);
    }
    if (energy) {
      stats.mean_energy_j = stats.mean_transmissions * (energy->e_fw_j + energy->e_rv_j);
    }
  }
  return stats;
}

ComparisonReport compare_to_analytic(const TrialStats& stats, double analytic_n_re) {
  ComparisonReport report;
  report.analytic = analytic_n_re;
  report.simulated = stats.mean_transmissions;
  if (stats.stderr_transmissions > 0.0) {
    report.z_score = std::fabs(stats.mean_transmissions - analytic_n_re) /
                     stats.stderr_transmissions;
  } else {
    report.z_score = stats.mean_transmissions == analytic_n_re
                         ? 0.0
                         : std::numeric_limits<double>::infinity();
  }
  report.pass = report.z_score <= 3.0;
  return report;
}

}  // namespace cpmec
