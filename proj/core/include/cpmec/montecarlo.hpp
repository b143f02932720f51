#pragma once

#include <cstdint>
#include <map>
#include <optional>

namespace cpmec {

struct TrialConfig {
  double sep = 0.0;          // per-symbol error probability, [0, 1)
  int n_symbols = 1;         // symbols per packet
  long long trials = 100000;
  std::uint64_t seed = 12345;
  long long max_rounds = 100000;  // safety cap per packet
};

// Per-round energies when the link is attached to an energy scenario.
struct RoundEnergy {
  double e_fw_j = 0.0;
  double e_rv_j = 0.0;
};

struct TrialStats {
  double mean_transmissions = 0.0;
  double stderr_transmissions = 0.0;
  double mean_energy_j = 0.0;  // zero unless RoundEnergy was supplied
  long long trials = 0;        // trials contributing to the means
  long long capped_trials = 0; // excluded: hit max_rounds without success
  std::map<long long, long long> histogram;  // rounds -> count
};

// One packet delivery: rounds drawn until a round has zero symbol errors.
// Returns the round count, or 0 when max_rounds passed without a success.
// trial_index selects the counter-derived substream, so any execution order
// (or partitioning across threads) reproduces the same per-trial values.
long long simulate_packet_rounds(const TrialConfig& cfg, long long trial_index);

// Full ARQ experiment; deterministic in (cfg.seed, cfg.trials). Capped trials
// are excluded from the means and reported in capped_trials.
TrialStats simulate_link(const TrialConfig& cfg,
                         const std::optional<RoundEnergy>& energy = std::nullopt);

struct ComparisonReport {
  double analytic = 0.0;
  double simulated = 0.0;
  double z_score = 0.0;
  bool pass = false;  // |mean - analytic| <= 3 standard errors
};

ComparisonReport compare_to_analytic(const TrialStats& stats, double analytic_n_re);

}  // namespace cpmec
