#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpmec/cpm.hpp"
#include "cpmec/distance.hpp"
#include "cpmec/energy.hpp"
#include "cpmec/error_models.hpp"

namespace cpmec {

// Configuration errors carry the offending key (and line, when parsing a
// file) in the message.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One modulation under study: a CPM pulse/order pair, OQPSK, or 16QAM.
struct SchemeSpec {
  ModFamily family = ModFamily::Cpm;
  PulseKind pulse = PulseKind::Rec;
  int order = 16;                // CPM only
  std::optional<int> kmin;       // CPM only, overrides the scenario default

  std::string label() const;
};

// Flat study configuration. dB-suffixed and mW-suffixed fields keep their
// interface units; materializers below convert to SI/linear.
struct Scenario {
  // packets
  int pilot_bytes = 4;
  int header_bytes = 3;
  int payload_bytes = 30;
  int feedback_pilot_bytes = 4;
  int feedback_header_bytes = 3;
  int feedback_payload_bytes = 0;
  // link budget
  double symbol_rate_sps = 20e3;
  double bandwidth_hz = 20e3;
  double noise_psd_dbm_per_hz = -174.0;
  double noise_figure_db = 10.0;
  double antenna_gain_db = 30.0;
  double link_margin_db = 10.0;
  double path_loss_exponent = 3.5;
  // circuits
  double p_t0_mw = 15.9;
  double p_r0_mw = 58.2;
  double startup_energy_j = 0.0;
  double eta_cpm = 0.7;
  double eta_linear = 0.35;  // OQPSK and 16QAM power amplifiers
  double papr_cpm_db = 0.0;
  double papr_oqpsk_db = 3.5;
  double papr_qam16_db = 6.7;
  // CPM waveform family
  double mod_index = 0.75;
  int pulse_len = 3;
  double gmsk_bt = 0.3;
  int cpm_kmin = 1;
  int samples_per_symbol = 16;
  // operating point
  double gamma_db = 8.0;
  double distance_m = 10.0;
  // sweep grids
  double gamma_min_db = 0.0;
  double gamma_max_db = 25.0;
  double gamma_step_db = 0.5;
  double distance_min_m = 1.0;
  double distance_max_m = 100.0;
  double distance_step_m = 1.0;
  // distance resolution
  std::string dmin_source = "table";  // "table" or "search"
  int search_depth_m2 = 12;
  int search_depth_m4 = 12;
  int search_depth_m8 = 8;
  int search_depth_m16 = 6;
  double search_margin = 1e-4;
  // optimizer
  double optimizer_tol_db = 0.05;
  // Monte Carlo
  long long trials = 100000;
  unsigned long long seed = 12345;
  long long max_rounds = 100000;
  // schemes under study
  std::vector<SchemeSpec> schemes;
  bool schemes_overridden = false;

  Scenario();
};

// Parse "rec16,rc16,gmsk16,oqpsk,qam16" style lists; CPM entries accept an
// optional ":kmin=<n>" suffix.
std::vector<SchemeSpec> parse_scheme_list(const std::string& text);
std::string format_scheme_list(const std::vector<SchemeSpec>& schemes);

// Defaults, then the file (when given), then overrides, each "key=value".
// Unknown keys, unparsable values, and range violations throw ConfigError.
Scenario load_scenario(const std::string& path, const std::vector<std::string>& overrides);
Scenario make_scenario(const std::vector<std::string>& overrides);

// Full round-trippable key=value rendering of a scenario.
std::string serialize_scenario(const Scenario& scenario);

void validate(const Scenario& scenario);

// Materializers.
PacketSpec forward_packet(const Scenario& scenario);
PacketSpec feedback_packet(const Scenario& scenario);
LinkBudget link_budget(const Scenario& scenario);
RadioProfile radio_profile(const Scenario& scenario, const SchemeSpec& scheme);
CpmScheme cpm_scheme(const Scenario& scenario, const SchemeSpec& scheme);

// Resolves the CPM distance via the reference table (when the scheme matches
// its h = 3/4, N = 3, BT = 0.3 cells) or dmin_search, per dmin_source.
SchemeErrorModel error_model(const Scenario& scenario, const SchemeSpec& scheme);

std::vector<double> gamma_grid(const Scenario& scenario);
std::vector<double> distance_grid(const Scenario& scenario);

}  // namespace cpmec
