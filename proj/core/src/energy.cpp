#include "cpmec/energy.hpp"

#include <cmath>
#include <stdexcept>

namespace cpmec {

void validate(const RadioProfile& profile) {
  if (!(profile.p_t0_w >= 0.0)) throw std::invalid_argument("p_t0_w: must be >= 0");
  if (!(profile.p_r0_w >= 0.0)) throw std::invalid_argument("p_r0_w: must be >= 0");
  if (!(profile.eta > 0.0) || profile.eta > 1.0) {
    throw std::invalid_argument("eta: must be in (0, 1]");
  }
  if (!(profile.xi >= 1.0)) throw std::invalid_argument("xi: must be >= 1");
  if (!(profile.e_st_j >= 0.0)) throw std::invalid_argument("e_st_j: must be >= 0");
}

void validate(const LinkBudget& link) {
  if (!(link.alpha >= 2.0)) throw std::invalid_argument("alpha: must be >= 2");
  if (!(link.a0 > 0.0)) throw std::invalid_argument("a0: must be > 0");
  if (!(link.n0_w_per_hz > 0.0)) throw std::invalid_argument("n0_w_per_hz: must be > 0");
  if (!(link.bandwidth_hz > 0.0)) throw std::invalid_argument("bandwidth_hz: must be > 0");
  if (!(link.noise_figure > 0.0)) throw std::invalid_argument("noise_figure: must be > 0");
  if (!(link.link_margin > 0.0)) throw std::invalid_argument("link_margin: must be > 0");
}

double transmit_power(const LinkBudget& link, double distance_m, double gamma) {
  if (!(distance_m > 0.0)) throw std::invalid_argument("distance_m: must be > 0");
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma: must be >= 0");
  return link.gain_product() * std::pow(distance_m, link.alpha) * gamma;
}

double received_snr(const LinkBudget& link, double distance_m, double p_t_w) {
  if (!(distance_m > 0.0)) throw std::invalid_argument("distance_m: must be > 0");
  if (!(p_t_w >= 0.0)) throw std::invalid_argument("p_t_w: must be >= 0");
  return p_t_w / (link.gain_product() * std::pow(distance_m, link.alpha));
}

double tx_power_consumption(const RadioProfile& profile, double p_t_w) {
  if (!(p_t_w >= 0.0)) throw std::invalid_argument("p_t_w: must be >= 0");
  return profile.p_t0_w + (profile.xi / profile.eta) * p_t_w;
}

TimingPlan packet_timing(const PacketSpec& forward, const PacketSpec& feedback,
                         int bits_per_symbol, double symbol_rate_hz) {
  if (!(symbol_rate_hz > 0.0)) throw std::invalid_argument("symbol_rate_hz: must be > 0");
  TimingPlan plan;
  plan.t_dta_s = symbols_per_packet(forward.total_bits(), bits_per_symbol) / symbol_rate_hz;
  plan.t_fta_s = symbols_per_packet(feedback.total_bits(), bits_per_symbol) / symbol_rate_hz;
  plan.t_dra_s = plan.t_dta_s;
  plan.t_fra_s = plan.t_fta_s;
  return plan;
}

EnergyBreakdown energy_per_bit(const RadioProfile& profile, const LinkBudget& link,
                               const SchemeErrorModel& model,
                               const PacketSpec& forward, const PacketSpec& feedback,
                               double distance_m, double gamma, double symbol_rate_hz) {
  validate(profile);
  validate(link);
  validate(forward);
  // The feedback leg may be absent entirely (zero bytes); negative counts are
  // still rejected.
  if (feedback.pilot_bytes < 0 || feedback.header_bytes < 0 ||
      feedback.payload_bytes < 0) {
    throw std::invalid_argument("feedback: byte counts must be >= 0");
  }

  EnergyBreakdown out;
  out.sep = symbol_error_prob(model, gamma);
  out.n_re = expected_transmissions(out.sep, forward, model.bits_per_symbol);
  out.p_t_forward_w = transmit_power(link, distance_m, gamma);
  out.p_t_feedback_w = out.p_t_forward_w;

  const TimingPlan plan =
      packet_timing(forward, feedback, model.bits_per_symbol, symbol_rate_hz);
  const double p_tx_forward = tx_power_consumption(profile, out.p_t_forward_w);
  const double p_tx_feedback = tx_power_consumption(profile, out.p_t_feedback_w);

  out.e_fw_j = 2.0 * profile.e_st_j + p_tx_forward * plan.t_dta_s +
               profile.p_r0_w * plan.t_dra_s;
  out.e_rv_j = p_tx_feedback * plan.t_fta_s + profile.p_r0_w * plan.t_fra_s;
  out.e_b_j_per_bit = out.n_re * (out.e_fw_j + out.e_rv_j) / forward.total_bits();
  return out;
}

}  // namespace cpmec
