#pragma once

#include "cpmec/error_models.hpp"

namespace cpmec {

// Transceiver circuit model: P_Tx = p_t0 + (xi/eta) * P_T on the transmit
// side, a constant p_r0 on the receive side, plus start-up energy spent once
// per round at the transmitter pair.
struct RadioProfile {
  double p_t0_w = 15.9e-3;
  double p_r0_w = 58.2e-3;
  double eta = 0.7;   // PA drain efficiency, (0, 1]
  double xi = 1.0;    // PAPR, linear, >= 1
  double e_st_j = 0.0;
};

void validate(const RadioProfile& profile);

// Path-loss/noise chain: the radiated power required to hit a target SNR at
// distance d is gain_product() * d^alpha * gamma.
struct LinkBudget {
  double a0 = 1000.0;           // equivalent antenna gain, linear
  double alpha = 3.5;           // path-loss exponent, >= 2
  double n0_w_per_hz = 3.98e-21;
  double bandwidth_hz = 20e3;
  double noise_figure = 10.0;   // linear
  double link_margin = 10.0;    // linear

  double gain_product() const {
    return a0 * n0_w_per_hz * bandwidth_hz * noise_figure * link_margin;
  }
};

void validate(const LinkBudget& link);

struct TimingPlan {
  double t_dta_s = 0.0;  // forward packet on air
  double t_dra_s = 0.0;  // receiver active during forward packet
  double t_fta_s = 0.0;  // feedback packet on air
  double t_fra_s = 0.0;  // receiver active during feedback
};

struct EnergyBreakdown {
  double sep = 0.0;
  double n_re = 1.0;
  double e_fw_j = 0.0;
  double e_rv_j = 0.0;
  double e_b_j_per_bit = 0.0;
  double p_t_forward_w = 0.0;
  double p_t_feedback_w = 0.0;
};

// Radiated power needed for SNR gamma at distance d: A * d^alpha * gamma.
double transmit_power(const LinkBudget& link, double distance_m, double gamma);

// Received SNR from radiated power; exact inverse of transmit_power.
double received_snr(const LinkBudget& link, double distance_m, double p_t_w);

// Transmitter power consumption: p_t0 + (xi/eta) * p_t.
double tx_power_consumption(const RadioProfile& profile, double p_t_w);

// On-air durations from packet sizes; receive windows equal the transmit
// windows (the receiver listens exactly while the packet is on air).
TimingPlan packet_timing(const PacketSpec& forward, const PacketSpec& feedback,
                         int bits_per_symbol, double symbol_rate_hz);

// Full per-bit energy: N_re * (E_FW + E_RV) / L with
//   E_FW = 2*E_ST + P_Tx * t_dta + p_r0 * t_dra,
//   E_RV = P_Tx,F * t_fta + p_r0 * t_fra,
// and the feedback leg radiating at the same SNR target.
EnergyBreakdown energy_per_bit(const RadioProfile& profile, const LinkBudget& link,
                               const SchemeErrorModel& model,
                               const PacketSpec& forward, const PacketSpec& feedback,
                               double distance_m, double gamma, double symbol_rate_hz);

}  // namespace cpmec
