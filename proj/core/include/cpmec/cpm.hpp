#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <vector>

namespace cpmec {

enum class PulseKind { Rec, Rc, Gmsk };

std::string_view pulse_name(PulseKind kind);
std::optional<PulseKind> pulse_from_name(std::string_view name);

struct PulseShape {
  PulseKind kind = PulseKind::Rec;
  double bt_product = 0.3;  // -3 dB time-bandwidth product; GMSK only
};

// M-ary CPM scheme: symbol alphabet {+-1, +-3, ..., +-(M-1)}, modulation
// index h, frequency pulse spanning N symbol intervals of period T.
struct CpmScheme {
  int m_ary = 2;
  double mod_index = 0.5;
  int pulse_len = 1;
  PulseShape pulse;
  double symbol_period = 1.0;

  int bits_per_symbol() const;
  bool full_response() const { return pulse_len == 1; }
};

// Throws std::invalid_argument naming the offending field.
void validate(const CpmScheme& scheme);

// Frequency pulse g(t): zero outside [0, N*T], integrates to exactly 1/2.
// The truncated GMSK pulse is renormalized so the integral invariant holds.
double freq_pulse_value(const CpmScheme& scheme, double t);

// Phase pulse q(t), the running integral of g: clamps to 0 below t=0 and to
// 1/2 above t=N*T; nondecreasing.
double phase_pulse_value(const CpmScheme& scheme, double t);

// Largest instantaneous |dphi/dt| any symbol sequence can produce:
// 2*pi*h*(M-1) * sup_t sum_i g(t - iT). The pulse-train sup exceeds sup g
// whenever N > 1 pulses overlap.
double max_phase_slope(const CpmScheme& scheme);

struct PhaseTrajectory {
  double sample_period = 0.0;
  std::vector<double> radians;  // uniform grid covering [0, (len + N) * T]
};

// phi(t) = 2*pi*h * sum_i I_i * q(t - iT), sampled on a uniform grid with
// samples_per_symbol >= 2 points per T. Rejects empty data and symbols
// outside the odd alphabet.
PhaseTrajectory phase_trajectory(const CpmScheme& scheme,
                                 const std::vector<int>& symbols,
                                 int samples_per_symbol);

// Complex-baseband waveform sqrt(2E/T) * exp(j*phi(t)) with zero initial
// phase; constant envelope by construction.
std::vector<std::complex<double>> synthesize_baseband(const CpmScheme& scheme,
                                                      const std::vector<int>& symbols,
                                                      int samples_per_symbol,
                                                      double symbol_energy);

namespace detail {

// Trajectory evaluation without alphabet validation. The phase is linear in
// the symbol values, but sums of two odd alphabets are even, so the checked
// entry point cannot express that identity; tests exercise it through here.
PhaseTrajectory phase_trajectory_unchecked(const CpmScheme& scheme,
                                           const std::vector<int>& symbols,
                                           int samples_per_symbol);

}  // namespace detail

}  // namespace cpmec
