#include "cpmec/cpm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cpmec {
namespace {

constexpr double k_pi = 3.14159265358979323846;

double gauss_tail(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double gauss_density(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * k_pi);
}

// Antiderivative of the Gaussian tail: d/dz [z*Q(z) - pdf(z)] = Q(z).
double gauss_tail_antiderivative(double z) {
  return z * gauss_tail(z) - gauss_density(z);
}

struct gmsk_shape {
  double a = 0.0;       // 2*pi*B / sqrt(ln 2), B = bt / T
  double center = 0.0;  // N*T/2: raw pulse is symmetric about t = center
  double cdf_lo = 0.0;  // raw integral value at the truncation start
  double scale = 1.0;   // renormalization so the truncated pulse sums to 1/2
};

// Raw (untruncated) GMSK running integral in the centered coordinate u.
double gmsk_raw_cdf(double a, double period, double u) {
  return (gauss_tail_antiderivative(a * (u - 0.5 * period)) -
          gauss_tail_antiderivative(a * (u + 0.5 * period))) /
         (2.0 * period * a);
}

gmsk_shape make_gmsk_shape(const CpmScheme& s) {
  gmsk_shape g;
  const double period = s.symbol_period;
  g.a = 2.0 * k_pi * s.pulse.bt_product / (period * std::sqrt(std::log(2.0)));
  g.center = 0.5 * s.pulse_len * period;
  g.cdf_lo = gmsk_raw_cdf(g.a, period, -g.center);
  const double mass = gmsk_raw_cdf(g.a, period, g.center) - g.cdf_lo;
  g.scale = 0.5 / mass;
  return g;
}

bool power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

void validate_symbols(const CpmScheme& scheme, const std::vector<int>& symbols) {
  if (symbols.empty()) throw std::invalid_argument("symbols: empty sequence");
  for (int v : symbols) {
    if (v % 2 == 0 || std::abs(v) > scheme.m_ary - 1) {
      throw std::invalid_argument("symbols: " + std::to_string(v) +
                                  " outside the odd alphabet |v| <= M-1");
    }
  }
}

PhaseTrajectory trajectory_impl(const CpmScheme& scheme,
                                const std::vector<int>& symbols,
                                int samples_per_symbol) {
  if (samples_per_symbol < 2) {
    throw std::invalid_argument("samples_per_symbol: must be >= 2");
  }
  const double period = scheme.symbol_period;
  const double two_pi_h = 2.0 * k_pi * scheme.mod_index;
  const std::size_t len = symbols.size();
  const std::size_t count =
      (len + static_cast<std::size_t>(scheme.pulse_len)) * samples_per_symbol + 1;

  PhaseTrajectory out;
  out.sample_period = period / samples_per_symbol;
  out.radians.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = static_cast<double>(k) * out.sample_period;
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      acc += symbols[i] *
             phase_pulse_value(scheme, t - static_cast<double>(i) * period);
    }
    out.radians[k] = two_pi_h * acc;
  }
  return out;
}

}  // namespace

std::string_view pulse_name(PulseKind kind) {
  switch (kind) {
    case PulseKind::Rec: return "rec";
    case PulseKind::Rc: return "rc";
    case PulseKind::Gmsk: return "gmsk";
  }
  return "unknown";
}

std::optional<PulseKind> pulse_from_name(std::string_view name) {
  if (name == "rec" || name == "lrec") return PulseKind::Rec;
  if (name == "rc" || name == "lrc") return PulseKind::Rc;
  if (name == "gmsk") return PulseKind::Gmsk;
  return std::nullopt;
}

int CpmScheme::bits_per_symbol() const {
  int bits = 0;
  for (int v = m_ary; v > 1; v >>= 1) ++bits;
  return bits;
}

void validate(const CpmScheme& scheme) {
  if (scheme.m_ary < 2 || !power_of_two(scheme.m_ary)) {
    throw std::invalid_argument("m_ary: must be a power of two >= 2");
  }
  if (!(scheme.mod_index > 0.0)) {
    throw std::invalid_argument("mod_index: must be > 0");
  }
  if (scheme.pulse_len < 1) {
    throw std::invalid_argument("pulse_len: must be >= 1");
  }
  if (!(scheme.symbol_period > 0.0)) {
    throw std::invalid_argument("symbol_period: must be > 0");
  }
  if (scheme.pulse.kind == PulseKind::Gmsk && !(scheme.pulse.bt_product > 0.0)) {
    throw std::invalid_argument("bt_product: must be > 0 for GMSK");
  }
}

double freq_pulse_value(const CpmScheme& scheme, double t) {
  const double period = scheme.symbol_period;
  const double span = scheme.pulse_len * period;
  if (t < 0.0 || t > span) return 0.0;
  switch (scheme.pulse.kind) {
    case PulseKind::Rec:
      return 1.0 / (2.0 * span);
    case PulseKind::Rc:
      return (1.0 - std::cos(2.0 * k_pi * t / span)) / (2.0 * span);
    case PulseKind::Gmsk: {
      const gmsk_shape g = make_gmsk_shape(scheme);
      const double u = t - g.center;
      const double raw = (gauss_tail(g.a * (u - 0.5 * period)) -
                          gauss_tail(g.a * (u + 0.5 * period))) /
                         (2.0 * period);
      return g.scale * raw;
    }
  }
  return 0.0;
}

double phase_pulse_value(const CpmScheme& scheme, double t) {
  const double period = scheme.symbol_period;
  const double span = scheme.pulse_len * period;
  if (t <= 0.0) return 0.0;
  if (t >= span) return 0.5;
  switch (scheme.pulse.kind) {
    case PulseKind::Rec:
      return t / (2.0 * span);
    case PulseKind::Rc:
      return t / (2.0 * span) - std::sin(2.0 * k_pi * t / span) / (4.0 * k_pi);
    case PulseKind::Gmsk: {
      const gmsk_shape g = make_gmsk_shape(scheme);
      const double value =
          g.scale * (gmsk_raw_cdf(g.a, period, t - g.center) - g.cdf_lo);
      return std::clamp(value, 0.0, 0.5);
    }
  }
  return 0.0;
}

double max_phase_slope(const CpmScheme& scheme) {
  const double period = scheme.symbol_period;
  // sup over one period of the N-pulse overlap sum; the sum is periodic in T
  // once pulses from every offset are included.
  constexpr int grid = 4096;
  double peak = 0.0;
  for (int i = 0; i <= grid; ++i) {
    const double t = period * i / grid;
    double acc = 0.0;
    for (int n = 0; n < scheme.pulse_len; ++n) {
      acc += freq_pulse_value(scheme, t + n * period);
    }
    peak = std::max(peak, acc);
  }
  return 2.0 * k_pi * scheme.mod_index * (scheme.m_ary - 1) * peak;
}

PhaseTrajectory phase_trajectory(const CpmScheme& scheme,
                                 const std::vector<int>& symbols,
                                 int samples_per_symbol) {
  validate(scheme);
  validate_symbols(scheme, symbols);
  return trajectory_impl(scheme, symbols, samples_per_symbol);
}

std::vector<std::complex<double>> synthesize_baseband(const CpmScheme& scheme,
                                                      const std::vector<int>& symbols,
                                                      int samples_per_symbol,
                                                      double symbol_energy) {
  if (!(symbol_energy > 0.0)) {
    throw std::invalid_argument("symbol_energy: must be > 0");
  }
  const PhaseTrajectory traj = phase_trajectory(scheme, symbols, samples_per_symbol);
  const double amplitude = std::sqrt(2.0 * symbol_energy / scheme.symbol_period);
  std::vector<std::complex<double>> samples(traj.radians.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    samples[k] = std::polar(amplitude, traj.radians[k]);
  }
  return samples;
}

namespace detail {

PhaseTrajectory phase_trajectory_unchecked(const CpmScheme& scheme,
                                           const std::vector<int>& symbols,
                                           int samples_per_symbol) {
  validate(scheme);
  if (symbols.empty()) throw std::invalid_argument("symbols: empty sequence");
  return trajectory_impl(scheme, symbols, samples_per_symbol);
}

}  // namespace detail

}  // namespace cpmec
