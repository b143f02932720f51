#include "cpmec/distance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace cpmec {
namespace {

constexpr double k_pi = 3.14159265358979323846;
constexpr int k_panels = 64;         // Simpson panels per symbol interval
constexpr double k_zero_eps = 1e-10;  // below this a symbol integral is identically zero
constexpr double k_tie_rel = 1e-6;

struct rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

// Continued-fraction recovery of h as p/q with a bounded denominator.
std::optional<rational> to_rational(double x, std::int64_t max_den = 1024) {
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = x;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(v);
    if (fl > 1e15) break;
    const auto a = static_cast<std::int64_t>(fl);
    const std::int64_t p2 = a * p1 + p0;
    const std::int64_t q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (q1 > 0 &&
        std::abs(x - static_cast<double>(p1) / static_cast<double>(q1)) <
            1e-12 * std::max(1.0, std::abs(x))) {
      return rational{p1, q1};
    }
    const double frac = v - fl;
    if (frac < 1e-15) break;
    v = 1.0 / frac;
  }
  return std::nullopt;
}

class search_engine {
 public:
  search_engine(const CpmScheme& scheme, int max_depth, double margin)
      : sch_(scheme),
        m_ary_(scheme.m_ary),
        n_(scheme.pulse_len),
        dmax_(2 * (scheme.m_ary - 1)),
        b_(2 * scheme.m_ary - 1),
        depth_cap_(max_depth),
        h_(scheme.mod_index),
        bits_(scheme.bits_per_symbol()),
        margin_(margin) {
    // q sampled at the Simpson grid for every overlap age: an active delta of
    // age j contributes q((x + j) * T) at local position x.
    qgrid_.resize(n_);
    for (int j = 0; j < n_; ++j) {
      for (int i = 0; i <= k_panels; ++i) {
        const double t = (j + static_cast<double>(i) / k_panels) * sch_.symbol_period;
        qgrid_[j][i] = phase_pulse_value(sch_, t);
      }
    }
    if (const auto r = to_rational(h_)) {
      rational_ = true;
      hp_ = r->num;
      hq_ = r->den;
      mod_ = static_cast<int>(2 * hq_);
    }
    memo_.reserve(1 << 16);
    if (rational_ && n_ > 1) build_zero_graph();
  }

  DistanceResult run() {
    seed_incumbent();
    std::vector<int> window(static_cast<std::size_t>(std::max(0, n_ - 1)), 0);
    prefix_.clear();
    dfs(0, 0, 0, window, 0.0, std::numeric_limits<double>::infinity());
    if (candidates_.empty()) {
      throw std::runtime_error("no merged event found within max_depth=" +
                               std::to_string(depth_cap_));
    }
    double dmin = std::numeric_limits<double>::infinity();
    for (const auto& [value, seq] : candidates_) dmin = std::min(dmin, value);

    DistanceResult result;
    result.dmin_sq = dmin;
    result.search_depth = depth_cap_;
    for (const auto& [value, seq] : candidates_) {
      if (value > dmin * (1.0 + k_tie_rel)) continue;
      bool duplicate = false;
      for (std::size_t i = 0; i < result.achieving_sequences.size(); i += 2) {
        if (result.achieving_sequences[i] == seq) {
          duplicate = true;
          break;
        }
      }
      if (duplicate) continue;
      std::vector<int> negated(seq.size());
      std::transform(seq.begin(), seq.end(), negated.begin(), std::negate<int>());
      result.achieving_sequences.push_back(seq);
      result.achieving_sequences.push_back(std::move(negated));
    }
    result.kmin = static_cast<int>(result.achieving_sequences.size());
    return result;
  }

 private:
  CpmScheme sch_;
  int m_ary_;
  int n_;
  int dmax_;
  int b_;  // number of admissible delta values, 2M - 1
  int depth_cap_;
  double h_;
  double bits_;
  double margin_;
  bool rational_ = false;
  std::int64_t hp_ = 0, hq_ = 1;
  int mod_ = 0;
  bool weak_events_ = false;
  std::vector<std::array<double, k_panels + 1>> qgrid_;
  std::unordered_map<std::uint64_t, double> memo_;
  std::vector<char> zero_sustainable_;
  double best_ = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, std::vector<int>>> candidates_;
  std::vector<int> prefix_;

  // Saturated phase state after one more delta leaves the active window.
  int sat_advance(int s, int oldest) const {
    if (!rational_) return s + oldest;
    int next = (s + oldest) % mod_;
    if (next < 0) next += mod_;
    return next;
  }

  bool merged(int s_total) const {
    if (rational_) {
      int s = s_total % mod_;
      if (s < 0) s += mod_;
      return (hp_ % mod_) * s % mod_ == 0;
    }
    const double r = std::fabs(std::fmod(h_ * s_total, 2.0));
    return std::min(r, 2.0 - r) <= 1e-9;
  }

  std::uint64_t memo_key(int s_sat, const int* active) const {
    // 13 bits of phase state (raw saturated sums stay well inside +-4096 at
    // the permitted depths), 6 bits per active delta, N <= 8.
    auto key = static_cast<std::uint64_t>(s_sat + 4096);
    for (int j = 0; j < n_; ++j) {
      key = (key << 6) | static_cast<std::uint64_t>((active[j] + dmax_) / 2);
    }
    return key;
  }

  // Integral of 1 - cos(dphi) over one symbol interval, in d^2 units
  // (log2 M multiplied in; T cancels in the normalized coordinate).
  // active[j] is the delta of age j, newest first.
  double symbol_integral(int s_sat, const int* active) {
    const std::uint64_t key = memo_key(s_sat, active);
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
    const double psi = k_pi * h_ * s_sat;
    const double c = 2.0 * k_pi * h_;
    double sum = 0.0;
    for (int i = 0; i <= k_panels; ++i) {
      double phase = psi;
      for (int j = 0; j < n_; ++j) phase += c * active[j] * qgrid_[j][i];
      const double f = 1.0 - std::cos(phase);
      const int w = (i == 0 || i == k_panels) ? 1 : (i % 2 == 1 ? 4 : 2);
      sum += w * f;
    }
    const double value = bits_ * sum / (3.0 * k_panels);
    memo_.emplace(key, value);
    return value;
  }

  // Residual integral after the last delta: N-1 zero-padded intervals until
  // every pulse saturates. Zero when the state is already quiescent.
  double tail_integral(int s_sat, std::vector<int> window) {
    double total = 0.0;
    int active[16];
    for (int r = 0; r + 1 < n_; ++r) {
      active[0] = 0;
      for (int j = 1; j < n_; ++j) active[j] = window[static_cast<std::size_t>(n_ - 1 - j)];
      total += symbol_integral(s_sat, active);
      const int oldest = window[0];
      window.erase(window.begin());
      window.push_back(0);
      s_sat = sat_advance(s_sat, oldest);
    }
    return total;
  }

  std::size_t z_index(int s_mod, const std::vector<int>& window) const {
    auto idx = static_cast<std::size_t>(s_mod);
    for (int w : window) {
      idx = idx * static_cast<std::size_t>(b_) +
            static_cast<std::size_t>((w + dmax_) / 2);
    }
    return idx;
  }

  // Greatest fixed point of the zero-transition relation over the finite
  // state space (saturated phase mod 2q, active window). A state survives iff
  // some delta keeps the phase difference identically zero for one more
  // interval AND leads to a surviving state; surviving states can therefore
  // hold the difference at zero forever without the pulses saturating. Only
  // meaningful for rational h with partial-response pulses.
  void build_zero_graph() {
    std::size_t count = static_cast<std::size_t>(mod_);
    for (int j = 0; j + 1 < n_; ++j) {
      if (count > 2'000'000 / static_cast<std::size_t>(b_)) return;  // stay desk-scale
      count *= static_cast<std::size_t>(b_);
    }
    const double c = 2.0 * k_pi * h_;
    std::vector<std::vector<std::uint32_t>> succ(count);
    std::vector<int> window(static_cast<std::size_t>(n_ - 1), 0);
    int active[16];
    constexpr int screen_pts[5] = {0, k_panels / 4, k_panels / 2, 3 * k_panels / 4, k_panels};
    for (std::size_t code = 0; code < count; ++code) {
      // decode mixed-radix: window digits first (newest last), then state
      std::size_t rest = code;
      for (int j = n_ - 2; j >= 0; --j) {
        window[static_cast<std::size_t>(j)] =
            static_cast<int>(rest % static_cast<std::size_t>(b_)) * 2 - dmax_;
        rest /= static_cast<std::size_t>(b_);
      }
      const int s_mod = static_cast<int>(rest);
      // A quiescent window is the tail of an ordinary merge, not a weak
      // event; holding zero while draining to quiescence would need the
      // drained entries to be zero already, so no active state feeds it.
      if (std::all_of(window.begin(), window.end(),
                      [](int w) { return w == 0; })) {
        continue;
      }
      const double psi = k_pi * h_ * s_mod;
      for (int delta = -dmax_; delta <= dmax_; delta += 2) {
        active[0] = delta;
        for (int j = 1; j < n_; ++j) active[j] = window[static_cast<std::size_t>(n_ - 1 - j)];
        bool flat_zero = true;
        for (const int i : screen_pts) {
          double phase = psi;
          for (int j = 0; j < n_; ++j) phase += c * active[j] * qgrid_[j][i];
          if (std::fabs(std::remainder(phase, 2.0 * k_pi)) > 1e-7) {
            flat_zero = false;
            break;
          }
        }
        if (!flat_zero || symbol_integral(s_mod, active) > 1e-12) continue;
        const int next_s = sat_advance(s_mod, window[0]);
        std::vector<int> next_window(window.begin() + 1, window.end());
        next_window.push_back(delta);
        succ[code].push_back(static_cast<std::uint32_t>(z_index(next_s, next_window)));
      }
    }
    std::vector<char> alive(count);
    for (std::size_t i = 0; i < count; ++i) alive[i] = !succ[i].empty();
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < count; ++i) {
        if (!alive[i]) continue;
        bool keeps = false;
        for (const auto t : succ[i]) {
          if (alive[t]) {
            keeps = true;
            break;
          }
        }
        if (!keeps) {
          alive[i] = false;
          changed = true;
        }
      }
    }
    zero_sustainable_ = std::move(alive);
    weak_events_ = std::any_of(zero_sustainable_.begin(), zero_sustainable_.end(),
                               [](char v) { return v != 0; });
  }

  void record(double value, const std::vector<int>& seq) {
    candidates_.emplace_back(value, seq);
    best_ = std::min(best_, value);
  }

  void dfs(int k, int s_sat, int s_total, std::vector<int>& window,
           double partial, double last_j) {
    int active[16];
    const int lo = (k == 0) ? 2 : -dmax_;  // negation symmetry: lead delta positive
    for (int delta = lo; delta <= dmax_; delta += 2) {
      active[0] = delta;
      for (int j = 1; j < n_; ++j) active[j] = window[static_cast<std::size_t>(n_ - 1 - j)];
      const double j_value = symbol_integral(s_sat, active);
      const double grown = partial + j_value;
      if (grown >= best_ + margin_) continue;

      const int oldest = (n_ > 1) ? window[0] : delta;
      const int next_sat = sat_advance(s_sat, oldest);
      const int next_total = s_total + delta;
      std::vector<int> next_window;
      if (n_ > 1) {
        next_window.assign(window.begin() + 1, window.end());
        next_window.push_back(delta);
      }
      prefix_.push_back(delta);

      // delta == 0 leaves s_total untouched, so a merge seen here was already
      // merged one symbol ago with an identical trajectory; recording it again
      // would count the same event once per trailing zero.
      if (delta != 0 && merged(next_total)) {
        const double total = grown + tail_integral(next_sat, next_window);
        if (total < best_ + margin_) record(total, prefix_);
      }
      // First entry into a sustainable zero: the event has already closed
      // even though pulses are still active.
      if (weak_events_ && j_value <= k_zero_eps && last_j > k_zero_eps &&
          zero_sustainable_[z_index(next_sat, next_window)]) {
        record(grown, prefix_);
      }

      if (k + 1 < depth_cap_) {
        dfs(k + 1, next_sat, next_total, next_window, grown, j_value);
      }
      prefix_.pop_back();
    }
  }

  // Value of a specific closing sequence, used to seed the incumbent bound so
  // pruning bites from the first branch.
  std::optional<double> closed_value(const std::vector<int>& seq) {
    int s_sat = 0, s_total = 0;
    std::vector<int> window(static_cast<std::size_t>(std::max(0, n_ - 1)), 0);
    int active[16];
    double total = 0.0;
    for (const int delta : seq) {
      active[0] = delta;
      for (int j = 1; j < n_; ++j) active[j] = window[static_cast<std::size_t>(n_ - 1 - j)];
      total += symbol_integral(s_sat, active);
      const int oldest = (n_ > 1) ? window[0] : delta;
      s_sat = sat_advance(s_sat, oldest);
      s_total += delta;
      if (n_ > 1) {
        window.erase(window.begin());
        window.push_back(delta);
      }
    }
    if (!merged(s_total)) return std::nullopt;
    return total + tail_integral(s_sat, window);
  }

  void seed_incumbent() {
    for (int lead = 2; lead <= dmax_; lead += 2) {
      if (const auto v = closed_value({lead})) best_ = std::min(best_, *v);
      for (int gap = 0; gap <= n_; ++gap) {
        std::vector<int> seq{lead};
        seq.insert(seq.end(), static_cast<std::size_t>(gap), 0);
        seq.push_back(-lead);
        if (static_cast<int>(seq.size()) > depth_cap_) break;
        if (const auto v = closed_value(seq)) best_ = std::min(best_, *v);
      }
    }
  }
};

}  // namespace

double phase_difference_integral(const CpmScheme& scheme,
                                 const std::vector<int>& deltas,
                                 int horizon_symbols) {
  validate(scheme);
  if (deltas.empty() || deltas.front() == 0) {
    throw std::invalid_argument("deltas: first element must be nonzero");
  }
  const int dmax = 2 * (scheme.m_ary - 1);
  for (const int d : deltas) {
    if (d % 2 != 0 || std::abs(d) > dmax) {
      throw std::invalid_argument("deltas: elements must be even with |d| <= 2(M-1)");
    }
  }
  if (horizon_symbols < static_cast<int>(deltas.size())) {
    throw std::invalid_argument("horizon_symbols: must cover the sequence");
  }
  const double period = scheme.symbol_period;
  const double c = 2.0 * k_pi * scheme.mod_index;
  double total = 0.0;
  for (int k = 0; k < horizon_symbols; ++k) {
    double sum = 0.0;
    for (int i = 0; i <= k_panels; ++i) {
      const double t = (k + static_cast<double>(i) / k_panels) * period;
      double phase = 0.0;
      for (std::size_t m = 0; m < deltas.size(); ++m) {
        phase += deltas[m] * phase_pulse_value(scheme, t - static_cast<double>(m) * period);
      }
      const double f = 1.0 - std::cos(c * phase);
      const int w = (i == 0 || i == k_panels) ? 1 : (i % 2 == 1 ? 4 : 2);
      sum += w * f;
    }
    total += sum / (3.0 * k_panels);
  }
  return scheme.bits_per_symbol() * total;
}

DistanceResult dmin_search(const CpmScheme& scheme, int max_depth, double prune_margin) {
  validate(scheme);
  if (scheme.pulse_len > 8) {
    throw std::invalid_argument("pulse_len: search supports N <= 8");
  }
  if (max_depth < scheme.pulse_len + 1) {
    throw std::invalid_argument("max_depth: must be >= N + 1");
  }
  if (!(prune_margin >= 0.0)) {
    throw std::invalid_argument("prune_margin: must be >= 0");
  }
  search_engine engine(scheme, max_depth, prune_margin);
  return engine.run();
}

double dmin_sq_reference(PulseKind pulse, int m_ary) {
  // h = 3/4, N = 3, BT = 0.3.
  switch (pulse) {
    case PulseKind::Rec:
      switch (m_ary) {
        case 2: return 2.31648;
        case 4: return 1.41550;
        case 8: return 2.12325;
        case 16: return 2.831;
        default: break;
      }
      break;
    case PulseKind::Rc:
      switch (m_ary) {
        case 2: return 2.96059;
        case 4: return 5.30037;
        case 8: return 6.12447;
        case 16: return 8.16596;
        default: break;
      }
      break;
    case PulseKind::Gmsk:
      switch (m_ary) {
        case 2: return 2.89955;
        case 4: return 4.69275;
        case 8: return 5.95011;
        case 16: return 7.93348;
        default: break;
      }
      break;
  }
  throw std::out_of_range("dmin_sq_reference: no entry for pulse=" +
                          std::string(pulse_name(pulse)) +
                          " M=" + std::to_string(m_ary));
}

int default_search_depth(int m_ary) {
  if (m_ary <= 4) return 12;
  if (m_ary == 8) return 8;
  return 6;
}

}  // namespace cpmec
