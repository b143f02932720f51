#include "cpmec/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cpmec/units.hpp"

namespace cpmec {
namespace {

constexpr double k_nan = std::numeric_limits<double>::quiet_NaN();

void validate(const SweepSpec& spec) {
  if (spec.grid.empty()) throw std::invalid_argument("grid: must be nonempty");
  for (std::size_t i = 1; i < spec.grid.size(); ++i) {
    if (!(spec.grid[i] > spec.grid[i - 1])) {
      throw std::invalid_argument("grid: must be strictly increasing");
    }
  }
}

double evaluate_point(const Scenario& sc, const SchemeSpec& scheme,
                      double gamma_db, double distance_m, SweepQuantity quantity) {
  const SchemeErrorModel model = error_model(sc, scheme);
  const EnergyBreakdown breakdown = energy_per_bit(
      radio_profile(sc, scheme), link_budget(sc), model, forward_packet(sc),
      feedback_packet(sc), distance_m, db_to_linear(gamma_db), sc.symbol_rate_sps);
  const double value = quantity == SweepQuantity::EnergyPerBit
                           ? breakdown.e_b_j_per_bit
                           : breakdown.n_re;
  return std::isfinite(value) ? value : k_nan;
}

CurveDataset sweep_point_schemes(const SweepSpec& spec, SweepQuantity quantity) {
  const Scenario& sc = spec.fixed;
  const bool over_gamma = spec.variable == SweepVariable::GammaDb;
  CurveDataset out;
  out.x_label = over_gamma ? "gamma_db" : "distance_m";
  out.x = spec.grid;
  for (const auto& scheme : sc.schemes) {
    CurveSeries series;
    series.label = scheme.label();
    series.values.reserve(spec.grid.size());
    for (const double x : spec.grid) {
      double value = k_nan;
      try {
        value = over_gamma ? evaluate_point(sc, scheme, x, sc.distance_m, quantity)
                           : evaluate_point(sc, scheme, sc.gamma_db, x, quantity);
      } catch (const std::exception&) {
        // absent point
      }
      series.values.push_back(value);
    }
    out.series.push_back(std::move(series));
  }
  return out;
}

CurveDataset sweep_symbol_order(const SweepSpec& spec, SweepQuantity quantity) {
  const Scenario& sc = spec.fixed;
  CurveDataset out;
  out.x_label = "bits_per_symbol";
  out.x = spec.grid;
  std::vector<PulseKind> pulses;
  for (const auto& scheme : sc.schemes) {
    if (scheme.family != ModFamily::Cpm) continue;  // the order study is CPM-only
    if (std::find(pulses.begin(), pulses.end(), scheme.pulse) == pulses.end()) {
      pulses.push_back(scheme.pulse);
    }
  }
  for (const PulseKind pulse : pulses) {
    CurveSeries series;
    series.label = pulse_name(pulse);
    for (const double x : spec.grid) {
      const int m = static_cast<int>(std::lround(x));
      double value = k_nan;
      if (m >= 1 && m <= 4 && std::fabs(x - m) < 1e-9) {
        SchemeSpec scheme{ModFamily::Cpm, pulse, 1 << m, std::nullopt};
        try {
          value = evaluate_point(sc, scheme, sc.gamma_db, sc.distance_m, quantity);
        } catch (const std::exception&) {
          // absent point
        }
      }
      series.values.push_back(value);
    }
    out.series.push_back(std::move(series));
  }
  return out;
}

}  // namespace

CurveDataset sweep(const SweepSpec& spec, SweepQuantity quantity) {
  validate(spec);
  cpmec::validate(spec.fixed);
  if (spec.variable == SweepVariable::BitsPerSymbol) {
    return sweep_symbol_order(spec, quantity);
  }
  return sweep_point_schemes(spec, quantity);
}

GammaOptimum optimize_gamma(const Scenario& scenario, const SchemeSpec& scheme,
                            double lo_db, double hi_db, double tol_db) {
  if (!(lo_db < hi_db)) throw std::invalid_argument("bracket: need lo < hi");
  if (!(tol_db > 0.0)) throw std::invalid_argument("tol_db: must be > 0");
  const auto eval = [&](double gamma_db) {
    return evaluate_point(scenario, scheme, gamma_db, scenario.distance_m,
                          SweepQuantity::EnergyPerBit);
  };
  constexpr double k_ratio = 0.6180339887498949;  // 1/phi
  double a = lo_db, b = hi_db;
  double x1 = b - k_ratio * (b - a);
  double x2 = a + k_ratio * (b - a);
  double f1 = eval(x1), f2 = eval(x2);
  while (b - a > tol_db) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - k_ratio * (b - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + k_ratio * (b - a);
      f2 = eval(x2);
    }
  }
  // Monotone brackets converge onto an endpoint; return the best of the
  // bracket ends and the interior probe.
  GammaOptimum best{0.5 * (a + b), eval(0.5 * (a + b))};
  for (const double candidate : {lo_db, hi_db}) {
    const double value = eval(candidate);
    if (value < best.e_b_star) best = GammaOptimum{candidate, value};
  }
  return best;
}

bool unimodal(const std::vector<double>& values, double plateau_rel_tol) {
  int direction = -1;  // descending expected first; pure ascent also passes
  bool rose = false;
  double prev = k_nan;
  for (const double v : values) {
    if (std::isnan(v)) return false;
    if (std::isnan(prev)) {
      prev = v;
      continue;
    }
    const double scale = std::max(std::fabs(prev), std::fabs(v));
    if (std::fabs(v - prev) <= plateau_rel_tol * scale) {
      prev = v;
      continue;  // plateau: no direction information
    }
    if (v > prev) {
      direction = +1;
      rose = true;
    } else {
      if (rose) return false;  // descending after an ascent: second valley
      direction = -1;
    }
    prev = v;
  }
  (void)direction;
  return true;
}

}  // namespace cpmec
