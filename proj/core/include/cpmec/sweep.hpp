#pragma once

#include <string>
#include <vector>

#include "cpmec/scenario.hpp"

namespace cpmec {

enum class SweepVariable { GammaDb, DistanceM, BitsPerSymbol };
enum class SweepQuantity { EnergyPerBit, Transmissions };

struct SweepSpec {
  SweepVariable variable = SweepVariable::GammaDb;
  std::vector<double> grid;  // strictly increasing, nonempty
  Scenario fixed;
};

struct CurveSeries {
  std::string label;
  std::vector<double> values;  // NaN marks a point whose evaluation failed
};

struct CurveDataset {
  std::string x_label;
  std::vector<double> x;
  std::vector<CurveSeries> series;
};

// Evaluates energy_per_bit (or the retransmission count) at every grid point
// for every scheme in the scenario. Gamma and distance sweeps produce one
// series per scheme; bits-per-symbol sweeps produce one series per distinct
// CPM pulse kind with the order re-resolved to 2^m at each grid point.
// Per-point evaluation errors become absent (NaN) points, never aborts.
CurveDataset sweep(const SweepSpec& spec,
                   SweepQuantity quantity = SweepQuantity::EnergyPerBit);

struct GammaOptimum {
  double gamma_star_db = 0.0;
  double e_b_star = 0.0;
};

// Golden-section minimization of e_b(gamma_dB) over [lo, hi]; assumes the
// unimodality that holds for every scheme here (unimodal() guards it in the
// tests). Monotone brackets resolve to the better endpoint.
GammaOptimum optimize_gamma(const Scenario& scenario, const SchemeSpec& scheme,
                            double lo_db, double hi_db, double tol_db);

// True iff the finite values descend, then ascend, with at most one
// direction change; plateaus narrower than plateau_rel_tol are merged.
bool unimodal(const std::vector<double>& values, double plateau_rel_tol = 1e-9);

}  // namespace cpmec
