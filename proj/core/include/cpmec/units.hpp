#pragma once

#include <cmath>

namespace cpmec {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double value) { return 10.0 * std::log10(value); }
inline double dbm_to_watts(double dbm) { return 1e-3 * db_to_linear(dbm); }
inline double watts_to_dbm(double watts) { return linear_to_db(watts / 1e-3); }

}  // namespace cpmec
