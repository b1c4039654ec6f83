#pragma once

#include <cmath>
#include <numbers>

namespace irshcn {

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double v) { return 10.0 * std::log10(v); }

inline constexpr double speed_of_light = 299792458.0; // m/s

// Free-space reference gain at 1 m: (4 pi f_c / c)^-2.
inline double beta_from_carrier(double carrier_hz) {
    const double k = 4.0 * std::numbers::pi * carrier_hz / speed_of_light;
    return 1.0 / (k * k);
}

} // namespace irshcn
