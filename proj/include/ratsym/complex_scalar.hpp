#pragma once

#include <cmath>
#include <complex>

namespace ratsym {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Distance used for node distinctness and coincidence checks.
inline double abs_dist(Complex a, Complex b) { return std::abs(a - b); }

// Tolerances shared across the library.
inline constexpr double kDistinctTol = 1e-12;  // node / parameter distinctness
inline constexpr double kPoleTol = 1e-10;      // minimum distance to support
inline constexpr double kPivotRelTol = 1e-12;  // singular-minor pivot threshold

}  // namespace ratsym
