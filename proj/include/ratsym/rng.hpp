#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ratsym/complex_scalar.hpp"

namespace ratsym {

/// Seeded parameter draws. Uses mt19937_64 with an explicit 53-bit uniform so
/// identical seeds give identical streams on every platform and standard
/// library.
class DrawRng {
 public:
  explicit DrawRng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  Complex on_circle(double radius) {
    const double angle = 2.0 * M_PI * uniform01();
    return Complex(radius * std::cos(angle), radius * std::sin(angle));
  }

  Complex in_annulus(double r_min, double r_max) {
    const double r = r_min + (r_max - r_min) * uniform01();
    const double angle = 2.0 * M_PI * uniform01();
    return Complex(r * std::cos(angle), r * std::sin(angle));
  }

 private:
  std::mt19937_64 gen_;
};

/// count points on the circle, redrawing until pairwise separation holds.
inline std::vector<Complex> draw_distinct_on_circle(DrawRng& rng, int count, double radius,
                                                    double min_sep = 1e-6) {
  std::vector<Complex> out;
  out.reserve(count);
  while (static_cast<int>(out.size()) < count) {
    const Complex z = rng.on_circle(radius);
    bool ok = true;
    for (Complex w : out)
      if (abs_dist(z, w) < min_sep) ok = false;
    if (ok) out.push_back(z);
  }
  return out;
}

}  // namespace ratsym
