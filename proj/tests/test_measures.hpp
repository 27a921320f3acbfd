#pragma once

// Shared fixture measures for the suites.

#include <cmath>

#include "ratsym/measure.hpp"

namespace ratsym::testing {

/// Signs +1/-1 on both axes, weight (1+c)/4 on equal signs, (1-c)/4 on opposite.
/// Bimoments are diag(1, c) up to degree 1; the 3x3 minor is singular.
inline DiscreteBiMeasure coupled_sign(double c) {
  const double eq = (1.0 + c) / 4.0, op = (1.0 - c) / 4.0;
  return DiscreteBiMeasure({1.0, -1.0}, {1.0, -1.0}, {{eq, op}, {op, eq}});
}

/// x, y on {-1, 0, 1} with weight exp(x*y); rank 3, cap 2.
inline DiscreteBiMeasure grid_expxy() {
  std::vector<Complex> nodes = {-1.0, 0.0, 1.0};
  std::vector<std::vector<Complex>> w(3, std::vector<Complex>(3));
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q)
      w[p][q] = std::exp((nodes[p] * nodes[q]).real());
  return DiscreteBiMeasure(nodes, nodes, w);
}

inline DiscreteBiMeasure single_point(Complex x0 = 0.0, Complex y0 = 0.0, Complex w = 1.0) {
  return DiscreteBiMeasure({x0}, {y0}, {{w}});
}

/// Separable +-1 grid: rank-one bimoments, singular at the 2x2 minor.
inline DiscreteBiMeasure separable_pm() {
  return DiscreteBiMeasure({1.0, -1.0}, {1.0, -1.0},
                           {{0.25, 0.25}, {0.25, 0.25}});
}

/// Nodes +-1 with weight 1/2 each; Hankel rank 2.
inline DiscreteMeasure two_point() { return DiscreteMeasure({1.0, -1.0}, {0.5, 0.5}); }

inline DiscreteMeasure legendre_measure(int n_nodes, double scale = 1.0) {
  return gauss_legendre_discretize([scale](double) { return Complex(scale, 0.0); }, -1.0, 1.0,
                                   n_nodes);
}

}  // namespace ratsym::testing
