#include "reduction_check.hpp"

#include <algorithm>
#include <cmath>

namespace ratsym::internal {

namespace {

double rel_diff(Complex a, Complex b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) / std::max(scale, 1e-12);
}

Complex prod_minus(const std::vector<Complex>& values, Complex z) {
  Complex r(1.0, 0.0);
  for (Complex v : values) r *= v - z;
  return r;
}

}  // namespace

ReductionResiduals reduction_identity_residuals(const BiorthogonalSystem& sys,
                                                const std::vector<Complex>& xi,
                                                const std::vector<Complex>& zeta,
                                                const std::vector<Complex>& eta,
                                                const std::vector<Complex>& mu, int j1, int j2) {
  const DiscreteBiMeasure& m = sys.measure();
  const std::size_t nx = m.x_size(), ny = m.y_size();
  const auto& xs = m.x_nodes();
  const auto& ys = m.y_nodes();

  ReductionResiduals out;

  // script K11 at (xi_a, eta_j): integral of prod(xi - x)/(eta - x) against
  // the projector kernel in the second slot.
  for (std::size_t a = 0; a < xi.size(); ++a)
    for (Complex e : eta) {
      Complex lhs(0.0, 0.0);
      for (std::size_t p = 0; p < nx; ++p) {
        const Complex fx = prod_minus(xi, xs[p]) / (e - xs[p]);
        for (std::size_t q = 0; q < ny; ++q)
          lhs += m.weight(p, q) * fx * k12(sys, j1, xi[a], ys[q]);
      }
      out.k11 = std::max(out.k11, rel_diff(lhs, prod_minus(xi, e) * k11(sys, j1, xi[a], e)));
    }

  for (std::size_t b = 0; b < zeta.size(); ++b)
    for (Complex u : mu) {
      Complex lhs(0.0, 0.0);
      for (std::size_t p = 0; p < nx; ++p)
        for (std::size_t q = 0; q < ny; ++q) {
          const Complex fy = prod_minus(zeta, ys[q]) / (u - ys[q]);
          lhs += m.weight(p, q) * fy * k12(sys, j2, xs[p], zeta[b]);
        }
      out.k22 = std::max(out.k22, rel_diff(lhs, prod_minus(zeta, u) * k22(sys, j2, u, zeta[b])));
    }

  // script K21 is a double integral over two independent copies of the measure.
  for (Complex u : mu)
    for (Complex e : eta) {
      Complex lhs(0.0, 0.0);
      for (std::size_t p = 0; p < nx; ++p)
        for (std::size_t q = 0; q < ny; ++q) {
          const Complex f1 = m.weight(p, q) * prod_minus(xi, xs[p]) / (e - xs[p]);
          for (std::size_t r = 0; r < nx; ++r)
            for (std::size_t s = 0; s < ny; ++s) {
              const Complex f2 = m.weight(r, s) * prod_minus(zeta, ys[s]) / (u - ys[s]);
              lhs += f1 * f2 * k12(sys, j1, xs[r], ys[q]);
            }
        }
      Complex script_h(0.0, 0.0);
      for (std::size_t p = 0; p < nx; ++p)
        for (std::size_t q = 0; q < ny; ++q)
          script_h += m.weight(p, q) * prod_minus(xi, xs[p]) * prod_minus(zeta, ys[q]) /
                      ((e - xs[p]) * (u - ys[q]));
      const Complex rhs = prod_minus(xi, e) * prod_minus(zeta, u) * k21(sys, j1, u, e);
      out.k21 = std::max(out.k21, rel_diff(lhs - script_h, rhs));
    }

  // script P~_n vs prod(zeta - mu) P~_n, valid for n >= L2.
  for (int n = static_cast<int>(zeta.size()); n <= sys.degree_cap(); ++n)
    for (Complex u : mu) {
      Complex lhs(0.0, 0.0);
      for (std::size_t p = 0; p < nx; ++p)
        for (std::size_t q = 0; q < ny; ++q)
          lhs += m.weight(p, q) * prod_minus(zeta, ys[q]) / (u - ys[q]) * sys.eval_P(n, xs[p]);
      out.ptilde = std::max(out.ptilde, rel_diff(lhs, prod_minus(zeta, u) * sys.hilbert_P(n, u)));
    }

  return out;
}

std::vector<ReductionShape> reduction_shapes(int degree_cap) {
  std::vector<ReductionShape> shapes;
  for (int n = 1; n <= degree_cap + 2; ++n)
    for (int l1 = 1; l1 <= 2; ++l1)
      for (int m1 = 1; m1 <= 2; ++m1)
        for (int l2 = 1; l2 <= 2; ++l2)
          for (int m2 = 1; m2 <= 2; ++m2) {
            const int j1 = n + l1 - m1, j2 = n + l2 - m2;
            if (j1 < std::max(l1, l2) || j1 > degree_cap) continue;
            if (j2 < l2 || j2 > degree_cap) continue;
            if (l2 > degree_cap) continue;  // script P~ needs a degree >= L2
            shapes.push_back({n, l1, m1, l2, m2});
          }
  return shapes;
}

}  // namespace ratsym::internal
