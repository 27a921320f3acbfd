#include "ratsym/biorth.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace ratsym {

Complex eval_poly(const std::vector<Complex>& coeffs, Complex x) {
  Complex r(0.0, 0.0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * x + *it;
  return r;
}

namespace {

struct LduResult {
  std::vector<std::vector<Complex>> unit_lower;   // L
  std::vector<std::vector<Complex>> unit_upper;   // U
  std::vector<Complex> pivots;                    // D
};

// Unpivoted LDU, A = L D U. The pivot order is part of the contract: a small
// pivot means the leading minor of that size is singular, not that we reorder.
LduResult ldu_factor(const std::vector<std::vector<Complex>>& a0) {
  const std::size_t n = a0.size();
  auto a = a0;
  LduResult r;
  r.unit_lower.assign(n, std::vector<Complex>(n, Complex(0.0, 0.0)));
  r.unit_upper.assign(n, std::vector<Complex>(n, Complex(0.0, 0.0)));
  r.pivots.assign(n, Complex(0.0, 0.0));

  double minor_max = 0.0;  // largest magnitude seen in the leading (k+1)x(k+1) block of the input
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i <= k; ++i) {
      minor_max = std::max(minor_max, std::abs(a0[i][k]));
      minor_max = std::max(minor_max, std::abs(a0[k][i]));
    }
    const Complex piv = a[k][k];
    if (minor_max == 0.0 || std::abs(piv) < kPivotRelTol * minor_max)
      throw Error(ErrorKind::SingularMinor,
                  "leading principal minor of size " + std::to_string(k + 1) +
                      " is numerically singular",
                  static_cast<int>(k + 1));
    r.pivots[k] = piv;
    r.unit_lower[k][k] = r.unit_upper[k][k] = 1.0;
    for (std::size_t i = k + 1; i < n; ++i) r.unit_lower[i][k] = a[i][k] / piv;
    for (std::size_t j = k + 1; j < n; ++j) r.unit_upper[k][j] = a[k][j] / piv;
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] -= r.unit_lower[i][k] * piv * r.unit_upper[k][j];
  }
  return r;
}

// Rows of inv(L) for unit lower triangular L, by forward substitution.
std::vector<std::vector<Complex>> invert_unit_lower(const std::vector<std::vector<Complex>>& l) {
  const std::size_t n = l.size();
  std::vector<std::vector<Complex>> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i].assign(i + 1, Complex(0.0, 0.0));
    x[i][i] = 1.0;
    for (std::size_t j = i; j-- > 0;) {
      Complex s(0.0, 0.0);
      for (std::size_t k = j; k < i; ++k) s += l[i][k] * x[k][j];
      x[i][j] = -s;
    }
  }
  return x;
}

}  // namespace

BiorthogonalSystem biorthogonalize(const DiscreteBiMeasure& m, int degree_cap) {
  if (degree_cap < 0) throw Error(ErrorKind::InvalidArgument, "degree_cap must be >= 0");
  const BimomentTable table = bimoments(m, degree_cap);
  LduResult f = ldu_factor(table.entries);

  const std::size_t n = f.pivots.size();
  BiorthogonalSystem sys(m, degree_cap);
  sys.h_ = f.pivots;
  sys.sqrt_h_.resize(n);
  for (std::size_t k = 0; k < n; ++k) sys.sqrt_h_[k] = std::sqrt(f.pivots[k]);

  // P rows from inv(L), S rows from inv(U^T); both scaled by 1/sqrt(h_n) so the
  // leading coefficients match.
  sys.p_coeffs_ = invert_unit_lower(f.unit_lower);
  std::vector<std::vector<Complex>> ut(n, std::vector<Complex>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ut[i][j] = f.unit_upper[j][i];
  sys.s_coeffs_ = invert_unit_lower(ut);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      sys.p_coeffs_[i][j] /= sys.sqrt_h_[i];
      sys.s_coeffs_[i][j] /= sys.sqrt_h_[i];
    }
  return sys;
}

void BiorthogonalSystem::require_degree(int n) const {
  if (n < 0 || n > degree_cap_)
    throw Error(ErrorKind::CapExceeded,
                "degree " + std::to_string(n) + " outside cap " + std::to_string(degree_cap_));
}

Complex BiorthogonalSystem::h(int n) const {
  require_degree(n);
  return h_[n];
}

Complex BiorthogonalSystem::sqrt_h(int n) const {
  require_degree(n);
  return sqrt_h_[n];
}

const std::vector<Complex>& BiorthogonalSystem::p_row(int n) const {
  require_degree(n);
  return p_coeffs_[n];
}

const std::vector<Complex>& BiorthogonalSystem::s_row(int n) const {
  require_degree(n);
  return s_coeffs_[n];
}

Complex BiorthogonalSystem::eval_P(int n, Complex x) const {
  require_degree(n);
  return eval_poly(p_coeffs_[n], x);
}

Complex BiorthogonalSystem::eval_S(int n, Complex y) const {
  require_degree(n);
  return eval_poly(s_coeffs_[n], y);
}

Complex BiorthogonalSystem::hilbert_P(int n, Complex mu) const {
  require_degree(n);
  for (Complex y : measure_.y_nodes())
    if (abs_dist(mu, y) <= kPoleTol)
      throw Error(ErrorKind::PoleOnSupport, "mu within pole tolerance of a y node");
  Complex total(0.0, 0.0);
  for (std::size_t q = 0; q < measure_.y_size(); ++q) {
    Complex col(0.0, 0.0);
    for (std::size_t p = 0; p < measure_.x_size(); ++p)
      col += measure_.weight(p, q) * eval_poly(p_coeffs_[n], measure_.x_nodes()[p]);
    total += col / (mu - measure_.y_nodes()[q]);
  }
  return total;
}

Complex BiorthogonalSystem::hilbert_S(int n, Complex eta) const {
  require_degree(n);
  for (Complex x : measure_.x_nodes())
    if (abs_dist(eta, x) <= kPoleTol)
      throw Error(ErrorKind::PoleOnSupport, "eta within pole tolerance of an x node");
  Complex total(0.0, 0.0);
  for (std::size_t p = 0; p < measure_.x_size(); ++p) {
    Complex row(0.0, 0.0);
    for (std::size_t q = 0; q < measure_.y_size(); ++q)
      row += measure_.weight(p, q) * eval_poly(s_coeffs_[n], measure_.y_nodes()[q]);
    total += row / (eta - measure_.x_nodes()[p]);
  }
  return total;
}

BiorthogonalSystem BiorthogonalSystem::swapped() const {
  BiorthogonalSystem out(measure_.transposed(), degree_cap_);
  out.p_coeffs_ = s_coeffs_;
  out.s_coeffs_ = p_coeffs_;
  out.h_ = h_;
  out.sqrt_h_ = sqrt_h_;
  return out;
}

OrthogonalSystem orthogonalize(const DiscreteMeasure& m, int degree_cap) {
  if (degree_cap < 0) throw Error(ErrorKind::InvalidArgument, "degree_cap must be >= 0");
  const std::vector<Complex> mom = moments(m, degree_cap);
  const int n = degree_cap + 1;
  std::vector<std::vector<Complex>> hankel(n, std::vector<Complex>(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) hankel[j][k] = mom[j + k];
  LduResult f = ldu_factor(hankel);

  OrthogonalSystem sys(m, degree_cap);
  sys.h_ = f.pivots;
  sys.sqrt_h_.resize(n);
  for (int k = 0; k < n; ++k) sys.sqrt_h_[k] = std::sqrt(f.pivots[k]);
  sys.p_coeffs_ = invert_unit_lower(f.unit_lower);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) sys.p_coeffs_[i][j] /= sys.sqrt_h_[i];
  return sys;
}

void OrthogonalSystem::require_degree(int n) const {
  if (n < 0 || n > degree_cap_)
    throw Error(ErrorKind::CapExceeded,
                "degree " + std::to_string(n) + " outside cap " + std::to_string(degree_cap_));
}

Complex OrthogonalSystem::h(int n) const {
  require_degree(n);
  return h_[n];
}

Complex OrthogonalSystem::sqrt_h(int n) const {
  require_degree(n);
  return sqrt_h_[n];
}

const std::vector<Complex>& OrthogonalSystem::p_row(int n) const {
  require_degree(n);
  return p_coeffs_[n];
}

Complex OrthogonalSystem::eval_P(int n, Complex x) const {
  require_degree(n);
  return eval_poly(p_coeffs_[n], x);
}

Complex OrthogonalSystem::hilbert(int n, Complex eta) const {
  require_degree(n);
  for (Complex x : measure_.nodes())
    if (abs_dist(eta, x) <= kPoleTol)
      throw Error(ErrorKind::PoleOnSupport, "eta within pole tolerance of a node");
  Complex total(0.0, 0.0);
  for (std::size_t p = 0; p < measure_.size(); ++p)
    total += measure_.weights()[p] * eval_poly(p_coeffs_[n], measure_.nodes()[p]) /
             (eta - measure_.nodes()[p]);
  return total;
}

}  // namespace ratsym
