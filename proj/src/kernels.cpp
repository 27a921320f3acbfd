#include "ratsym/kernels.hpp"

#include <string>
#include <utility>

namespace ratsym {

namespace {

void require_trunc(const BiorthogonalSystem& sys, int J) {
  if (J < 0 || J > sys.degree_cap() + 1)
    throw Error(ErrorKind::CapExceeded, "truncation " + std::to_string(J) + " outside [0, " +
                                            std::to_string(sys.degree_cap() + 1) + "]");
}

void check_coincident(Complex a, Complex b, const char* what) {
  if (abs_dist(a, b) <= kDistinctTol)
    throw Error(ErrorKind::CoincidentArguments, what);
}

}  // namespace

Complex k12(const BiorthogonalSystem& sys, int J, Complex xi, Complex zeta) {
  require_trunc(sys, J);
  Complex total(0.0, 0.0);
  for (int n = 0; n < J; ++n) total += sys.eval_P(n, xi) * sys.eval_S(n, zeta);
  return total;
}

Complex k11(const BiorthogonalSystem& sys, int J, Complex xi, Complex eta) {
  require_trunc(sys, J);
  check_coincident(xi, eta, "k11 arguments coincide");
  Complex total = Complex(1.0, 0.0) / (xi - eta);
  for (int n = 0; n < J; ++n) total += sys.eval_P(n, xi) * sys.hilbert_S(n, eta);
  return total;
}

Complex k22(const BiorthogonalSystem& sys, int J, Complex mu, Complex zeta) {
  require_trunc(sys, J);
  check_coincident(zeta, mu, "k22 arguments coincide");
  Complex total = Complex(1.0, 0.0) / (zeta - mu);
  for (int n = 0; n < J; ++n) total += sys.hilbert_P(n, mu) * sys.eval_S(n, zeta);
  return total;
}

Complex k21(const BiorthogonalSystem& sys, int J, Complex mu, Complex eta) {
  require_trunc(sys, J);
  Complex total = -h_kernel(sys, mu, eta);
  for (int n = 0; n < J; ++n) total += sys.hilbert_P(n, mu) * sys.hilbert_S(n, eta);
  return total;
}

Complex h_kernel(const DiscreteBiMeasure& m, Complex mu, Complex eta) {
  for (Complex x : m.x_nodes())
    if (abs_dist(eta, x) <= kPoleTol)
      throw Error(ErrorKind::PoleOnSupport, "eta within pole tolerance of an x node");
  for (Complex y : m.y_nodes())
    if (abs_dist(mu, y) <= kPoleTol)
      throw Error(ErrorKind::PoleOnSupport, "mu within pole tolerance of a y node");
  Complex total(0.0, 0.0);
  for (std::size_t p = 0; p < m.x_size(); ++p) {
    const Complex fx = Complex(1.0, 0.0) / (eta - m.x_nodes()[p]);
    for (std::size_t q = 0; q < m.y_size(); ++q)
      total += m.weight(p, q) * fx / (mu - m.y_nodes()[q]);
  }
  return total;
}

Complex h_kernel(const BiorthogonalSystem& sys, Complex mu, Complex eta) {
  return h_kernel(sys.measure(), mu, eta);
}

KernelTable::KernelTable(const BiorthogonalSystem& sys, int j_cap, std::vector<Complex> xi,
                         std::vector<Complex> zeta, std::vector<Complex> eta,
                         std::vector<Complex> mu)
    : j_cap_(j_cap), xi_(std::move(xi)), zeta_(std::move(zeta)), eta_(std::move(eta)),
      mu_(std::move(mu)) {
  require_trunc(sys, j_cap_);
  for (Complex a : xi_)
    for (Complex b : eta_) check_coincident(a, b, "xi/eta pair coincides");
  for (Complex a : zeta_)
    for (Complex b : mu_) check_coincident(a, b, "zeta/mu pair coincides");

  p_xi_.assign(j_cap_, std::vector<Complex>(xi_.size()));
  s_zeta_.assign(j_cap_, std::vector<Complex>(zeta_.size()));
  st_eta_.assign(j_cap_, std::vector<Complex>(eta_.size()));
  pt_mu_.assign(j_cap_, std::vector<Complex>(mu_.size()));
  for (int n = 0; n < j_cap_; ++n) {
    for (std::size_t a = 0; a < xi_.size(); ++a) p_xi_[n][a] = sys.eval_P(n, xi_[a]);
    for (std::size_t b = 0; b < zeta_.size(); ++b) s_zeta_[n][b] = sys.eval_S(n, zeta_[b]);
    for (std::size_t j = 0; j < eta_.size(); ++j) st_eta_[n][j] = sys.hilbert_S(n, eta_[j]);
    for (std::size_t k = 0; k < mu_.size(); ++k) pt_mu_[n][k] = sys.hilbert_P(n, mu_[k]);
  }
  h_.assign(mu_.size(), std::vector<Complex>(eta_.size()));
  for (std::size_t k = 0; k < mu_.size(); ++k)
    for (std::size_t j = 0; j < eta_.size(); ++j)
      h_[k][j] = h_kernel(sys.measure(), mu_[k], eta_[j]);
}

void KernelTable::require_j(int J) const {
  if (J < 0 || J > j_cap_)
    throw Error(ErrorKind::CapExceeded, "truncation beyond cached cap");
}

Complex KernelTable::k11(int J, int a, int j) const {
  require_j(J);
  Complex total = Complex(1.0, 0.0) / (xi_[a] - eta_[j]);
  for (int n = 0; n < J; ++n) total += p_xi_[n][a] * st_eta_[n][j];
  return total;
}

Complex KernelTable::k12(int J, int a, int b) const {
  require_j(J);
  Complex total(0.0, 0.0);
  for (int n = 0; n < J; ++n) total += p_xi_[n][a] * s_zeta_[n][b];
  return total;
}

Complex KernelTable::k21(int J, int k, int j) const {
  require_j(J);
  Complex total = -h_[k][j];
  for (int n = 0; n < J; ++n) total += pt_mu_[n][k] * st_eta_[n][j];
  return total;
}

Complex KernelTable::k22(int J, int k, int b) const {
  require_j(J);
  Complex total = Complex(1.0, 0.0) / (zeta_[b] - mu_[k]);
  for (int n = 0; n < J; ++n) total += pt_mu_[n][k] * s_zeta_[n][b];
  return total;
}

}  // namespace ratsym
