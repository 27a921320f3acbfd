#pragma once

#include <vector>

#include "ratsym/biorth.hpp"

namespace ratsym {

// Truncated kernel sums. J is the number of terms; J = 0 leaves only the
// rational correction (or nothing, for k12).

/// sum_{n<J} P_n(xi) S_n(zeta)
Complex k12(const BiorthogonalSystem& sys, int J, Complex xi, Complex zeta);

/// sum_{n<J} P_n(xi) S~_n(eta) + 1/(xi - eta)
Complex k11(const BiorthogonalSystem& sys, int J, Complex xi, Complex eta);

/// sum_{n<J} P~_n(mu) S_n(zeta) + 1/(zeta - mu)
Complex k22(const BiorthogonalSystem& sys, int J, Complex mu, Complex zeta);

/// sum_{n<J} P~_n(mu) S~_n(eta) - H(mu, eta)
Complex k21(const BiorthogonalSystem& sys, int J, Complex mu, Complex eta);

/// H(mu, eta) = sum_pq w_pq / ((eta - x_p)(mu - y_q))
Complex h_kernel(const DiscreteBiMeasure& m, Complex mu, Complex eta);
Complex h_kernel(const BiorthogonalSystem& sys, Complex mu, Complex eta);

/// Kernel evaluations for fixed parameter lists, with the polynomial and
/// Hilbert-transform values at those points computed once. Read-only after
/// construction, so concurrent lookups are safe. Lookups agree with the free
/// functions above entry for entry.
class KernelTable {
 public:
  /// Caches values for truncations up to j_cap (inclusive). Pole and
  /// coincidence checks run once here.
  KernelTable(const BiorthogonalSystem& sys, int j_cap, std::vector<Complex> xi,
              std::vector<Complex> zeta, std::vector<Complex> eta, std::vector<Complex> mu);

  int j_cap() const { return j_cap_; }

  Complex k11(int J, int a, int j) const;
  Complex k12(int J, int a, int b) const;
  Complex k21(int J, int k, int j) const;
  Complex k22(int J, int k, int b) const;
  Complex h(int k, int j) const { return h_[k][j]; }

  Complex p_at_xi(int n, int a) const { return p_xi_[n][a]; }
  Complex ptilde_at_mu(int n, int k) const { return pt_mu_[n][k]; }

 private:
  void require_j(int J) const;

  int j_cap_;
  std::vector<Complex> xi_, zeta_, eta_, mu_;
  // value[n][point index]
  std::vector<std::vector<Complex>> p_xi_, s_zeta_, st_eta_, pt_mu_;
  std::vector<std::vector<Complex>> h_;  // [k][j]
};

}  // namespace ratsym
