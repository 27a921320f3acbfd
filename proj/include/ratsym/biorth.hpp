#pragma once

#include <vector>

#include "ratsym/measure.hpp"

namespace ratsym {

/// Pair of polynomial families {P_n(x), S_n(y)} with sum_pq w_pq P_j(x_p) S_k(y_q)
/// = delta_jk and equal leading coefficients 1/sqrt(h_n). Built by an unpivoted
/// LDU factorization of the bimoment matrix; the principal branch of sqrt(h_n)
/// fixes the sign ambiguity deterministically. Immutable after construction.
class BiorthogonalSystem {
 public:
  int degree_cap() const { return degree_cap_; }
  const DiscreteBiMeasure& measure() const { return measure_; }

  Complex h(int n) const;
  Complex sqrt_h(int n) const;

  /// Monomial coefficients of P_n (index = power), degree exactly n.
  const std::vector<Complex>& p_row(int n) const;
  const std::vector<Complex>& s_row(int n) const;

  Complex eval_P(int n, Complex x) const;
  Complex eval_S(int n, Complex y) const;

  /// P~_n(mu) = sum_pq w_pq P_n(x_p) / (mu - y_q); mu must stay off the y-support.
  Complex hilbert_P(int n, Complex mu) const;
  /// S~_n(eta) = sum_pq w_pq S_n(y_q) / (eta - x_p); eta must stay off the x-support.
  Complex hilbert_S(int n, Complex eta) const;

  /// The same system viewed through the transposed bimeasure: P and S exchange
  /// roles, the h_n are unchanged.
  BiorthogonalSystem swapped() const;

  friend BiorthogonalSystem biorthogonalize(const DiscreteBiMeasure& m, int degree_cap);

 private:
  BiorthogonalSystem(DiscreteBiMeasure m, int cap) : measure_(std::move(m)), degree_cap_(cap) {}

  void require_degree(int n) const;

  DiscreteBiMeasure measure_;
  int degree_cap_;
  std::vector<std::vector<Complex>> p_coeffs_;  // row n = coefficients of P_n
  std::vector<std::vector<Complex>> s_coeffs_;
  std::vector<Complex> h_;
  std::vector<Complex> sqrt_h_;
};

/// Gram-Schmidt via LDU of the bimoments. Throws Error(SingularMinor, n) when the
/// n-th leading principal minor is numerically singular (pivot below
/// kPivotRelTol times the largest magnitude in that minor).
BiorthogonalSystem biorthogonalize(const DiscreteBiMeasure& m, int degree_cap);

/// One-variable analogue built from the Hankel moment matrix.
class OrthogonalSystem {
 public:
  int degree_cap() const { return degree_cap_; }
  const DiscreteMeasure& measure() const { return measure_; }

  Complex h(int n) const;
  Complex sqrt_h(int n) const;
  const std::vector<Complex>& p_row(int n) const;

  Complex eval_P(int n, Complex x) const;
  /// P~_n(eta) = sum_p w_p P_n(x_p) / (eta - x_p); eta off the support.
  Complex hilbert(int n, Complex eta) const;

  friend OrthogonalSystem orthogonalize(const DiscreteMeasure& m, int degree_cap);

 private:
  OrthogonalSystem(DiscreteMeasure m, int cap) : measure_(std::move(m)), degree_cap_(cap) {}

  void require_degree(int n) const;

  DiscreteMeasure measure_;
  int degree_cap_;
  std::vector<std::vector<Complex>> p_coeffs_;
  std::vector<Complex> h_;
  std::vector<Complex> sqrt_h_;
};

OrthogonalSystem orthogonalize(const DiscreteMeasure& m, int degree_cap);

inline Complex hilbert_1d(const OrthogonalSystem& sys, int n, Complex eta) {
  return sys.hilbert(n, eta);
}

/// Horner evaluation shared by both systems.
Complex eval_poly(const std::vector<Complex>& coeffs, Complex x);

}  // namespace ratsym
