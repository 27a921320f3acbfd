#pragma once

#include <functional>
#include <vector>

#include "ratsym/complex_scalar.hpp"
#include "ratsym/errors.hpp"

namespace ratsym {

/// A complex measure with finite discrete support: sum_p w_p delta(x - x_p).
/// Immutable after construction; all integrals against it are finite sums.
class DiscreteMeasure {
 public:
  DiscreteMeasure(std::vector<Complex> nodes, std::vector<Complex> weights);

  const std::vector<Complex>& nodes() const { return nodes_; }
  const std::vector<Complex>& weights() const { return weights_; }
  std::size_t size() const { return nodes_.size(); }

 private:
  std::vector<Complex> nodes_;
  std::vector<Complex> weights_;
};

/// A complex bimeasure on a finite grid: weight w_pq on the point (x_p, y_q).
class DiscreteBiMeasure {
 public:
  DiscreteBiMeasure(std::vector<Complex> x_nodes, std::vector<Complex> y_nodes,
                    std::vector<std::vector<Complex>> weights);

  const std::vector<Complex>& x_nodes() const { return x_nodes_; }
  const std::vector<Complex>& y_nodes() const { return y_nodes_; }
  Complex weight(std::size_t p, std::size_t q) const { return weights_[p][q]; }
  const std::vector<std::vector<Complex>>& weights() const { return weights_; }
  std::size_t x_size() const { return x_nodes_.size(); }
  std::size_t y_size() const { return y_nodes_.size(); }

  /// The bimeasure with the roles of x and y exchanged.
  DiscreteBiMeasure transposed() const;

 private:
  std::vector<Complex> x_nodes_;
  std::vector<Complex> y_nodes_;
  std::vector<std::vector<Complex>> weights_;  // [p][q]
};

/// Table of moments B_jk = sum_pq w_pq x_p^j y_q^k for 0 <= j,k <= degree_cap.
struct BimomentTable {
  std::vector<std::vector<Complex>> entries;
  int degree_cap = 0;

  Complex at(int j, int k) const { return entries[j][k]; }
};

BimomentTable bimoments(const DiscreteBiMeasure& m, int degree_cap);

/// Moments m_r = sum_p w_p x_p^r for r = 0 .. 2*degree_cap; the Hankel matrix
/// entry (j,k) is m_{j+k}.
std::vector<Complex> moments(const DiscreteMeasure& m, int degree_cap);

/// n-point Gauss-Legendre rule on (a,b), weights multiplied by weight_fn at the nodes.
DiscreteMeasure gauss_legendre_discretize(const std::function<Complex(double)>& weight_fn,
                                          double a, double b, int n_nodes);

/// Grid bimeasure with w_pq = wx_p * wy_q * coupling(x_p, y_q). A coupling that
/// factorizes gives rank-one bimoments, rejected later at biorthogonalization.
DiscreteBiMeasure product_bimeasure_coupled(const DiscreteMeasure& mx, const DiscreteMeasure& my,
                                            const std::function<Complex(Complex, Complex)>& coupling);

}  // namespace ratsym
