#include "ratsym/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ratsym {

namespace {

void check_distinct_nodes(const std::vector<Complex>& nodes, const char* label) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!is_finite(nodes[i]))
      throw Error(ErrorKind::InvalidArgument, std::string(label) + " node is not finite");
    for (std::size_t j = 0; j < i; ++j) {
      if (abs_dist(nodes[i], nodes[j]) <= kDistinctTol)
        throw Error(ErrorKind::InvalidArgument,
                    std::string(label) + " nodes closer than distinctness tolerance");
    }
  }
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<Complex> nodes, std::vector<Complex> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.empty()) throw Error(ErrorKind::InvalidArgument, "measure has no support");
  if (nodes_.size() != weights_.size())
    throw Error(ErrorKind::InvalidArgument, "node and weight counts differ");
  check_distinct_nodes(nodes_, "measure");
  bool any = false;
  for (Complex w : weights_) {
    if (!is_finite(w)) throw Error(ErrorKind::InvalidArgument, "weight is not finite");
    if (w != Complex(0.0, 0.0)) any = true;
  }
  if (!any) throw Error(ErrorKind::InvalidArgument, "all weights vanish");
}

DiscreteBiMeasure::DiscreteBiMeasure(std::vector<Complex> x_nodes, std::vector<Complex> y_nodes,
                                     std::vector<std::vector<Complex>> weights)
    : x_nodes_(std::move(x_nodes)), y_nodes_(std::move(y_nodes)), weights_(std::move(weights)) {
  if (x_nodes_.empty() || y_nodes_.empty())
    throw Error(ErrorKind::InvalidArgument, "bimeasure has empty support");
  check_distinct_nodes(x_nodes_, "x");
  check_distinct_nodes(y_nodes_, "y");
  if (weights_.size() != x_nodes_.size())
    throw Error(ErrorKind::InvalidArgument, "weight matrix row count differs from x nodes");
  for (const auto& row : weights_) {
    if (row.size() != y_nodes_.size())
      throw Error(ErrorKind::InvalidArgument, "weight matrix column count differs from y nodes");
    for (Complex w : row)
      if (!is_finite(w)) throw Error(ErrorKind::InvalidArgument, "weight is not finite");
  }
}

DiscreteBiMeasure DiscreteBiMeasure::transposed() const {
  std::vector<std::vector<Complex>> wt(y_nodes_.size(), std::vector<Complex>(x_nodes_.size()));
  for (std::size_t p = 0; p < x_nodes_.size(); ++p)
    for (std::size_t q = 0; q < y_nodes_.size(); ++q) wt[q][p] = weights_[p][q];
  return DiscreteBiMeasure(y_nodes_, x_nodes_, std::move(wt));
}

BimomentTable bimoments(const DiscreteBiMeasure& m, int degree_cap) {
  if (degree_cap < 0) throw Error(ErrorKind::InvalidArgument, "degree_cap must be >= 0");
  const std::size_t nx = m.x_size(), ny = m.y_size();
  const int n = degree_cap + 1;

  // Power tables: xs[p][j] = x_p^j, ys[q][k] = y_q^k.
  std::vector<std::vector<Complex>> xs(nx, std::vector<Complex>(n)), ys(ny, std::vector<Complex>(n));
  for (std::size_t p = 0; p < nx; ++p) {
    xs[p][0] = 1.0;
    for (int j = 1; j < n; ++j) xs[p][j] = xs[p][j - 1] * m.x_nodes()[p];
  }
  for (std::size_t q = 0; q < ny; ++q) {
    ys[q][0] = 1.0;
    for (int k = 1; k < n; ++k) ys[q][k] = ys[q][k - 1] * m.y_nodes()[q];
  }

  BimomentTable table;
  table.degree_cap = degree_cap;
  table.entries.assign(n, std::vector<Complex>(n, Complex(0.0, 0.0)));
  for (std::size_t p = 0; p < nx; ++p)
    for (std::size_t q = 0; q < ny; ++q) {
      const Complex w = m.weight(p, q);
      if (w == Complex(0.0, 0.0)) continue;
      for (int j = 0; j < n; ++j) {
        const Complex wx = w * xs[p][j];
        for (int k = 0; k < n; ++k) table.entries[j][k] += wx * ys[q][k];
      }
    }
  return table;
}

std::vector<Complex> moments(const DiscreteMeasure& m, int degree_cap) {
  if (degree_cap < 0) throw Error(ErrorKind::InvalidArgument, "degree_cap must be >= 0");
  std::vector<Complex> out(2 * degree_cap + 1, Complex(0.0, 0.0));
  for (std::size_t p = 0; p < m.size(); ++p) {
    Complex pw = m.weights()[p];
    for (auto& mr : out) {
      mr += pw;
      pw *= m.nodes()[p];
    }
  }
  return out;
}

namespace {

// Nodes and weights of the n-point Gauss-Legendre rule on [-1,1], by Newton
// iteration on the Legendre recurrence from Chebyshev initial guesses.
void legendre_rule(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    double z = std::cos(M_PI * (i - 0.25) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    x[i - 1] = -z;
    x[n - i] = z;
    w[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - i] = w[i - 1];
  }
}

}  // namespace

DiscreteMeasure gauss_legendre_discretize(const std::function<Complex(double)>& weight_fn,
                                          double a, double b, int n_nodes) {
  if (n_nodes < 1) throw Error(ErrorKind::InvalidArgument, "need at least one quadrature node");
  std::vector<double> x, w;
  legendre_rule(n_nodes, x, w);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  std::vector<Complex> nodes(n_nodes), weights(n_nodes);
  for (int i = 0; i < n_nodes; ++i) {
    const double xi = mid + half * x[i];
    const Complex fw = weight_fn(xi);
    if (!is_finite(fw))
      throw Error(ErrorKind::InvalidArgument, "weight function not finite at a quadrature node");
    nodes[i] = Complex(xi, 0.0);
    weights[i] = half * w[i] * fw;
  }
  return DiscreteMeasure(std::move(nodes), std::move(weights));
}

DiscreteBiMeasure product_bimeasure_coupled(const DiscreteMeasure& mx, const DiscreteMeasure& my,
                                            const std::function<Complex(Complex, Complex)>& coupling) {
  std::vector<std::vector<Complex>> w(mx.size(), std::vector<Complex>(my.size()));
  for (std::size_t p = 0; p < mx.size(); ++p)
    for (std::size_t q = 0; q < my.size(); ++q) {
      const Complex c = coupling(mx.nodes()[p], my.nodes()[q]);
      if (!is_finite(c))
        throw Error(ErrorKind::InvalidArgument, "coupling not finite at a grid point");
      w[p][q] = mx.weights()[p] * my.weights()[q] * c;
    }
  return DiscreteBiMeasure(mx.nodes(), my.nodes(), std::move(w));
}

}  // namespace ratsym
