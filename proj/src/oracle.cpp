#include "ratsym/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ratsym {

namespace {

constexpr double kZeroPartitionTol = 1e-14;

void check_budget(double support_size, int n, const OracleBudget& budget) {
  // Work in logs so huge supports cannot overflow.
  if (n * std::log(support_size) > std::log(static_cast<double>(budget.max_terms)) + 1e-9)
    throw Error(ErrorKind::BudgetExceeded,
                "tuple count exceeds budget of " + std::to_string(budget.max_terms) + " terms");
}

// Odometer over ordered index tuples of length n with digits in [0, base).
bool advance(std::vector<int>& idx, int base) {
  for (std::size_t i = idx.size(); i-- > 0;) {
    if (++idx[i] < base) return true;
    idx[i] = 0;
  }
  return false;
}

Complex tuple_vandermonde(const std::vector<Complex>& vals) {
  Complex r(1.0, 0.0);
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) r *= vals[i] - vals[j];
  return r;
}

struct RatioSums {
  Complex numerator{0.0, 0.0};
  Complex denominator{0.0, 0.0};
  double scale = 0.0;  // running max |weight * vandermonde terms|
};

}  // namespace

Complex oracle_two(const DiscreteBiMeasure& m, const IntegrandSpec& spec,
                   const OracleBudget& budget) {
  const int n = spec.n_pairs;
  const std::size_t nx = m.x_size(), ny = m.y_size();
  const std::size_t n_pairs_support = nx * ny;
  check_budget(static_cast<double>(n_pairs_support), n, budget);
  for (Complex e : spec.eta)
    for (Complex x : m.x_nodes())
      if (abs_dist(e, x) <= kPoleTol)
        throw Error(ErrorKind::PoleOnSupport, "eta within pole tolerance of an x node");
  for (Complex u : spec.mu)
    for (Complex y : m.y_nodes())
      if (abs_dist(u, y) <= kPoleTol)
        throw Error(ErrorKind::PoleOnSupport, "mu within pole tolerance of a y node");

  RatioSums sums;
  std::vector<int> idx(n, 0);
  std::vector<Complex> xv(n), yv(n);
  do {
    Complex w(1.0, 0.0);
    for (int a = 0; a < n; ++a) {
      const std::size_t p = static_cast<std::size_t>(idx[a]) / ny;
      const std::size_t q = static_cast<std::size_t>(idx[a]) % ny;
      w *= m.weight(p, q);
      xv[a] = m.x_nodes()[p];
      yv[a] = m.y_nodes()[q];
    }
    if (w == Complex(0.0, 0.0)) continue;
    const Complex dd = tuple_vandermonde(xv) * tuple_vandermonde(yv);
    if (dd == Complex(0.0, 0.0)) continue;
    const Complex base = w * dd;
    sums.scale = std::max(sums.scale, std::abs(base));
    Complex f(1.0, 0.0);
    for (int a = 0; a < n; ++a) {
      for (Complex v : spec.xi) f *= v - xv[a];
      for (Complex v : spec.zeta) f *= v - yv[a];
      for (Complex v : spec.eta) f /= v - xv[a];
      for (Complex v : spec.mu) f /= v - yv[a];
    }
    sums.numerator += base * f;
    sums.denominator += base;
  } while (advance(idx, static_cast<int>(n_pairs_support)));

  if (std::abs(sums.denominator) < kZeroPartitionTol * sums.scale || sums.scale == 0.0)
    throw Error(ErrorKind::ZeroPartition, "normalization sum vanishes for this measure");
  return sums.numerator / sums.denominator;
}

Complex oracle_one(const DiscreteMeasure& m, const OneMatrixSpec& spec,
                   const OracleBudget& budget) {
  const int n = spec.n_vars;
  check_budget(static_cast<double>(m.size()), n, budget);
  for (Complex e : spec.eta)
    for (Complex x : m.nodes())
      if (abs_dist(e, x) <= kPoleTol)
        throw Error(ErrorKind::PoleOnSupport, "eta within pole tolerance of a node");

  RatioSums sums;
  std::vector<int> idx(n, 0);
  std::vector<Complex> xv(n);
  do {
    Complex w(1.0, 0.0);
    for (int a = 0; a < n; ++a) {
      w *= m.weights()[idx[a]];
      xv[a] = m.nodes()[idx[a]];
    }
    if (w == Complex(0.0, 0.0)) continue;
    const Complex d = tuple_vandermonde(xv);
    if (d == Complex(0.0, 0.0)) continue;
    const Complex base = w * d * d;
    sums.scale = std::max(sums.scale, std::abs(base));
    Complex f(1.0, 0.0);
    for (int a = 0; a < n; ++a) {
      for (Complex v : spec.xi) f *= v - xv[a];
      for (Complex v : spec.eta) f /= v - xv[a];
    }
    sums.numerator += base * f;
    sums.denominator += base;
  } while (advance(idx, static_cast<int>(m.size())));

  if (std::abs(sums.denominator) < kZeroPartitionTol * sums.scale || sums.scale == 0.0)
    throw Error(ErrorKind::ZeroPartition, "normalization sum vanishes for this measure");
  return sums.numerator / sums.denominator;
}

Complex oracle_z2(const DiscreteBiMeasure& m, int n_pairs, const OracleBudget& budget) {
  const std::size_t ny = m.y_size();
  check_budget(static_cast<double>(m.x_size() * ny), n_pairs, budget);
  Complex total(0.0, 0.0);
  std::vector<int> idx(n_pairs, 0);
  std::vector<Complex> xv(n_pairs), yv(n_pairs);
  do {
    Complex w(1.0, 0.0);
    for (int a = 0; a < n_pairs; ++a) {
      const std::size_t p = static_cast<std::size_t>(idx[a]) / ny;
      const std::size_t q = static_cast<std::size_t>(idx[a]) % ny;
      w *= m.weight(p, q);
      xv[a] = m.x_nodes()[p];
      yv[a] = m.y_nodes()[q];
    }
    total += w * tuple_vandermonde(xv) * tuple_vandermonde(yv);
  } while (advance(idx, static_cast<int>(m.x_size() * ny)));
  return total;
}

Complex oracle_z1(const DiscreteMeasure& m, int n_vars, const OracleBudget& budget) {
  check_budget(static_cast<double>(m.size()), n_vars, budget);
  Complex total(0.0, 0.0);
  std::vector<int> idx(n_vars, 0);
  std::vector<Complex> xv(n_vars);
  do {
    Complex w(1.0, 0.0);
    for (int a = 0; a < n_vars; ++a) {
      w *= m.weights()[idx[a]];
      xv[a] = m.nodes()[idx[a]];
    }
    const Complex d = tuple_vandermonde(xv);
    total += w * d * d;
  } while (advance(idx, static_cast<int>(m.size())));
  return total;
}

namespace {

// Left side shared by both partial-fraction identities.
Complex pf_lhs(std::span<const Complex> x, std::span<const Complex> eta) {
  Complex denom(1.0, 0.0);
  for (Complex e : eta)
    for (Complex v : x) denom *= e - v;
  return vandermonde(x) * vandermonde(eta) / denom;
}

int perm_sign(const std::vector<int>& seq) {
  int inv = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) ++inv;
  return (inv % 2 == 0) ? 1 : -1;
}

void check_pf_inputs(std::span<const Complex> x, std::span<const Complex> eta) {
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (abs_dist(x[i], x[j]) <= kDistinctTol)
        throw Error(ErrorKind::InvalidArgument, "x values not distinct");
  for (std::size_t i = 0; i < eta.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (abs_dist(eta[i], eta[j]) <= kDistinctTol)
        throw Error(ErrorKind::InvalidArgument, "eta values not distinct");
  for (Complex e : eta)
    for (Complex v : x)
      if (abs_dist(e, v) <= kDistinctTol)
        throw Error(ErrorKind::InvalidArgument, "x and eta values collide");
}

}  // namespace

double check_partial_frac_1(std::span<const Complex> x, std::span<const Complex> eta) {
  const int n = static_cast<int>(x.size()), m = static_cast<int>(eta.size());
  if (n < m) throw Error(ErrorKind::InvalidArgument, "identity needs |x| >= |eta|");
  check_pf_inputs(x, eta);

  Complex rhs(0.0, 0.0);
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    const int sgn = perm_sign(perm);
    // ordered choices a_1 < ... < a_M of positions in x (1-based in the sign)
    std::vector<int> comb(m);
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
      long long pos_sum = 0;
      Complex denom(1.0, 0.0);
      for (int j = 0; j < m; ++j) {
        pos_sum += comb[j] + 1;
        denom *= eta[perm[j]] - x[comb[j]];
      }
      std::vector<Complex> rest;
      rest.reserve(n - m);
      for (int i = 0, j = 0; i < n; ++i) {
        if (j < m && comb[j] == i) {
          ++j;
          continue;
        }
        rest.push_back(x[i]);
      }
      const double sign = ((pos_sum % 2 == 0) ? 1.0 : -1.0) * sgn;
      rhs += sign * vandermonde(rest) / denom;

      // next combination
      int i = m - 1;
      while (i >= 0 && comb[i] == n - m + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int k = i + 1; k < m; ++k) comb[k] = comb[k - 1] + 1;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  rhs *= (static_cast<long long>(m) * n % 2 == 0) ? 1.0 : -1.0;

  return std::abs(pf_lhs(x, eta) - rhs);
}

double check_partial_frac_2(std::span<const Complex> x, std::span<const Complex> eta) {
  const int n = static_cast<int>(x.size()), m = static_cast<int>(eta.size());
  if (n > m) throw Error(ErrorKind::InvalidArgument, "identity needs |x| <= |eta|");
  check_pf_inputs(x, eta);

  Complex rhs(0.0, 0.0);
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    const int sgn = perm_sign(perm);
    Complex denom(1.0, 0.0);
    for (int a = 0; a < n; ++a) denom *= eta[perm[a]] - x[a];
    std::vector<Complex> tail;
    tail.reserve(m - n);
    for (int k = n; k < m; ++k) tail.push_back(eta[perm[k]]);
    rhs += static_cast<double>(sgn) * vandermonde(tail) / denom;
  } while (std::next_permutation(perm.begin(), perm.end()));
  double fact = 1.0;
  for (int k = 2; k <= m - n; ++k) fact *= k;
  rhs *= ((static_cast<long long>(n) * (n - 1) / 2) % 2 == 0 ? 1.0 : -1.0) / fact;

  return std::abs(pf_lhs(x, eta) - rhs);
}

double check_cauchy_binet(const std::vector<std::vector<Complex>>& p_vectors,
                          const std::vector<std::vector<Complex>>& s_vectors, int n_free,
                          const OracleBudget& budget) {
  const int l = static_cast<int>(p_vectors.size());
  if (static_cast<int>(s_vectors.size()) != l)
    throw Error(ErrorKind::InvalidArgument, "vector family sizes differ");
  const int dim = n_free + l;
  double terms = 1.0;
  for (int k = 2; k <= dim; ++k) terms *= k;
  for (int k = 2; k <= l; ++k) terms *= k;
  if (terms > static_cast<double>(budget.max_terms))
    throw Error(ErrorKind::BudgetExceeded, "contraction too large for the budget");
  for (const auto& v : p_vectors)
    if (static_cast<int>(v.size()) != dim)
      throw Error(ErrorKind::InvalidArgument, "vector length must be N+L");
  for (const auto& v : s_vectors)
    if (static_cast<int>(v.size()) != dim)
      throw Error(ErrorKind::InvalidArgument, "vector length must be N+L");

  // First symbol: a permutation pi of 0..dim-1; positions 0..N-1 are the shared
  // indices, the rest contract the P vectors. Second symbol shares the first N
  // values, its tail runs over permutations of the complement.
  Complex lhs(0.0, 0.0);
  std::vector<int> pi(dim);
  std::iota(pi.begin(), pi.end(), 0);
  std::vector<int> sorted_pi(dim);
  do {
    const int sign1 = perm_sign(pi);
    Complex p_term(1.0, 0.0);
    for (int a = 0; a < l; ++a) p_term *= p_vectors[a][pi[n_free + a]];
    if (p_term == Complex(0.0, 0.0)) continue;

    std::vector<int> tail(pi.begin() + n_free, pi.end());
    std::sort(tail.begin(), tail.end());
    do {
      std::copy(pi.begin(), pi.begin() + n_free, sorted_pi.begin());
      std::copy(tail.begin(), tail.end(), sorted_pi.begin() + n_free);
      const int sign2 = perm_sign(sorted_pi);
      Complex s_term(1.0, 0.0);
      for (int b = 0; b < l; ++b) s_term *= s_vectors[b][tail[b]];
      lhs += static_cast<double>(sign1 * sign2) * p_term * s_term;
    } while (std::next_permutation(tail.begin(), tail.end()));
  } while (std::next_permutation(pi.begin(), pi.end()));

  ComplexMatrix gram(l, l);
  for (int a = 0; a < l; ++a)
    for (int b = 0; b < l; ++b) {
      Complex s(0.0, 0.0);
      for (int j = 0; j < dim; ++j) s += p_vectors[a][j] * s_vectors[b][j];
      gram(a, b) = s;
    }
  double n_fact = 1.0;
  for (int k = 2; k <= n_free; ++k) n_fact *= k;
  return std::abs(lhs - n_fact * det_complex(std::move(gram)));
}

namespace {

void attach_oracle(EvaluationReport& r, Complex oracle) {
  r.oracle_value = oracle;
  r.abs_residual = std::abs(r.value - oracle);
}

}  // namespace

EvaluationReport integral_two_verified(const BiorthogonalSystem& sys, const IntegrandSpec& spec,
                                       const OracleBudget& budget) {
  EvaluationReport r = integral_two(sys, spec);
  attach_oracle(r, oracle_two(sys.measure(), spec, budget));
  return r;
}

EvaluationReport one_matrix_verified(const OrthogonalSystem& sys, const OneMatrixSpec& spec,
                                     const OracleBudget& budget) {
  EvaluationReport r = one_matrix(sys, spec);
  attach_oracle(r, oracle_one(sys.measure(), spec, budget));
  return r;
}

}  // namespace ratsym
