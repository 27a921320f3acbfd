#include "ratsym/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace ratsym {

namespace {

void check_list(const std::vector<Complex>& values, const char* label) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!is_finite(values[i]))
      throw Error(ErrorKind::InvalidArgument, std::string(label) + " value is not finite");
    for (std::size_t j = 0; j < i; ++j)
      if (abs_dist(values[i], values[j]) <= kDistinctTol)
        throw Error(ErrorKind::InvalidArgument,
                    std::string(label) + " values not pairwise distinct");
  }
}

Complex pm_one(long long exponent) { return (exponent % 2 == 0) ? 1.0 : -1.0; }

long long tri(long long x) { return x * (x - 1) / 2; }       // x choose 2
long long tri_up(long long x) { return x * (x + 1) / 2; }

// prod_{n=0}^{hi} sqrt(h_n); hi = -1 gives 1.
Complex prod_sqrt_h(const BiorthogonalSystem& sys, int hi) {
  Complex r(1.0, 0.0);
  for (int n = 0; n <= hi; ++n) r *= sys.sqrt_h(n);
  return r;
}

// prod_{n=0}^{hi} h_n.
Complex prod_h(const BiorthogonalSystem& sys, int hi) {
  Complex r(1.0, 0.0);
  for (int n = 0; n <= hi; ++n) r *= sys.h(n);
  return r;
}

void require_cap(const BiorthogonalSystem& sys, int needed) {
  if (needed > sys.degree_cap())
    throw Error(ErrorKind::CapExceeded, "spec needs degrees up to " + std::to_string(needed) +
                                            " but system cap is " +
                                            std::to_string(sys.degree_cap()));
}

void check_poles_off_support(const IntegrandSpec& spec, const DiscreteBiMeasure& m) {
  for (Complex e : spec.eta)
    for (Complex x : m.x_nodes())
      if (abs_dist(e, x) <= kPoleTol)
        throw Error(ErrorKind::PoleOnSupport, "eta within pole tolerance of an x node");
  for (Complex u : spec.mu)
    for (Complex y : m.y_nodes())
      if (abs_dist(u, y) <= kPoleTol)
        throw Error(ErrorKind::PoleOnSupport, "mu within pole tolerance of a y node");
}

EvaluationReport make_report(Case c, Complex sign, Complex prefactor, Complex g_det) {
  EvaluationReport r;
  r.case_used = c;
  r.sign_factor = sign;
  r.prefactor = prefactor;
  r.g_det = g_det;
  r.value = sign * prefactor * g_det;
  return r;
}

}  // namespace

IntegrandSpec::IntegrandSpec(int n, std::vector<Complex> xi_in, std::vector<Complex> zeta_in,
                             std::vector<Complex> eta_in, std::vector<Complex> mu_in)
    : n_pairs(n), xi(std::move(xi_in)), zeta(std::move(zeta_in)), eta(std::move(eta_in)),
      mu(std::move(mu_in)) {
  if (n_pairs < 1) throw Error(ErrorKind::InvalidArgument, "need at least one variable pair");
  check_list(xi, "xi");
  check_list(zeta, "zeta");
  check_list(eta, "eta");
  check_list(mu, "mu");
}

IntegrandSpec IntegrandSpec::swapped() const { return IntegrandSpec(n_pairs, zeta, xi, mu, eta); }

OneMatrixSpec::OneMatrixSpec(int n, std::vector<Complex> xi_in, std::vector<Complex> eta_in)
    : n_vars(n), xi(std::move(xi_in)), eta(std::move(eta_in)) {
  if (n_vars < 1) throw Error(ErrorKind::InvalidArgument, "need at least one variable");
  check_list(xi, "xi");
  check_list(eta, "eta");
}

const char* to_string(Case c) {
  switch (c) {
    case Case::Case1: return "Case1";
    case Case::Case2: return "Case2";
    case Case::Case3: return "Case3";
    case Case::OneNgM: return "OneNgM";
    case Case::OneMgN: return "OneMgN";
  }
  return "?";
}

Complex vandermonde(std::span<const Complex> points) {
  Complex r(1.0, 0.0);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) r *= points[i] - points[j];
  return r;
}

Complex det_complex(ComplexMatrix m) {
  if (m.rows() != m.cols())
    throw Error(ErrorKind::InvalidArgument, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Complex det(1.0, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
    if (m(piv, k) == Complex(0.0, 0.0)) return Complex(0.0, 0.0);
    if (piv != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(m(piv, j), m(k, j));
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

Complex partition_z2(const BiorthogonalSystem& sys, int n_pairs) {
  if (n_pairs < 0) throw Error(ErrorKind::InvalidArgument, "negative ensemble size");
  require_cap(sys, n_pairs - 1);
  Complex r(1.0, 0.0);
  for (int n = 0; n < n_pairs; ++n) r *= sys.h(n) * static_cast<double>(n + 1);
  return r;
}

Complex partition_z1(const OrthogonalSystem& sys, int n_vars) {
  if (n_vars < 0) throw Error(ErrorKind::InvalidArgument, "negative ensemble size");
  if (n_vars - 1 > sys.degree_cap())
    throw Error(ErrorKind::CapExceeded, "ensemble size beyond system cap");
  Complex r(1.0, 0.0);
  for (int n = 0; n < n_vars; ++n) r *= sys.h(n) * static_cast<double>(n + 1);
  return r;
}

Complex epsilon_sign(int l1, int l2, int m1, int m2) {
  (void)l2;
  return pm_one(tri(m1 + m2) + static_cast<long long>(l1) * m2);
}

Complex interp_prefactor(const IntegrandSpec& spec) {
  Complex num(1.0, 0.0);
  for (Complex a : spec.xi)
    for (Complex b : spec.eta) num *= a - b;
  for (Complex a : spec.zeta)
    for (Complex b : spec.mu) num *= a - b;
  return num / (vandermonde(spec.xi) * vandermonde(spec.zeta) * vandermonde(spec.eta) *
                vandermonde(spec.mu));
}

Complex case2_sign(int n, int l1, int l2, int m1, int m2) {
  // Oracle-calibrated; equals the fully-nonnegative regime's sign on the
  // shared boundary N+L2-M2 = 0.
  return pm_one(tri(n) + tri_up(m1) + tri(l2) + static_cast<long long>(m1) * n +
                static_cast<long long>(m1) * l2 + static_cast<long long>(l1) * l2 +
                static_cast<long long>(n) * l1 + static_cast<long long>(l2) * m2);
}

Complex case3_sign(int n, int l1, int l2, int m1, int m2) {
  // Oracle-calibrated; agrees with case2_sign on the boundary N+L1-M1 = 0.
  return pm_one(static_cast<long long>(n) * (1 + m1 + m2) +
                static_cast<long long>(m1) * m2 + tri_up(l1) + tri_up(l2));
}

Complex case3_sign_derivation(int n, int l1, int l2, int m1, int m2) {
  return pm_one(static_cast<long long>(l1) * (n + m1) + static_cast<long long>(l2) * (n + m2) +
                tri_up(l1) + tri_up(l2));
}

Complex case3_sign_reordered(int n, int l1, int l2, int m1, int m2) {
  return case3_sign_derivation(n, l1, l2, m1, m2) *
         pm_one(static_cast<long long>(l1) * (m1 - l1 - n) +
                static_cast<long long>(l2) * (m2 - l2 - n));
}

EvaluationReport case1(const BiorthogonalSystem& sys, const IntegrandSpec& spec) {
  const int n = spec.n_pairs, l1 = spec.l1(), l2 = spec.l2(), m1 = spec.m1(), m2 = spec.m2();
  const int d1 = spec.dx(), d2 = spec.dy();
  if (!(d1 >= d2 && d2 >= 0))
    throw Error(ErrorKind::CaseMismatch, "need N+L1-M1 >= N+L2-M2 >= 0");
  require_cap(sys, std::max(d1, n) - 1);
  check_poles_off_support(spec, sys.measure());

  KernelTable table(sys, d1, spec.xi, spec.zeta, spec.eta, spec.mu);

  // Rows: xi then mu. Columns: kernel block vs eta, kernel block vs zeta, then
  // polynomial degrees d2 .. d1-1. Square of size L1+M2.
  const int size = l1 + m2;
  ComplexMatrix g(size, size);
  for (int a = 0; a < l1; ++a) {
    for (int j = 0; j < m1; ++j) g(a, j) = table.k11(d2, a, j);
    for (int b = 0; b < l2; ++b) g(a, m1 + b) = table.k12(d2, a, b);
    for (int deg = d2; deg < d1; ++deg) g(a, m1 + l2 + (deg - d2)) = table.p_at_xi(deg, a);
  }
  for (int k = 0; k < m2; ++k) {
    for (int j = 0; j < m1; ++j) g(l1 + k, j) = table.k21(d2, k, j);
    for (int b = 0; b < l2; ++b) g(l1 + k, m1 + b) = table.k22(d2, k, b);
    for (int deg = d2; deg < d1; ++deg)
      g(l1 + k, m1 + l2 + (deg - d2)) = table.ptilde_at_mu(deg, k);
  }

  // sqrt(h) products in ratio form; covers the regimes where a printed range
  // would run backwards (M > L on a side).
  const Complex h_ratio = prod_sqrt_h(sys, d2 - 1) * prod_sqrt_h(sys, d1 - 1) / prod_h(sys, n - 1);
  EvaluationReport r = make_report(Case::Case1, epsilon_sign(l1, l2, m1, m2),
                                   h_ratio * interp_prefactor(spec), det_complex(std::move(g)));
  return r;
}

EvaluationReport case2(const BiorthogonalSystem& sys, const IntegrandSpec& spec) {
  const int n = spec.n_pairs, l1 = spec.l1(), l2 = spec.l2(), m1 = spec.m1(), m2 = spec.m2();
  const int d1 = spec.dx(), d2 = spec.dy();
  if (!(d1 >= 0 && d2 <= 0))
    throw Error(ErrorKind::CaseMismatch, "need N+L1-M1 >= 0 >= N+L2-M2");
  require_cap(sys, std::max({d1, -d2, n}) - 1);
  check_poles_off_support(spec, sys.measure());
  for (Complex a : spec.xi)
    for (Complex b : spec.eta)
      if (abs_dist(a, b) <= kDistinctTol)
        throw Error(ErrorKind::CoincidentArguments, "xi/eta pair coincides");
  for (Complex a : spec.zeta)
    for (Complex b : spec.mu)
      if (abs_dist(a, b) <= kDistinctTol)
        throw Error(ErrorKind::CoincidentArguments, "zeta/mu pair coincides");

  // Rows: xi then mu. Columns: Cauchy block vs eta, Cauchy block vs zeta,
  // P degrees 0 .. N+L1-M1-1, then S degrees 0 .. M2-N-L2-1.
  const int n_p = d1, n_s = -d2;
  const int size = l1 + m2;
  ComplexMatrix g(size, size);
  for (int a = 0; a < l1; ++a) {
    for (int j = 0; j < m1; ++j) g(a, j) = Complex(1.0, 0.0) / (spec.eta[j] - spec.xi[a]);
    for (int b = 0; b < n_p; ++b) g(a, m1 + l2 + b) = sys.eval_P(b, spec.xi[a]);
  }
  for (int k = 0; k < m2; ++k) {
    for (int j = 0; j < m1; ++j) g(l1 + k, j) = h_kernel(sys, spec.mu[k], spec.eta[j]);
    for (int b = 0; b < l2; ++b)
      g(l1 + k, m1 + b) = Complex(1.0, 0.0) / (spec.mu[k] - spec.zeta[b]);
    for (int b = 0; b < n_p; ++b) g(l1 + k, m1 + l2 + b) = sys.hilbert_P(b, spec.mu[k]);
    for (int t = 0; t < n_s; ++t) g(l1 + k, m1 + l2 + n_p + t) = sys.eval_S(t, spec.mu[k]);
  }

  const Complex h_ratio =
      prod_sqrt_h(sys, d1 - 1) * prod_sqrt_h(sys, -d2 - 1) / prod_h(sys, n - 1);
  return make_report(Case::Case2, case2_sign(n, l1, l2, m1, m2),
                     h_ratio * interp_prefactor(spec), det_complex(std::move(g)));
}

EvaluationReport case3(const BiorthogonalSystem& sys, const IntegrandSpec& spec) {
  const int n = spec.n_pairs, l1 = spec.l1(), l2 = spec.l2(), m1 = spec.m1(), m2 = spec.m2();
  const int d1 = spec.dx(), d2 = spec.dy();
  if (!(d1 <= 0 && d2 <= 0))
    throw Error(ErrorKind::CaseMismatch, "need N+L1-M1 <= 0 and N+L2-M2 <= 0");
  require_cap(sys, std::max({-d1, -d2, n}) - 1);
  check_poles_off_support(spec, sys.measure());
  for (Complex a : spec.xi)
    for (Complex b : spec.eta)
      if (abs_dist(a, b) <= kDistinctTol)
        throw Error(ErrorKind::CoincidentArguments, "xi/eta pair coincides");
  for (Complex a : spec.zeta)
    for (Complex b : spec.mu)
      if (abs_dist(a, b) <= kDistinctTol)
        throw Error(ErrorKind::CoincidentArguments, "zeta/mu pair coincides");

  // Rows: mu block, then P_l rows (l = 0 .. M1-L1-N-1), then xi block.
  // Columns: eta block, S_m columns (m = 0 .. M2-L2-N-1), then zeta block.
  // Index ranges are the unique ones making G square (size M1+M2-N).
  const int n_l = -d1, n_m = -d2;
  const int size = m1 + m2 - n;
  ComplexMatrix g(size, size);
  for (int k = 0; k < m2; ++k) {
    for (int j = 0; j < m1; ++j) g(k, j) = h_kernel(sys, spec.mu[k], spec.eta[j]);
    for (int t = 0; t < n_m; ++t) g(k, m1 + t) = sys.eval_S(t, spec.mu[k]);
    for (int b = 0; b < l2; ++b)
      g(k, m1 + n_m + b) = Complex(1.0, 0.0) / (spec.mu[k] - spec.zeta[b]);
  }
  for (int t = 0; t < n_l; ++t)
    for (int j = 0; j < m1; ++j) g(m2 + t, j) = sys.eval_P(t, spec.eta[j]);
  for (int a = 0; a < l1; ++a)
    for (int j = 0; j < m1; ++j)
      g(m2 + n_l + a, j) = Complex(1.0, 0.0) / (spec.eta[j] - spec.xi[a]);

  const Complex h_ratio =
      prod_sqrt_h(sys, -d1 - 1) * prod_sqrt_h(sys, -d2 - 1) / prod_h(sys, n - 1);
  return make_report(Case::Case3, case3_sign(n, l1, l2, m1, m2),
                     h_ratio * interp_prefactor(spec), det_complex(std::move(g)));
}

EvaluationReport integral_two(const BiorthogonalSystem& sys, const IntegrandSpec& spec) {
  const int d1 = spec.dx(), d2 = spec.dy();
  if (d1 >= 0 && d2 >= 0) {
    if (d1 >= d2) return case1(sys, spec);
    EvaluationReport r = case1(sys.swapped(), spec.swapped());
    r.swapped = true;
    return r;
  }
  if (d1 >= 0) return case2(sys, spec);
  if (d2 >= 0) {
    EvaluationReport r = case2(sys.swapped(), spec.swapped());
    r.swapped = true;
    return r;
  }
  return case3(sys, spec);
}

EvaluationReport one_matrix_NgM(const OrthogonalSystem& sys, const OneMatrixSpec& spec) {
  const int n = spec.n_vars, l = spec.l(), m = spec.m();
  if (n < m) throw Error(ErrorKind::CaseMismatch, "need N >= M");
  if (n + l - 1 > sys.degree_cap())
    throw Error(ErrorKind::CapExceeded, "spec needs degrees beyond the system cap");
  for (Complex e : spec.eta)
    for (Complex x : sys.measure().nodes())
      if (abs_dist(e, x) <= kPoleTol)
        throw Error(ErrorKind::PoleOnSupport, "eta within pole tolerance of a node");

  // Rows: xi then eta; columns are degrees N-M .. N+L-1.
  const int size = l + m;
  ComplexMatrix g(size, size);
  for (int a = 0; a < l; ++a)
    for (int deg = n - m; deg < n + l; ++deg) g(a, deg - (n - m)) = sys.eval_P(deg, spec.xi[a]);
  for (int j = 0; j < m; ++j)
    for (int deg = n - m; deg < n + l; ++deg)
      g(l + j, deg - (n - m)) = sys.hilbert(deg, spec.eta[j]);

  Complex h_ratio(1.0, 0.0);
  for (int k = n; k < n + l; ++k) h_ratio *= sys.sqrt_h(k);
  for (int k = n - m; k < n; ++k) h_ratio /= sys.sqrt_h(k);
  const Complex pref = h_ratio / (vandermonde(spec.xi) * vandermonde(spec.eta));
  EvaluationReport r = make_report(Case::OneNgM, pm_one(tri(m) + static_cast<long long>(l) * m),
                                   pref, det_complex(std::move(g)));
  return r;
}

EvaluationReport one_matrix_MgN(const OrthogonalSystem& sys, const OneMatrixSpec& spec) {
  const int n = spec.n_vars, l = spec.l(), m = spec.m();
  if (n >= m) throw Error(ErrorKind::CaseMismatch, "need N < M");
  if (std::max(n + l - 1, m - n - 1) > sys.degree_cap())
    throw Error(ErrorKind::CapExceeded, "spec needs degrees beyond the system cap");
  for (Complex e : spec.eta)
    for (Complex x : sys.measure().nodes())
      if (abs_dist(e, x) <= kPoleTol)
        throw Error(ErrorKind::PoleOnSupport, "eta within pole tolerance of a node");

  // Rows: xi then eta. Left block: degrees 0 .. N+L-1 (P on xi rows, Hilbert
  // transforms on eta rows); right block: P_0 .. P_{M-N-1} on eta rows only.
  const int size = l + m;
  ComplexMatrix g(size, size);
  for (int a = 0; a < l; ++a)
    for (int deg = 0; deg < n + l; ++deg) g(a, deg) = sys.eval_P(deg, spec.xi[a]);
  for (int j = 0; j < m; ++j) {
    for (int deg = 0; deg < n + l; ++deg) g(l + j, deg) = sys.hilbert(deg, spec.eta[j]);
    for (int t = 0; t < m - n; ++t) g(l + j, n + l + t) = sys.eval_P(t, spec.eta[j]);
  }

  Complex h_ratio(1.0, 0.0);
  for (int k = 0; k < m - n; ++k) h_ratio *= sys.sqrt_h(k);
  for (int k = n; k < n + l; ++k) h_ratio *= sys.sqrt_h(k);
  for (int k = 0; k < n; ++k) h_ratio /= sys.sqrt_h(k);
  const Complex pref = h_ratio / (vandermonde(spec.xi) * vandermonde(spec.eta));
  // Sign pinned by the oracle: (-1)^{N(N-1)/2 + LN}, not the printed LM parity.
  EvaluationReport r = make_report(Case::OneMgN, pm_one(tri(n) + static_cast<long long>(l) * n),
                                   pref, det_complex(std::move(g)));
  return r;
}

EvaluationReport one_matrix(const OrthogonalSystem& sys, const OneMatrixSpec& spec) {
  return spec.n_vars >= spec.m() ? one_matrix_NgM(sys, spec) : one_matrix_MgN(sys, spec);
}

namespace {

Complex integral_value_or_one(const BiorthogonalSystem& sys, int n_pairs,
                              const std::vector<Complex>& xi, const std::vector<Complex>& zeta,
                              const std::vector<Complex>& eta, const std::vector<Complex>& mu) {
  if (n_pairs == 0) return Complex(1.0, 0.0);  // empty ensemble: integrand over no variables
  return integral_two(sys, IntegrandSpec(n_pairs, xi, zeta, eta, mu)).value;
}

}  // namespace

Complex modified_biorth(const BiorthogonalSystem& sys, const IntegrandSpec& base, int n,
                        PolyFamily which, Complex point) {
  if (n < 0 || n > sys.degree_cap())
    throw Error(ErrorKind::CapExceeded, "modified polynomial degree outside cap");
  // The point joins the same-variable zero list; a collision with that list or
  // with the same-variable poles leaves no valid evaluation.
  const auto& zeros = (which == PolyFamily::P) ? base.xi : base.zeta;
  const auto& poles = (which == PolyFamily::P) ? base.eta : base.mu;
  for (const auto* list : {&zeros, &poles})
    for (Complex v : *list)
      if (abs_dist(v, point) <= kDistinctTol)
        throw Error(ErrorKind::DegenerateExtension, "evaluation point collides with a parameter");

  std::vector<Complex> xi = base.xi, zeta = base.zeta;
  ((which == PolyFamily::P) ? xi : zeta).push_back(point);

  const Complex i_n = integral_value_or_one(sys, n, base.xi, base.zeta, base.eta, base.mu);
  const Complex i_n1 = integral_value_or_one(sys, n + 1, base.xi, base.zeta, base.eta, base.mu);
  const Complex i_ext = integral_value_or_one(sys, n, xi, zeta, base.eta, base.mu);

  // Monic polynomial of the modified measure is I_ext / I_n; its normalization
  // constant is h_n * I_{n+1} / I_n.
  const Complex h_mod = sys.h(n) * i_n1 / i_n;
  return i_ext / (i_n * std::sqrt(h_mod));
}

}  // namespace ratsym
