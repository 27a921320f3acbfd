#pragma once

#include <span>
#include <vector>

#include "ratsym/formulas.hpp"

namespace ratsym {

struct OracleBudget {
  long long max_terms = 10'000'000;
};

/// Literal brute-force evaluation of the normalized two-variable ensemble
/// integral: the N-fold sum over all ordered tuples of support pairs, divided
/// by the same sum with integrand 1. Ground truth for every formula here.
Complex oracle_two(const DiscreteBiMeasure& m, const IntegrandSpec& spec,
                   const OracleBudget& budget = {});

/// One-variable analogue with the squared node-difference factor.
Complex oracle_one(const DiscreteMeasure& m, const OneMatrixSpec& spec,
                   const OracleBudget& budget = {});

/// The unnormalized partition sums, for cross-checks against N! prod h_n.
Complex oracle_z2(const DiscreteBiMeasure& m, int n_pairs, const OracleBudget& budget = {});
Complex oracle_z1(const DiscreteMeasure& m, int n_vars, const OracleBudget& budget = {});

/// Residual of the multivariable partial-fraction expansion valid for
/// |x| >= |eta|: both sides evaluated directly, max absolute difference.
double check_partial_frac_1(std::span<const Complex> x, std::span<const Complex> eta);

/// The companion expansion valid for |x| <= |eta|.
double check_partial_frac_2(std::span<const Complex> x, std::span<const Complex> eta);

/// Residual |lhs - N! det G| of the Cauchy-Binet identity in component form:
/// lhs is the double Levi-Civita contraction over vectors of length N+L,
/// G is the L x L matrix of scalar products.
double check_cauchy_binet(const std::vector<std::vector<Complex>>& p_vectors,
                          const std::vector<std::vector<Complex>>& s_vectors, int n_free,
                          const OracleBudget& budget = {});

/// Formula evaluation with the oracle run alongside and the residual recorded.
EvaluationReport integral_two_verified(const BiorthogonalSystem& sys, const IntegrandSpec& spec,
                                       const OracleBudget& budget = {});
EvaluationReport one_matrix_verified(const OrthogonalSystem& sys, const OneMatrixSpec& spec,
                                     const OracleBudget& budget = {});

}  // namespace ratsym
