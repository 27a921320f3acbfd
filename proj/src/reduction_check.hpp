#pragma once

// Internal: direct-summation evaluators for the script-kernel factorization
// identities. Derivation scaffolding, deliberately not part of the public API;
// used by the identities run mode and the test suites.

#include <vector>

#include "ratsym/kernels.hpp"

namespace ratsym::internal {

struct ReductionShape {
  int n, l1, m1, l2, m2;
};

struct ReductionResiduals {
  double k11 = 0.0;
  double k22 = 0.0;
  double k21 = 0.0;
  double ptilde = 0.0;
};

/// Max relative residual of each of the four factorization identities over all
/// applicable argument combinations, with truncations j1 (x side) and j2
/// (y side). Valid when j1 >= max(L1, L2) and j2 >= L2; callers should also
/// keep the truncations below the support rank so the comparisons are not 0=0.
ReductionResiduals reduction_identity_residuals(const BiorthogonalSystem& sys,
                                                const std::vector<Complex>& xi,
                                                const std::vector<Complex>& zeta,
                                                const std::vector<Complex>& eta,
                                                const std::vector<Complex>& mu, int j1, int j2);

/// Feasible shapes for the identity draws on a system with the given cap:
/// truncations in [max(L1,L2), cap] so they stay under the rank, all four
/// parameter groups nonempty.
std::vector<ReductionShape> reduction_shapes(int degree_cap);

}  // namespace ratsym::internal
