#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "ratsym/oracle.hpp"
#include "ratsym/rng.hpp"

namespace ratsym {

enum class RunMode { Compute, Verify, Sweep, Identities };

struct RunConfig {
  RunMode mode = RunMode::Compute;
  std::string measure_path;
  std::string spec_source;  // inline JSON (starts with '{') or a file path
  double tolerance = 1e-8;
  std::uint64_t seed = 12345;
  long long budget = 10'000'000;
  std::string out_path;  // empty writes to `out`
  bool with_timestamp = true;
};

/// Executes one run. Report lines (JSON objects, one per line) go to `out` or
/// the configured file; diagnostics to `diag`. Returns the process exit code:
/// 0 all checks passed, 1 a check failed, 2 parse/usage/evaluation error.
int run(const RunConfig& config, std::ostream& out, std::ostream& diag);

/// Seeded parameter draws for sweeps and harnesses: zeros on the radius-2
/// circle, poles on the radius-3 circle, distinct within each list.
IntegrandSpec draw_two_matrix_spec(DrawRng& rng, int n, int l1, int l2, int m1, int m2);
OneMatrixSpec draw_one_matrix_spec(DrawRng& rng, int n, int l, int m);

/// Largest degree cap with all leading minors nonsingular, or -1 if even the
/// 1x1 minor fails. Bounded by the support rank.
int constructible_cap(const DiscreteBiMeasure& m);
int constructible_cap(const DiscreteMeasure& m);

}  // namespace ratsym
