#include "ratsym/cli.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "ratsym/io.hpp"
#include "reduction_check.hpp"

namespace ratsym {

namespace {

using nlohmann::json;

constexpr double kZeroRadius = 2.0;  // xi, zeta draws
constexpr double kPoleRadius = 3.0;  // eta, mu draws

std::string timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json load_spec_json(const std::string& source) {
  if (source.empty()) throw Error(ErrorKind::ParseError, "no spec given");
  try {
    if (!source.empty() && source.front() == '{') return json::parse(source);
    std::ifstream in(source);
    if (!in) throw Error(ErrorKind::ParseError, "cannot read spec file " + source);
    json j;
    in >> j;
    return j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("spec: ") + e.what());
  }
}

struct Range {
  int lo = 0, hi = 0;
};

Range parse_range(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::ParseError, std::string("sweep needs ") + key);
  const json& v = j.at(key);
  if (v.is_number_integer()) return {v.get<int>(), v.get<int>()};
  if (v.is_array() && v.size() == 2) return {v[0].get<int>(), v[1].get<int>()};
  throw Error(ErrorKind::ParseError, std::string(key) + " must be an int or [lo, hi]");
}

bool within_budget(std::size_t support, int n, long long budget) {
  return n * std::log(static_cast<double>(support)) <=
         std::log(static_cast<double>(budget)) + 1e-9;
}

int required_cap_two(int n, int l1, int l2, int m1, int m2) {
  const int d1 = n + l1 - m1, d2 = n + l2 - m2;
  if (d1 >= 0 && d2 >= 0) return std::max(n, std::max(d1, d2)) - 1;
  if (d1 >= 0 || d2 >= 0) return std::max({n, std::abs(d1), std::abs(d2)}) - 1;
  return std::max({n, -d1, -d2}) - 1;
}

int required_cap_one(int n, int l, int m) {
  return n >= m ? n + l - 1 : std::max(n + l - 1, m - n - 1);
}

struct Emitter {
  std::ostream& out;
  bool all_pass = true;
  int total = 0, failed = 0;

  void line(const json& j) { out << j.dump() << "\n"; }

  void check_line(json j, bool pass) {
    ++total;
    if (!pass) {
      ++failed;
      all_pass = false;
    }
    line(j);
  }
};

// Evaluations run concurrently in bounded windows; lines are emitted in spec
// order regardless of completion order.
template <typename Spec, typename Eval>
void run_windowed(const std::vector<Spec>& specs, const Eval& eval, Emitter& em) {
  const std::size_t window = std::max<std::size_t>(std::thread::hardware_concurrency(), 2);
  for (std::size_t start = 0; start < specs.size(); start += window) {
    const std::size_t stop = std::min(start + window, specs.size());
    std::vector<std::future<json>> batch;
    batch.reserve(stop - start);
    for (std::size_t i = start; i < stop; ++i)
      batch.push_back(std::async(std::launch::async, eval, std::cref(specs[i])));
    for (auto& f : batch) {
      const json j = f.get();
      em.check_line(j, j.value("pass", false));
    }
  }
}

int mode_compute_or_verify(const RunConfig& config, const MeasureVariant& measure, Emitter& em) {
  const json spec_json_in = load_spec_json(config.spec_source);
  const OracleBudget budget{config.budget};

  if (std::holds_alternative<DiscreteBiMeasure>(measure)) {
    const auto& m = std::get<DiscreteBiMeasure>(measure);
    const IntegrandSpec spec = parse_integrand_spec(spec_json_in);
    const int cap = required_cap_two(spec.n_pairs, spec.l1(), spec.l2(), spec.m1(), spec.m2());
    const BiorthogonalSystem sys = biorthogonalize(m, std::max(cap, 0));
    EvaluationReport report = config.mode == RunMode::Verify
                                  ? integral_two_verified(sys, spec, budget)
                                  : integral_two(sys, spec);
    const json out_line = report_to_json(spec_to_json(spec), report, config.tolerance);
    em.check_line(out_line, !report.oracle_value ||
                                residual_pass(report.value, *report.oracle_value, config.tolerance));
  } else {
    const auto& m = std::get<DiscreteMeasure>(measure);
    const OneMatrixSpec spec = parse_one_matrix_spec(spec_json_in);
    const OrthogonalSystem sys =
        orthogonalize(m, std::max(required_cap_one(spec.n_vars, spec.l(), spec.m()), 0));
    EvaluationReport report = config.mode == RunMode::Verify ? one_matrix_verified(sys, spec, budget)
                                                             : one_matrix(sys, spec);
    const json out_line = report_to_json(spec_to_json(spec), report, config.tolerance);
    em.check_line(out_line, !report.oracle_value ||
                                residual_pass(report.value, *report.oracle_value, config.tolerance));
  }
  return em.all_pass ? 0 : 1;
}

int mode_sweep(const RunConfig& config, const MeasureVariant& measure, Emitter& em) {
  const json spec_json = load_spec_json(config.spec_source);
  if (!spec_json.contains("sweep"))
    throw Error(ErrorKind::ParseError, "sweep mode needs a {\"sweep\": {...}} spec");
  const json& sw = spec_json.at("sweep");
  const int draws = sw.contains("draws") ? sw.at("draws").get<int>() : 1;
  if (draws < 1) throw Error(ErrorKind::ParseError, "draws must be >= 1");
  DrawRng rng(config.seed);
  const OracleBudget budget{config.budget};

  // Draws happen serially in enumeration order (deterministic for a fixed
  // seed); the evaluations then run concurrently and print in the same order.
  if (std::holds_alternative<DiscreteBiMeasure>(measure)) {
    const auto& m = std::get<DiscreteBiMeasure>(measure);
    const Range rn = parse_range(sw, "N"), rl1 = parse_range(sw, "L1"),
                rl2 = parse_range(sw, "L2"), rm1 = parse_range(sw, "M1"),
                rm2 = parse_range(sw, "M2");
    const int cap = constructible_cap(m);
    if (cap < 0) throw Error(ErrorKind::ZeroPartition, "measure has no usable moments");
    const BiorthogonalSystem sys = biorthogonalize(m, cap);

    std::vector<IntegrandSpec> specs;
    for (int n = rn.lo; n <= rn.hi; ++n)
      for (int l1 = rl1.lo; l1 <= rl1.hi; ++l1)
        for (int l2 = rl2.lo; l2 <= rl2.hi; ++l2)
          for (int m1 = rm1.lo; m1 <= rm1.hi; ++m1)
            for (int m2 = rm2.lo; m2 <= rm2.hi; ++m2) {
              if (n < 1 || required_cap_two(n, l1, l2, m1, m2) > cap) continue;
              if (!within_budget(m.x_size() * m.y_size(), n, config.budget)) continue;
              for (int d = 0; d < draws; ++d)
                specs.push_back(draw_two_matrix_spec(rng, n, l1, l2, m1, m2));
            }

    run_windowed(specs,
                 [&sys, &budget, &config](const IntegrandSpec& spec) {
                   try {
                     const EvaluationReport r = integral_two_verified(sys, spec, budget);
                     return report_to_json(spec_to_json(spec), r, config.tolerance);
                   } catch (const Error& e) {
                     return json{{"spec", spec_to_json(spec)}, {"error", e.what()}, {"pass", false}};
                   }
                 },
                 em);
  } else {
    const auto& m = std::get<DiscreteMeasure>(measure);
    const Range rn = parse_range(sw, "N"), rl = parse_range(sw, "L"), rm = parse_range(sw, "M");
    const int cap = constructible_cap(m);
    if (cap < 0) throw Error(ErrorKind::ZeroPartition, "measure has no usable moments");
    const OrthogonalSystem sys = orthogonalize(m, cap);

    std::vector<OneMatrixSpec> specs;
    for (int n = rn.lo; n <= rn.hi; ++n)
      for (int l = rl.lo; l <= rl.hi; ++l)
        for (int mm = rm.lo; mm <= rm.hi; ++mm) {
          if (n < 1 || required_cap_one(n, l, mm) > cap) continue;
          if (!within_budget(m.size(), n, config.budget)) continue;
          for (int d = 0; d < draws; ++d) specs.push_back(draw_one_matrix_spec(rng, n, l, mm));
        }

    run_windowed(specs,
                 [&sys, &budget, &config](const OneMatrixSpec& spec) {
                   try {
                     const EvaluationReport r = one_matrix_verified(sys, spec, budget);
                     return report_to_json(spec_to_json(spec), r, config.tolerance);
                   } catch (const Error& e) {
                     return json{{"spec", spec_to_json(spec)}, {"error", e.what()}, {"pass", false}};
                   }
                 },
                 em);
  }
  em.line(json{{"summary", {{"total", em.total}, {"failed", em.failed}}}});
  return em.all_pass ? 0 : 1;
}

// Fixed tolerances of the identity families; --tolerance applies to the
// oracle-comparison modes, not these.
constexpr double kPartialFracTol = 1e-10;
constexpr double kCauchyBinetTol = 1e-9;
constexpr double kReductionTol = 1e-9;

int mode_identities(const RunConfig& config, const MeasureVariant& measure, Emitter& em) {
  DrawRng rng(config.seed);

  // Partial-fraction expansions, 100 seeded draws each, N,M <= 4.
  for (int draw = 0; draw < 100; ++draw) {
    const int m = 1 + static_cast<int>(rng.uniform01() * 4) % 4;
    const int n = m + static_cast<int>(rng.uniform01() * (5 - m)) % (5 - m);
    std::vector<Complex> x, eta;
    for (int i = 0; i < n; ++i) x.push_back(rng.in_annulus(0.5, 1.5));
    for (int i = 0; i < m; ++i) eta.push_back(rng.in_annulus(2.5, 3.5));
    const double r = check_partial_frac_1(x, eta);
    em.check_line(json{{"identity", "partial_frac_1"},
                       {"draw", draw},
                       {"shape", {{"N", n}, {"M", m}}},
                       {"residual", r},
                       {"pass", r < kPartialFracTol}},
                  r < kPartialFracTol);
  }
  for (int draw = 0; draw < 100; ++draw) {
    const int n = static_cast<int>(rng.uniform01() * 4) % 4;
    const int m = std::max(n, 1) + static_cast<int>(rng.uniform01() * 2) % 2;
    std::vector<Complex> x, eta;
    for (int i = 0; i < n; ++i) x.push_back(rng.in_annulus(0.5, 1.5));
    for (int i = 0; i < m; ++i) eta.push_back(rng.in_annulus(2.5, 3.5));
    const double r = check_partial_frac_2(x, eta);
    em.check_line(json{{"identity", "partial_frac_2"},
                       {"draw", draw},
                       {"shape", {{"N", n}, {"M", m}}},
                       {"residual", r},
                       {"pass", r < kPartialFracTol}},
                  r < kPartialFracTol);
  }

  // Cauchy-Binet contraction, 50 draws, L <= 3, N <= 3.
  for (int draw = 0; draw < 50; ++draw) {
    const int l = 1 + static_cast<int>(rng.uniform01() * 3) % 3;
    const int n = static_cast<int>(rng.uniform01() * 4) % 4;
    const int dim = n + l;
    std::vector<std::vector<Complex>> p(l, std::vector<Complex>(dim)),
        s(l, std::vector<Complex>(dim));
    for (auto& v : p)
      for (auto& z : v) z = rng.in_annulus(0.1, 1.0);
    for (auto& v : s)
      for (auto& z : v) z = rng.in_annulus(0.1, 1.0);
    const double r = check_cauchy_binet(p, s, n);
    em.check_line(json{{"identity", "cauchy_binet"},
                       {"draw", draw},
                       {"shape", {{"L", l}, {"N", n}}},
                       {"residual", r},
                       {"pass", r < kCauchyBinetTol}},
                  r < kCauchyBinetTol);
  }

  // Script-kernel factorization identities need a bimeasure.
  if (!std::holds_alternative<DiscreteBiMeasure>(measure))
    throw Error(ErrorKind::ParseError, "identities mode needs a bimeasure");
  const auto& m = std::get<DiscreteBiMeasure>(measure);
  const int cap = constructible_cap(m);
  if (cap < 1)
    throw Error(ErrorKind::CapExceeded, "reduction identities need a measure of rank >= 2");
  const BiorthogonalSystem sys = biorthogonalize(m, cap);
  const auto shapes = internal::reduction_shapes(cap);
  if (shapes.empty()) throw Error(ErrorKind::CapExceeded, "no feasible reduction shapes");
  for (int draw = 0; draw < 20; ++draw) {
    const auto& sh = shapes[draw % shapes.size()];
    const auto xi = draw_distinct_on_circle(rng, sh.l1, kZeroRadius);
    const auto zeta = draw_distinct_on_circle(rng, sh.l2, kZeroRadius);
    const auto eta = draw_distinct_on_circle(rng, sh.m1, kPoleRadius);
    const auto mu = draw_distinct_on_circle(rng, sh.m2, kPoleRadius);
    const auto res = internal::reduction_identity_residuals(sys, xi, zeta, eta, mu,
                                                            sh.n + sh.l1 - sh.m1,
                                                            sh.n + sh.l2 - sh.m2);
    const json shape{{"N", sh.n}, {"L1", sh.l1}, {"M1", sh.m1}, {"L2", sh.l2}, {"M2", sh.m2}};
    const struct {
      const char* name;
      double value;
    } rows[] = {{"reduction_k11", res.k11},
                {"reduction_k22", res.k22},
                {"reduction_k21", res.k21},
                {"reduction_ptilde", res.ptilde}};
    for (const auto& row : rows)
      em.check_line(json{{"identity", row.name},
                         {"draw", draw},
                         {"shape", shape},
                         {"residual", row.value},
                         {"pass", row.value < kReductionTol}},
                    row.value < kReductionTol);
  }
  em.line(json{{"summary", {{"total", em.total}, {"failed", em.failed}}}});
  return em.all_pass ? 0 : 1;
}

const char* mode_name(RunMode mode) {
  switch (mode) {
    case RunMode::Compute: return "compute";
    case RunMode::Verify: return "verify";
    case RunMode::Sweep: return "sweep";
    case RunMode::Identities: return "identities";
  }
  return "?";
}

}  // namespace

IntegrandSpec draw_two_matrix_spec(DrawRng& rng, int n, int l1, int l2, int m1, int m2) {
  auto xi = draw_distinct_on_circle(rng, l1, kZeroRadius);
  auto zeta = draw_distinct_on_circle(rng, l2, kZeroRadius);
  auto eta = draw_distinct_on_circle(rng, m1, kPoleRadius);
  auto mu = draw_distinct_on_circle(rng, m2, kPoleRadius);
  return IntegrandSpec(n, std::move(xi), std::move(zeta), std::move(eta), std::move(mu));
}

OneMatrixSpec draw_one_matrix_spec(DrawRng& rng, int n, int l, int m) {
  auto xi = draw_distinct_on_circle(rng, l, kZeroRadius);
  auto eta = draw_distinct_on_circle(rng, m, kPoleRadius);
  return OneMatrixSpec(n, std::move(xi), std::move(eta));
}

int constructible_cap(const DiscreteBiMeasure& m) {
  int cap = static_cast<int>(std::min(m.x_size(), m.y_size())) - 1;
  while (cap >= 0) {
    try {
      biorthogonalize(m, cap);
      return cap;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SingularMinor) throw;
      cap = e.index() - 2;
    }
  }
  return -1;
}

int constructible_cap(const DiscreteMeasure& m) {
  int cap = static_cast<int>(m.size()) - 1;
  while (cap >= 0) {
    try {
      orthogonalize(m, cap);
      return cap;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SingularMinor) throw;
      cap = e.index() - 2;
    }
  }
  return -1;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& diag) {
  std::ofstream file_out;
  std::ostream* sink = &out;
  if (!config.out_path.empty()) {
    file_out.open(config.out_path);
    if (!file_out) {
      diag << "ParseError: cannot open output file " << config.out_path << "\n";
      return 2;
    }
    sink = &file_out;
  }

  Emitter em{*sink};
  try {
    if (!(config.tolerance > 0.0))
      throw Error(ErrorKind::ParseError, "tolerance must be positive");
    if (config.budget < 1) throw Error(ErrorKind::ParseError, "budget must be positive");
    json header{{"run",
                 {{"mode", mode_name(config.mode)},
                  {"measure", config.measure_path},
                  {"seed", config.seed},
                  {"tolerance", config.tolerance},
                  {"budget", config.budget}}}};
    if (config.with_timestamp) header["run"]["timestamp"] = timestamp_utc();
    em.line(header);

    const MeasureVariant measure = load_measure_file(config.measure_path);
    switch (config.mode) {
      case RunMode::Compute:
      case RunMode::Verify:
        return mode_compute_or_verify(config, measure, em);
      case RunMode::Sweep:
        return mode_sweep(config, measure, em);
      case RunMode::Identities:
        return mode_identities(config, measure, em);
    }
    return 2;
  } catch (const Error& e) {
    diag << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ratsym
