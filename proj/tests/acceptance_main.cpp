// Acceptance suite: one pass/fail line per criterion, exit code = failure count.
// argv[1] (optional) is the path to the CLI binary for the determinism checks.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ratsym/cli.hpp"
#include "ratsym/io.hpp"
#include "reduction_check.hpp"
#include "test_measures.hpp"

using namespace ratsym;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string sci(double v) {
  std::ostringstream ss;
  ss.precision(2);
  ss << std::scientific << v;
  return ss.str();
}

void report(int number, const std::string& name, bool pass, const std::string& detail,
            double elapsed) {
  std::ostringstream line;
  line << (pass ? "[PASS] " : "[FAIL] ") << number << " " << name << " — " << detail << " ("
       << sci(elapsed) << " s)";
  std::cout << line.str() << std::endl;
  if (!pass) ++g_failures;
}

double rel_to(Complex got, Complex want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-10);
}

bool oracle_pass(Complex value, Complex oracle) {
  return std::abs(value - oracle) <= std::max(1e-8 * std::abs(oracle), 1e-10);
}

// ---------------------------------------------------------------- criterion 1
void criterion_biorthogonality() {
  const auto start = Clock::now();
  double worst = 0.0;
  for (const auto& entry : {std::pair{testing::coupled_sign(0.5), 1},
                            std::pair{testing::grid_expxy(), 2}}) {
    const auto sys = biorthogonalize(entry.first, entry.second);
    const auto& m = sys.measure();
    for (int j = 0; j <= sys.degree_cap(); ++j)
      for (int k = 0; k <= sys.degree_cap(); ++k) {
        Complex s(0.0, 0.0);
        for (std::size_t p = 0; p < m.x_size(); ++p)
          for (std::size_t q = 0; q < m.y_size(); ++q)
            s += m.weight(p, q) * sys.eval_P(j, m.x_nodes()[p]) * sys.eval_S(k, m.y_nodes()[q]);
        worst = std::max(worst, std::abs(s - Complex(j == k ? 1.0 : 0.0)));
      }
  }
  const double elapsed = seconds_since(start);
  report(1, "biorthogonality residuals", worst < 1e-10 && elapsed < 1.0,
         "max residual " + sci(worst), elapsed);
}

// ---------------------------------------------------------------- criterion 2
void criterion_partitions() {
  const auto start = Clock::now();
  double worst = 0.0;
  {
    const auto cs = testing::coupled_sign(0.5);
    const auto sys = biorthogonalize(cs, 1);
    for (int n = 1; n <= 2; ++n) worst = std::max(worst, rel_to(oracle_z2(cs, n), partition_z2(sys, n)));
  }
  {
    const auto grid = testing::grid_expxy();
    const auto sys = biorthogonalize(grid, 2);
    for (int n = 1; n <= 2; ++n)
      worst = std::max(worst, rel_to(oracle_z2(grid, n), partition_z2(sys, n)));
  }
  {
    const auto tp = testing::two_point();
    const auto sys = orthogonalize(tp, 1);
    for (int n = 1; n <= 2; ++n) worst = std::max(worst, rel_to(oracle_z1(tp, n), partition_z1(sys, n)));
  }
  {
    const auto leg = testing::legendre_measure(8);
    const auto sys = orthogonalize(leg, 3);
    for (int n = 1; n <= 2; ++n) worst = std::max(worst, rel_to(oracle_z1(leg, n), partition_z1(sys, n)));
  }
  report(2, "partition identities", worst < 1e-10, "max rel residual " + sci(worst),
         seconds_since(start));
}

// ---------------------------------------------------------------- criterion 3
void criterion_case1() {
  const auto start = Clock::now();
  const auto m = testing::grid_expxy();
  const auto sys = biorthogonalize(m, 2);
  DrawRng rng(31803);
  int count = 0, bad = 0;
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n)
    for (int l1 = 0; l1 <= 2; ++l1)
      for (int l2 = 0; l2 <= 2; ++l2)
        for (int m1 = 0; m1 <= 2; ++m1)
          for (int m2 = 0; m2 <= 2; ++m2) {
            const int d1 = n + l1 - m1, d2 = n + l2 - m2;
            if (!(d1 >= d2 && d2 >= 0)) continue;
            if (std::max(d1, n) - 1 > 2) continue;
            const auto spec = draw_two_matrix_spec(rng, n, l1, l2, m1, m2);
            const auto r = case1(sys, spec);
            const Complex oracle = oracle_two(m, spec);
            ++count;
            worst = std::max(worst, rel_to(r.value, oracle));
            if (!oracle_pass(r.value, oracle)) ++bad;
          }
  const double elapsed = seconds_since(start);
  report(3, "first-regime oracle equivalence",
         bad == 0 && count >= 50 && elapsed < 30.0,
         std::to_string(count) + " specs, worst rel " + sci(worst), elapsed);
}

// ---------------------------------------------------------------- criterion 4
void criterion_case2_case3() {
  const auto start = Clock::now();
  const auto m = testing::grid_expxy();
  const auto sys = biorthogonalize(m, 2);
  DrawRng rng(52041);

  int count2 = 0, bad2 = 0, count3 = 0, bad3 = 0;
  double worst = 0.0;
  // Mixed-sign regime in both orientations, via the dispatcher.
  for (int draw = 0; draw < 2; ++draw)
    for (int n = 1; n <= 3; ++n)
      for (int l1 = 0; l1 <= 2; ++l1)
        for (int l2 = 0; l2 <= 2; ++l2)
          for (int m1 = 0; m1 <= 2; ++m1)
            for (int m2 = 0; m2 <= 2; ++m2) {
              const int d1 = n + l1 - m1, d2 = n + l2 - m2;
              const bool mixed = (d1 >= 0 && d2 < 0) || (d1 < 0 && d2 >= 0);
              if (!mixed) continue;
              if (std::max({n, std::abs(d1), std::abs(d2)}) - 1 > 2) continue;
              const auto spec = draw_two_matrix_spec(rng, n, l1, l2, m1, m2);
              const auto r = integral_two(sys, spec);
              if (r.case_used != Case::Case2) continue;
              const Complex oracle = oracle_two(m, spec);
              ++count2;
              worst = std::max(worst, rel_to(r.value, oracle));
              if (!oracle_pass(r.value, oracle)) ++bad2;
            }
  // Fully reversed regime, direct calls.
  for (int draw = 0; draw < 2; ++draw)
    for (int n = 1; n <= 2; ++n)
      for (int l1 = 0; l1 <= 2; ++l1)
        for (int l2 = 0; l2 <= 2; ++l2)
          for (int m1 = 0; m1 <= 2; ++m1)
            for (int m2 = 0; m2 <= 2; ++m2) {
              const int d1 = n + l1 - m1, d2 = n + l2 - m2;
              if (!(d1 <= 0 && d2 <= 0)) continue;
              if (std::max({n, -d1, -d2}) - 1 > 2) continue;
              const auto spec = draw_two_matrix_spec(rng, n, l1, l2, m1, m2);
              const auto r = case3(sys, spec);
              const Complex oracle = oracle_two(m, spec);
              ++count3;
              worst = std::max(worst, rel_to(r.value, oracle));
              if (!oracle_pass(r.value, oracle)) ++bad3;
            }

  // Sign calibration, pinned: on a fixed seed set including shapes where the
  // two printed candidates disagree, the pinned parity matches the oracle
  // everywhere and each candidate fails somewhere.
  bool pinned_ok = true;
  int derivation_fails = 0, reordered_fails = 0;
  const int shapes[][5] = {{1, 0, 0, 1, 1}, {1, 0, 0, 2, 2}, {1, 1, 0, 2, 1}, {1, 0, 1, 1, 2},
                           {1, 1, 0, 3, 1}, {1, 0, 0, 2, 1}, {2, 0, 0, 2, 2}, {1, 1, 1, 2, 2}};
  for (const auto& s : shapes) {
    const int n = s[0], l1 = s[1], l2 = s[2], m1 = s[3], m2 = s[4];
    if (std::max({n, m1 - l1 - n, m2 - l2 - n}) - 1 > 2) continue;
    const auto spec = draw_two_matrix_spec(rng, n, l1, l2, m1, m2);
    const auto r = case3(sys, spec);
    const Complex oracle = oracle_two(m, spec);
    if (!oracle_pass(r.value, oracle)) pinned_ok = false;
    const Complex unsigned_value = r.value / case3_sign(n, l1, l2, m1, m2);
    if (!oracle_pass(unsigned_value * case3_sign_derivation(n, l1, l2, m1, m2), oracle))
      ++derivation_fails;
    if (!oracle_pass(unsigned_value * case3_sign_reordered(n, l1, l2, m1, m2), oracle))
      ++reordered_fails;
  }
  const bool calibration_ok = pinned_ok && derivation_fails > 0 && reordered_fails > 0;

  report(4, "mixed and reversed regime oracle equivalence",
         bad2 == 0 && bad3 == 0 && count2 >= 20 && count3 >= 20 && calibration_ok,
         std::to_string(count2) + " mixed + " + std::to_string(count3) +
             " reversed specs, worst rel " + sci(worst) +
             ", calibration rejects candidates (" + std::to_string(derivation_fails) + "/" +
             std::to_string(reordered_fails) + ")",
         seconds_since(start));
}

// ---------------------------------------------------------------- criterion 5
void criterion_one_matrix() {
  const auto start = Clock::now();
  DrawRng rng(77501);
  int count = 0, bad = 0;
  double worst = 0.0;

  const auto leg = testing::legendre_measure(8);
  const auto leg_sys = orthogonalize(leg, 7);
  const auto tp = testing::two_point();
  const auto tp_sys = orthogonalize(tp, 1);

  for (int n = 1; n <= 3; ++n)
    for (int l = 0; l <= 3; ++l)
      for (int mm = 0; mm <= 3; ++mm) {
        const int need = n >= mm ? n + l - 1 : std::max(n + l - 1, mm - n - 1);
        // Full lattice on the quadrature measure.
        if (need <= 7) {
          const auto spec = draw_one_matrix_spec(rng, n, l, mm);
          const auto r = one_matrix(leg_sys, spec);
          const Complex oracle = oracle_one(leg, spec);
          ++count;
          worst = std::max(worst, rel_to(r.value, oracle));
          if (!oracle_pass(r.value, oracle)) ++bad;
        }
        // Rank-two measure where the caps allow.
        if (need <= 1) {
          const auto spec = draw_one_matrix_spec(rng, n, l, mm);
          const auto r = one_matrix(tp_sys, spec);
          const Complex oracle = oracle_one(tp, spec);
          ++count;
          worst = std::max(worst, rel_to(r.value, oracle));
          if (!oracle_pass(r.value, oracle)) ++bad;
        }
      }
  report(5, "one-matrix oracle equivalence", bad == 0 && count >= 48,
         std::to_string(count) + " specs, worst rel " + sci(worst),
         seconds_since(start));
}

// ---------------------------------------------------------------- criterion 6
void criterion_identities() {
  const auto start = Clock::now();
  DrawRng rng(90210);
  double worst_pf = 0.0, worst_cb = 0.0, worst_interp = 0.0;

  for (int draw = 0; draw < 100; ++draw) {
    const int mm = 1 + static_cast<int>(rng.uniform01() * 4) % 4;
    const int n = mm + static_cast<int>(rng.uniform01() * (5 - mm)) % (5 - mm);
    std::vector<Complex> x, eta;
    for (int i = 0; i < n; ++i) x.push_back(rng.in_annulus(0.5, 1.5));
    for (int i = 0; i < mm; ++i) eta.push_back(rng.in_annulus(2.5, 3.5));
    worst_pf = std::max(worst_pf, check_partial_frac_1(x, eta));
  }
  for (int draw = 0; draw < 100; ++draw) {
    const int n = static_cast<int>(rng.uniform01() * 4) % 4;
    const int mm = std::max(n, 1) + static_cast<int>(rng.uniform01() * (4 - std::max(n, 1) + 1)) %
                                        (4 - std::max(n, 1) + 1);
    std::vector<Complex> x, eta;
    for (int i = 0; i < n; ++i) x.push_back(rng.in_annulus(0.5, 1.5));
    for (int i = 0; i < mm; ++i) eta.push_back(rng.in_annulus(2.5, 3.5));
    worst_pf = std::max(worst_pf, check_partial_frac_2(x, eta));
  }

  for (int draw = 0; draw < 50; ++draw) {
    const int l = 1 + static_cast<int>(rng.uniform01() * 3) % 3;
    const int n = static_cast<int>(rng.uniform01() * 4) % 4;
    std::vector<std::vector<Complex>> p(l, std::vector<Complex>(n + l)),
        s(l, std::vector<Complex>(n + l));
    for (auto& v : p)
      for (auto& z : v) z = rng.in_annulus(0.1, 1.0);
    for (auto& v : s)
      for (auto& z : v) z = rng.in_annulus(0.1, 1.0);
    worst_cb = std::max(worst_cb, check_cauchy_binet(p, s, n));
  }

  for (int draw = 0; draw < 50; ++draw) {
    const int m1 = static_cast<int>(rng.uniform01() * 4) % 4;
    const int l1 = m1 + static_cast<int>(rng.uniform01() * (4 - m1)) % (4 - m1);
    const int m2 = static_cast<int>(rng.uniform01() * 3) % 3;
    const int l2 = m2 + static_cast<int>(rng.uniform01() * (4 - m2)) % (4 - m2);
    const auto xi = draw_distinct_on_circle(rng, l1, 2.0);
    const auto zeta = draw_distinct_on_circle(rng, l2, 2.0);
    const auto eta = draw_distinct_on_circle(rng, m1, 3.0);
    const auto mu = draw_distinct_on_circle(rng, m2, 3.0);
    ComplexMatrix g1(l1, l1), g2(l2, l2);
    for (int a = 0; a < l1; ++a) {
      for (int j = 0; j < m1; ++j) g1(a, j) = Complex(1.0, 0.0) / (xi[a] - eta[j]);
      Complex pw(1.0, 0.0);
      for (int b = 0; b < l1 - m1; ++b, pw *= xi[a]) g1(a, m1 + b) = pw;
    }
    for (int a = 0; a < l2; ++a) {
      for (int k = 0; k < m2; ++k) g2(a, k) = Complex(1.0, 0.0) / (zeta[a] - mu[k]);
      Complex pw(1.0, 0.0);
      for (int c = 0; c < l2 - m2; ++c, pw *= zeta[a]) g2(a, m2 + c) = pw;
    }
    const Complex lhs = interp_prefactor(IntegrandSpec(1, xi, zeta, eta, mu));
    const double parity = ((m1 * (m1 - 1) / 2 + m2 * (m2 - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
    const Complex rhs = parity / (det_complex(std::move(g1)) * det_complex(std::move(g2)));
    worst_interp = std::max(worst_interp, rel_to(lhs, rhs));
  }

  const bool pass = worst_pf < 1e-10 && worst_cb < 1e-9 && worst_interp < 1e-10;
  report(6, "algebraic identity suite", pass,
         "partial-fraction " + sci(worst_pf) + ", contraction " +
             sci(worst_cb) + ", interpolation " + sci(worst_interp),
         seconds_since(start));
}

// ---------------------------------------------------------------- criterion 7
void criterion_reductions() {
  const auto start = Clock::now();
  DrawRng rng(61771);
  double worst = 0.0;
  int draws = 0;
  for (const auto& entry : {std::pair{testing::coupled_sign(0.5), 1},
                            std::pair{testing::grid_expxy(), 2}}) {
    const auto sys = biorthogonalize(entry.first, entry.second);
    const auto shapes = internal::reduction_shapes(entry.second);
    for (int d = 0; d < 10; ++d) {
      const auto& sh = shapes[d % shapes.size()];
      const auto res = internal::reduction_identity_residuals(
          sys, draw_distinct_on_circle(rng, sh.l1, 2.0), draw_distinct_on_circle(rng, sh.l2, 2.0),
          draw_distinct_on_circle(rng, sh.m1, 3.0), draw_distinct_on_circle(rng, sh.m2, 3.0),
          sh.n + sh.l1 - sh.m1, sh.n + sh.l2 - sh.m2);
      worst = std::max({worst, res.k11, res.k22, res.k21, res.ptilde});
      ++draws;
    }
  }
  report(7, "kernel factorization identities", worst < 1e-9 && draws == 20,
         std::to_string(draws) + " draws x 4 identities, worst rel " + sci(worst),
         seconds_since(start));
}

// ---------------------------------------------------------------- criterion 8
void criterion_boundary() {
  const auto start = Clock::now();
  const auto m = testing::grid_expxy();
  const auto sys = biorthogonalize(m, 2);
  DrawRng rng(14142);
  int count = 0;
  double worst = 0.0;
  for (int n = 1; n <= 2 && count < 10; ++n)
    for (int l1 = 0; l1 <= 2 && count < 10; ++l1)
      for (int m1 = 0; m1 <= 2 && count < 10; ++m1)
        for (int l2 = 0; l2 <= 1 && count < 10; ++l2) {
          const int m2 = n + l2;  // forces N+L2-M2 = 0
          const int d1 = n + l1 - m1;
          if (d1 < 0 || m2 > 3) continue;
          if (std::max({n, d1, m2 - n - l2}) - 1 > 2) continue;
          const auto spec = draw_two_matrix_spec(rng, n, l1, l2, m1, m2);
          const Complex via1 = case1(sys, spec).value;
          const Complex via2 = case2(sys, spec).value;
          worst = std::max(worst, rel_to(via1, via2));
          ++count;
        }
  report(8, "regime boundary agreement", count >= 10 && worst < 1e-9,
         std::to_string(count) + " boundary specs, worst rel " + sci(worst),
         seconds_since(start));
}

// ---------------------------------------------------------------- criterion 9
void criterion_errors() {
  const auto start = Clock::now();
  int ok = 0, expected = 0;

  auto expect_kind = [&](ErrorKind kind, auto&& fn) {
    ++expected;
    try {
      fn();
    } catch (const Error& e) {
      if (e.kind() == kind) ++ok;
      return;
    }
  };

  expect_kind(ErrorKind::SingularMinor, [] { biorthogonalize(testing::separable_pm(), 1); });
  expect_kind(ErrorKind::SingularMinor, [] { biorthogonalize(testing::coupled_sign(0.5), 2); });
  expect_kind(ErrorKind::PoleOnSupport, [] {
    const auto sys = biorthogonalize(testing::coupled_sign(0.5), 1);
    integral_two(sys, IntegrandSpec(1, {}, {}, {Complex(1.0, 0.0)}, {}));
  });
  expect_kind(ErrorKind::PoleOnSupport, [] {
    oracle_two(testing::grid_expxy(), IntegrandSpec(1, {}, {}, {}, {Complex(0.0, 0.0)}));
  });
  expect_kind(ErrorKind::CaseMismatch, [] {
    const auto sys = biorthogonalize(testing::coupled_sign(0.5), 1);
    case2(sys, IntegrandSpec(1, {Complex(2.0)}, {}, {}, {}));
  });
  expect_kind(ErrorKind::CaseMismatch, [] {
    const auto sys = biorthogonalize(testing::coupled_sign(0.5), 1);
    case3(sys, IntegrandSpec(1, {Complex(2.0)}, {}, {}, {}));
  });
  expect_kind(ErrorKind::CaseMismatch, [] {
    const auto sys = orthogonalize(testing::two_point(), 1);
    one_matrix_MgN(sys, OneMatrixSpec(1, {}, {Complex(3.0)}));
  });
  expect_kind(ErrorKind::ZeroPartition,
              [] { oracle_two(testing::single_point(), IntegrandSpec(2, {}, {}, {}, {})); });

  report(9, "error paths", ok == expected,
         std::to_string(ok) + "/" + std::to_string(expected) + " raised deterministically",
         seconds_since(start));
}

// --------------------------------------------------------------- criterion 10
std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_cli(const std::string& cli_path) {
  const auto start = Clock::now();
  if (cli_path.empty()) {
    report(10, "command-line determinism", false, "no CLI binary path given", 0.0);
    return;
  }
  const fs::path dir = fs::temp_directory_path() / "ratsym_acceptance";
  fs::create_directories(dir);

  const auto m = testing::grid_expxy();
  nlohmann::json measure{{"type", "discrete_bimeasure"},
                         {"x_nodes", complex_list_to_json(m.x_nodes())},
                         {"y_nodes", complex_list_to_json(m.y_nodes())}};
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : m.weights()) rows.push_back(complex_list_to_json(row));
  measure["weights"] = rows;
  const fs::path measure_path = dir / "grid.json";
  std::ofstream(measure_path) << measure.dump();

  auto run_cli = [&](const std::string& args, const fs::path& out) {
    const std::string cmd = "\"" + cli_path + "\" " + args + " > \"" + out.string() +
                            "\" 2> \"" + (dir / "stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };

  const std::string common = "--measure \"" + measure_path.string() + "\" --no-timestamp --seed 4242";
  const std::string verify_args =
      "--mode verify " + common + " --spec \"{\\\"N\\\":1,\\\"xi\\\":[[2,0]]}\"";
  const std::string sweep_args =
      "--mode sweep " + common +
      " --spec \"{\\\"sweep\\\":{\\\"N\\\":[1,2],\\\"L1\\\":[0,2],\\\"L2\\\":[0,2],"
      "\\\"M1\\\":[0,2],\\\"M2\\\":[0,2],\\\"draws\\\":1}}\"";

  const int v1 = run_cli(verify_args, dir / "verify1.txt");
  const int v2 = run_cli(verify_args, dir / "verify2.txt");
  const int s1 = run_cli(sweep_args, dir / "sweep1.txt");
  const int s2 = run_cli(sweep_args, dir / "sweep2.txt");

  const bool verify_ok = v1 == 0 && v2 == 0 &&
                         read_file(dir / "verify1.txt") == read_file(dir / "verify2.txt") &&
                         !read_file(dir / "verify1.txt").empty();
  const bool sweep_ok = s1 == 0 && s2 == 0 &&
                        read_file(dir / "sweep1.txt") == read_file(dir / "sweep2.txt") &&
                        !read_file(dir / "sweep1.txt").empty();

  report(10, "command-line determinism", verify_ok && sweep_ok,
         std::string("verify ") + (verify_ok ? "byte-identical" : "mismatch") + ", sweep " +
             (sweep_ok ? "byte-identical, exit 0" : "mismatch"),
         seconds_since(start));
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli_path = argc > 1 ? argv[1] : "";
  criterion_biorthogonality();
  criterion_partitions();
  criterion_case1();
  criterion_case2_case3();
  criterion_one_matrix();
  criterion_identities();
  criterion_reductions();
  criterion_boundary();
  criterion_errors();
  criterion_cli(cli_path);
  std::cout << (g_failures == 0 ? "all criteria passed" : std::to_string(g_failures) + " criteria failed")
            << std::endl;
  return g_failures;
}
