#include "ratsym/io.hpp"

#include <cmath>
#include <fstream>

namespace ratsym {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorKind::ParseError, message); }

const json& require_key(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing key \"") + key + "\"");
  return *it;
}

std::vector<Complex> complex_list(const json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(complex_from_json(v));
  return out;
}

}  // namespace

Complex complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail("complex value must be a [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

nlohmann::json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

nlohmann::json complex_list_to_json(const std::vector<Complex>& values) {
  json out = json::array();
  for (Complex v : values) out.push_back(complex_to_json(v));
  return out;
}

MeasureVariant parse_measure(const nlohmann::json& j) {
  if (!j.is_object()) fail("measure file must hold a JSON object");
  const std::string type = require_key(j, "type").get<std::string>();
  try {
    if (type == "discrete_measure") {
      return DiscreteMeasure(complex_list(require_key(j, "nodes"), "nodes"),
                             complex_list(require_key(j, "weights"), "weights"));
    }
    if (type == "discrete_bimeasure") {
      const json& w = require_key(j, "weights");
      if (!w.is_array()) fail("weights must be a matrix");
      std::vector<std::vector<Complex>> rows;
      rows.reserve(w.size());
      for (const auto& r : w) rows.push_back(complex_list(r, "weight row"));
      return DiscreteBiMeasure(complex_list(require_key(j, "x_nodes"), "x_nodes"),
                               complex_list(require_key(j, "y_nodes"), "y_nodes"),
                               std::move(rows));
    }
    if (type == "quadrature") {
      const std::string weight = require_key(j, "weight").get<std::string>();
      const json& iv = require_key(j, "interval");
      if (!iv.is_array() || iv.size() != 2) fail("interval must be [a, b]");
      const double a = iv[0].get<double>(), b = iv[1].get<double>();
      const int n = require_key(j, "n_nodes").get<int>();
      if (weight == "one")
        return gauss_legendre_discretize([](double) { return Complex(1.0, 0.0); }, a, b, n);
      if (weight == "gauss")
        return gauss_legendre_discretize(
            [](double x) { return Complex(std::exp(-x * x), 0.0); }, a, b, n);
      if (weight == "exp_xy") {
        DiscreteMeasure axis =
            gauss_legendre_discretize([](double) { return Complex(1.0, 0.0); }, a, b, n);
        return product_bimeasure_coupled(
            axis, axis, [](Complex x, Complex y) { return std::exp(x * y); });
      }
      fail("unknown quadrature weight \"" + weight + "\" (catalogue: one, gauss, exp_xy)");
    }
    fail("unknown measure type \"" + type + "\"");
  } catch (const json::exception& e) {
    fail(e.what());
  }
}

MeasureVariant load_measure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read measure file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(std::string("measure file: ") + e.what());
  }
  return parse_measure(j);
}

IntegrandSpec parse_integrand_spec(const nlohmann::json& j) {
  if (!j.is_object()) fail("spec must be a JSON object");
  try {
    auto list = [&](const char* key) {
      return j.contains(key) ? complex_list(j.at(key), key) : std::vector<Complex>{};
    };
    return IntegrandSpec(require_key(j, "N").get<int>(), list("xi"), list("zeta"), list("eta"),
                         list("mu"));
  } catch (const json::exception& e) {
    fail(e.what());
  }
}

OneMatrixSpec parse_one_matrix_spec(const nlohmann::json& j) {
  if (!j.is_object()) fail("spec must be a JSON object");
  if (j.contains("zeta") || j.contains("mu"))
    fail("one-matrix spec cannot carry zeta or mu lists");
  try {
    auto list = [&](const char* key) {
      return j.contains(key) ? complex_list(j.at(key), key) : std::vector<Complex>{};
    };
    return OneMatrixSpec(require_key(j, "N").get<int>(), list("xi"), list("eta"));
  } catch (const json::exception& e) {
    fail(e.what());
  }
}

nlohmann::json spec_to_json(const IntegrandSpec& spec) {
  return json{{"N", spec.n_pairs},
              {"xi", complex_list_to_json(spec.xi)},
              {"zeta", complex_list_to_json(spec.zeta)},
              {"eta", complex_list_to_json(spec.eta)},
              {"mu", complex_list_to_json(spec.mu)}};
}

nlohmann::json spec_to_json(const OneMatrixSpec& spec) {
  return json{{"N", spec.n_vars},
              {"xi", complex_list_to_json(spec.xi)},
              {"eta", complex_list_to_json(spec.eta)}};
}

bool residual_pass(Complex value, Complex oracle, double tolerance) {
  return std::abs(value - oracle) <= std::max(tolerance * std::abs(oracle), 1e-10);
}

nlohmann::json report_to_json(const nlohmann::json& spec_json, const EvaluationReport& report,
                              double tolerance) {
  json out{{"spec", spec_json},
           {"case", to_string(report.case_used)},
           {"swapped", report.swapped},
           {"value", complex_to_json(report.value)}};
  if (report.oracle_value) {
    const Complex oracle = *report.oracle_value;
    out["oracle"] = complex_to_json(oracle);
    out["abs_residual"] = *report.abs_residual;
    out["rel_residual"] = *report.abs_residual / std::max(std::abs(oracle), 1e-10);
    out["pass"] = residual_pass(report.value, oracle, tolerance);
  }
  return out;
}

}  // namespace ratsym
