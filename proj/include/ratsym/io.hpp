#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "ratsym/formulas.hpp"
#include "ratsym/measure.hpp"

namespace ratsym {

using MeasureVariant = std::variant<DiscreteMeasure, DiscreteBiMeasure>;

// Measure files are JSON objects with a "type" of "discrete_measure",
// "discrete_bimeasure" or "quadrature". Complex numbers are [re, im] pairs.
// Quadrature weights come from a fixed catalogue: "one", "gauss" (exp(-x^2))
// and "exp_xy" (the coupled grid bimeasure on [a,b]^2).
MeasureVariant parse_measure(const nlohmann::json& j);
MeasureVariant load_measure_file(const std::string& path);

IntegrandSpec parse_integrand_spec(const nlohmann::json& j);
OneMatrixSpec parse_one_matrix_spec(const nlohmann::json& j);

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);
nlohmann::json complex_list_to_json(const std::vector<Complex>& values);

nlohmann::json spec_to_json(const IntegrandSpec& spec);
nlohmann::json spec_to_json(const OneMatrixSpec& spec);

/// One report line: spec echo, case, value, and when the oracle ran, the
/// residuals and pass flag at the given tolerance.
nlohmann::json report_to_json(const nlohmann::json& spec_json, const EvaluationReport& report,
                              double tolerance);

/// Pass rule used everywhere: |value - oracle| <= max(tol * |oracle|, 1e-10).
bool residual_pass(Complex value, Complex oracle, double tolerance);

}  // namespace ratsym
