#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace spinglass {

/// Scaling-law families in the system size L.
enum class FitFamily {
  PowerOffset,    // p + q / L^r        params (p, q, r)
  ExpSaturation,  // p - q exp(-L / r)  params (p, q, r)
  PowerLaw,       // b / L^a            params (a, b)
};

std::string to_string(FitFamily family);
std::string formula(FitFamily family);
std::vector<std::string> parameter_names(FitFamily family);
std::size_t parameter_count(FitFamily family);

double model_value(FitFamily family, std::span<const double> params, double L);

/// Analytic partial derivatives of the model with respect to each parameter.
void model_gradient(FitFamily family, std::span<const double> params, double L, std::span<double> out);

struct DataPoint {
  double L = 0.0;
  double value = 0.0;
  std::optional<double> sigma;
};

struct FitOptions {
  double min_L = 8.0;
  int max_iterations = 200;
  double step_tolerance = 1e-10;
  /// Use the data sigmas as weights. All sigmas must be present and positive.
  bool weighted = false;
  std::optional<std::vector<double>> initial;
};

struct FitResult {
  FitFamily family = FitFamily::PowerLaw;
  std::vector<double> parameters;
  std::vector<double> errors;  // sqrt(diag(s^2 (J^T W J)^-1)), s^2 = chi^2 / (n - p)
  double rss = 0.0;            // weighted sum of squared residuals when weighted
  bool weighted = false;
  bool converged = false;
  int iterations = 0;
  double min_L = 8.0;
  std::size_t points = 0;
  std::vector<double> rss_history;  // objective after each accepted step

  double parameter(const std::string& name) const;
  double error(const std::string& name) const;
};

/// Deterministic starting point for the family (log-log regression or a grid
/// over the nonlinear parameter with the linear ones solved exactly).
std::vector<double> initial_guess(FitFamily family, std::span<const DataPoint> data, bool weighted);

/// Damped Gauss-Newton (Levenberg-Marquardt) least squares on points with L >= min_L.
///
/// A run that exhausts max_iterations returns its last iterate with
/// converged = false. Throws InvalidArgument when there are not more points
/// than parameters or a weight is missing, and ConvergenceError when the
/// damped normal equations cannot be solved.
FitResult fit(FitFamily family, std::span<const DataPoint> data, const FitOptions& options = {});

struct ScalingFits {
  std::optional<FitResult> weighted;
  FitResult unweighted;
};

/// Unweighted fit, plus the weighted fit when every point carries a positive sigma.
ScalingFits scaling_pipeline(std::span<const DataPoint> curve, FitFamily family, const FitOptions& options = {});

nlohmann::json to_json(const FitResult& result);

}  // namespace spinglass
