#include "spinglass/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "spinglass/error.hpp"

namespace spinglass {

std::string to_string(FitFamily family) {
  switch (family) {
    case FitFamily::PowerOffset: return "power_offset";
    case FitFamily::ExpSaturation: return "exp_saturation";
    case FitFamily::PowerLaw: return "power_law";
  }
  return "unknown";
}

std::string formula(FitFamily family) {
  switch (family) {
    case FitFamily::PowerOffset: return "p + q/L^r";
    case FitFamily::ExpSaturation: return "p - q*exp(-L/r)";
    case FitFamily::PowerLaw: return "b/L^a";
  }
  return "";
}

std::vector<std::string> parameter_names(FitFamily family) {
  if (family == FitFamily::PowerLaw) return {"a", "b"};
  return {"p", "q", "r"};
}

std::size_t parameter_count(FitFamily family) { return family == FitFamily::PowerLaw ? 2 : 3; }

double model_value(FitFamily family, std::span<const double> t, double L) {
  switch (family) {
    case FitFamily::PowerOffset: return t[0] + t[1] * std::pow(L, -t[2]);
    case FitFamily::ExpSaturation: return t[0] - t[1] * std::exp(-L / t[2]);
    case FitFamily::PowerLaw: return t[1] * std::pow(L, -t[0]);
  }
  return 0.0;
}

void model_gradient(FitFamily family, std::span<const double> t, double L, std::span<double> out) {
  switch (family) {
    case FitFamily::PowerOffset: {
      const double decay = std::pow(L, -t[2]);
      out[0] = 1.0;
      out[1] = decay;
      out[2] = -t[1] * std::log(L) * decay;
      break;
    }
    case FitFamily::ExpSaturation: {
      const double e = std::exp(-L / t[2]);
      out[0] = 1.0;
      out[1] = -e;
      out[2] = -t[1] * e * L / (t[2] * t[2]);
      break;
    }
    case FitFamily::PowerLaw: {
      const double decay = std::pow(L, -t[0]);
      out[0] = -t[1] * std::log(L) * decay;
      out[1] = decay;
      break;
    }
  }
}

double FitResult::parameter(const std::string& name) const {
  const auto names = parameter_names(family);
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw InvalidArgument("unknown parameter " + name);
  return parameters[static_cast<std::size_t>(it - names.begin())];
}

double FitResult::error(const std::string& name) const {
  const auto names = parameter_names(family);
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw InvalidArgument("unknown parameter " + name);
  return errors[static_cast<std::size_t>(it - names.begin())];
}

namespace {

struct Prepared {
  Eigen::VectorXd L, y, scale;  // residual_i = (y_i - f_i) / scale_i
};

Prepared prepare(std::span<const DataPoint> data, double min_L, bool weighted) {
  std::vector<const DataPoint*> kept;
  for (const auto& d : data) {
    if (d.L >= min_L) kept.push_back(&d);
  }
  Prepared p;
  const auto n = static_cast<Eigen::Index>(kept.size());
  p.L.resize(n);
  p.y.resize(n);
  p.scale = Eigen::VectorXd::Ones(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& d = *kept[static_cast<std::size_t>(i)];
    if (!std::isfinite(d.L) || !std::isfinite(d.value) || d.L <= 0.0) {
      throw InvalidArgument("fit: data points need finite values and L > 0");
    }
    p.L[i] = d.L;
    p.y[i] = d.value;
    if (weighted) {
      if (!d.sigma || !(*d.sigma > 0.0) || !std::isfinite(*d.sigma)) {
        throw InvalidArgument("fit: weighted mode needs a positive sigma on every point");
      }
      p.scale[i] = *d.sigma;
    }
  }
  // Only relative weights matter for the estimates and the scaled covariance,
  // so sigmas are divided by the smallest one; equal sigmas become exactly 1.
  if (weighted && n > 0) p.scale /= p.scale.minCoeff();
  return p;
}

// Weighted linear least squares for the two linear coefficients of a basis pair.
std::pair<Eigen::Vector2d, double> linear_pair(const Prepared& d, const Eigen::VectorXd& f0,
                                               const Eigen::VectorXd& f1) {
  Eigen::MatrixXd A(d.L.size(), 2);
  A.col(0) = f0.cwiseQuotient(d.scale);
  A.col(1) = f1.cwiseQuotient(d.scale);
  const Eigen::VectorXd b = d.y.cwiseQuotient(d.scale);
  const Eigen::Vector2d coef = A.colPivHouseholderQr().solve(b);
  return {coef, (A * coef - b).squaredNorm()};
}

double objective(FitFamily family, const Prepared& d, std::span<const double> t) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < d.L.size(); ++i) {
    const double r = (d.y[i] - model_value(family, t, d.L[i])) / d.scale[i];
    s += r * r;
  }
  return s;
}

std::vector<double> guess(FitFamily family, const Prepared& d) {
  const Eigen::Index n = d.L.size();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  switch (family) {
    case FitFamily::PowerLaw: {
      if ((d.y.array() > 0.0).all()) {
        const Eigen::VectorXd logL = d.L.array().log();
        const Eigen::VectorXd logy = d.y.array().log();
        Prepared logd{d.L, logy, d.scale.cwiseQuotient(d.y)};
        const auto [coef, rss] = linear_pair(logd, ones, logL);
        return {-coef[1], std::exp(coef[0])};
      }
      return {1.0, d.y.cwiseProduct(d.L).mean()};
    }
    case FitFamily::PowerOffset: {
      double best = std::numeric_limits<double>::infinity();
      std::vector<double> out{d.y[n - 1], 0.0, 1.0};
      for (int k = 1; k <= 80; ++k) {
        const double r = 0.05 * k;
        const Eigen::VectorXd decay = d.L.array().pow(-r);
        const auto [coef, rss] = linear_pair(d, ones, decay);
        if (rss < best) {
          best = rss;
          out = {coef[0], coef[1], r};
        }
      }
      return out;
    }
    case FitFamily::ExpSaturation: {
      double best = std::numeric_limits<double>::infinity();
      std::vector<double> out{d.y[n - 1], 0.0, d.L.maxCoeff()};
      const double lo = 0.05 * d.L.minCoeff();
      const double hi = 50.0 * d.L.maxCoeff();
      for (int k = 0; k <= 200; ++k) {
        const double r = lo * std::pow(hi / lo, k / 200.0);
        const Eigen::VectorXd e = (-d.L.array() / r).exp();
        const auto [coef, rss] = linear_pair(d, ones, -e);
        if (rss < best) {
          best = rss;
          out = {coef[0], coef[1], r};
        }
      }
      return out;
    }
  }
  return {};
}

}  // namespace

std::vector<double> initial_guess(FitFamily family, std::span<const DataPoint> data, bool weighted) {
  const auto d = prepare(data, -std::numeric_limits<double>::infinity(), weighted);
  if (d.L.size() < static_cast<Eigen::Index>(parameter_count(family))) {
    throw InvalidArgument("initial_guess: too few points");
  }
  return guess(family, d);
}

FitResult fit(FitFamily family, std::span<const DataPoint> data, const FitOptions& options) {
  const auto d = prepare(data, options.min_L, options.weighted);
  const auto np = static_cast<Eigen::Index>(parameter_count(family));
  const Eigen::Index n = d.L.size();
  if (n <= np) {
    throw InvalidArgument("fit: " + std::to_string(n) + " points with L >= " + std::to_string(options.min_L) +
                          " for " + std::to_string(np) + " parameters");
  }

  FitResult result;
  result.family = family;
  result.weighted = options.weighted;
  result.min_L = options.min_L;
  result.points = static_cast<std::size_t>(n);
  std::vector<double> theta = options.initial ? *options.initial : guess(family, d);
  if (static_cast<Eigen::Index>(theta.size()) != np) throw InvalidArgument("fit: wrong initial parameter count");

  auto jacobian = [&](std::span<const double> t, Eigen::MatrixXd& A, Eigen::VectorXd& r) {
    std::vector<double> g(static_cast<std::size_t>(np));
    for (Eigen::Index i = 0; i < n; ++i) {
      model_gradient(family, t, d.L[i], g);
      for (Eigen::Index j = 0; j < np; ++j) A(i, j) = g[static_cast<std::size_t>(j)] / d.scale[i];
      r[i] = (d.y[i] - model_value(family, t, d.L[i])) / d.scale[i];
    }
  };

  Eigen::MatrixXd A(n, np);
  Eigen::VectorXd r(n);
  double rss = objective(family, d, theta);
  if (!std::isfinite(rss)) throw ConvergenceError("fit: objective is not finite at the initial guess");
  result.rss_history.push_back(rss);
  double lambda = 1e-3;
  int it = 0;
  bool converged = false;
  jacobian(theta, A, r);
  while (it < options.max_iterations) {
    ++it;
    const Eigen::MatrixXd normal = A.transpose() * A;
    const Eigen::VectorXd gradient = A.transpose() * r;
    const double floor = 1e-12 * std::max(1.0, normal.diagonal().maxCoeff());
    Eigen::MatrixXd damped = normal;
    for (Eigen::Index j = 0; j < np; ++j) damped(j, j) += lambda * std::max(normal(j, j), floor);
    const Eigen::VectorXd step = damped.ldlt().solve(gradient);
    if (!step.allFinite()) throw ConvergenceError("fit: singular normal matrix");

    std::vector<double> trial(theta);
    for (Eigen::Index j = 0; j < np; ++j) trial[static_cast<std::size_t>(j)] += step[j];
    const double trial_rss = objective(family, d, trial);
    if (std::isfinite(trial_rss) && trial_rss <= rss) {
      const double theta_norm = Eigen::Map<const Eigen::VectorXd>(theta.data(), np).norm();
      theta = trial;
      const bool small = step.norm() <= options.step_tolerance * (theta_norm + options.step_tolerance);
      rss = trial_rss;
      result.rss_history.push_back(rss);
      jacobian(theta, A, r);
      lambda = std::max(lambda / 10.0, 1e-12);
      if (small || rss == 0.0) {
        converged = true;
        break;
      }
    } else {
      lambda *= 10.0;
      if (lambda > 1e16) {
        // No damped step lowers the objective: a minimum to working precision.
        converged = true;
        break;
      }
    }
  }

  result.parameters = theta;
  result.rss = rss;
  result.iterations = it;
  result.converged = converged;

  const Eigen::MatrixXd normal = A.transpose() * A;
  const double s2 = rss / static_cast<double>(n - np);
  result.errors.assign(static_cast<std::size_t>(np), std::numeric_limits<double>::infinity());
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(normal);
  if (lu.isInvertible()) {
    const Eigen::MatrixXd cov = lu.inverse() * s2;
    for (Eigen::Index j = 0; j < np; ++j) {
      const double v = cov(j, j);
      result.errors[static_cast<std::size_t>(j)] = v >= 0.0 ? std::sqrt(v) : std::numeric_limits<double>::infinity();
    }
  }
  return result;
}

ScalingFits scaling_pipeline(std::span<const DataPoint> curve, FitFamily family, const FitOptions& options) {
  FitOptions unweighted = options;
  unweighted.weighted = false;
  ScalingFits out{std::nullopt, fit(family, curve, unweighted)};
  const bool has_sigmas = std::all_of(curve.begin(), curve.end(), [&](const DataPoint& p) {
    return p.L < options.min_L || (p.sigma && *p.sigma > 0.0);
  });
  if (has_sigmas) {
    FitOptions weighted = options;
    weighted.weighted = true;
    out.weighted = fit(family, curve, weighted);
  }
  return out;
}

nlohmann::json to_json(const FitResult& result) {
  nlohmann::json j;
  j["family"] = to_string(result.family);
  j["formula"] = formula(result.family);
  const auto names = parameter_names(result.family);
  for (std::size_t k = 0; k < names.size(); ++k) {
    j["parameters"][names[k]] = result.parameters[k];
    j["errors"][names[k]] = std::isfinite(result.errors[k]) ? nlohmann::json(result.errors[k]) : nlohmann::json("inf");
  }
  j["rss"] = result.rss;
  j["weighted"] = result.weighted;
  j["converged"] = result.converged;
  j["iterations"] = result.iterations;
  j["L_filter"] = {{"min_L", result.min_L}};
  j["points"] = result.points;
  return j;
}

}  // namespace spinglass
