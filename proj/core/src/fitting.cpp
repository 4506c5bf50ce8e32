#include "mblent/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "mblent/errors.hpp"

namespace mblent {

void ObservableSeries::validate() const {
  if (mean.size() != times.size() || variance.size() != times.size()) {
    throw std::invalid_argument("ObservableSeries '" + name + "': column lengths differ");
  }
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) {
      throw std::invalid_argument("ObservableSeries '" + name + "': time grid not ascending");
    }
  }
}

LinearFit linear_least_squares(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) throw std::invalid_argument("linear_least_squares: need >= 2 points");
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
    syy += (y[k] - my) * (y[k] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("linear_least_squares: abscissae are identical");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = y[k] - (fit.intercept + fit.slope * x[k]);
    rss += r * r;
  }
  // A constant response is fitted exactly; report it as a perfect fit.
  const double scale = std::max(1.0, std::abs(my));
  if (syy <= 1e-28 * scale * scale * static_cast<double>(n)) {
    fit.r2 = 1.0;
  } else {
    fit.r2 = std::clamp(1.0 - rss / syy, 0.0, 1.0);
  }
  if (n > 2) {
    const double s2 = rss / static_cast<double>(n - 2);
    fit.stderr_slope = std::sqrt(s2 / sxx);
    double sum_x2 = 0.0;
    for (double v : x) sum_x2 += v * v;
    fit.stderr_intercept = std::sqrt(s2 * sum_x2 / (static_cast<double>(n) * sxx));
  }
  return fit;
}

namespace {

FitResult fit_log_linear(const ObservableSeries& series, FitWindow window, FitModel model) {
  series.validate();
  if (!(window.t2 > window.t1)) throw InvalidWindow("fit: window must satisfy t1 < t2");
  if (model == FitModel::Power && !(window.t1 > 0.0)) {
    throw InvalidWindow("fit: power-law window must start at t > 0");
  }
  std::vector<double> x, y;
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    const double t = series.times[k];
    if (t < window.t1 || t > window.t2) continue;
    const double v = series.mean[k];
    if (!(v > 0.0)) {
      throw InvalidWindow("fit: non-positive value " + std::to_string(v) + " at t=" +
                          std::to_string(t) + " in series '" + series.name + "'");
    }
    x.push_back(model == FitModel::Power ? std::log(t) : t);
    y.push_back(std::log(v));
  }
  if (x.size() < 2) throw InvalidWindow("fit: fewer than two points inside the window");
  const LinearFit lin = linear_least_squares(x, y);
  FitResult out;
  out.model = model;
  out.exponent = -lin.slope;
  out.amplitude = std::exp(lin.intercept);
  out.window = window;
  out.r2 = lin.r2;
  out.stderr_exponent = lin.stderr_slope;
  out.stderr_amplitude = out.amplitude * lin.stderr_intercept;
  out.points = x.size();
  return out;
}

}  // namespace

FitResult fit_power_law(const ObservableSeries& series, FitWindow window) {
  return fit_log_linear(series, window, FitModel::Power);
}

FitResult fit_exponential(const ObservableSeries& series, FitWindow window) {
  return fit_log_linear(series, window, FitModel::Exponential);
}

FitResult fit_series(const ObservableSeries& series, FitModel model, FitWindow window) {
  return fit_log_linear(series, window, model);
}

std::string to_string(FitModel model) { return model == FitModel::Power ? "power" : "exponential"; }

FitModel parse_fit_model(const std::string& name) {
  if (name == "power") return FitModel::Power;
  if (name == "exponential" || name == "exp") return FitModel::Exponential;
  throw std::invalid_argument("unknown fit model '" + name + "'");
}

std::optional<double> extract_t_int(const ObservableSeries& with_interaction,
                                    const ObservableSeries& non_interacting, double eps,
                                    int debounce, double t_min) {
  with_interaction.validate();
  non_interacting.validate();
  if (with_interaction.times != non_interacting.times) {
    throw std::invalid_argument("extract_t_int: series use different time grids");
  }
  const std::size_t n = with_interaction.times.size();
  auto exceeds = [&](std::size_t k) {
    return std::abs(with_interaction.mean[k] - non_interacting.mean[k]) > eps;
  };
  for (std::size_t k = 0; k < n; ++k) {
    if (with_interaction.times[k] < t_min || !exceeds(k)) continue;
    bool persistent = true;
    for (std::size_t d = 1; d <= static_cast<std::size_t>(std::max(debounce, 0)) && k + d < n; ++d) {
      if (!exceeds(k + d)) {
        persistent = false;
        break;
      }
    }
    if (persistent) return with_interaction.times[k];
  }
  return std::nullopt;
}

namespace {

struct ProfiledFit {
  double c = 0.0;
  double b = 0.0;
  double rss = std::numeric_limits<double>::infinity();
};

// For fixed a the model is linear in (c, b).
ProfiledFit profile(std::span<const double> v, std::span<const double> t, double a) {
  const auto n = static_cast<Eigen::Index>(v.size());
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    A(k, 0) = std::pow(v[k], -a);
    A(k, 1) = 1.0;
    y[k] = t[k];
  }
  const Eigen::Vector2d sol = A.colPivHouseholderQr().solve(y);
  ProfiledFit out;
  out.c = sol[0];
  out.b = sol[1];
  out.rss = (A * sol - y).squaredNorm();
  return out;
}

}  // namespace

InteractionTimeFit fit_interaction_time(std::span<const double> v, std::span<const double> t_int,
                                        double a_min, double a_max) {
  if (v.size() != t_int.size() || v.size() < 3) {
    throw std::invalid_argument("fit_interaction_time: need at least three (V, t_int) points");
  }
  for (double x : v) {
    if (!(x > 0.0)) throw std::invalid_argument("fit_interaction_time: V must be positive");
  }
  // Coarse scan, then golden-section refinement around the best bracket.
  constexpr int kScan = 600;
  double best_a = a_min;
  double best_rss = std::numeric_limits<double>::infinity();
  for (int s = 0; s <= kScan; ++s) {
    const double a = a_min + (a_max - a_min) * s / kScan;
    const double rss = profile(v, t_int, a).rss;
    if (rss < best_rss) {
      best_rss = rss;
      best_a = a;
    }
  }
  const double step = (a_max - a_min) / kScan;
  double lo = std::max(a_min, best_a - step);
  double hi = std::min(a_max, best_a + step);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  double f1 = profile(v, t_int, x1).rss;
  double f2 = profile(v, t_int, x2).rss;
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = profile(v, t_int, x1).rss;
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = profile(v, t_int, x2).rss;
    }
  }
  const double a = 0.5 * (lo + hi);
  const ProfiledFit pf = profile(v, t_int, a);

  InteractionTimeFit out;
  out.a = a;
  out.c = pf.c;
  out.b = pf.b;
  out.rss = pf.rss;
  out.points = v.size();
  const auto n = static_cast<Eigen::Index>(v.size());
  if (n > 3) {
    // Linearised covariance s^2 (J^T J)^-1 with parameters (c, a, b).
    Eigen::MatrixXd jac(n, 3);
    for (Eigen::Index k = 0; k < n; ++k) {
      const double p = std::pow(v[k], -a);
      jac(k, 0) = p;
      jac(k, 1) = -pf.c * std::log(v[k]) * p;
      jac(k, 2) = 1.0;
    }
    const double s2 = pf.rss / static_cast<double>(n - 3);
    const Eigen::Matrix3d cov = s2 * (jac.transpose() * jac).inverse();
    out.stderr_c = std::sqrt(std::max(cov(0, 0), 0.0));
    out.stderr_a = std::sqrt(std::max(cov(1, 1), 0.0));
    out.stderr_b = std::sqrt(std::max(cov(2, 2), 0.0));
  }
  return out;
}

}  // namespace mblent
