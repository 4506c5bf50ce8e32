#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mblent {

// Disorder-averaged time series of one observable.
struct ObservableSeries {
  std::string name;
  std::vector<double> times;
  std::vector<double> mean;
  std::vector<double> variance;
  std::size_t n_realizations = 0;

  void validate() const;
};

enum class FitModel { Power, Exponential };

struct FitWindow {
  double t1 = 0.0;
  double t2 = 0.0;
};

// Power law:   y = amplitude * t^(-exponent)
// Exponential: y = amplitude * exp(-exponent * t)   (exponent is the rate)
struct FitResult {
  FitModel model = FitModel::Power;
  double exponent = 0.0;
  double amplitude = 0.0;
  double offset = 0.0;
  FitWindow window;
  double r2 = 0.0;
  double stderr_exponent = 0.0;
  double stderr_amplitude = 0.0;
  std::size_t points = 0;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double stderr_intercept = 0.0;
  double r2 = 0.0;
};

LinearFit linear_least_squares(std::span<const double> x, std::span<const double> y);

// Least squares on (ln t, ln y) over t in [t1, t2].
FitResult fit_power_law(const ObservableSeries& series, FitWindow window);
// Least squares on (t, ln y) over t in [t1, t2].
FitResult fit_exponential(const ObservableSeries& series, FitWindow window);
FitResult fit_series(const ObservableSeries& series, FitModel model, FitWindow window);

std::string to_string(FitModel model);
FitModel parse_fit_model(const std::string& name);

// Earliest grid time t >= t_min where |a - b| > eps holds at that point and the
// following `debounce` points (or all remaining ones near the end of the grid).
std::optional<double> extract_t_int(const ObservableSeries& with_interaction,
                                    const ObservableSeries& non_interacting, double eps,
                                    int debounce = 3, double t_min = 1.0);

// t_int(V) = c V^(-a) + b by least squares; a is profiled on [a_min, a_max].
struct InteractionTimeFit {
  double c = 0.0;
  double a = 0.0;
  double b = 0.0;
  double stderr_c = 0.0;
  double stderr_a = 0.0;
  double stderr_b = 0.0;
  double rss = 0.0;
  std::size_t points = 0;
};

InteractionTimeFit fit_interaction_time(std::span<const double> v, std::span<const double> t_int,
                                        double a_min = 0.05, double a_max = 6.0);

}  // namespace mblent
