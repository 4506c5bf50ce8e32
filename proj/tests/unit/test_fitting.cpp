#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mblent/errors.hpp"
#include "mblent/fitting.hpp"

using namespace mblent;

namespace {

template <typename F>
ObservableSeries synthetic(F&& f, double t0, double t1, int n, bool log_grid = true) {
  ObservableSeries s;
  s.name = "synthetic";
  s.n_realizations = 1;
  for (int k = 0; k < n; ++k) {
    const double u = static_cast<double>(k) / (n - 1);
    const double t = log_grid ? t0 * std::pow(t1 / t0, u) : t0 + (t1 - t0) * u;
    s.times.push_back(t);
    s.mean.push_back(f(t));
    s.variance.push_back(0.0);
  }
  return s;
}

}  // namespace

TEST(LinearLeastSquares, ExactLine) {
  const std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
  const LinearFit f = linear_least_squares(x, y);
  EXPECT_NEAR(f.slope, 2.0, 1e-14);
  EXPECT_NEAR(f.intercept, 1.0, 1e-14);
  EXPECT_NEAR(f.r2, 1.0, 1e-14);
  EXPECT_NEAR(f.stderr_slope, 0.0, 1e-12);
  EXPECT_THROW(linear_least_squares(std::vector<double>{1}, std::vector<double>{1}),
               std::invalid_argument);
}

TEST(PowerLawFit, ExactPowerLaw) {
  const auto s = synthetic([](double t) { return 5.0 / (t * t); }, 0.1, 100, 40);
  const FitResult f = fit_power_law(s, {0.5, 50});
  EXPECT_NEAR(f.exponent, 2.0, 1e-6);
  EXPECT_NEAR(f.amplitude, 5.0, 1e-6);
  EXPECT_NEAR(f.r2, 1.0, 1e-12);
  EXPECT_EQ(f.model, FitModel::Power);
  EXPECT_GT(f.points, 10u);
}

TEST(PowerLawFit, ConstantSeries) {
  const auto s = synthetic([](double) { return 0.7; }, 1, 100, 20);
  const FitResult f = fit_power_law(s, {1, 100});
  EXPECT_NEAR(f.exponent, 0.0, 1e-12);
  const FitResult e = fit_exponential(s, {1, 100});
  EXPECT_NEAR(e.exponent, 0.0, 1e-12);
}

TEST(ExponentialFit, ExactExponential) {
  const auto s = synthetic([](double t) { return 3.0 * std::exp(-t / 2); }, 0, 20, 41, false);
  const FitResult f = fit_exponential(s, {1, 15});
  EXPECT_NEAR(f.exponent, 0.5, 1e-10);
  EXPECT_NEAR(f.amplitude, 3.0, 1e-9);
  EXPECT_NEAR(f.r2, 1.0, 1e-12);
}

TEST(Fit, StandardErrorShrinksWithNoise) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 0.01);
  const auto s = synthetic([&](double t) { return std::pow(t, -0.8) * std::exp(noise(rng)); }, 1, 100, 60);
  const FitResult f = fit_power_law(s, {1, 100});
  EXPECT_NEAR(f.exponent, 0.8, 5 * f.stderr_exponent + 1e-3);
  EXPECT_GT(f.stderr_exponent, 0.0);
  EXPECT_LT(f.r2, 1.0);
}

TEST(Fit, InvalidWindows) {
  auto s = synthetic([](double t) { return 1.0 / t; }, 0.1, 10, 10);
  EXPECT_THROW(fit_power_law(s, {5, 1}), InvalidWindow);
  EXPECT_THROW(fit_power_law(s, {20, 30}), InvalidWindow);
  s.mean[5] = 0.0;
  EXPECT_THROW(fit_power_law(s, {0.1, 10}), InvalidWindow);
  s.mean[5] = -1.0;
  EXPECT_THROW(fit_exponential(s, {0.1, 10}), InvalidWindow);
  EXPECT_THROW(parse_fit_model("cubic"), std::invalid_argument);
  EXPECT_EQ(parse_fit_model(to_string(FitModel::Exponential)), FitModel::Exponential);
}

TEST(InteractionTime, PersistentCrossing) {
  const auto base = synthetic([](double) { return 0.1; }, 0, 20, 21, false);
  auto other = base;
  for (std::size_t k = 0; k < other.times.size(); ++k) {
    if (other.times[k] > 6.999) other.mean[k] += 0.05;
  }
  other.mean[3] += 0.05;  // a transient blip before the real departure
  const auto t = extract_t_int(other, base, 0.025);
  ASSERT_TRUE(t.has_value());
  EXPECT_NEAR(*t, 7.0, 1e-12);
  EXPECT_FALSE(extract_t_int(base, base, 0.025).has_value());
}

TEST(InteractionTime, IgnoresEarlyTimesAndHandlesGridEnd) {
  const auto base = synthetic([](double) { return 0.0; }, 0, 10, 11, false);
  auto other = base;
  other.mean[0] = 1.0;  // t = 0 lies before t_min
  other.mean[9] = other.mean[10] = 1.0;
  const auto t = extract_t_int(other, base, 0.025);
  ASSERT_TRUE(t.has_value());
  EXPECT_NEAR(*t, 9.0, 1e-12);
  for (int k = 1; k <= 4; ++k) other.mean[static_cast<std::size_t>(k)] = 1.0;
  EXPECT_NEAR(*extract_t_int(other, base, 0.025), 1.0, 1e-12);
  EXPECT_EQ(*extract_t_int(other, base, 0.025, 3, 0.0), 0.0);
}

TEST(InteractionTime, GridMismatch) {
  const auto a = synthetic([](double) { return 0.0; }, 0, 10, 11, false);
  const auto b = synthetic([](double) { return 0.0; }, 0, 10, 12, false);
  EXPECT_THROW(extract_t_int(a, b, 0.025), std::invalid_argument);
}

TEST(InteractionTimeFit, RecoversExponent) {
  const std::vector<double> v{0.1, 0.15, 0.2, 0.3, 0.5, 0.8};
  std::vector<double> t;
  for (double x : v) t.push_back(2.0 * std::pow(x, -1.6) + 0.7);
  const InteractionTimeFit f = fit_interaction_time(v, t);
  EXPECT_NEAR(f.a, 1.6, 1e-6);
  EXPECT_NEAR(f.c, 2.0, 1e-5);
  EXPECT_NEAR(f.b, 0.7, 1e-4);
  EXPECT_LT(f.rss, 1e-12);
  EXPECT_THROW(fit_interaction_time(std::vector<double>{0.1, 0.2}, std::vector<double>{1, 2}),
               std::invalid_argument);
  EXPECT_THROW(fit_interaction_time(std::vector<double>{0.0, 0.1, 0.2}, std::vector<double>{1, 2, 3}),
               std::invalid_argument);
}

TEST(ObservableSeries, Validation) {
  ObservableSeries s{"x", {1, 2}, {1}, {0, 0}, 1};
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = {"x", {2, 1}, {1, 1}, {0, 0}, 1};
  EXPECT_THROW(s.validate(), std::invalid_argument);
}
