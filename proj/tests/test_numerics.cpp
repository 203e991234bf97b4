#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace diffgeo;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Ode, ExponentialDecay) {
  const auto tr = ode_solve([](double, std::span<const double> y, std::span<double> d) { d[0] = -2 * y[0]; }, {1.0},
                            0.0, 3.0);
  EXPECT_NEAR(tr.back()[0], std::exp(-6.0), 1e-9);
  EXPECT_FALSE(tr.stopped_early);
  EXPECT_GT(tr.steps_accepted, 0);
}

TEST(Ode, HarmonicOscillatorBackwardsAndAtRequestedTimes) {
  auto f = [](double, std::span<const double> y, std::span<double> d) {
    d[0] = y[1];
    d[1] = -y[0];
  };
  const std::vector<double> outs = {-0.5, -1.0, -2.0};
  const auto tr = ode_solve(f, {0.0, 1.0}, 0.0, -3.0, {}, {}, outs);
  ASSERT_EQ(tr.t.size(), 5u);
  for (std::size_t i = 0; i < tr.t.size(); ++i) EXPECT_NEAR(tr.y[i][0], std::sin(tr.t[i]), 1e-9);
  EXPECT_EQ(tr.t[2], -1.0);
}

TEST(Ode, HermiteInterpolationBetweenSteps) {
  auto f = [](double, std::span<const double> y, std::span<double> d) {
    d[0] = y[1];
    d[1] = -y[0];
  };
  const auto tr = ode_solve(f, {0.0, 1.0}, 0.0, 2 * kPi);
  for (double t : {0.123, 1.7, 4.4}) EXPECT_NEAR(tr.at(t)[0], std::sin(t), 1e-6);
}

TEST(Ode, HooksProjectAndStop) {
  // Rotation keeps |y| = 1; projection removes drift, the stop hook ends at the first crossing of y0 = 0.
  auto f = [](double, std::span<const double> y, std::span<double> d) {
    d[0] = -y[1];
    d[1] = y[0];
  };
  OdeHooks hooks;
  hooks.project = [](double, OdeState& y) {
    const double n = std::hypot(y[0], y[1]);
    y[0] /= n;
    y[1] /= n;
  };
  hooks.stop = [](double, const OdeState& y) { return y[0] < 0; };
  OdeSpec spec;
  spec.max_step = 0.05;
  const auto tr = ode_solve(f, {1.0, 0.0}, 0.0, 10.0, spec, hooks);
  EXPECT_TRUE(tr.stopped_early);
  EXPECT_NEAR(tr.t.back(), kPi / 2, 1e-7);
  EXPECT_NEAR(std::hypot(tr.back()[0], tr.back()[1]), 1.0, 1e-15);
}

TEST(Ode, InvalidSpecAndStepLimits) {
  OdeSpec bad;
  bad.abs_tol = 0;
  EXPECT_THROW(bad.validate(), Error);
  OdeSpec few;
  few.max_steps = 3;
  auto f = [](double t, std::span<const double>, std::span<double> d) { d[0] = std::cos(40 * t); };
  try {
    ode_solve(f, {0.0}, 0.0, 10.0, few);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MaxStepsExceeded);
  }
}

TEST(Quadrature, SmoothIntegrals) {
  EXPECT_NEAR(quad_adaptive([](double x) { return std::sin(x); }, {0, kPi}), 2.0, 1e-12);
  EXPECT_NEAR(quad_adaptive([](double x) { return std::exp(-x * x); }, {-6, 6}), std::sqrt(kPi), 1e-12);
  // A kink inside the interval forces bisection down to it.
  EXPECT_NEAR(quad_adaptive([](double x) { return std::abs(x - 0.3); }, {0, 1}), 0.29, 1e-10);
}

TEST(Quadrature, ReportsBestEstimateWhenTooDeep) {
  QuadSpec spec;
  spec.tol = 1e-15;
  spec.max_depth = 2;
  try {
    quad_adaptive([](double x) { return 1 / std::sqrt(x); }, {0, 1}, spec);
    FAIL();
  } catch (const MaxDepthExceeded& e) {
    EXPECT_NEAR(e.best_estimate(), 2.0, 0.2);
    EXPECT_GT(e.error_estimate(), 0.0);
  }
}

TEST(Quadrature, TwoDimensional) {
  // Area of the unit sphere from its parameterization.
  const double area = quad2d([](double, double v) { return std::cos(v); }, {{-kPi, kPi}, {-kPi / 2, kPi / 2}});
  EXPECT_NEAR(area, 4 * kPi, 1e-11);
  EXPECT_NEAR(quad2d([](double u, double v) { return u * v * v; }, {{0, 1}, {0, 2}}), 4.0 / 3.0, 1e-13);
}

TEST(Roots, BracketedAndSecant) {
  const double r = root_find([](double x) { return x * x - 2; }, 0, 2);
  EXPECT_NEAR(r, std::sqrt(2.0), 1e-12);
  const double c = root_find([](double x) { return std::cos(x) - x; }, 0.5, 0.6, {}, false);
  EXPECT_NEAR(c, 0.7390851332151607, 1e-12);
}

TEST(Roots, FailsWithoutConvergence) {
  RootSpec spec;
  spec.max_iterations = 5;
  try {
    root_find([](double x) { return x * x + 1; }, -1, 3, spec, false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoConvergence);
  }
}
