#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace diffgeo;

namespace {

// Derivatives of sin(x) * exp(x): value_k = 2^(k/2) e^x sin(x + k pi/4).
double sin_exp_derivative(int k, double x) {
  return std::pow(2.0, 0.5 * k) * std::exp(x) * std::sin(x + k * std::numbers::pi / 4);
}

}  // namespace

TEST(Jet1, ProductOfElementaryFunctions) {
  const double x = 0.7;
  const auto X = Jet1<4>::variable(x);
  const Jet1<4> f = sin(X) * exp(X);
  for (int k = 0; k <= 4; ++k) EXPECT_NEAR(f[k], sin_exp_derivative(k, x), 1e-13) << "order " << k;
}

TEST(Jet1, QuotientMatchesReciprocalSeries) {
  // d^k/dx^k 1/(1+x) = (-1)^k k! / (1+x)^(k+1)
  const double x = 0.3;
  const auto X = Jet1<4>::variable(x);
  const Jet1<4> f = 1.0 / (1.0 + X);
  double fact = 1;
  for (int k = 0; k <= 4; ++k) {
    if (k > 0) fact *= k;
    EXPECT_NEAR(f[k], (k % 2 ? -1 : 1) * fact / std::pow(1 + x, k + 1), 1e-12);
  }
}

TEST(Jet1, PowersIntegerAndFractional) {
  const double x = 1.7;
  const auto X = Jet1<4>::variable(x);
  const Jet1<4> cube = power(X, 3.0);
  EXPECT_DOUBLE_EQ(cube[0], x * x * x);
  EXPECT_NEAR(cube[1], 3 * x * x, 1e-13);
  EXPECT_NEAR(cube[3], 6.0, 1e-13);
  EXPECT_NEAR(cube[4], 0.0, 1e-13);
  const Jet1<4> root = power(X, 0.5);
  EXPECT_NEAR(root[2], -0.25 * std::pow(x, -1.5), 1e-13);
  const Jet1<4> s = sqrt(X);
  for (int k = 0; k <= 4; ++k) EXPECT_NEAR(s[k], root[k], 1e-13);
}

TEST(Jet1, InverseTrigAndHyperbolic) {
  const double x = 0.4;
  const auto X = Jet1<2>::variable(x);
  EXPECT_NEAR(asin(X)[1], 1 / std::sqrt(1 - x * x), 1e-14);
  EXPECT_NEAR(acos(X)[1], -1 / std::sqrt(1 - x * x), 1e-14);
  EXPECT_NEAR(atan(X)[2], -2 * x / std::pow(1 + x * x, 2), 1e-14);
  EXPECT_NEAR(tanh(X)[1], 1 - std::tanh(x) * std::tanh(x), 1e-14);
  EXPECT_NEAR(log(X)[2], -1 / (x * x), 1e-12);
  EXPECT_NEAR(tan(X)[1], 1 / (std::cos(x) * std::cos(x)), 1e-14);
}

TEST(Jet1, ComposeFollowsTheReparameterization) {
  // exp(s) about s = 0 re-expanded along s = 2t + t^2.
  const auto local = exp(Jet1<4>::variable(0.0));
  const auto t = Jet1<4>::variable(0.0);
  const auto r = compose(local, 2.0 * t + t * t);
  const auto direct = exp(2.0 * t + t * t);
  // d/dt exp(2t + t^2) at 0: 1, 2, 6, 20, 76
  const double want[] = {1, 2, 6, 20, 76};
  for (int k = 0; k <= 4; ++k) {
    EXPECT_NEAR(r[k], want[k], 1e-13) << k;
    EXPECT_NEAR(direct[k], want[k], 1e-13) << k;
  }
}

TEST(Jet1, ComposeIgnoresPoisonedHigherCoefficients) {
  auto local = sin(Jet1<4>::variable(0.5));
  local[4] = NAN;
  const auto r = compose(local, Jet1<4>::variable(0.5) - 0.5);
  for (int k = 0; k <= 3; ++k) EXPECT_TRUE(std::isfinite(r[k])) << k;
  EXPECT_NEAR(r[3], -std::cos(0.5), 1e-14);
}

TEST(Jet2, MixedPartialsOfAPolynomial) {
  // f = u^2 v^3 + u v
  const double u = 0.6, v = -1.1;
  const auto U = Jet2<4>::variable_u(u), V = Jet2<4>::variable_v(v);
  const auto f = U * U * V * V * V + U * V;
  EXPECT_NEAR(f.d(0, 0), u * u * v * v * v + u * v, 1e-14);
  EXPECT_NEAR(f.d(1, 0), 2 * u * v * v * v + v, 1e-14);
  EXPECT_NEAR(f.d(0, 1), 3 * u * u * v * v + u, 1e-14);
  EXPECT_NEAR(f.d(1, 1), 6 * u * v * v + 1, 1e-13);
  EXPECT_NEAR(f.d(2, 1), 6 * v * v, 1e-13);
  EXPECT_NEAR(f.d(1, 2), 12 * u * v, 1e-13);
  EXPECT_NEAR(f.d(2, 2), 12 * v, 1e-13);
  EXPECT_NEAR(f.d(0, 4), 0.0, 1e-13);
}

TEST(Jet2, PartialLowersTheOrder) {
  const auto U = Jet2<3>::variable_u(0.2), V = Jet2<3>::variable_v(0.9);
  const auto f = sin(U) * cos(V);
  const Jet2<2> fu = partial_u(f);
  EXPECT_NEAR(fu.d(0, 0), std::cos(0.2) * std::cos(0.9), 1e-15);
  EXPECT_NEAR(fu.d(1, 1), std::sin(0.2) * std::sin(0.9), 1e-15);
  const Jet2<2> fv = partial_v(f);
  EXPECT_NEAR(fv.d(0, 1), -std::sin(0.2) * std::cos(0.9), 1e-15);
}

TEST(Jet2, ComposeWithACurveIsTheChainRule) {
  // f(u, v) = u v along u = t, v = t^2 gives t^3.
  const auto f = Jet2<3>::variable_u(0.5) * Jet2<3>::variable_v(0.25);
  const auto t = Jet1<3>::variable(0.5);
  const auto g = compose(f, t - 0.5, t * t - 0.25);
  EXPECT_NEAR(g[0], 0.125, 1e-15);
  EXPECT_NEAR(g[1], 3 * 0.25, 1e-14);
  EXPECT_NEAR(g[2], 6 * 0.5, 1e-14);
  EXPECT_NEAR(g[3], 6.0, 1e-14);
}

TEST(Jet, RandomTreesAgreeWithDifferences) {
  test::TreeGenerator gen(5, {"x"}, {3, false});
  std::mt19937_64 rng(6);
  int checked = 0;
  while (checked < 100) {
    const Expr e = gen.next().bind({"x"});
    const double x = test::uniform(rng, -1.5, 1.5);
    try {
      auto f = [&](double xx) {
        const auto j = Jet1<2>::variable(xx);
        return e.evaluate(std::span<const Jet1<2>>(&j, 1));
      };
      const auto j = f(x);
      const double h = 1e-3;
      const double d1 = test::central_difference([&](double t) { return f(t)[0]; }, x, h);
      const double d1b = test::central_difference([&](double t) { return f(t)[0]; }, x, h / 2);
      if (!std::isfinite(j[1]) || std::abs(j[0]) > 1e6 || test::relative_error(d1b, d1) > 1e-8) continue;
      EXPECT_LT(test::relative_error(j[1], d1), 1e-6) << e.to_string() << " at " << x;
      ++checked;
    } catch (const Error&) {
    }
  }
}

TEST(Jet, ElementaryNamesRoundTrip) {
  for (auto f : {Elementary::Sin, Elementary::Cos, Elementary::Tan, Elementary::Exp, Elementary::Log, Elementary::Sqrt,
                 Elementary::Sinh, Elementary::Cosh, Elementary::Tanh, Elementary::Asin, Elementary::Acos,
                 Elementary::Atan})
    EXPECT_EQ(elementary_from_name(name(f)), f);
  EXPECT_FALSE(elementary_from_name("sec").has_value());
}
