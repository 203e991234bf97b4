#include "diffgeo/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "diffgeo/errors.hpp"

namespace diffgeo {

namespace {

constexpr int kPoints = 15;

struct GaussRule {
  std::array<double, kPoints> x{};
  std::array<double, kPoints> w{};
};

// Legendre roots by Newton iteration from the Tricomi initial guess.
GaussRule make_rule() {
  GaussRule rule;
  for (int i = 0; i < kPoints; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (kPoints + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= kPoints; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = kPoints * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-17) break;
    }
    rule.x[i] = x;
    rule.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const GaussRule& rule() {
  static const GaussRule r = make_rule();
  return r;
}

double gauss(const std::function<double(double)>& f, double a, double b) {
  const auto& g = rule();
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double s = 0.0;
  for (int i = 0; i < kPoints; ++i) s += g.w[i] * f(mid + half * g.x[i]);
  return s * half;
}

double gauss2(const std::function<double(double, double)>& f, const Rectangle& r) {
  const auto& g = rule();
  const double hu = 0.5 * r.u.width(), mu = r.u.mid();
  const double hv = 0.5 * r.v.width(), mv = r.v.mid();
  double s = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double u = mu + hu * g.x[i];
    double row = 0.0;
    for (int j = 0; j < kPoints; ++j) row += g.w[j] * f(u, mv + hv * g.x[j]);
    s += g.w[i] * row;
  }
  return s * hu * hv;
}

struct Accumulator {
  double total_error = 0.0;
  bool exceeded = false;
};

double adapt1(const std::function<double(double)>& f, double a, double b, double whole, double tol, int depth,
              const QuadSpec& spec, Accumulator& acc) {
  const double m = 0.5 * (a + b);
  const double left = gauss(f, a, m);
  const double right = gauss(f, m, b);
  const double refined = left + right;
  const double err = std::abs(refined - whole);
  if (!std::isfinite(refined)) throw Error(ErrorCode::Domain, "integrand is not finite", {a, b});
  if (err <= tol || m == a || m == b) {
    acc.total_error += err;
    return refined;
  }
  if (depth >= spec.max_depth) {
    acc.exceeded = true;
    acc.total_error += err;
    return refined;
  }
  return adapt1(f, a, m, left, 0.5 * tol, depth + 1, spec, acc) +
         adapt1(f, m, b, right, 0.5 * tol, depth + 1, spec, acc);
}

double adapt2(const std::function<double(double, double)>& f, const Rectangle& r, double whole, double tol, int depth,
              const QuadSpec& spec, Accumulator& acc) {
  const double mu = r.u.mid(), mv = r.v.mid();
  const std::array<Rectangle, 4> kids = {Rectangle{{r.u.lo, mu}, {r.v.lo, mv}}, Rectangle{{mu, r.u.hi}, {r.v.lo, mv}},
                                         Rectangle{{r.u.lo, mu}, {mv, r.v.hi}}, Rectangle{{mu, r.u.hi}, {mv, r.v.hi}}};
  std::array<double, 4> parts{};
  double refined = 0.0;
  for (int i = 0; i < 4; ++i) {
    parts[i] = gauss2(f, kids[i]);
    refined += parts[i];
  }
  if (!std::isfinite(refined)) throw Error(ErrorCode::Domain, "integrand is not finite", {mu, mv});
  const double err = std::abs(refined - whole);
  if (err <= tol) {
    acc.total_error += err;
    return refined;
  }
  if (depth >= spec.max_depth) {
    acc.exceeded = true;
    acc.total_error += err;
    return refined;
  }
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += adapt2(f, kids[i], parts[i], 0.25 * tol, depth + 1, spec, acc);
  return s;
}

}  // namespace

void QuadSpec::validate() const {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "quadrature tolerance must be positive");
  if (max_depth < 1) throw Error(ErrorCode::InvalidArgument, "quadrature max_depth must be at least 1");
}

double quad_adaptive(const std::function<double(double)>& f, Interval interval, const QuadSpec& spec) {
  spec.validate();
  if (interval.lo == interval.hi) return 0.0;
  Accumulator acc;
  const double whole = gauss(f, interval.lo, interval.hi);
  const double result = adapt1(f, interval.lo, interval.hi, whole, spec.tol, 1, spec, acc);
  if (acc.exceeded) throw MaxDepthExceeded(result, acc.total_error);
  return result;
}

double quad2d(const std::function<double(double, double)>& f, const Rectangle& rect, const QuadSpec& spec) {
  spec.validate();
  if (rect.u.width() == 0.0 || rect.v.width() == 0.0) return 0.0;
  Accumulator acc;
  const double whole = gauss2(f, rect);
  const double result = adapt2(f, rect, whole, spec.tol, 1, spec, acc);
  if (acc.exceeded) throw MaxDepthExceeded(result, acc.total_error);
  return result;
}

}  // namespace diffgeo
