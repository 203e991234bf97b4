#include "diffgeo/jet.hpp"

#include <cmath>
#include <string>

namespace diffgeo {

namespace {

constexpr int kN = kMaxJetOrder;
using Series = TaylorCoefficients;

Series mul(const Series& a, const Series& b) {
  Series r{};
  for (int k = 0; k <= kN; ++k)
    for (int j = 0; j <= k; ++j) r[k] += a[j] * b[k - j];
  return r;
}

Series div(const Series& a, const Series& b) {
  Series r{};
  for (int k = 0; k <= kN; ++k) {
    double s = a[k];
    for (int j = 1; j <= k; ++j) s -= b[j] * r[k - j];
    r[k] = s / b[0];
  }
  return r;
}

Series integrate(const Series& d, double c0) {
  Series r{};
  r[0] = c0;
  for (int k = 0; k < kN; ++k) r[k + 1] = d[k] / (k + 1);
  return r;
}

// Generalized binomial coefficient C(p, k).
double binom(double p, int k) {
  double r = 1.0;
  for (int j = 0; j < k; ++j) r *= (p - j) / (j + 1);
  return r;
}

// (w0 + delta)^p for a series delta with zero constant term.
Series power_of_series(const Series& w, double p) {
  Series delta = w;
  delta[0] = 0.0;
  Series r{};
  Series dk{};
  dk[0] = 1.0;
  for (int k = 0; k <= kN; ++k) {
    const double c = binom(p, k) * std::pow(w[0], p - k);
    for (int j = 0; j <= kN; ++j) r[j] += c * dk[j];
    dk = mul(dk, delta);
  }
  return r;
}

Series sin_series(double x0) {
  const double s = std::sin(x0), c = std::cos(x0);
  const double cycle[4] = {s, c, -s, -c};
  Series r{};
  double f = 1.0;
  for (int k = 0; k <= kN; ++k) {
    if (k) f *= k;
    r[k] = cycle[k % 4] / f;
  }
  return r;
}

Series cos_series(double x0) {
  const double s = std::sin(x0), c = std::cos(x0);
  const double cycle[4] = {c, -s, -c, s};
  Series r{};
  double f = 1.0;
  for (int k = 0; k <= kN; ++k) {
    if (k) f *= k;
    r[k] = cycle[k % 4] / f;
  }
  return r;
}

Series sinh_cosh_series(double x0, bool want_sinh) {
  const double sh = std::sinh(x0), ch = std::cosh(x0);
  Series r{};
  double f = 1.0;
  for (int k = 0; k <= kN; ++k) {
    if (k) f *= k;
    const bool even = (k % 2) == 0;
    r[k] = ((even == want_sinh) ? sh : ch) / f;
  }
  return r;
}

[[noreturn]] void domain_error(Elementary f, double x0, const char* why) {
  throw Error(ErrorCode::Domain, std::string(name(f)) + " " + why + " (argument " + std::to_string(x0) + ")");
}

void require_finite(const Series& s, Elementary f, double x0) {
  for (double c : s)
    if (!std::isfinite(c)) domain_error(f, x0, "has no finite Taylor expansion here");
}

}  // namespace

std::string_view name(Elementary f) noexcept {
  switch (f) {
    case Elementary::Sin: return "sin";
    case Elementary::Cos: return "cos";
    case Elementary::Tan: return "tan";
    case Elementary::Exp: return "exp";
    case Elementary::Log: return "log";
    case Elementary::Sqrt: return "sqrt";
    case Elementary::Sinh: return "sinh";
    case Elementary::Cosh: return "cosh";
    case Elementary::Tanh: return "tanh";
    case Elementary::Asin: return "asin";
    case Elementary::Acos: return "acos";
    case Elementary::Atan: return "atan";
  }
  return "?";
}

std::optional<Elementary> elementary_from_name(std::string_view n) noexcept {
  static constexpr Elementary all[] = {Elementary::Sin,  Elementary::Cos,  Elementary::Tan,  Elementary::Exp,
                                       Elementary::Log,  Elementary::Sqrt, Elementary::Sinh, Elementary::Cosh,
                                       Elementary::Tanh, Elementary::Asin, Elementary::Acos, Elementary::Atan};
  for (auto f : all)
    if (name(f) == n) return f;
  return std::nullopt;
}

double apply(Elementary f, double x) {
  switch (f) {
    case Elementary::Sin: return std::sin(x);
    case Elementary::Cos: return std::cos(x);
    case Elementary::Tan: {
      const double r = std::tan(x);
      if (!std::isfinite(r)) domain_error(f, x, "is undefined");
      return r;
    }
    case Elementary::Exp: {
      const double r = std::exp(x);
      if (!std::isfinite(r)) domain_error(f, x, "overflows");
      return r;
    }
    case Elementary::Log:
      if (!(x > 0.0)) domain_error(f, x, "requires a positive argument");
      return std::log(x);
    case Elementary::Sqrt:
      if (!(x >= 0.0)) domain_error(f, x, "requires a non-negative argument");
      return std::sqrt(x);
    case Elementary::Sinh: return std::sinh(x);
    case Elementary::Cosh: return std::cosh(x);
    case Elementary::Tanh: return std::tanh(x);
    case Elementary::Asin:
      if (!(std::abs(x) <= 1.0)) domain_error(f, x, "requires |x| <= 1");
      return std::asin(x);
    case Elementary::Acos:
      if (!(std::abs(x) <= 1.0)) domain_error(f, x, "requires |x| <= 1");
      return std::acos(x);
    case Elementary::Atan: return std::atan(x);
  }
  return 0.0;
}

double power(double base, double exponent) {
  if (detail::is_integer(exponent)) {
    if (base == 0.0 && exponent < 0)
      throw Error(ErrorCode::Domain, "zero raised to a negative power");
    return std::pow(base, exponent);
  }
  if (!(base > 0.0))
    throw Error(ErrorCode::Domain, "non-integer power requires a positive base (base " + std::to_string(base) + ")");
  return std::pow(base, exponent);
}

TaylorCoefficients power_coefficients(double x0, double p) {
  if (!(x0 > 0.0))
    throw Error(ErrorCode::Domain, "non-integer power requires a positive base (base " + std::to_string(x0) + ")");
  Series r{};
  for (int k = 0; k <= kN; ++k) r[k] = binom(p, k) * std::pow(x0, p - k);
  return r;
}

TaylorCoefficients taylor_coefficients(Elementary f, double x0) {
  Series r{};
  Series x{};
  x[0] = x0;
  x[1] = 1.0;
  switch (f) {
    case Elementary::Sin: r = sin_series(x0); break;
    case Elementary::Cos: r = cos_series(x0); break;
    case Elementary::Tan:
      if (std::cos(x0) == 0.0) domain_error(f, x0, "has a pole");
      r = div(sin_series(x0), cos_series(x0));
      break;
    case Elementary::Exp: {
      const double e = std::exp(x0);
      double fact = 1.0;
      for (int k = 0; k <= kN; ++k) {
        if (k) fact *= k;
        r[k] = e / fact;
      }
      break;
    }
    case Elementary::Log:
      if (!(x0 > 0.0)) domain_error(f, x0, "requires a positive argument");
      r[0] = std::log(x0);
      for (int k = 1; k <= kN; ++k) r[k] = ((k % 2) ? 1.0 : -1.0) / (k * std::pow(x0, k));
      break;
    case Elementary::Sqrt:
      if (!(x0 > 0.0)) domain_error(f, x0, "is not differentiable at a non-positive argument");
      r = power_coefficients(x0, 0.5);
      r[0] = std::sqrt(x0);
      break;
    case Elementary::Sinh: r = sinh_cosh_series(x0, true); break;
    case Elementary::Cosh: r = sinh_cosh_series(x0, false); break;
    case Elementary::Tanh: r = div(sinh_cosh_series(x0, true), sinh_cosh_series(x0, false)); break;
    case Elementary::Asin:
    case Elementary::Acos: {
      if (!(std::abs(x0) < 1.0)) domain_error(f, x0, "is not differentiable unless |x| < 1");
      const Series one_minus_sq = [&] {
        Series s = mul(x, x);
        for (auto& c : s) c = -c;
        s[0] += 1.0;
        return s;
      }();
      Series d = power_of_series(one_minus_sq, -0.5);
      if (f == Elementary::Acos)
        for (auto& c : d) c = -c;
      r = integrate(d, f == Elementary::Asin ? std::asin(x0) : std::acos(x0));
      break;
    }
    case Elementary::Atan: {
      Series one_plus_sq = mul(x, x);
      one_plus_sq[0] += 1.0;
      Series one{};
      one[0] = 1.0;
      r = integrate(div(one, one_plus_sq), std::atan(x0));
      break;
    }
  }
  require_finite(r, f, x0);
  return r;
}

}  // namespace diffgeo
