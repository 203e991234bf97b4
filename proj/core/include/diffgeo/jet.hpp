#pragma once

// Truncated Taylor jets. Coefficients are stored as derivative values:
// Jet1<N>[k] = d^k f / dt^k, Jet2<N>.d(i, j) = d^(i+j) f / du^i dv^j.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string_view>

#include "diffgeo/errors.hpp"

namespace diffgeo {

inline constexpr int kMaxJetOrder = 4;

enum class Elementary { Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh, Tanh, Asin, Acos, Atan };

std::string_view name(Elementary f) noexcept;
std::optional<Elementary> elementary_from_name(std::string_view name) noexcept;

/// Taylor coefficients a_k = f^(k)(x0) / k! for k = 0..kMaxJetOrder.
using TaylorCoefficients = std::array<double, kMaxJetOrder + 1>;

TaylorCoefficients taylor_coefficients(Elementary f, double x0);
/// Coefficients of x^p about x0 > 0.
TaylorCoefficients power_coefficients(double x0, double exponent);

/// Domain-checked scalar evaluation.
double apply(Elementary f, double x);
double power(double base, double exponent);

namespace detail {

inline constexpr double kBinomial[kMaxJetOrder + 1][kMaxJetOrder + 1] = {
    {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};
inline constexpr double kFactorial[kMaxJetOrder + 1] = {1, 1, 2, 6, 24};

inline bool is_integer(double x) { return std::isfinite(x) && x == std::nearbyint(x) && std::abs(x) < 1e6; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Jet1
// ---------------------------------------------------------------------------

template <int N>
class Jet1 {
  static_assert(N >= 0 && N <= kMaxJetOrder, "unsupported jet order");

 public:
  static constexpr int order = N;

  constexpr Jet1() = default;
  constexpr Jet1(double value) noexcept { c_[0] = value; }  // NOLINT: constants lift implicitly

  static constexpr Jet1 variable(double t) noexcept {
    Jet1 j(t);
    if constexpr (N >= 1) j.c_[1] = 1.0;
    return j;
  }
  static constexpr Jet1 constant(double c) noexcept { return Jet1(c); }

  constexpr double value() const noexcept { return c_[0]; }
  constexpr double operator[](int k) const noexcept { return c_[k]; }
  constexpr double& operator[](int k) noexcept { return c_[k]; }
  constexpr const std::array<double, N + 1>& coefficients() const noexcept { return c_; }

  constexpr bool is_constant() const noexcept {
    for (int k = 1; k <= N; ++k)
      if (c_[k] != 0.0) return false;
    return true;
  }

  constexpr Jet1& operator+=(const Jet1& o) noexcept {
    for (int k = 0; k <= N; ++k) c_[k] += o.c_[k];
    return *this;
  }
  constexpr Jet1& operator-=(const Jet1& o) noexcept {
    for (int k = 0; k <= N; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  constexpr Jet1& operator*=(double s) noexcept {
    for (auto& c : c_) c *= s;
    return *this;
  }
  constexpr Jet1& operator/=(double s) noexcept {
    for (auto& c : c_) c /= s;
    return *this;
  }

  friend constexpr bool operator==(const Jet1&, const Jet1&) = default;

 private:
  std::array<double, N + 1> c_{};
};

template <int N>
constexpr Jet1<N> operator-(Jet1<N> a) noexcept {
  a *= -1.0;
  return a;
}
template <int N>
constexpr Jet1<N> operator+(Jet1<N> a, const Jet1<N>& b) noexcept {
  return a += b;
}
template <int N>
constexpr Jet1<N> operator-(Jet1<N> a, const Jet1<N>& b) noexcept {
  return a -= b;
}
template <int N>
constexpr Jet1<N> operator+(Jet1<N> a, double b) noexcept {
  a[0] += b;
  return a;
}
template <int N>
constexpr Jet1<N> operator+(double a, Jet1<N> b) noexcept {
  b[0] += a;
  return b;
}
template <int N>
constexpr Jet1<N> operator-(Jet1<N> a, double b) noexcept {
  a[0] -= b;
  return a;
}
template <int N>
constexpr Jet1<N> operator-(double a, const Jet1<N>& b) noexcept {
  return a + (-b);
}
template <int N>
constexpr Jet1<N> operator*(Jet1<N> a, double s) noexcept {
  return a *= s;
}
template <int N>
constexpr Jet1<N> operator*(double s, Jet1<N> a) noexcept {
  return a *= s;
}
template <int N>
constexpr Jet1<N> operator/(Jet1<N> a, double s) noexcept {
  return a /= s;
}

template <int N>
constexpr Jet1<N> operator*(const Jet1<N>& a, const Jet1<N>& b) noexcept {
  Jet1<N> r;
  for (int k = 0; k <= N; ++k) {
    double s = 0.0;
    for (int j = 0; j <= k; ++j) s += detail::kBinomial[k][j] * a[j] * b[k - j];
    r[k] = s;
  }
  return r;
}

template <int N>
constexpr Jet1<N> operator/(const Jet1<N>& a, const Jet1<N>& b) noexcept {
  Jet1<N> r;
  for (int k = 0; k <= N; ++k) {
    double s = a[k];
    for (int j = 1; j <= k; ++j) s -= detail::kBinomial[k][j] * b[j] * r[k - j];
    r[k] = s / b[0];
  }
  return r;
}

template <int N>
constexpr Jet1<N> operator/(double a, const Jet1<N>& b) noexcept {
  return Jet1<N>(a) / b;
}

template <int N>
constexpr Jet1<N>& operator*=(Jet1<N>& a, const Jet1<N>& b) noexcept {
  return a = a * b;
}
template <int N>
constexpr Jet1<N>& operator/=(Jet1<N>& a, const Jet1<N>& b) noexcept {
  return a = a / b;
}

/// d/dt, dropping one order.
template <int N>
constexpr Jet1<N - 1> derivative(const Jet1<N>& a) noexcept {
  static_assert(N >= 1);
  Jet1<N - 1> r;
  for (int k = 0; k < N; ++k) r[k] = a[k + 1];
  return r;
}

/// Antiderivative with the given value, gaining one order.
template <int N>
constexpr Jet1<N + 1> integrate(const Jet1<N>& a, double value) noexcept {
  Jet1<N + 1> r(value);
  for (int k = 0; k <= N; ++k) r[k + 1] = a[k];
  return r;
}

template <int M, int N>
constexpr Jet1<M> truncate(const Jet1<N>& a) noexcept {
  static_assert(M <= N);
  Jet1<M> r;
  for (int k = 0; k <= M; ++k) r[k] = a[k];
  return r;
}

/// Re-expands `local`, a jet in a local variable s about s0, along s = s0 + offset
/// where `offset` is a jet with zero value.
template <int K, int M>
constexpr Jet1<std::min(K, M)> compose(const Jet1<K>& local, const Jet1<M>& offset) noexcept {
  constexpr int R = std::min(K, M);
  const auto delta = truncate<R>(offset);
  // delta^j vanishes below order j, so coefficient k only sees local[0..k]. Summing
  // that way keeps NaN-poisoned high coefficients out of the low ones.
  Jet1<R> r;
  Jet1<R> pw(1.0);
  for (int j = 0; j <= R; ++j) {
    const double c = local[j] / detail::kFactorial[j];
    for (int k = j; k <= R; ++k) r[k] += c * pw[k];
    pw = pw * delta;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Jet2
// ---------------------------------------------------------------------------

template <int N>
class Jet2 {
  static_assert(N >= 0 && N <= kMaxJetOrder, "unsupported jet order");

 public:
  static constexpr int order = N;
  static constexpr int size = (N + 1) * (N + 2) / 2;

  static constexpr int index(int i, int j) noexcept {
    const int d = i + j;
    return d * (d + 1) / 2 + j;
  }

  constexpr Jet2() = default;
  constexpr Jet2(double value) noexcept { c_[0] = value; }  // NOLINT: constants lift implicitly

  static constexpr Jet2 variable_u(double u) noexcept {
    Jet2 j(u);
    if constexpr (N >= 1) j.c_[index(1, 0)] = 1.0;
    return j;
  }
  static constexpr Jet2 variable_v(double v) noexcept {
    Jet2 j(v);
    if constexpr (N >= 1) j.c_[index(0, 1)] = 1.0;
    return j;
  }

  constexpr double value() const noexcept { return c_[0]; }
  /// Partial derivative d^(i+j) / du^i dv^j.
  constexpr double d(int i, int j) const noexcept { return c_[index(i, j)]; }
  constexpr double& d(int i, int j) noexcept { return c_[index(i, j)]; }
  constexpr double operator[](int k) const noexcept { return c_[k]; }
  constexpr double& operator[](int k) noexcept { return c_[k]; }

  constexpr bool is_constant() const noexcept {
    for (int k = 1; k < size; ++k)
      if (c_[k] != 0.0) return false;
    return true;
  }

  constexpr Jet2& operator+=(const Jet2& o) noexcept {
    for (int k = 0; k < size; ++k) c_[k] += o.c_[k];
    return *this;
  }
  constexpr Jet2& operator-=(const Jet2& o) noexcept {
    for (int k = 0; k < size; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  constexpr Jet2& operator*=(double s) noexcept {
    for (auto& c : c_) c *= s;
    return *this;
  }
  constexpr Jet2& operator/=(double s) noexcept {
    for (auto& c : c_) c /= s;
    return *this;
  }

  friend constexpr bool operator==(const Jet2&, const Jet2&) = default;

 private:
  std::array<double, size> c_{};
};

template <int N>
constexpr Jet2<N> operator-(Jet2<N> a) noexcept {
  a *= -1.0;
  return a;
}
template <int N>
constexpr Jet2<N> operator+(Jet2<N> a, const Jet2<N>& b) noexcept {
  return a += b;
}
template <int N>
constexpr Jet2<N> operator-(Jet2<N> a, const Jet2<N>& b) noexcept {
  return a -= b;
}
template <int N>
constexpr Jet2<N> operator+(Jet2<N> a, double b) noexcept {
  a[0] += b;
  return a;
}
template <int N>
constexpr Jet2<N> operator+(double a, Jet2<N> b) noexcept {
  b[0] += a;
  return b;
}
template <int N>
constexpr Jet2<N> operator-(Jet2<N> a, double b) noexcept {
  a[0] -= b;
  return a;
}
template <int N>
constexpr Jet2<N> operator-(double a, const Jet2<N>& b) noexcept {
  return a + (-b);
}
template <int N>
constexpr Jet2<N> operator*(Jet2<N> a, double s) noexcept {
  return a *= s;
}
template <int N>
constexpr Jet2<N> operator*(double s, Jet2<N> a) noexcept {
  return a *= s;
}
template <int N>
constexpr Jet2<N> operator/(Jet2<N> a, double s) noexcept {
  return a /= s;
}

template <int N>
constexpr Jet2<N> operator*(const Jet2<N>& a, const Jet2<N>& b) noexcept {
  Jet2<N> r;
  for (int dtot = 0; dtot <= N; ++dtot) {
    for (int j = 0; j <= dtot; ++j) {
      const int i = dtot - j;
      double s = 0.0;
      for (int k = 0; k <= i; ++k)
        for (int l = 0; l <= j; ++l)
          s += detail::kBinomial[i][k] * detail::kBinomial[j][l] * a.d(k, l) * b.d(i - k, j - l);
      r.d(i, j) = s;
    }
  }
  return r;
}

template <int N>
constexpr Jet2<N> operator/(const Jet2<N>& a, const Jet2<N>& b) noexcept {
  Jet2<N> r;
  for (int dtot = 0; dtot <= N; ++dtot) {
    for (int j = 0; j <= dtot; ++j) {
      const int i = dtot - j;
      double s = a.d(i, j);
      for (int k = 0; k <= i; ++k)
        for (int l = 0; l <= j; ++l)
          if (k + l > 0) s -= detail::kBinomial[i][k] * detail::kBinomial[j][l] * b.d(k, l) * r.d(i - k, j - l);
      r.d(i, j) = s / b.value();
    }
  }
  return r;
}

template <int N>
constexpr Jet2<N> operator/(double a, const Jet2<N>& b) noexcept {
  return Jet2<N>(a) / b;
}

template <int N>
constexpr Jet2<N>& operator*=(Jet2<N>& a, const Jet2<N>& b) noexcept {
  return a = a * b;
}
template <int N>
constexpr Jet2<N>& operator/=(Jet2<N>& a, const Jet2<N>& b) noexcept {
  return a = a / b;
}

template <int N>
constexpr Jet2<N - 1> partial_u(const Jet2<N>& a) noexcept {
  static_assert(N >= 1);
  Jet2<N - 1> r;
  for (int dtot = 0; dtot < N; ++dtot)
    for (int j = 0; j <= dtot; ++j) r.d(dtot - j, j) = a.d(dtot - j + 1, j);
  return r;
}

template <int N>
constexpr Jet2<N - 1> partial_v(const Jet2<N>& a) noexcept {
  static_assert(N >= 1);
  Jet2<N - 1> r;
  for (int dtot = 0; dtot < N; ++dtot)
    for (int j = 0; j <= dtot; ++j) r.d(dtot - j, j) = a.d(dtot - j, j + 1);
  return r;
}

/// Partial along parameter 0 (u) or 1 (v).
template <int N>
constexpr Jet2<N - 1> partial(const Jet2<N>& a, int which) noexcept {
  return which == 0 ? partial_u(a) : partial_v(a);
}

template <int M, int N>
constexpr Jet2<M> truncate(const Jet2<N>& a) noexcept {
  static_assert(M <= N);
  Jet2<M> r;
  for (int k = 0; k < Jet2<M>::size; ++k) r[k] = a[k];
  return r;
}

/// Restricts a two-parameter jet at (u0, v0) to the curve (u0 + du(t), v0 + dv(t));
/// `du` and `dv` must have zero value.
template <int K, int M>
constexpr Jet1<std::min(K, M)> compose(const Jet2<K>& f, const Jet1<M>& du, const Jet1<M>& dv) noexcept {
  constexpr int R = std::min(K, M);
  const auto a = truncate<R>(du);
  const auto b = truncate<R>(dv);
  std::array<Jet1<R>, R + 1> apow{}, bpow{};
  apow[0] = Jet1<R>(1.0);
  bpow[0] = Jet1<R>(1.0);
  for (int k = 1; k <= R; ++k) {
    apow[k] = apow[k - 1] * a;
    bpow[k] = bpow[k - 1] * b;
  }
  Jet1<R> r;
  for (int dtot = 0; dtot <= R; ++dtot)
    for (int j = 0; j <= dtot; ++j) {
      const int i = dtot - j;
      const double c = f.d(i, j) / (detail::kFactorial[i] * detail::kFactorial[j]);
      if (c != 0.0) r += c * (apow[i] * bpow[j]);
    }
  return r;
}

// ---------------------------------------------------------------------------
// Elementary functions on jets
// ---------------------------------------------------------------------------

inline constexpr double value_of(double x) noexcept { return x; }
template <int N>
constexpr double value_of(const Jet1<N>& x) noexcept {
  return x.value();
}
template <int N>
constexpr double value_of(const Jet2<N>& x) noexcept {
  return x.value();
}

namespace detail {

/// f(x) = sum a_k (x - x0)^k, truncated to the jet order.
template <class J>
J compose_series(const J& x, const TaylorCoefficients& a) {
  J delta = x - x.value();
  J r(a[J::order]);
  for (int k = J::order - 1; k >= 0; --k) r = r * delta + a[k];
  return r;
}

}  // namespace detail

template <class J>
J apply(Elementary f, const J& x) {
  if (x.is_constant()) return J(apply(f, x.value()));
  const auto a = taylor_coefficients(f, x.value());
  return detail::compose_series(x, a);
}

template <class J>
J integer_power(const J& x, long n) {
  if (n < 0) return J(1.0) / integer_power(x, -n);
  J result(1.0);
  J base = x;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

/// x^p for a constant exponent: repeated multiplication when p is an integer,
/// otherwise a positive base is required.
template <class J>
J power(const J& x, double p) {
  if (detail::is_integer(p)) return integer_power(x, static_cast<long>(p));
  if (x.is_constant()) return J(power(x.value(), p));
  return detail::compose_series(x, power_coefficients(x.value(), p));
}

#define DIFFGEO_JET_FN(fname, tag)                    \
  template <int N>                                    \
  Jet1<N> fname(const Jet1<N>& x) {                   \
    return apply(Elementary::tag, x);                 \
  }                                                   \
  template <int N>                                    \
  Jet2<N> fname(const Jet2<N>& x) {                   \
    return apply(Elementary::tag, x);                 \
  }

DIFFGEO_JET_FN(sin, Sin)
DIFFGEO_JET_FN(cos, Cos)
DIFFGEO_JET_FN(tan, Tan)
DIFFGEO_JET_FN(exp, Exp)
DIFFGEO_JET_FN(log, Log)
DIFFGEO_JET_FN(sqrt, Sqrt)
DIFFGEO_JET_FN(sinh, Sinh)
DIFFGEO_JET_FN(cosh, Cosh)
DIFFGEO_JET_FN(tanh, Tanh)
DIFFGEO_JET_FN(asin, Asin)
DIFFGEO_JET_FN(acos, Acos)
DIFFGEO_JET_FN(atan, Atan)

#undef DIFFGEO_JET_FN

// Scalar overloads, so generic code can call sin(t) for doubles and jets alike.
using std::acos;
using std::asin;
using std::atan;
using std::atan2;
using std::cos;
using std::cosh;
using std::exp;
using std::log;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tan;
using std::tanh;

/// Two-argument arctangent on the principal branch at the value point.
template <int N>
Jet1<N> atan2(const Jet1<N>& y, const Jet1<N>& x) {
  const double v = std::atan2(y.value(), x.value());
  if constexpr (N == 0) {
    return Jet1<0>(v);
  } else {
    const auto yd = derivative(y);
    const auto xd = derivative(x);
    const auto yt = truncate<N - 1>(y);
    const auto xt = truncate<N - 1>(x);
    const auto rate = (xt * yd - yt * xd) / (xt * xt + yt * yt);
    return integrate(rate, v);
  }
}

}  // namespace diffgeo
