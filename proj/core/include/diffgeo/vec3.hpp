#pragma once

#include <cmath>
#include <type_traits>
#include <utility>

#include "diffgeo/jet.hpp"

namespace diffgeo {

/// Three-component vector over a scalar or jet type.
template <class T>
struct Vec3T {
  T x{}, y{}, z{};

  constexpr Vec3T() = default;
  constexpr Vec3T(T x_, T y_, T z_) : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}

  constexpr Vec3T& operator+=(const Vec3T& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3T& operator-=(const Vec3T& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3T& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend constexpr bool operator==(const Vec3T&, const Vec3T&) = default;
};

using Vec3 = Vec3T<double>;

template <class T>
constexpr Vec3T<T> operator+(Vec3T<T> a, const Vec3T<T>& b) {
  return a += b;
}
template <class T>
constexpr Vec3T<T> operator-(Vec3T<T> a, const Vec3T<T>& b) {
  return a -= b;
}
template <class T>
constexpr Vec3T<T> operator-(const Vec3T<T>& a) {
  return {-a.x, -a.y, -a.z};
}
template <class T>
constexpr Vec3T<T> operator*(const Vec3T<T>& a, double s) {
  return {a.x * s, a.y * s, a.z * s};
}
template <class T>
constexpr Vec3T<T> operator*(double s, const Vec3T<T>& a) {
  return a * s;
}
template <class T>
constexpr Vec3T<T> operator/(const Vec3T<T>& a, double s) {
  return {a.x / s, a.y / s, a.z / s};
}

// Scaling by a jet-valued scalar (T = Jet).
template <class T>
  requires(!std::is_same_v<T, double>)
constexpr Vec3T<T> operator*(const Vec3T<T>& a, const T& s) {
  return {a.x * s, a.y * s, a.z * s};
}
template <class T>
  requires(!std::is_same_v<T, double>)
constexpr Vec3T<T> operator*(const T& s, const Vec3T<T>& a) {
  return {s * a.x, s * a.y, s * a.z};
}
template <class T>
  requires(!std::is_same_v<T, double>)
constexpr Vec3T<T> operator/(const Vec3T<T>& a, const T& s) {
  return {a.x / s, a.y / s, a.z / s};
}

template <class T>
constexpr T dot(const Vec3T<T>& a, const Vec3T<T>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <class T>
constexpr Vec3T<T> cross(const Vec3T<T>& a, const Vec3T<T>& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

template <class T>
T norm(const Vec3T<T>& a) {
  using std::sqrt;
  return sqrt(dot(a, a));
}

inline Vec3 normalized(const Vec3& a) { return a / norm(a); }

template <class T>
  requires(!std::is_same_v<T, double>)
Vec3T<T> normalized(const Vec3T<T>& a) {
  return a / norm(a);
}

template <class T>
constexpr Vec3 value_of(const Vec3T<T>& a) {
  return {value_of(a.x), value_of(a.y), value_of(a.z)};
}

/// k-th derivative coefficient of a curve jet.
template <int N>
constexpr Vec3 coefficient(const Vec3T<Jet1<N>>& a, int k) {
  return {a.x[k], a.y[k], a.z[k]};
}

/// Partial d^(i+j)/du^i dv^j of a surface jet.
template <int N>
constexpr Vec3 coefficient(const Vec3T<Jet2<N>>& a, int i, int j) {
  return {a.x.d(i, j), a.y.d(i, j), a.z.d(i, j)};
}

template <int N>
constexpr Vec3T<Jet1<N - 1>> derivative(const Vec3T<Jet1<N>>& a) {
  return {derivative(a.x), derivative(a.y), derivative(a.z)};
}

template <int M, int N>
constexpr Vec3T<Jet1<M>> truncate(const Vec3T<Jet1<N>>& a) {
  return {truncate<M>(a.x), truncate<M>(a.y), truncate<M>(a.z)};
}

template <int M, int N>
constexpr Vec3T<Jet2<M>> truncate(const Vec3T<Jet2<N>>& a) {
  return {truncate<M>(a.x), truncate<M>(a.y), truncate<M>(a.z)};
}

template <int N>
constexpr Vec3T<Jet2<N - 1>> partial_u(const Vec3T<Jet2<N>>& a) {
  return {partial_u(a.x), partial_u(a.y), partial_u(a.z)};
}

template <int N>
constexpr Vec3T<Jet2<N - 1>> partial_v(const Vec3T<Jet2<N>>& a) {
  return {partial_v(a.x), partial_v(a.y), partial_v(a.z)};
}

template <int N>
constexpr Vec3T<Jet2<N - 1>> partial(const Vec3T<Jet2<N>>& a, int which) {
  return which == 0 ? partial_u(a) : partial_v(a);
}

template <int K, int M>
constexpr auto compose(const Vec3T<Jet2<K>>& f, const Jet1<M>& du, const Jet1<M>& dv) {
  return Vec3T<Jet1<std::min(K, M)>>{compose(f.x, du, dv), compose(f.y, du, dv), compose(f.z, du, dv)};
}

template <int K, int M>
constexpr auto compose(const Vec3T<Jet1<K>>& f, const Jet1<M>& offset) {
  return Vec3T<Jet1<std::min(K, M)>>{compose(f.x, offset), compose(f.y, offset), compose(f.z, offset)};
}

}  // namespace diffgeo
