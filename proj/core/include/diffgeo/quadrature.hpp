#pragma once

#include <functional>

namespace diffgeo {

struct QuadSpec {
  double tol = 1e-10;
  int max_depth = 30;

  void validate() const;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  double mid() const noexcept { return 0.5 * (lo + hi); }
  bool contains(double x) const noexcept { return x >= lo && x <= hi; }
};

struct Rectangle {
  Interval u;
  Interval v;
};

/// Adaptive 15-point Gauss-Legendre quadrature with recursive bisection.
/// Throws MaxDepthExceeded (carrying the best estimate) if the tolerance is not met.
double quad_adaptive(const std::function<double(double)>& f, Interval interval, const QuadSpec& spec = {});

/// Tensor-product 15x15 Gauss panels with recursive quadrisection.
double quad2d(const std::function<double(double, double)>& f, const Rectangle& rect, const QuadSpec& spec = {});

}  // namespace diffgeo
