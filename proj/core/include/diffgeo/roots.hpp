#pragma once

#include <functional>
#include <optional>

namespace diffgeo {

struct RootSpec {
  double tol = 1e-12;
  int max_iterations = 200;
};

/// Finds x with |f(x)| <= tol. With a bracket [a, b] (f(a), f(b) of opposite sign)
/// secant steps fall back to bisection whenever they leave the current bracket.
/// Without a bracket, plain secant from the two seeds a and b.
/// Throws NoConvergence after the iteration cap.
double root_find(const std::function<double(double)>& f, double a, double b, const RootSpec& spec = {},
                 bool bracketed = true);

}  // namespace diffgeo
