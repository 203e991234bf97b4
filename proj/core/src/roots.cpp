#include "diffgeo/roots.hpp"

#include <cmath>
#include <algorithm>
#include <string>

#include "diffgeo/errors.hpp"

namespace diffgeo {

double root_find(const std::function<double(double)>& f, double a, double b, const RootSpec& spec, bool bracketed) {
  if (!(spec.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "root tolerance must be positive");
  double fa = f(a), fb = f(b);
  if (std::abs(fa) <= spec.tol) return a;
  if (std::abs(fb) <= spec.tol) return b;
  if (bracketed && fa * fb > 0.0)
    throw Error(ErrorCode::InvalidArgument, "root bracket does not change sign", {a, b});

  double best = std::abs(fa) < std::abs(fb) ? a : b;
  double best_f = std::min(std::abs(fa), std::abs(fb));

  if (!bracketed) {
    double x0 = a, x1 = b, f0 = fa, f1 = fb;
    for (int it = 0; it < spec.max_iterations; ++it) {
      if (f1 == f0) break;
      const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
      const double f2 = f(x2);
      if (std::abs(f2) < best_f) {
        best = x2;
        best_f = std::abs(f2);
      }
      if (std::abs(f2) <= spec.tol) return x2;
      x0 = x1;
      f0 = f1;
      x1 = x2;
      f1 = f2;
    }
    throw Error(ErrorCode::NoConvergence, "secant iteration did not converge; best |f| = " + std::to_string(best_f),
                {best});
  }

  // lo/hi always bracket the root; x0/x1 are the latest secant pair.
  double lo = a, hi = b, flo = fa, fhi = fb;
  double x0 = a, x1 = b, f0 = fa, f1 = fb;
  for (int it = 0; it < spec.max_iterations; ++it) {
    double x = f1 != f0 ? x1 - f1 * (x1 - x0) / (f1 - f0) : 0.5 * (lo + hi);
    const double width = std::abs(hi - lo);
    const bool inside = (x > std::min(lo, hi)) && (x < std::max(lo, hi));
    if (!inside || !std::isfinite(x)) x = 0.5 * (lo + hi);
    const double fx = f(x);
    if (std::abs(fx) < best_f) {
      best = x;
      best_f = std::abs(fx);
    }
    if (std::abs(fx) <= spec.tol) return x;
    if ((fx < 0) == (flo < 0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
    // Force a bisection if the secant stalls on one side of the bracket.
    if (std::abs(hi - lo) > 0.5 * width) {
      const double m = 0.5 * (lo + hi);
      const double fm = f(m);
      if (std::abs(fm) <= spec.tol) return m;
      if ((fm < 0) == (flo < 0)) {
        lo = m;
        flo = fm;
      } else {
        hi = m;
        fhi = fm;
      }
    }
    x0 = lo;
    f0 = flo;
    x1 = hi;
    f1 = fhi;
    if (lo == hi || std::nextafter(lo, hi) == hi) {
      if (std::abs(flo) < best_f) best = lo;
      break;
    }
  }
  throw Error(ErrorCode::NoConvergence, "root iteration did not converge; best |f| = " + std::to_string(best_f),
              {best});
}

}  // namespace diffgeo
