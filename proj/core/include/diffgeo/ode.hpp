#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace diffgeo {

/// Error-control and step limits for `ode_solve`.
struct OdeSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double min_step = 1e-14;
  double max_step = std::numeric_limits<double>::infinity();
  long max_steps = 1'000'000;

  /// Throws InvalidArgument unless abs_tol > 0, rel_tol > 0 and min_step <= max_step.
  void validate() const;
};

using OdeState = std::vector<double>;
using OdeField = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// Optional hooks applied after every accepted step.
struct OdeHooks {
  /// Projects the accepted state back onto a constraint manifold.
  std::function<void(double t, OdeState& y)> project;
  /// Returns true to end integration. The end point is placed where the step's interpolant first stops.
  std::function<bool(double t, const OdeState& y)> stop;
};

struct Trajectory {
  std::vector<double> t;
  std::vector<OdeState> y;
  std::vector<OdeState> dydt;
  bool stopped_early = false;
  long steps_accepted = 0;
  long steps_rejected = 0;

  const OdeState& back() const { return y.back(); }
  /// Cubic Hermite interpolation between recorded samples.
  OdeState at(double time) const;
};

/// Dormand-Prince 5(4) integration over [t0, t1] (t1 may be below t0).
/// Records every accepted step; when `outputs` is non-empty, records exactly those
/// times instead (steps are clipped to land on them) plus the endpoints.
Trajectory ode_solve(const OdeField& field, OdeState y0, double t0, double t1, const OdeSpec& spec = {},
                     const OdeHooks& hooks = {}, std::span<const double> outputs = {});

}  // namespace diffgeo
