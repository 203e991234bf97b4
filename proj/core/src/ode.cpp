#include "diffgeo/ode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "diffgeo/errors.hpp"

namespace diffgeo {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
// Difference between the 5th- and 4th-order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;

void check_finite(std::span<const double> v, double t) {
  for (double x : v)
    if (!std::isfinite(x)) throw Error(ErrorCode::Domain, "ODE field is not finite", {t});
}

double rms_scaled(std::span<const double> v, std::span<const double> y, const OdeSpec& spec) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double sc = spec.abs_tol + spec.rel_tol * std::abs(y[i]);
    s += (v[i] / sc) * (v[i] / sc);
  }
  return std::sqrt(s / static_cast<double>(std::max<std::size_t>(v.size(), 1)));
}

}  // namespace

void OdeSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
    throw Error(ErrorCode::InvalidArgument, "ODE tolerances must be positive");
  if (!(min_step <= max_step) || !(min_step >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "ODE min_step must not exceed max_step");
  if (max_steps < 1) throw Error(ErrorCode::InvalidArgument, "ODE max_steps must be positive");
}

OdeState Trajectory::at(double time) const {
  if (t.empty()) throw Error(ErrorCode::InvalidArgument, "empty trajectory");
  if (t.size() == 1) return y.front();
  const bool forward = t.back() >= t.front();
  auto before = [&](double a, double b) { return forward ? a < b : a > b; };
  std::size_t hi = 1;
  while (hi + 1 < t.size() && before(t[hi], time)) ++hi;
  const std::size_t lo = hi - 1;
  const double h = t[hi] - t[lo];
  const double s = (time - t[lo]) / h;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  OdeState out(y[lo].size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = h00 * y[lo][i] + h10 * h * dydt[lo][i] + h01 * y[hi][i] + h11 * h * dydt[hi][i];
  return out;
}

Trajectory ode_solve(const OdeField& field, OdeState y0, double t0, double t1, const OdeSpec& spec,
                     const OdeHooks& hooks, std::span<const double> outputs) {
  spec.validate();
  if (!std::isfinite(t0) || !std::isfinite(t1) || t0 == t1)
    throw Error(ErrorCode::InvalidArgument, "ODE span must be finite and non-degenerate");

  const std::size_t n = y0.size();
  const double dir = t1 > t0 ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);

  std::vector<double> stops;
  for (double o : outputs)
    if (dir * (o - t0) > 0 && dir * (t1 - o) > 0) stops.push_back(o);
  std::sort(stops.begin(), stops.end(), [dir](double a, double b) { return dir * a < dir * b; });
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
  stops.push_back(t1);
  const bool record_all = outputs.empty();

  Trajectory tr;
  OdeState y = std::move(y0);
  OdeState f(n), ytmp(n), ynew(n), err(n);
  std::vector<OdeState> k(7, OdeState(n));

  double t = t0;
  field(t, y, f);
  check_finite(f, t);
  tr.t.push_back(t);
  tr.y.push_back(y);
  tr.dydt.push_back(f);

  // Initial step size (Hairer, Norsett & Wanner, II.4).
  double h;
  {
    const double d0 = rms_scaled(y, y, spec);
    const double d1 = rms_scaled(f, y, spec);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, span);
    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + dir * h0 * f[i];
    field(t + dir * h0, ytmp, k[1]);
    for (std::size_t i = 0; i < n; ++i) err[i] = (k[1][i] - f[i]) / h0;
    const double d2 = rms_scaled(err, y, spec);
    const double h1 = std::max(d1, d2) <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / std::max(d1, d2), 0.2);
    h = std::min({100 * h0, h1, spec.max_step, span});
    h = std::max(h, spec.min_step);
  }

  std::size_t next_stop = 0;
  bool last_rejected = false;

  while (true) {
    if (tr.steps_accepted + tr.steps_rejected >= spec.max_steps)
      throw Error(ErrorCode::MaxStepsExceeded, "ODE step budget of " + std::to_string(spec.max_steps) + " exhausted",
                  {t});

    const double target = stops[next_stop];
    const double remaining = std::abs(target - t);
    const double proposed = h;
    bool lands = false;
    if (h >= remaining * (1.0 - 1e-12) || remaining - h < 1e-3 * h) {
      h = remaining;
      lands = true;
    }
    const double hs = dir * h;

    auto stage = [&](std::initializer_list<std::pair<int, double>> terms, double c, int out) {
      for (std::size_t i = 0; i < n; ++i) {
        double acc = y[i];
        for (auto [j, a] : terms) acc += hs * a * (j == 0 ? f[i] : k[j][i]);
        ytmp[i] = acc;
      }
      field(t + c * hs, ytmp, k[out]);
    };
    stage({{0, a21}}, c2, 1);
    stage({{0, a31}, {1, a32}}, c3, 2);
    stage({{0, a41}, {1, a42}, {2, a43}}, c4, 3);
    stage({{0, a51}, {1, a52}, {2, a53}, {3, a54}}, c5, 4);
    stage({{0, a61}, {1, a62}, {2, a63}, {3, a64}, {4, a65}}, 1.0, 5);
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + hs * (a71 * f[i] + a73 * k[2][i] + a74 * k[3][i] + a75 * k[4][i] + a76 * k[5][i]);
    field(t + hs, ynew, k[6]);
    for (std::size_t i = 0; i < n; ++i)
      err[i] = hs * (e1 * f[i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] + e6 * k[5][i] + e7 * k[6][i]);

    double errnorm = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(ynew[i]) || !std::isfinite(err[i])) finite = false;
      const double sc = spec.abs_tol + spec.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      errnorm += (err[i] / sc) * (err[i] / sc);
    }
    errnorm = finite ? std::sqrt(errnorm / static_cast<double>(std::max<std::size_t>(n, 1)))
                     : std::numeric_limits<double>::infinity();

    if (errnorm <= 1.0) {
      ++tr.steps_accepted;
      const double t_prev = t;
      t = lands ? target : t + hs;
      y.swap(ynew);  // ynew and k[6] now hold the state and slope at t_prev
      f.swap(k[6]);
      if (hooks.project) {
        hooks.project(t, y);
        field(t, y, f);
      }
      check_finite(f, t);

      if (hooks.stop && hooks.stop(t, y)) {
        // Bisect on the step's cubic Hermite interpolant for the first state that stops.
        const double ha = t - t_prev;
        OdeState yc(n);
        auto hermite = [&](double s) {
          const double s2 = s * s, s3 = s2 * s;
          const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s, h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
          for (std::size_t i = 0; i < n; ++i)
            yc[i] = h00 * ynew[i] + h10 * ha * k[6][i] + h01 * y[i] + h11 * ha * f[i];
        };
        double lo = 0.0, hi = 1.0;
        while (hi - lo > 1e-14) {
          const double mid = 0.5 * (lo + hi);
          hermite(mid);
          (hooks.stop(t_prev + mid * ha, yc) ? hi : lo) = mid;
        }
        if (hi < 1.0) {
          hermite(hi);
          t = t_prev + hi * ha;
          y = yc;
          if (hooks.project) hooks.project(t, y);
          field(t, y, f);
        }
        tr.t.push_back(t);
        tr.y.push_back(y);
        tr.dydt.push_back(f);
        tr.stopped_early = true;
        break;
      }

      const bool at_stop = lands;
      if (record_all || at_stop) {
        tr.t.push_back(t);
        tr.y.push_back(y);
        tr.dydt.push_back(f);
      }
      if (at_stop) {
        if (next_stop + 1 == stops.size()) break;
        ++next_stop;
      }

      double factor = errnorm == 0.0 ? kMaxFactor : kSafety * std::pow(errnorm, -0.2);
      factor = std::clamp(factor, kMinFactor, last_rejected ? 1.0 : kMaxFactor);
      h = h * factor;
      if (lands) h = std::max(h, proposed);
      h = std::min(h, spec.max_step);
      last_rejected = false;
    } else {
      ++tr.steps_rejected;
      const double factor = std::isfinite(errnorm) ? std::max(kMinFactor, kSafety * std::pow(errnorm, -0.2)) : 0.1;
      h *= factor;
      last_rejected = true;
      if (h < spec.min_step)
        throw Error(ErrorCode::StepUnderflow, "required ODE step fell below min_step", {t});
    }
  }
  return tr;
}

}  // namespace diffgeo
