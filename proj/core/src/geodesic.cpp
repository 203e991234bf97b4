#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "diffgeo/errors.hpp"
#include "diffgeo/roots.hpp"
#include "diffgeo/surface_curve.hpp"

namespace diffgeo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double speed2(const FormBundle& fb, double p, double q) { return fb.E * p * p + 2.0 * fb.F * p * q + fb.G * q * q; }

Trajectory integrate_geodesic(const ParametricSurface& s, Param2 start, Param2 dir, double length,
                              const OdeSpec& spec, std::span<const double> outputs) {
  const Rectangle dom = s.domain();
  auto field = [&](double, std::span<const double> y, std::span<double> dy) {
    const FormBundle fb = forms(s, y[0], y[1]);
    const double p[2] = {y[2], y[3]};
    dy[0] = p[0];
    dy[1] = p[1];
    for (int c = 0; c < 2; ++c) {
      double acc = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) acc += fb.Gamma(c, a, b) * p[a] * p[b];
      dy[2 + c] = -acc;
    }
  };
  OdeHooks hooks;
  hooks.project = [&](double, OdeState& y) {
    const double sp = std::sqrt(speed2(forms(s, y[0], y[1]), y[2], y[3]));
    y[2] /= sp;
    y[3] /= sp;
  };
  hooks.stop = [&](double, const OdeState& y) {
    return (!s.periodic_u() && !dom.u.contains(y[0])) || (!s.periodic_v() && !dom.v.contains(y[1]));
  };
  const FormBundle fb0 = forms(s, start[0], start[1]);
  const double sp = std::sqrt(speed2(fb0, dir[0], dir[1]));
  if (!(sp > 0.0)) throw Error(ErrorCode::ZeroVector, "geodesic direction must be nonzero", {start[0], start[1]});
  return ode_solve(field, {start[0], start[1], dir[0] / sp, dir[1] / sp}, 0.0, length, spec, hooks, outputs);
}

GeodesicPath to_path(const Trajectory& tr) {
  GeodesicPath out;
  for (std::size_t i = 0; i < tr.t.size(); ++i)
    out.samples.push_back({tr.t[i], tr.y[i][0], tr.y[i][1], tr.y[i][2], tr.y[i][3]});
  out.length = tr.t.back();
  out.left_domain = tr.stopped_early;
  return out;
}

std::vector<double> uniform_outputs(double length, double step) {
  std::vector<double> out;
  if (!(step > 0.0)) return out;
  const int n = static_cast<int>(std::ceil(length / step));
  for (int k = 1; k < n; ++k) out.push_back(length * k / n);
  return out;
}

// Parameter difference wrapped into one period on periodic coordinates.
double wrap(double d, bool periodic, const Interval& range) {
  if (!periodic) return d;
  const double p = range.width();
  return d - p * std::round(d / p);
}

}  // namespace

GeodesicPath geodesic_ivp(const ParametricSurface& s, Param2 start, Param2 direction, double length,
                          const OdeSpec& spec, double sample_step) {
  if (!(length > 0.0)) throw Error(ErrorCode::InvalidArgument, "geodesic length must be positive");
  const auto outputs = uniform_outputs(length, sample_step);
  return to_path(integrate_geodesic(s, start, direction, length, spec, outputs));
}

GeodesicMultiplicity::GeodesicMultiplicity(std::vector<GeodesicPath> paths)
    : Error(ErrorCode::DegenerateMultiplicity, "distinct geodesics of equal length join the end points"),
      paths_(std::move(paths)) {}

namespace {

struct Shot {
  double residual = 0;  // lateral miss m . (n x T)
  double length = 0;    // arclength of closest approach
  double distance = 0;  // |m|
};

class Shooter {
 public:
  Shooter(const ParametricSurface& s, Param2 p0, Param2 p1, const OdeSpec& spec)
      : s_(s), p0_(p0), p1_(p1), spec_(spec), target_(s.position(p1[0], p1[1])) {
    const FormBundle fb = forms(s, p0[0], p0[1]);
    const double rE = std::sqrt(fb.E);
    const double w = std::sqrt(fb.det_a() / fb.E);
    e1_ = {1.0 / rE, 0.0};
    e2_ = {-fb.F / fb.E / w, 1.0 / w};
    delta_ = {wrap(p1[0] - p0[0], s.periodic_u(), s.domain().u), wrap(p1[1] - p0[1], s.periodic_v(), s.domain().v)};
    const Vec3 chord = fb.tangent(delta_[0], delta_[1]);
    chord_angle_ = std::atan2(dot(chord, fb.tangent(e2_[0], e2_[1])), dot(chord, fb.tangent(e1_[0], e1_[1])));
    const double metric_chord = quad_adaptive(
        [&](double x) {
          const FormBundle f = forms(s_, p0_[0] + x * delta_[0], p0_[1] + x * delta_[1]);
          return std::sqrt(speed2(f, delta_[0], delta_[1]));
        },
        {0.0, 1.0}, {1e-8, 20});
    max_length_ = 1.5 * metric_chord;
  }

  double chord_angle() const { return chord_angle_; }
  double max_length() const { return max_length_; }

  Param2 direction(double theta) const {
    return {std::cos(theta) * e1_[0] + std::sin(theta) * e2_[0], std::cos(theta) * e1_[1] + std::sin(theta) * e2_[1]};
  }

  Shot shoot(double theta) const {
    const auto outputs = uniform_outputs(max_length_, max_length_ / 256.0);
    const Trajectory tr = integrate_geodesic(s_, p0_, direction(theta), max_length_, spec_, outputs);
    auto dist2 = [&](const OdeState& y) {
      const Vec3 m = target_ - s_.position(y[0], y[1]);
      return dot(m, m);
    };
    std::size_t best = 0;
    double best_d = dist2(tr.y[0]);
    for (std::size_t i = 1; i < tr.y.size(); ++i) {
      const double d = dist2(tr.y[i]);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    // Golden section on the interpolated path around the closest sample.
    double a = tr.t[best > 0 ? best - 1 : 0], b = tr.t[std::min(best + 1, tr.t.size() - 1)];
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = dist2(tr.at(x1)), f2 = dist2(tr.at(x2));
    for (int it = 0; it < 60 && b - a > 1e-12 * max_length_; ++it) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - g * (b - a);
        f1 = dist2(tr.at(x1));
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + g * (b - a);
        f2 = dist2(tr.at(x2));
      }
    }
    double s_star = 0.5 * (a + b);
    // Exact re-integration from the nearest recorded state, then Newton on m . T.
    const std::size_t k = best > 0 && tr.t[best] > s_star ? best - 1 : best;
    const double s_k = tr.t[k];
    const OdeState y_k = tr.y[k];
    Shot shot;
    for (int it = 0; it < 4; ++it) {
      OdeState y = y_k;
      if (s_star > s_k) {
        const Trajectory seg = integrate_geodesic(s_, {y_k[0], y_k[1]}, {y_k[2], y_k[3]}, s_star - s_k, spec_, {});
        y = seg.back();
      } else {
        s_star = s_k;
      }
      const FormBundle fb = forms(s_, y[0], y[1]);
      const Vec3 T = normalized(fb.tangent(y[2], y[3]));
      const Vec3 m = target_ - s_.position(y[0], y[1]);
      shot.residual = dot(m, cross(fb.n, T));
      shot.length = s_star;
      shot.distance = norm(m);
      end_ = {y[0], y[1]};
      const double step = dot(m, T);
      if (std::abs(step) <= 1e-13 * s_.scale()) break;
      s_star = std::max(s_k, s_star + step);
    }
    return shot;
  }

  Param2 last_end() const { return end_; }

  double endpoint_error(Param2 end) const {
    const double du = wrap(end[0] - p1_[0], s_.periodic_u(), s_.domain().u);
    const double dv = wrap(end[1] - p1_[1], s_.periodic_v(), s_.domain().v);
    return std::hypot(du, dv);
  }

 private:
  const ParametricSurface& s_;
  Param2 p0_, p1_;
  OdeSpec spec_;
  Vec3 target_;
  Param2 e1_{}, e2_{}, delta_{};
  double chord_angle_ = 0, max_length_ = 0;
  mutable Param2 end_{};
};

}  // namespace

GeodesicPath geodesic_bvp(const ParametricSurface& s, Param2 p0, Param2 p1, const OdeSpec& spec) {
  const Shooter shooter(s, p0, p1, spec);
  if (!(shooter.max_length() > 0.0))
    throw Error(ErrorCode::InvalidArgument, "geodesic end points coincide", {p0[0], p0[1]});
  const double tol = 1e-9 * s.scale();
  const double pi = std::numbers::pi;
  const double offsets[8] = {0.0, pi / 4, -pi / 4, pi / 2, -pi / 2, 3 * pi / 4, -3 * pi / 4, pi};

  struct Solution {
    double theta;
    GeodesicPath path;
  };
  std::vector<Solution> found;
  double best_residual = std::numeric_limits<double>::infinity();
  for (double off : offsets) {
    const double seed = shooter.chord_angle() + off;
    double theta = seed;
    try {
      const Shot first = shooter.shoot(seed);
      best_residual = std::min(best_residual, first.distance);
      if (std::abs(first.residual) > tol) {
        theta = root_find([&](double th) { return shooter.shoot(th).residual; }, seed, seed + 1e-3,
                          {tol, 100}, false);
      }
    } catch (const Error&) {
      // A shot through a coordinate singularity or a stalled secant only loses this seed.
      continue;
    }
    Shot shot;
    try {
      shot = shooter.shoot(theta);
    } catch (const Error&) {
      continue;
    }
    best_residual = std::min(best_residual, shot.distance);
    const Param2 end = shooter.last_end();
    const double err = shooter.endpoint_error(end);
    if (!(err <= 1e-6)) continue;
    const double norm_theta = theta - kTwoPi * std::floor(theta / kTwoPi);
    bool duplicate = false;
    for (const auto& f : found) {
      double d = std::abs(f.theta - norm_theta);
      d = std::min(d, kTwoPi - d);
      if (d <= 1e-7) duplicate = true;
    }
    if (duplicate) continue;
    GeodesicPath path =
        to_path(integrate_geodesic(s, p0, shooter.direction(theta), shot.length, spec,
                                   uniform_outputs(shot.length, shot.length / 128.0)));
    path.endpoint_error = err;
    path.initial_angle = theta;
    found.push_back({norm_theta, std::move(path)});
  }
  if (found.empty())
    throw Error(ErrorCode::NoConvergence,
                "geodesic shooting did not converge; best miss distance = " + std::to_string(best_residual),
                {p1[0], p1[1]});
  std::stable_sort(found.begin(), found.end(),
                   [](const Solution& a, const Solution& b) { return a.path.length < b.path.length; });
  if (found.size() > 1 && found[1].path.length - found[0].path.length <= 1e-8 * std::max(1.0, s.scale())) {
    std::vector<GeodesicPath> paths;
    for (const auto& f : found)
      if (f.path.length - found[0].path.length <= 1e-8 * std::max(1.0, s.scale())) paths.push_back(f.path);
    throw GeodesicMultiplicity(std::move(paths));
  }
  return std::move(found[0].path);
}

double path_speed_squared(const ParametricSurface& s, const GeodesicSample& sample) {
  return speed2(forms(s, sample.u, sample.v), sample.du, sample.dv);
}

double path_geodesic_curvature(const ParametricSurface& s, const GeodesicSample& sample) {
  const FormBundle fb = forms(s, sample.u, sample.v);
  const double p[2] = {sample.du, sample.dv};
  double acc[2];
  for (int c = 0; c < 2; ++c) {
    acc[c] = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) acc[c] -= fb.Gamma(c, a, b) * p[a] * p[b];
  }
  // Quadratic Taylor curve in parameter space through the sample.
  const double u0 = sample.u, v0 = sample.v, du = p[0], dv = p[1], au = acc[0], av = acc[1];
  const auto local = make_surface_curve(
      s,
      [=](auto t) {
        return std::array<decltype(t), 2>{u0 + du * t + 0.5 * au * t * t, v0 + dv * t + 0.5 * av * t * t};
      },
      {-1.0, 1.0});
  return curvature_split(local, 0.0).kappa_g;
}

}  // namespace diffgeo
