#include <algorithm>
#include <cmath>
#include <numbers>

#include "diffgeo/curve.hpp"
#include "diffgeo/errors.hpp"

namespace diffgeo {

namespace {

CurvePoint widen(const Vec3T<Jet1<3>>& p) {
  CurvePoint out;
  for (int k = 0; k <= 3; ++k) {
    out.x[k] = p.x[k];
    out.y[k] = p.y[k];
    out.z[k] = p.z[k];
  }
  detail::poison_above(out, 3);
  return out;
}

CurvePoint widen(const Vec3T<Jet1<2>>& p) {
  CurvePoint out;
  for (int k = 0; k <= 2; ++k) {
    out.x[k] = p.x[k];
    out.y[k] = p.y[k];
    out.z[k] = p.z[k];
  }
  detail::poison_above(out, 2);
  return out;
}

class ArclengthCurve final : public detail::LocalJetCurve {
 public:
  ArclengthCurve(ParametricCurve base, Trajectory map) : base_(std::move(base)), map_(std::move(map)) {}

  CurvePoint local(double s0) const override {
    const Interval& d = base_.domain();
    const double t0 = std::clamp(map_.at(s0)[0], d.lo, d.hi);
    const CurvePoint p = base_.jet(t0);
    const Vec3T<Jet1<3>> d1 = derivative(p);
    const Jet1<3> rate = 1.0 / sqrt(dot(d1, d1));  // dt/ds as a function of t
    // Picard iteration for t(s); each pass fixes one more coefficient.
    CurveJet ts(t0);
    for (int pass = 0; pass < kCurveOrder; ++pass) {
      CurveJet offset = ts - t0;
      offset[0] = 0.0;
      ts = integrate(compose(rate, offset), t0);
    }
    CurveJet offset = ts - t0;
    offset[0] = 0.0;
    CurvePoint out = compose(p, offset);
    detail::poison_above(out, base_.valid_order());
    return out;
  }

 private:
  ParametricCurve base_;
  Trajectory map_;
};

class InvoluteCurve final : public detail::LocalJetCurve {
 public:
  InvoluteCurve(ParametricCurve base, double c) : base_(std::move(base)), c_(c) {}

  CurvePoint local(double s0) const override {
    const CurvePoint p = base_.jet(s0);
    const Vec3T<Jet1<3>> d1 = derivative(p);
    const Vec3T<Jet1<3>> T = d1 / sqrt(dot(d1, d1));
    const Jet1<3> arm = c_ - Jet1<3>::variable(s0);
    return widen(truncate<3>(p) + T * arm);
  }

 private:
  ParametricCurve base_;
  double c_;
};

class IndicatrixCurve final : public detail::LocalJetCurve {
 public:
  IndicatrixCurve(ParametricCurve base, Indicatrix which) : base_(std::move(base)), which_(which) {}

  CurvePoint local(double t0) const override {
    const CurvePoint p = base_.jet(t0);
    const auto j = detail::frenet_jets(p);
    if (!(j.speed.value() > base_.eps_reg()))
      throw Error(ErrorCode::SingularPoint, "curve is not regular (|r'| ~ 0)", {t0});
    if (which_ == Indicatrix::T) return widen(j.T);
    if (!(j.kappa.value() > base_.eps_inflect()))
      throw Error(ErrorCode::InflectionPoint, "curvature vanishes; N and B are undefined", {t0});
    return widen(which_ == Indicatrix::N ? j.N : j.B);
  }

 private:
  ParametricCurve base_;
  Indicatrix which_;
};

double probe(const Interval& d, int i, int n) { return d.lo + (i + 0.5) / n * d.width(); }

}  // namespace

ParametricCurve reparam_to_arclength(const ParametricCurve& c, const OdeSpec& spec) {
  const Interval d = c.domain();
  const double length = arc_length(c, d.lo, d.hi);
  OdeSpec s = spec;
  s.max_step = std::min(s.max_step, length / 256.0);
  s.min_step = std::min(s.min_step, s.max_step);
  auto field = [&](double, std::span<const double> y, std::span<double> dy) {
    const double t = std::clamp(y[0], d.lo, d.hi);
    const double sp = norm(coefficient(c.jet(t), 1));
    if (!(sp > c.eps_reg())) throw Error(ErrorCode::SingularPoint, "curve is not regular (|r'| ~ 0)", {t});
    dy[0] = 1.0 / sp;
  };
  Trajectory map = ode_solve(field, {d.lo}, 0.0, length, s);
  const int order = std::min(c.valid_order(), kCurveOrder);
  return ParametricCurve(std::make_shared<ArclengthCurve>(c, std::move(map)), {0.0, length}, order);
}

ParametricCurve involute(const ParametricCurve& natural, double c) {
  const Interval& d = natural.domain();
  for (int i = 0; i < 16; ++i) {
    const double s = probe(d, i, 16);
    const double sp = norm(coefficient(natural.jet(s), 1));
    if (std::abs(sp - 1.0) > 1e-6)
      throw Error(ErrorCode::InvalidArgument, "involute needs an arclength-parameterized curve", {s});
    if (!(curvature(natural, s) > natural.eps_inflect()))
      throw Error(ErrorCode::InflectionPoint, "tangent turning vanishes; the involute is singular", {s});
  }
  return ParametricCurve(std::make_shared<InvoluteCurve>(natural, c), d, std::min(3, natural.valid_order()));
}

ParametricCurve spherical_indicatrix(const ParametricCurve& c, Indicatrix which) {
  const int order = which == Indicatrix::T ? 3 : 2;
  return ParametricCurve(std::make_shared<IndicatrixCurve>(c, which), c.domain(),
                         std::min(order, c.valid_order() - (which == Indicatrix::T ? 1 : 2)));
}

IndicatrixCurvature indicatrix_kappa_tau(const ParametricCurve& c, double t, Indicatrix which) {
  if (which == Indicatrix::N)
    throw Error(ErrorCode::InvalidArgument, "closed forms are provided for the T and B indicatrices only");
  const CurvatureRates r = curvature_rates(c, t);
  if (std::isnan(r.dtau))
    throw Error(ErrorCode::InsufficientOrder, "indicatrix torsion needs derivatives of order 4", {t});
  const double w2 = r.kappa * r.kappa + r.tau * r.tau;
  const double cross_rate = r.dkappa * r.tau - r.kappa * r.dtau;
  IndicatrixCurvature out;
  if (which == Indicatrix::T) {
    out.kappa = std::sqrt(w2) / r.kappa;
    out.tau = -cross_rate / (r.kappa * w2);
    return out;
  }
  if (!(std::abs(r.tau) > c.eps_inflect()))
    throw Error(ErrorCode::ZeroTorsion, "torsion vanishes; the binormal indicatrix degenerates", {t});
  out.kappa = std::sqrt(w2) / std::abs(r.tau);
  out.tau = cross_rate / (r.tau * w2);
  return out;
}

ReconstructedCurve reconstruct_from_kappa_tau(const std::function<double(double)>& kappa,
                                              const std::function<double(double)>& tau, const Vec3& r0,
                                              const Frame& f0, double length, const OdeSpec& spec,
                                              double sample_step) {
  if (!(length > 0.0)) throw Error(ErrorCode::InvalidArgument, "reconstruction length must be positive");
  if (!(sample_step > 0.0)) throw Error(ErrorCode::InvalidArgument, "sample step must be positive");
  const int n = static_cast<int>(std::ceil(length / sample_step));
  std::vector<double> outputs;
  for (int k = 1; k < n; ++k) outputs.push_back(length * k / n);
  return reconstruct_from_kappa_tau_at(kappa, tau, r0, f0, length, outputs, spec);
}

ReconstructedCurve reconstruct_from_kappa_tau_at(const std::function<double(double)>& kappa,
                                                 const std::function<double(double)>& tau, const Vec3& r0,
                                                 const Frame& f0, double length, std::span<const double> outputs,
                                                 const OdeSpec& spec) {
  if (!(length > 0.0)) throw Error(ErrorCode::InvalidArgument, "reconstruction length must be positive");
  const double ortho = std::max({std::abs(norm(f0.T) - 1), std::abs(norm(f0.N) - 1), std::abs(norm(f0.B) - 1),
                                 std::abs(dot(f0.T, f0.N)), std::abs(dot(f0.T, f0.B)), std::abs(dot(f0.N, f0.B)),
                                 std::abs(dot(cross(f0.T, f0.N), f0.B) - 1)});
  if (!(ortho <= 1e-10))
    throw Error(ErrorCode::NonOrthonormalSeed, "initial frame must be orthonormal and right-handed");

  auto field = [&](double s, std::span<const double> y, std::span<double> dy) {
    const double k = kappa(s);
    const double w = tau(s);
    if (!(k > 0.0)) throw Error(ErrorCode::InvalidArgument, "curvature must be positive for reconstruction", {s});
    for (int i = 0; i < 3; ++i) {
      const double T = y[3 + i], N = y[6 + i], B = y[9 + i];
      dy[i] = T;
      dy[3 + i] = k * N;
      dy[6 + i] = -k * T + w * B;
      dy[9 + i] = -w * N;
    }
  };
  OdeHooks hooks;
  hooks.project = [](double, OdeState& y) {
    Vec3 T{y[3], y[4], y[5]}, N{y[6], y[7], y[8]};
    T = normalized(T);
    N = normalized(N - dot(N, T) * T);
    const Vec3 B = cross(T, N);
    const Vec3 v[3] = {T, N, B};
    for (int j = 0; j < 3; ++j) {
      y[3 + 3 * j] = v[j].x;
      y[4 + 3 * j] = v[j].y;
      y[5 + 3 * j] = v[j].z;
    }
  };
  OdeState y0 = {r0.x, r0.y, r0.z, f0.T.x, f0.T.y, f0.T.z, f0.N.x, f0.N.y, f0.N.z, f0.B.x, f0.B.y, f0.B.z};
  const Trajectory tr = ode_solve(field, y0, 0.0, length, spec, hooks, outputs);
  ReconstructedCurve out;
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    const auto& y = tr.y[i];
    out.s.push_back(tr.t[i]);
    out.r.push_back({y[0], y[1], y[2]});
    out.frame.push_back({{y[3], y[4], y[5]}, {y[6], y[7], y[8]}, {y[9], y[10], y[11]}});
  }
  return out;
}

std::vector<double> chebyshev_nodes(Interval d, int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "need at least two Chebyshev nodes");
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    x[static_cast<std::size_t>(k)] = d.mid() - 0.5 * d.width() * std::cos(std::numbers::pi * (k + 0.5) / n);
  return x;
}

namespace {

class ChebyshevCurve final : public ParametricCurve::Model {
 public:
  ChebyshevCurve(std::vector<Vec3> coeffs, Interval d) : c_(std::move(coeffs)), d_(d) {}
  Vec3 at(double t) const override { return eval(t); }
  CurvePoint at(const CurveJet& t) const override { return eval(t); }

 private:
  // Clenshaw recurrence on the mapped variable x in [-1, 1].
  template <class T>
  Vec3T<T> eval(const T& t) const {
    const T x = (2.0 * t - (d_.lo + d_.hi)) / d_.width();
    Vec3T<T> b1{T(0.0), T(0.0), T(0.0)}, b2 = b1;
    for (std::size_t k = c_.size() - 1; k >= 1; --k) {
      const Vec3T<T> b0 = 2.0 * x * b1 - b2 + Vec3T<T>{T(c_[k].x), T(c_[k].y), T(c_[k].z)};
      b2 = b1;
      b1 = b0;
    }
    return x * b1 - b2 + Vec3T<T>{T(c_[0].x), T(c_[0].y), T(c_[0].z)};
  }

  std::vector<Vec3> c_;
  Interval d_;
};

}  // namespace

ParametricCurve chebyshev_curve(std::span<const Vec3> values, Interval d) {
  const std::size_t n = values.size();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "need at least two Chebyshev values");
  // Nodes ascend, so node k sits at angle pi (n - k - 1/2) / n.
  std::vector<Vec3> c(n);
  for (std::size_t j = 0; j < n; ++j) {
    Vec3 acc{0, 0, 0};
    for (std::size_t k = 0; k < n; ++k) {
      const double theta = std::numbers::pi * (static_cast<double>(n - k) - 0.5) / static_cast<double>(n);
      acc += std::cos(static_cast<double>(j) * theta) * values[k];
    }
    c[j] = (j == 0 ? 1.0 : 2.0) / static_cast<double>(n) * acc;
  }
  return ParametricCurve(std::make_shared<ChebyshevCurve>(std::move(c), d), d);
}

}  // namespace diffgeo
