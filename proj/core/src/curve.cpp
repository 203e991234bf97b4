#include "diffgeo/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "diffgeo/errors.hpp"

namespace diffgeo {

ParametricCurve::ParametricCurve(std::shared_ptr<const Model> model, Interval domain, int valid_order)
    : model_(std::move(model)), domain_(domain), valid_order_(valid_order) {
  if (!(domain.lo < domain.hi)) throw Error(ErrorCode::InvalidArgument, "curve domain must satisfy lo < hi");
  double s = 1.0;
  for (int i = 0; i < 16; ++i) {
    const double t = domain.lo + (i + 0.5) / 16.0 * domain.width();
    try {
      const double r = norm(model_->at(t));
      if (std::isfinite(r)) s = std::max(s, r);
    } catch (const Error&) {
    }
  }
  scale_ = s;
}

namespace {

class DefinitionCurve final : public ParametricCurve::Model {
 public:
  DefinitionCurve(ShapeDefinition def, bool clamp) : def_(std::move(def)), clamp_(clamp) {}

  Vec3 at(double t) const override {
    const double v = checked(t);
    return def_.evaluate(std::span<const double>(&v, 1));
  }
  CurvePoint at(const CurveJet& t) const override {
    CurveJet v = t;
    v[0] = checked(t.value());
    return def_.evaluate(std::span<const CurveJet>(&v, 1));
  }

 private:
  double checked(double t) const {
    const Interval& d = def_.parameters[0].domain;
    if (d.contains(t)) return t;
    if (clamp_) return std::clamp(t, d.lo, d.hi);
    throw Error(ErrorCode::OutOfDomain, "parameter " + def_.parameters[0].name + " outside its declared interval",
                {t});
  }

  ShapeDefinition def_;
  bool clamp_;
};

void require_order(const ParametricCurve& c, int order, double t) {
  if (c.valid_order() < order)
    throw Error(ErrorCode::InsufficientOrder,
                "operation needs derivatives of order " + std::to_string(order) + " but the curve carries " +
                    std::to_string(c.valid_order()),
                {t});
}

// Value-level Frenet data with singularity checks.
struct Basics {
  Vec3 r, d1, d2, d3;
  double speed;
  double kappa;
};

Basics basics(const ParametricCurve& c, double t) {
  const CurvePoint p = c.jet(t);
  Basics b{value_of(p), coefficient(p, 1), coefficient(p, 2), {}, 0.0, 0.0};
  if (c.valid_order() >= 3) b.d3 = coefficient(p, 3);
  b.speed = norm(b.d1);
  if (!(b.speed > c.eps_reg())) throw Error(ErrorCode::SingularPoint, "curve is not regular (|r'| ~ 0)", {t});
  b.kappa = norm(cross(b.d1, b.d2)) / (b.speed * b.speed * b.speed);
  return b;
}

}  // namespace

ParametricCurve curve_from_definition(const ShapeDefinition& def, bool clamp) {
  if (def.kind != ShapeKind::Curve) throw Error(ErrorCode::InvalidArgument, "definition is not a curve");
  return ParametricCurve(std::make_shared<DefinitionCurve>(def, clamp), def.parameters[0].domain);
}

namespace detail {

FrenetJets frenet_jets(const CurvePoint& r) {
  FrenetJets f;
  const Vec3T<Jet1<3>> d1 = derivative(r);
  const Vec3T<Jet1<2>> d2 = truncate<2>(derivative(d1));
  const Vec3T<Jet1<1>> d3 = truncate<1>(derivative(d2));
  f.speed = sqrt(dot(d1, d1));
  f.T = d1 / f.speed;
  const auto d1t = truncate<2>(d1);
  const auto c = cross(d1t, d2);
  const Jet1<2> cn = sqrt(dot(c, c));
  f.B = c / cn;
  f.N = cross(f.B, truncate<2>(f.T));
  const Jet1<2> sp = truncate<2>(f.speed);
  f.kappa = cn / (sp * sp * sp);
  const auto c1 = truncate<1>(c);
  f.tau = dot(truncate<1>(d1t), cross(truncate<1>(d2), d3)) / dot(c1, c1);
  return f;
}

void poison_above(CurvePoint& p, int order) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int k = order + 1; k <= kCurveOrder; ++k) {
    p.x[k] = nan;
    p.y[k] = nan;
    p.z[k] = nan;
  }
}

}  // namespace detail

double curvature(const ParametricCurve& c, double t) { return basics(c, t).kappa; }

FrenetData frenet(const ParametricCurve& c, double t) {
  require_order(c, 3, t);
  const Basics b = basics(c, t);
  if (!(b.kappa > c.eps_inflect()))
    throw Error(ErrorCode::InflectionPoint, "curvature vanishes; N, B and tau are undefined", {t});
  FrenetData f;
  f.speed = b.speed;
  f.kappa = b.kappa;
  f.T = b.d1 / b.speed;
  const Vec3 bc = cross(b.d1, b.d2);
  f.B = normalized(bc);
  f.N = normalized(cross(b.d1, cross(b.d2, b.d1)));
  f.tau = dot(b.d1, cross(b.d2, b.d3)) / dot(bc, bc);
  f.darboux = f.tau * f.T + f.kappa * f.B;
  return f;
}

FrenetResiduals frenet_residuals(const ParametricCurve& c, double t) {
  const FrenetData fd = frenet(c, t);
  const auto j = detail::frenet_jets(c.jet(t));
  const double sp = fd.speed;
  const Vec3 dT = coefficient(j.T, 1) / sp;
  const Vec3 dN = coefficient(j.N, 1) / sp;
  const Vec3 dB = coefficient(j.B, 1) / sp;
  const Vec3 N = value_of(j.N), T = value_of(j.T), B = value_of(j.B);
  const double k = j.kappa.value(), tau = j.tau.value();
  FrenetResiduals r;
  r.dT = norm(dT - k * N);
  r.dN = norm(dN - (tau * B - k * T));
  r.dB = norm(dB + tau * N);
  r.kappa_tau = std::abs(std::abs(k * tau) - std::abs(dot(dT, dB)));
  r.lancret = std::abs(dot(dN, dN) - (k * k + tau * tau));
  return r;
}

CurvatureRates curvature_rates(const ParametricCurve& c, double t) {
  require_order(c, 3, t);
  (void)frenet(c, t);
  const auto j = detail::frenet_jets(c.jet(t));
  CurvatureRates r;
  r.kappa = j.kappa.value();
  r.tau = j.tau.value();
  const Jet1<1> ks = derivative(j.kappa) / truncate<1>(j.speed);
  r.dkappa = ks.value();
  if (c.valid_order() >= 4) {
    r.dtau = j.tau[1] / j.speed.value();
    r.d2kappa = ks[1] / j.speed.value();
  } else {
    r.dtau = r.d2kappa = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

double arc_length(const ParametricCurve& c, double t1, double t2, const QuadSpec& spec) {
  auto speed = [&](double t) {
    const double s = norm(coefficient(c.jet(t), 1));
    if (!(s > c.eps_reg())) throw Error(ErrorCode::SingularPoint, "curve is not regular (|r'| ~ 0)", {t});
    return s;
  };
  if (t2 < t1) return -quad_adaptive(speed, {t2, t1}, spec);
  return quad_adaptive(speed, {t1, t2}, spec);
}

OsculatingCircle osculating_circle(const ParametricCurve& c, double t) {
  const FrenetData f = frenet(c, t);
  return {c.position(t) + f.N / f.kappa, 1.0 / f.kappa};
}

OsculatingSphere osculating_sphere(const ParametricCurve& c, double t) {
  const FrenetData f = frenet(c, t);
  if (!(std::abs(f.tau) > c.eps_inflect()))
    throw Error(ErrorCode::ZeroTorsion, "torsion vanishes; the osculating sphere is undefined", {t});
  const CurvatureRates cr = curvature_rates(c, t);
  const double rk = 1.0 / f.kappa;
  const double rt = 1.0 / f.tau;
  const double drk = -cr.dkappa / (f.kappa * f.kappa);
  OsculatingSphere s;
  s.center = c.position(t) + rk * f.N + (rt * drk) * f.B;
  s.radius = std::sqrt(rk * rk + (rt * drk) * (rt * drk));
  return s;
}

FrenetLinesPlanes frenet_lines_and_planes(const ParametricCurve& c, double t) {
  const FrenetData f = frenet(c, t);
  const Vec3 p = c.position(t);
  return {{p, f.T}, {p, f.N}, {p, f.B}, {p, f.B}, {p, f.N}, {p, f.T}};
}

std::string_view to_string(CurveKind k) noexcept {
  switch (k) {
    case CurveKind::StraightLine:
      return "StraightLine";
    case CurveKind::Planar:
      return "Planar";
    case CurveKind::Helix:
      return "Helix";
    case CurveKind::General:
      return "General";
  }
  return "?";
}

CurveClass classify_curve(const ParametricCurve& c, int n_samples, double tol) {
  if (n_samples < 2) throw Error(ErrorCode::InvalidArgument, "classify_curve needs at least 2 samples");
  const Interval& d = c.domain();
  std::vector<double> kappa, tau;
  for (int k = 0; k < n_samples; ++k) {
    const double x = std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * n_samples));
    const double t = d.mid() + 0.5 * d.width() * x;
    const double kap = curvature(c, t);
    kappa.push_back(kap);
    if (kap > c.eps_inflect()) {
      tau.push_back(frenet(c, t).tau);
    } else {
      tau.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  }
  CurveClass out;
  out.max_kappa = *std::max_element(kappa.begin(), kappa.end());
  std::vector<double> ratios;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (std::isnan(tau[i])) continue;
    out.max_abs_tau = std::max(out.max_abs_tau, std::abs(tau[i]));
    ratios.push_back(tau[i] / kappa[i]);
  }
  if (!ratios.empty()) {
    double mean = 0.0;
    for (double r : ratios) mean += r;
    mean /= static_cast<double>(ratios.size());
    double var = 0.0;
    for (double r : ratios) var += (r - mean) * (r - mean);
    var /= static_cast<double>(ratios.size());
    out.ratio_rel_std = std::sqrt(var) / std::max(std::abs(mean), std::numeric_limits<double>::min());
  }
  if (out.max_kappa <= tol / c.scale())
    out.kind = CurveKind::StraightLine;
  else if (out.max_abs_tau <= tol)
    out.kind = CurveKind::Planar;
  else if (out.ratio_rel_std <= tol)
    out.kind = CurveKind::Helix;
  else
    out.kind = CurveKind::General;
  return out;
}

double sphericity_residual(const ParametricCurve& c, double t) {
  require_order(c, 4, t);
  const FrenetData f = frenet(c, t);
  if (!(std::abs(f.tau) > c.eps_inflect()))
    throw Error(ErrorCode::ZeroTorsion, "torsion vanishes; the sphericity condition is undefined", {t});
  const auto j = detail::frenet_jets(c.jet(t));
  const Jet1<1> sp = truncate<1>(j.speed);
  const Jet1<1> rk_s = derivative(1.0 / j.kappa) / sp;  // dR_kappa/ds
  const Jet1<1> prod = rk_s / j.tau;                    // R_tau dR_kappa/ds
  const double dprod = prod[1] / sp.value();
  return (1.0 / f.kappa) * f.tau + dprod;
}

}  // namespace diffgeo
