#include "diffgeo/surface_curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "diffgeo/errors.hpp"

namespace diffgeo {

SurfaceCurve::SurfaceCurve(ParametricSurface host, std::shared_ptr<const Model> model, Interval domain)
    : host_(std::move(host)), model_(std::move(model)), domain_(domain) {
  if (!(domain.lo < domain.hi)) throw Error(ErrorCode::InvalidArgument, "curve domain must satisfy lo < hi");
}

CurvePoint SurfaceCurve::space_jet(double t) const {
  const auto p = param_jet(t);
  return host_.compose(p[0], p[1]);
}

Vec3 SurfaceCurve::position(double t) const {
  const Param2 p = param(t);
  return host_.position(p[0], p[1]);
}

namespace {

class CompositeCurve final : public ParametricCurve::Model {
 public:
  CompositeCurve(ParametricSurface host, std::shared_ptr<const SurfaceCurve::Model> m)
      : host_(std::move(host)), m_(std::move(m)) {}
  Vec3 at(double t) const override {
    const Param2 p = m_->at(t);
    return host_.position(p[0], p[1]);
  }
  CurvePoint at(const CurveJet& t) const override {
    const auto p = m_->at(t);
    return host_.compose(p[0], p[1]);
  }

 private:
  ParametricSurface host_;
  std::shared_ptr<const SurfaceCurve::Model> m_;
};

class ExprSurfaceCurve final : public SurfaceCurve::Model {
 public:
  ExprSurfaceCurve(Expr u, Expr v) : u_(std::move(u)), v_(std::move(v)) {}
  Param2 at(double t) const override {
    return {u_.evaluate(std::span<const double>(&t, 1)), v_.evaluate(std::span<const double>(&t, 1))};
  }
  std::array<CurveJet, 2> at(const CurveJet& t) const override {
    return {u_.evaluate(std::span<const CurveJet>(&t, 1)), v_.evaluate(std::span<const CurveJet>(&t, 1))};
  }

 private:
  Expr u_, v_;
};

}  // namespace

ParametricCurve SurfaceCurve::space_curve() const {
  return ParametricCurve(std::make_shared<CompositeCurve>(host_, model_), domain_);
}

SurfaceCurve surface_curve_from_exprs(const ParametricSurface& host, const Expr& u, const Expr& v,
                                      Interval domain) {
  const std::vector<std::string> names = {"t"};
  return SurfaceCurve(host, std::make_shared<ExprSurfaceCurve>(u.bind(names), v.bind(names)), domain);
}

namespace {

struct CurveAt {
  Param2 p;
  std::array<CurveJet, 2> pj;
  CurvePoint r;
  Vec3 d1, d2;
  double speed;
  FormBundle fb;
};

CurveAt curve_at(const SurfaceCurve& c, double t) {
  CurveAt a;
  a.pj = c.param_jet(t);
  a.p = {a.pj[0].value(), a.pj[1].value()};
  a.r = c.host().compose(a.pj[0], a.pj[1]);
  a.d1 = coefficient(a.r, 1);
  a.d2 = coefficient(a.r, 2);
  a.speed = norm(a.d1);
  if (!(a.speed > 1e-12 * c.host().scale()))
    throw Error(ErrorCode::SingularPoint, "surface curve is not regular (|r'| ~ 0)", {t});
  a.fb = forms(c.host(), a.p[0], a.p[1]);
  return a;
}

// Unit normal along the curve as a jet in t.
Vec3T<Jet1<2>> normal_along(const SurfaceCurve& c, const std::array<CurveJet, 2>& pj) {
  const double u0 = pj[0].value(), v0 = pj[1].value();
  const auto r = c.host().jet<3>(u0, v0);
  CurveJet du = pj[0] - u0, dv = pj[1] - v0;
  du[0] = 0.0;
  dv[0] = 0.0;
  const auto E1 = compose(partial_u(r), du, dv);
  const auto E2 = compose(partial_v(r), du, dv);
  const auto n = cross(E1, E2);
  return n / sqrt(dot(n, n));
}

double metric_norm(const FormBundle& fb, Param2 d) {
  return std::sqrt(fb.E * d[0] * d[0] + 2.0 * fb.F * d[0] * d[1] + fb.G * d[1] * d[1]);
}

TangentDirection make_direction(const FormBundle& fb, Param2 d) {
  const double len = metric_norm(fb, d);
  TangentDirection out;
  out.components = {d[0] / len, d[1] / len};
  out.vector = fb.tangent(out.components[0], out.components[1]);
  return out;
}

}  // namespace

double normal_curvature(const FormBundle& fb, Param2 d) {
  const double II = fb.e * d[0] * d[0] + 2.0 * fb.f * d[0] * d[1] + fb.g * d[1] * d[1];
  const double I = fb.E * d[0] * d[0] + 2.0 * fb.F * d[0] * d[1] + fb.G * d[1] * d[1];
  return II / I;
}

CurvatureSplit curvature_split(const SurfaceCurve& c, double t) {
  const CurveAt a = curve_at(c, t);
  const double sp = a.speed;
  const Vec3 T = a.d1 / sp;
  CurvatureSplit out;
  out.K_vec = (a.d2 - dot(a.d2, T) * T) / (sp * sp);
  const Vec3& n = a.fb.n;
  out.kappa_n = dot(n, out.K_vec);
  out.u_vec = cross(n, T);
  out.kappa_g = dot(out.u_vec, out.K_vec);
  out.kappa = norm(out.K_vec);
  out.kappa_n_quotient = normal_curvature(a.fb, {a.pj[0][1], a.pj[1][1]});
  out.kappa_g_extrinsic = dot(a.d2, cross(n, a.d1)) / (sp * sp * sp);

  // Arclength derivatives of (u, v).
  const double sp_t = dot(a.d1, a.d2) / sp;
  const double u1 = a.pj[0][1] / sp, v1 = a.pj[1][1] / sp;
  const double u2 = (a.pj[0][2] - a.pj[0][1] * sp_t / sp) / (sp * sp);
  const double v2 = (a.pj[1][2] - a.pj[1][1] * sp_t / sp) / (sp * sp);
  const FormBundle& fb = a.fb;
  auto G = [&](int k, int i, int j) { return fb.Gamma(k, i, j); };
  out.kappa_g_intrinsic =
      fb.sqrt_a * (G(1, 0, 0) * u1 * u1 * u1 + (2.0 * G(1, 0, 1) - G(0, 0, 0)) * u1 * u1 * v1 +
                   (G(1, 1, 1) - 2.0 * G(0, 0, 1)) * u1 * v1 * v1 - G(0, 1, 1) * v1 * v1 * v1 + u1 * v2 - u2 * v1);
  return out;
}

GeodesicTorsion geodesic_torsion(const SurfaceCurve& c, double t) {
  const CurveAt a = curve_at(c, t);
  const auto n = normal_along(c, a.pj);
  const Vec3 n0 = value_of(n);
  const Vec3 nt = coefficient(n, 1);
  const Vec3 T = a.d1 / a.speed;
  GeodesicTorsion out;
  out.tau_g = dot(n0, cross(nt / a.speed, T));
  const CurvatureData cd = curvatures(a.fb, c.host().scale());
  if (!cd.is_umbilic) {
    // theta runs from d1 toward d1 x n.
    const double cos_t = dot(T, *cd.dir1);
    const double sin_t = dot(T, cross(*cd.dir1, a.fb.n));
    out.principal_form = (cd.kappa1 - cd.kappa2) * sin_t * cos_t;
  }
  return out;
}

AsymptoticDirections asymptotic_directions(const ParametricSurface& s, double u, double v) {
  const FormBundle fb = forms(s, u, v);
  const CurvatureData cd = curvatures(fb, s.scale());
  AsymptoticDirections out;
  switch (cd.shape) {
    case ShapeClass::Flat:
      out.all_directions = true;
      return out;
    case ShapeClass::Elliptic:
      return out;
    case ShapeClass::Parabolic: {
      const Param2 a = {fb.g, -fb.f}, b = {-fb.f, fb.e};
      out.directions.push_back(make_direction(fb, std::hypot(a[0], a[1]) >= std::hypot(b[0], b[1]) ? a : b));
      break;
    }
    case ShapeClass::Hyperbolic: {
      const double sgn = fb.f >= 0 ? 1.0 : -1.0;
      out.directions.push_back(make_direction(fb, asymptotic_family_direction(fb, 0, sgn)));
      out.directions.push_back(make_direction(fb, asymptotic_family_direction(fb, 1, sgn)));
      break;
    }
  }
  for (const auto& d : out.directions) out.normal_curvatures.push_back(normal_curvature(fb, d.components));
  return out;
}

Param2 asymptotic_family_direction(const FormBundle& fb, int family, double f_sign) {
  const double disc = fb.f * fb.f - fb.e * fb.g;
  const double q = -(fb.f + f_sign * std::sqrt(std::max(0.0, disc)));
  const Param2 d = family == 0 ? Param2{fb.g, q} : Param2{q, fb.e};
  const double len = metric_norm(fb, d);
  if (!(len > 0.0)) throw Error(ErrorCode::ZeroVector, "asymptotic direction degenerates");
  return {d[0] / len, d[1] / len};
}

PrincipalDirections principal_direction_field(const ParametricSurface& s, double u, double v) {
  const auto r = s.jet<2>(u, v);
  const FormBundle fb = detail::forms_from_jet<2>(r, s.eps_reg(), u, v);
  const CurvatureData cd = curvatures(fb, s.scale());
  if (cd.is_umbilic) throw Error(ErrorCode::UmbilicPoint, "umbilic point: every direction is principal", {u, v});
  const auto c = cross(partial_u(r), partial_v(r));
  const auto n = c / sqrt(dot(c, c));
  const Vec3 nu = coefficient(n, 1, 0), nv = coefficient(n, 0, 1);
  PrincipalDirections out;
  out.kappa1 = cd.kappa1;
  out.kappa2 = cd.kappa2;
  out.dir1 = {cd.comp1, *cd.dir1};
  out.dir2 = {cd.comp2, *cd.dir2};
  const TangentDirection* dirs[2] = {&out.dir1, &out.dir2};
  const double k[2] = {cd.kappa1, cd.kappa2};
  for (int i = 0; i < 2; ++i) {
    const Param2 d = dirs[i]->components;
    const Vec3 dn = d[0] * nu + d[1] * nv;
    out.rodrigues[i] = norm(dn + k[i] * dirs[i]->vector);
  }
  return out;
}

TangentDirection conjugate_direction(const ParametricSurface& s, double u, double v, Param2 dir) {
  const FormBundle fb = forms(s, u, v);
  const double len = metric_norm(fb, dir);
  if (!(len > 0.0)) throw Error(ErrorCode::ZeroVector, "direction must be nonzero", {u, v});
  const Param2 d = {dir[0] / len, dir[1] / len};
  const CurvatureData cd = curvatures(fb, s.scale());
  const Param2 w = {fb.e * d[0] + fb.f * d[1], fb.f * d[0] + fb.g * d[1]};
  const double bscale = std::max({std::abs(fb.e), std::abs(fb.f), std::abs(fb.g)});
  // Conjugate delta satisfies w . delta = 0, measured against a metric-unit delta.
  const Param2 delta = {-w[1], w[0]};
  const double dl = metric_norm(fb, delta);
  if (cd.shape == ShapeClass::Flat || !(dl > 1e-10 * std::max(bscale, 1.0 / s.scale())))
    throw Error(ErrorCode::NoUniqueConjugate, "second form degenerates along this direction", {u, v});
  return make_direction(fb, delta);
}

AsymptoticLine trace_asymptotic_line(const ParametricSurface& s, Param2 start, int family, double length,
                                     const OdeSpec& spec, double sample_step) {
  const FormBundle fb0 = forms(s, start[0], start[1]);
  if (curvatures(fb0, s.scale()).shape != ShapeClass::Hyperbolic)
    throw Error(ErrorCode::InvalidArgument, "asymptotic line tracing needs a hyperbolic start point",
                {start[0], start[1]});
  const double sgn = fb0.f >= 0 ? 1.0 : -1.0;
  const Param2 d0 = asymptotic_family_direction(fb0, family, sgn);
  const Rectangle dom = s.domain();

  // State: u, v and the previous direction, which fixes the orientation of the field.
  auto oriented = [&](double u, double v, double pu, double pv) {
    const FormBundle fb = forms(s, u, v);
    Param2 d = asymptotic_family_direction(fb, family, sgn);
    if (d[0] * pu + d[1] * pv < 0) d = {-d[0], -d[1]};
    return d;
  };
  auto field = [&](double, std::span<const double> y, std::span<double> dy) {
    const Param2 d = oriented(y[0], y[1], y[2], y[3]);
    dy[0] = d[0];
    dy[1] = d[1];
    dy[2] = 0.0;
    dy[3] = 0.0;
  };
  OdeHooks hooks;
  hooks.project = [&](double, OdeState& y) {
    const Param2 d = oriented(y[0], y[1], y[2], y[3]);
    y[2] = d[0];
    y[3] = d[1];
  };
  hooks.stop = [&](double, const OdeState& y) {
    return (!s.periodic_u() && !dom.u.contains(y[0])) || (!s.periodic_v() && !dom.v.contains(y[1]));
  };
  std::vector<double> outputs;
  if (sample_step > 0) {
    const int n = static_cast<int>(std::ceil(length / sample_step));
    for (int k = 1; k < n; ++k) outputs.push_back(length * k / n);
  }
  const Trajectory tr = ode_solve(field, {start[0], start[1], d0[0], d0[1]}, 0.0, length, spec, hooks, outputs);
  AsymptoticLine out;
  out.left_domain = tr.stopped_early;
  for (std::size_t i = 0; i < tr.t.size(); ++i)
    out.samples.push_back({tr.t[i], tr.y[i][0], tr.y[i][1], tr.y[i][2], tr.y[i][3]});
  return out;
}

AsymptoticTorsion asymptotic_line_torsion(const ParametricSurface& s, Param2 at, int family, double f_sign) {
  const double u0 = at[0], v0 = at[1];
  const auto r = s.jet<4>(u0, v0);
  const auto E1 = partial_u(r), E2 = partial_v(r);
  const auto c = cross(E1, E2);
  const auto n = truncate<2>(c / sqrt(dot(c, c)));
  const Jet2<2> e = dot(partial_u(E1), n), f = dot(partial_v(E1), n), g = dot(partial_v(E2), n);
  const Jet2<2> E = truncate<2>(dot(E1, E1)), F = truncate<2>(dot(E1, E2)), G = truncate<2>(dot(E2, E2));
  const Jet2<2> disc = f * f - e * g;
  if (!(disc.value() > 0.0))
    throw Error(ErrorCode::InvalidArgument, "asymptotic line torsion needs a hyperbolic point", {u0, v0});
  const Jet2<2> q = -(f + f_sign * sqrt(disc));
  const Jet2<2> a = family == 0 ? g : q;
  const Jet2<2> b = family == 0 ? q : e;
  const Jet2<2> len = sqrt(E * a * a + 2.0 * F * a * b + G * b * b);
  const Jet2<2> du = a / len, dv = b / len;

  // Picard iteration for (u(s), v(s)); three passes fix the third-order jet.
  Jet1<3> U(u0), V(v0);
  for (int pass = 0; pass < 3; ++pass) {
    Jet1<3> ou = U - u0, ov = V - v0;
    ou[0] = 0.0;
    ov[0] = 0.0;
    const Jet1<3> nu = integrate(compose(du, ou, ov), u0);
    const Jet1<3> nv = integrate(compose(dv, ou, ov), v0);
    U = nu;
    V = nv;
  }
  CurveJet U4, V4;
  for (int k = 0; k <= 3; ++k) {
    U4[k] = U[k];
    V4[k] = V[k];
  }
  const CurvePoint rc = s.compose(U4, V4);
  const Vec3 d1 = coefficient(rc, 1), d2 = coefficient(rc, 2), d3 = coefficient(rc, 3);
  const Vec3 bc = cross(d1, d2);
  const double kappa = norm(bc) / std::pow(norm(d1), 3);
  if (!(kappa > 1e-10 / s.scale()))
    throw Error(ErrorCode::InflectionPoint, "asymptotic line is straight here; torsion is undefined", {u0, v0});
  AsymptoticTorsion out;
  out.tau = dot(d1, cross(d2, d3)) / dot(bc, bc);
  out.K = curvatures(forms(s, u0, v0), s.scale()).K;
  out.residual = std::abs(out.tau * out.tau + out.K);
  return out;
}

LiouvilleCheck liouville_check(const SurfaceCurve& c, double t) {
  const CurveAt a = curve_at(c, t);
  const FormBundle& fb = a.fb;
  auto orthogonal = [](const FormBundle& f) { return std::abs(f.F) <= 1e-10 * std::sqrt(f.E * f.G); };
  if (!orthogonal(fb)) throw Error(ErrorCode::NonOrthogonalPatch, "Liouville's formula needs F = 0", a.p.data() ? std::vector<double>{a.p[0], a.p[1]} : std::vector<double>{});
  for (int i = 0; i < 5; ++i) {
    const double ts = c.domain().lo + (i + 0.5) / 5.0 * c.domain().width();
    const Param2 p = c.param(ts);
    if (!orthogonal(forms(c.host(), p[0], p[1])))
      throw Error(ErrorCode::NonOrthogonalPatch, "Liouville's formula needs F = 0 along the curve", {p[0], p[1]});
  }
  const auto r = c.host().jet<2>(a.p[0], a.p[1]);
  const Vec3 ruv = coefficient(r, 1, 1);
  const double E_v = 2.0 * dot(fb.E1, ruv), G_u = 2.0 * dot(fb.E2, ruv);
  const double sE = std::sqrt(fb.E), sG = std::sqrt(fb.G);
  const double kappa_u = -E_v / (2.0 * fb.E * sG);
  const double kappa_v = G_u / (2.0 * fb.G * sE);

  // phi along the curve: T = cos(phi) E1/|E1| + sin(phi) E2/|E2|.
  CurveJet du = a.pj[0] - a.p[0], dv = a.pj[1] - a.p[1];
  du[0] = 0.0;
  dv[0] = 0.0;
  const auto E1 = compose(partial_u(r), du, dv);
  const auto E2 = compose(partial_v(r), du, dv);
  const Jet1<1> rootE = sqrt(dot(E1, E1)), rootG = sqrt(dot(E2, E2));
  const Jet1<1> up = truncate<1>(derivative(a.pj[0])), vp = truncate<1>(derivative(a.pj[1]));
  const Jet1<1> phi = atan2(vp * rootG, up * rootE);
  const double dphi_ds = phi[1] / a.speed;

  LiouvilleCheck out;
  out.kappa_g = curvature_split(c, t).kappa_g;
  out.liouville = dphi_ds + kappa_u * std::cos(phi.value()) + kappa_v * std::sin(phi.value());
  out.residual = std::abs(out.kappa_g - out.liouville);
  return out;
}

BonnetCheck bonnet_torsion_check(const SurfaceCurve& c, double t) {
  const CurveAt a = curve_at(c, t);
  const ParametricCurve sc = c.space_curve();
  const FrenetData fd = frenet(sc, t);
  const auto fj = detail::frenet_jets(a.r);
  const auto n = normal_along(c, a.pj);
  const Jet1<2> nN = dot(n, fj.N), nB = dot(n, fj.B);
  if (!(std::abs(nN.value()) > 1e-8))
    throw Error(ErrorCode::AsymptoticPoint, "curve is asymptotic here (n . N ~ 0)", {t});
  // psi is the rotation from N to n about T; phi = -psi runs from n to N.
  const Jet1<2> psi = atan2(nB, nN);
  BonnetCheck out;
  out.tau = fd.tau;
  out.tau_g = geodesic_torsion(c, t).tau_g;
  out.dphi_ds = -psi[1] / a.speed;
  out.residual = std::abs(out.tau_g - (out.tau - out.dphi_ds));
  return out;
}

}  // namespace diffgeo
