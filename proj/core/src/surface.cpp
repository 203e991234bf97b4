#include "diffgeo/surface.hpp"

#include <algorithm>
#include <cmath>

#include "diffgeo/errors.hpp"

namespace diffgeo {

ParametricSurface::ParametricSurface(std::shared_ptr<const Model> model, Rectangle domain, bool periodic_u,
                                     bool periodic_v)
    : model_(std::move(model)), domain_(domain), periodic_u_(periodic_u), periodic_v_(periodic_v) {
  if (!(domain.u.lo < domain.u.hi) || !(domain.v.lo < domain.v.hi))
    throw Error(ErrorCode::InvalidArgument, "surface domain must satisfy lo < hi in both parameters");
  double s = 1.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double u = domain.u.lo + (i + 0.5) / 4.0 * domain.u.width();
      const double v = domain.v.lo + (j + 0.5) / 4.0 * domain.v.width();
      try {
        const double r = norm(model_->at(u, v));
        if (std::isfinite(r)) s = std::max(s, r);
      } catch (const Error&) {
      }
    }
  scale_ = s;
}

namespace {

class DefinitionSurface final : public ParametricSurface::Model {
 public:
  DefinitionSurface(ShapeDefinition def, bool clamp) : def_(std::move(def)), clamp_(clamp) {}

  Vec3 at(double u, double v) const override {
    const std::array<double, 2> p = {checked(0, u), checked(1, v)};
    return def_.evaluate(std::span<const double>(p));
  }
  SurfacePointT<2> at(const Jet2<2>& u, const Jet2<2>& v) const override { return eval(u, v); }
  SurfacePointT<3> at(const Jet2<3>& u, const Jet2<3>& v) const override { return eval(u, v); }
  SurfacePointT<4> at(const Jet2<4>& u, const Jet2<4>& v) const override { return eval(u, v); }
  CurvePoint at(const CurveJet& u, const CurveJet& v) const override { return eval(u, v); }

 private:
  template <class J>
  Vec3T<J> eval(J u, J v) const {
    u[0] = checked(0, u.value());
    v[0] = checked(1, v.value());
    const std::array<J, 2> p = {u, v};
    return def_.evaluate(std::span<const J>(p));
  }

  double checked(int which, double x) const {
    const Interval& d = def_.parameters[which].domain;
    if (d.contains(x)) return x;
    if (clamp_) return std::clamp(x, d.lo, d.hi);
    throw Error(ErrorCode::OutOfDomain,
                "parameter " + def_.parameters[which].name + " outside its declared interval", {x});
  }

  ShapeDefinition def_;
  bool clamp_;
};

[[noreturn]] void singular(double u, double v) {
  throw Error(ErrorCode::SingularSurfacePoint, "surface is not regular (|E1 x E2| ~ 0)", {u, v});
}

double scaled(double residual, std::initializer_list<double> terms) {
  double m = 1.0;
  for (double t : terms) m = std::max(m, std::abs(t));
  return std::abs(residual) / m;
}

// Inverse metric entries (a^11, a^12, a^22) for any scalar or jet type.
template <class T>
std::array<T, 3> inverse_metric(const T& E, const T& F, const T& G) {
  const T det = E * G - F * F;
  return {G / det, -F / det, E / det};
}

template <class T>
T inv_at(const std::array<T, 3>& ai, int i, int j) {
  return i == 0 ? (j == 0 ? ai[0] : ai[1]) : (j == 0 ? ai[1] : ai[2]);
}

// Order-3 jets of everything needed by the third-order identities.
struct ThirdOrder {
  FormBundle fb;
  std::array<std::array<Jet2<1>, 2>, 2> b;  // b_ab as jets
  std::array<Jet2<1>, 6> gamma2;             // Gamma^c_ab as jets
  Vec3T<Jet2<2>> n;
  std::array<Vec3T<Jet2<2>>, 2> E;
  std::array<Jet2<2>, 3> a;  // E, F, G as jets
};

ThirdOrder third_order(const ParametricSurface& s, double u, double v) {
  const SurfacePoint r = s.jet<3>(u, v);
  ThirdOrder t;
  t.fb = detail::forms_from_jet<3>(r, s.eps_reg(), u, v);
  t.E = {partial_u(r), partial_v(r)};
  const auto c = cross(t.E[0], t.E[1]);
  t.n = c / sqrt(dot(c, c));
  t.a = {dot(t.E[0], t.E[0]), dot(t.E[0], t.E[1]), dot(t.E[1], t.E[1])};
  const auto a_at = [&](int i, int j) -> const Jet2<2>& { return i == 0 ? (j == 0 ? t.a[0] : t.a[1]) : (j == 0 ? t.a[1] : t.a[2]); };
  const auto n1 = truncate<1>(t.n);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) t.b[i][j] = dot(partial(t.E[i], j), n1);
  const auto ai = inverse_metric(truncate<1>(t.a[0]), truncate<1>(t.a[1]), truncate<1>(t.a[2]));
  for (int i = 0; i < 2; ++i)
    for (int j = i; j < 2; ++j)
      for (int c2 = 0; c2 < 2; ++c2) {
        Jet2<1> sum(0.0);
        for (int d = 0; d < 2; ++d) {
          const Jet2<1> first = 0.5 * (partial(a_at(i, d), j) + partial(a_at(j, d), i) - partial(a_at(i, j), d));
          sum += inv_at(ai, c2, d) * first;
        }
        t.gamma2[christoffel_index(i, j, c2)] = sum;
      }
  return t;
}

const Jet2<1>& gamma_jet(const ThirdOrder& t, int c, int a, int b) {
  return t.gamma2[christoffel_index(std::min(a, b), std::max(a, b), c)];
}

}  // namespace

ParametricSurface surface_from_definition(const ShapeDefinition& def, bool clamp) {
  if (def.kind != ShapeKind::Surface) throw Error(ErrorCode::InvalidArgument, "definition is not a surface");
  return ParametricSurface(std::make_shared<DefinitionSurface>(def, clamp),
                           {def.parameters[0].domain, def.parameters[1].domain});
}

namespace detail {

template <int N>
FormBundle forms_from_jet(const SurfacePointT<N>& r, double eps_reg, double u, double v) {
  static_assert(N >= 2);
  FormBundle fb;
  const Vec3 E[2] = {coefficient(r, 1, 0), coefficient(r, 0, 1)};
  const Vec3 R[2][2] = {{coefficient(r, 2, 0), coefficient(r, 1, 1)}, {coefficient(r, 1, 1), coefficient(r, 0, 2)}};
  const Vec3 c = cross(E[0], E[1]);
  fb.sqrt_a = norm(c);
  if (!(fb.sqrt_a > eps_reg) || !std::isfinite(fb.sqrt_a)) singular(u, v);
  fb.E1 = E[0];
  fb.E2 = E[1];
  fb.n = c / fb.sqrt_a;
  fb.E = dot(E[0], E[0]);
  fb.F = dot(E[0], E[1]);
  fb.G = dot(E[1], E[1]);
  fb.e = dot(R[0][0], fb.n);
  fb.f = dot(R[0][1], fb.n);
  fb.g = dot(R[1][1], fb.n);
  // da_ij/du^k = R_ik . E_j + E_i . R_jk
  auto da = [&](int i, int j, int k) { return dot(R[i][k], E[j]) + dot(E[i], R[j][k]); };
  const auto ai = inverse_metric(fb.E, fb.F, fb.G);
  for (int i = 0; i < 2; ++i)
    for (int j = i; j < 2; ++j) {
      double first[2];
      for (int k = 0; k < 2; ++k) {
        first[k] = 0.5 * (da(i, k, j) + da(j, k, i) - da(i, j, k));
        fb.gamma1[christoffel_index(i, j, k)] = first[k];
      }
      for (int k = 0; k < 2; ++k)
        fb.gamma2[christoffel_index(i, j, k)] = inv_at(ai, k, 0) * first[0] + inv_at(ai, k, 1) * first[1];
    }
  auto cc = [&](int i, int j) {
    double s = 0.0;
    for (int g = 0; g < 2; ++g)
      for (int d = 0; d < 2; ++d) s += inv_at(ai, g, d) * fb.b(i, g) * fb.b(j, d);
    return s;
  };
  fb.c11 = cc(0, 0);
  fb.c12 = cc(0, 1);
  fb.c22 = cc(1, 1);
  return fb;
}

template FormBundle forms_from_jet<2>(const SurfacePointT<2>&, double, double, double);
template FormBundle forms_from_jet<3>(const SurfacePointT<3>&, double, double, double);
template FormBundle forms_from_jet<4>(const SurfacePointT<4>&, double, double, double);

}  // namespace detail

SurfaceFrame surface_frame(const ParametricSurface& s, double u, double v) {
  const auto r = s.jet<2>(u, v);
  SurfaceFrame f;
  f.E1 = coefficient(r, 1, 0);
  f.E2 = coefficient(r, 0, 1);
  const Vec3 c = cross(f.E1, f.E2);
  f.sqrt_a = norm(c);
  if (!(f.sqrt_a > s.eps_reg()) || !std::isfinite(f.sqrt_a)) singular(u, v);
  f.n = c / f.sqrt_a;
  return f;
}

FormBundle forms(const ParametricSurface& s, double u, double v) {
  return detail::forms_from_jet<2>(s.jet<2>(u, v), s.eps_reg(), u, v);
}

double christoffel_crosscheck(const ParametricSurface& s, double u, double v) {
  const auto r = s.jet<2>(u, v);
  const FormBundle fb = detail::forms_from_jet<2>(r, s.eps_reg(), u, v);
  const auto ai = inverse_metric(fb.E, fb.F, fb.G);
  const Vec3 up[2] = {inv_at(ai, 0, 0) * fb.E1 + inv_at(ai, 0, 1) * fb.E2,
                      inv_at(ai, 1, 0) * fb.E1 + inv_at(ai, 1, 1) * fb.E2};
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = i; j < 2; ++j) {
      const Vec3 dE = coefficient(r, (i == 0) + (j == 0), (i == 1) + (j == 1));
      for (int c = 0; c < 2; ++c) {
        const double alt = dot(dE, up[c]);
        worst = std::max(worst, scaled(fb.Gamma(c, i, j) - alt, {alt}));
      }
    }
  return worst;
}

double metric_derivative_residual(const ParametricSurface& s, double u, double v) {
  const auto r = s.jet<2>(u, v);
  const FormBundle fb = detail::forms_from_jet<2>(r, s.eps_reg(), u, v);
  const auto E1 = partial_u(r), E2 = partial_v(r);
  const std::array<Jet2<1>, 3> a = {dot(E1, E1), dot(E1, E2), dot(E2, E2)};
  auto a_at = [&](int i, int j) { return i == 0 ? (j == 0 ? a[0] : a[1]) : (j == 0 ? a[1] : a[2]); };
  auto first = [&](int i, int j, int k) { return fb.gamma1[christoffel_index(std::min(i, j), std::max(i, j), k)]; };
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        const double lhs = a_at(i, j).d(k == 0, k == 1);
        const double rhs = first(i, k, j) + first(j, k, i);
        worst = std::max(worst, scaled(lhs - rhs, {lhs, rhs}));
      }
  return worst;
}

double riemann_R1212(const ParametricSurface& s, double u, double v) {
  const auto r = s.jet<3>(u, v);
  const FormBundle fb = detail::forms_from_jet<3>(r, s.eps_reg(), u, v);
  const auto E1 = partial_u(r), E2 = partial_v(r);
  const Jet2<2> a11 = dot(E1, E1), a12 = dot(E1, E2), a22 = dot(E2, E2);
  double R = 0.5 * (2.0 * a12.d(1, 1) - a11.d(0, 2) - a22.d(2, 0));
  for (int al = 0; al < 2; ++al)
    for (int be = 0; be < 2; ++be)
      R += fb.a(al, be) * (fb.Gamma(al, 0, 1) * fb.Gamma(be, 0, 1) - fb.Gamma(al, 0, 0) * fb.Gamma(be, 1, 1));
  return R;
}

double gaussian_curvature_intrinsic(const ParametricSurface& s, double u, double v) {
  const FormBundle fb = forms(s, u, v);
  return riemann_R1212(s, u, v) / fb.det_a();
}

std::string_view to_string(ShapeClass c) noexcept {
  switch (c) {
    case ShapeClass::Flat:
      return "Flat";
    case ShapeClass::Elliptic:
      return "Elliptic";
    case ShapeClass::Parabolic:
      return "Parabolic";
    case ShapeClass::Hyperbolic:
      return "Hyperbolic";
  }
  return "?";
}

CurvatureData curvatures(const FormBundle& fb, double scale) {
  CurvatureData cd;
  const double det = fb.det_a();
  cd.K = (fb.e * fb.g - fb.f * fb.f) / det;
  cd.H = (fb.e * fb.G - 2.0 * fb.f * fb.F + fb.g * fb.E) / (2.0 * det);
  const double disc = cd.H * cd.H - cd.K;
  const double root = std::sqrt(std::max(0.0, disc));
  cd.kappa1 = cd.H + root;
  cd.kappa2 = cd.H - root;
  const double inv_scale2 = 1.0 / (scale * scale);
  cd.is_umbilic = disc <= 1e-10 * std::max({cd.H * cd.H, std::abs(cd.K), inv_scale2});
  const double kmax = std::max(std::abs(cd.kappa1), std::abs(cd.kappa2));
  if (kmax <= 1e-10 / scale)
    cd.shape = ShapeClass::Flat;
  else if (std::abs(cd.K) <= 1e-10 * (cd.kappa1 * cd.kappa1 + cd.kappa2 * cd.kappa2 + inv_scale2))
    cd.shape = ShapeClass::Parabolic;
  else
    cd.shape = cd.K > 0 ? ShapeClass::Elliptic : ShapeClass::Hyperbolic;
  if (!cd.is_umbilic) {
    // (b - kappa a) d = 0; take the better-conditioned row.
    auto direction = [&](double k) {
      const double p11 = fb.e - k * fb.E, p12 = fb.f - k * fb.F, p22 = fb.g - k * fb.G;
      std::array<double, 2> d1 = {p12, -p11}, d2 = {p22, -p12};
      std::array<double, 2> d = (std::hypot(d1[0], d1[1]) >= std::hypot(d2[0], d2[1])) ? d1 : d2;
      const double len = std::sqrt(fb.E * d[0] * d[0] + 2 * fb.F * d[0] * d[1] + fb.G * d[1] * d[1]);
      return std::array<double, 2>{d[0] / len, d[1] / len};
    };
    cd.comp1 = direction(cd.kappa1);
    cd.comp2 = direction(cd.kappa2);
    cd.dir1 = fb.tangent(cd.comp1[0], cd.comp1[1]);
    cd.dir2 = fb.tangent(cd.comp2[0], cd.comp2[1]);
  }
  return cd;
}

CurvatureData curvatures(const ParametricSurface& s, double u, double v) {
  return curvatures(forms(s, u, v), s.scale());
}

double GaussWeingartenResiduals::max() const {
  return std::max({gauss[0], gauss[1], gauss[2], weingarten[0], weingarten[1], normal_cross});
}

GaussWeingartenResiduals gauss_weingarten_residuals(const ParametricSurface& s, double u, double v) {
  const auto r = s.jet<3>(u, v);
  const FormBundle fb = detail::forms_from_jet<3>(r, s.eps_reg(), u, v);
  const auto E1 = partial_u(r), E2 = partial_v(r);
  const auto c = cross(E1, E2);
  const auto n = c / sqrt(dot(c, c));
  const Vec3 E[2] = {fb.E1, fb.E2};
  GaussWeingartenResiduals out;
  int k = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = i; j < 2; ++j, ++k) {
      const Vec3 lhs = coefficient(r, (i == 0) + (j == 0), (i == 1) + (j == 1));
      const Vec3 rhs = fb.Gamma(0, i, j) * E[0] + fb.Gamma(1, i, j) * E[1] + fb.b(i, j) * fb.n;
      out.gauss[k] = norm(lhs - rhs) / std::max(1.0, norm(lhs));
    }
  const auto ai = inverse_metric(fb.E, fb.F, fb.G);
  const Vec3 dn[2] = {coefficient(n, 1, 0), coefficient(n, 0, 1)};
  for (int al = 0; al < 2; ++al) {
    Vec3 rhs{};
    for (int be = 0; be < 2; ++be) {
      double mixed = 0.0;  // b_a^b = b_ag a^gb
      for (int g = 0; g < 2; ++g) mixed += fb.b(al, g) * inv_at(ai, g, be);
      rhs -= mixed * E[be];
    }
    out.weingarten[al] = norm(dn[al] - rhs) / std::max(1.0, norm(dn[al]));
  }
  const double K = (fb.e * fb.g - fb.f * fb.f) / fb.det_a();
  const Vec3 lhs = cross(dn[0], dn[1]);
  out.normal_cross = norm(lhs - K * cross(fb.E1, fb.E2)) / std::max(1.0, norm(lhs));
  return out;
}

double CodazziResiduals::max() const { return std::max({codazzi1, codazzi2, compatibility}); }

CodazziResiduals codazzi_compatibility_residuals(const ParametricSurface& s, double u, double v) {
  const ThirdOrder t = third_order(s, u, v);
  auto G = [&](int c, int a, int b) { return gamma_jet(t, c, a, b).value(); };
  auto Gd = [&](int c, int a, int b, int k) { return gamma_jet(t, c, a, b).d(k == 0, k == 1); };
  const double e = t.fb.e, f = t.fb.f, g = t.fb.g, E = t.fb.E, F = t.fb.F;
  const double e_v = t.b[0][0].d(0, 1), f_u = t.b[0][1].d(1, 0), f_v = t.b[0][1].d(0, 1), g_u = t.b[1][1].d(1, 0);
  // Indices are zero-based: Gamma(c, a, b) = Gamma^{c+1}_{(a+1)(b+1)}.
  const double c1_rhs_terms[3] = {g * G(1, 0, 0), -f * (G(1, 0, 1) - G(0, 0, 0)), -e * G(0, 0, 1)};
  const double c2_rhs_terms[3] = {g * G(1, 0, 1), -f * (G(1, 1, 1) - G(0, 0, 1)), -e * G(0, 1, 1)};
  CodazziResiduals out;
  out.codazzi1 = scaled(f_u - e_v - (c1_rhs_terms[0] + c1_rhs_terms[1] + c1_rhs_terms[2]),
                        {f_u, e_v, c1_rhs_terms[0], c1_rhs_terms[1], c1_rhs_terms[2]});
  out.codazzi2 = scaled(g_u - f_v - (c2_rhs_terms[0] + c2_rhs_terms[1] + c2_rhs_terms[2]),
                        {g_u, f_v, c2_rhs_terms[0], c2_rhs_terms[1], c2_rhs_terms[2]});
  const double bracketF = Gd(1, 1, 1, 0) - Gd(1, 0, 1, 1) + G(0, 1, 1) * G(1, 0, 0) - G(0, 0, 1) * G(1, 0, 1);
  const double bracketE = Gd(0, 1, 1, 0) - Gd(0, 0, 1, 1) + G(0, 1, 1) * G(0, 0, 0) + G(1, 1, 1) * G(0, 0, 1) -
                          G(0, 0, 1) * G(0, 0, 1) - G(1, 0, 1) * G(0, 1, 1);
  const double lhs = e * g - f * f;
  const double rhs = F * bracketF + E * bracketE;
  out.compatibility = scaled(lhs - rhs, {lhs, F * bracketF, E * bracketE, e * g, f * f});
  return out;
}

FormIdentityResiduals form_identity_residual(const ParametricSurface& s, double u, double v) {
  const FormBundle fb = forms(s, u, v);
  const CurvatureData cd = curvatures(fb, s.scale());
  const double c[2][2] = {{fb.c11, fb.c12}, {fb.c12, fb.c22}};
  FormIdentityResiduals out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double t1 = cd.K * fb.a(i, j), t2 = 2.0 * cd.H * fb.b(i, j), t3 = c[i][j];
      out.identity = std::max(out.identity, scaled(t1 - t2 + t3, {t1, t2, t3}));
    }
  const auto ai = inverse_metric(fb.E, fb.F, fb.G);
  double trace = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) trace += inv_at(ai, i, j) * c[j][i];
  const double expect = 4.0 * cd.H * cd.H - 2.0 * cd.K;
  out.trace = scaled(trace - expect, {trace, expect});
  return out;
}

double surface_area(const ParametricSurface& s, const Rectangle& region, const QuadSpec& spec) {
  return quad2d([&](double u, double v) { return surface_frame(s, u, v).sqrt_a; }, region, spec);
}

double total_curvature(const ParametricSurface& s, const Rectangle& region, const QuadSpec& spec) {
  return quad2d(
      [&](double u, double v) {
        const FormBundle fb = forms(s, u, v);
        return (fb.e * fb.g - fb.f * fb.f) / fb.sqrt_a;
      },
      region, spec);
}

AngleResult angle_between(const ParametricSurface& s, double u, double v, std::array<double, 2> A,
                          std::array<double, 2> B) {
  const FormBundle fb = forms(s, u, v);
  auto inner = [&](const std::array<double, 2>& x, const std::array<double, 2>& y) {
    return fb.E * x[0] * y[0] + fb.F * (x[0] * y[1] + x[1] * y[0]) + fb.G * x[1] * y[1];
  };
  const double na = std::sqrt(inner(A, A)), nb = std::sqrt(inner(B, B));
  if (!(na > 0.0) || !(nb > 0.0)) throw Error(ErrorCode::ZeroVector, "angle needs nonzero tangent vectors", {u, v});
  AngleResult out;
  out.cos_theta = inner(A, B) / (na * nb);
  out.sin_theta = fb.sqrt_a * (A[0] * B[1] - A[1] * B[0]) / (na * nb);
  out.theta = std::atan2(std::abs(out.sin_theta), out.cos_theta);
  out.consistency = std::abs(out.cos_theta * out.cos_theta + out.sin_theta * out.sin_theta - 1.0);
  return out;
}

std::string_view to_string(DupinClass c) noexcept {
  switch (c) {
    case DupinClass::Ellipse:
      return "Ellipse";
    case DupinClass::TwoParallelLines:
      return "TwoParallelLines";
    case DupinClass::ConjugateHyperbolas:
      return "ConjugateHyperbolas";
    case DupinClass::Undefined:
      return "Undefined";
  }
  return "?";
}

DupinClass dupin_classification(const ParametricSurface& s, double u, double v) {
  switch (curvatures(s, u, v).shape) {
    case ShapeClass::Elliptic:
      return DupinClass::Ellipse;
    case ShapeClass::Parabolic:
      return DupinClass::TwoParallelLines;
    case ShapeClass::Hyperbolic:
      return DupinClass::ConjugateHyperbolas;
    case ShapeClass::Flat:
      break;
  }
  return DupinClass::Undefined;
}

}  // namespace diffgeo
