#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace diffgeo;

namespace {

constexpr double kPi = std::numbers::pi;

ParametricSurface plane() {
  return make_surface([](auto u, auto v) { return Vec3T<decltype(u)>{u, v, decltype(u)(0.0)}; }, {{-1, 1}, {-1, 1}});
}

ParametricSurface polar_plane() {
  return make_surface([](auto u, auto v) { return Vec3T<decltype(u)>{u * cos(v), u * sin(v), decltype(u)(0.0)}; },
                      {{0, 5}, {-kPi, kPi}});
}

ParametricSurface sphere(double R) {
  return make_surface(
      [=](auto u, auto v) { return Vec3T<decltype(u)>{R * cos(u) * cos(v), R * sin(u) * cos(v), R * sin(v)}; },
      {{-kPi, kPi}, {-kPi / 2, kPi / 2}}, true);
}

ParametricSurface torus(double R = 3, double r = 1) {
  return make_surface(
      [=](auto u, auto v) {
        return Vec3T<decltype(u)>{(R + r * sin(v)) * cos(u), (R + r * sin(v)) * sin(u), r * cos(v)};
      },
      {{0, 2 * kPi}, {0, 2 * kPi}}, true, true);
}

ParametricSurface monge(double su) {
  return make_surface([=](auto u, auto v) { return Vec3T<decltype(u)>{u, v, u * u + su * v * v}; }, {{-2, 2}, {-2, 2}});
}

ParametricSurface catenoid() {
  return make_surface([](auto u, auto v) { return Vec3T<decltype(u)>{cosh(v) * cos(u), cosh(v) * sin(u), v}; },
                      {{-kPi, kPi}, {-2, 2}}, true);
}

ParametricSurface cylinder(double rho) {
  return make_surface([=](auto u, auto v) { return Vec3T<decltype(u)>{rho * cos(u), rho * sin(u), v}; },
                      {{-kPi, kPi}, {-5, 5}}, true);
}

}  // namespace

TEST(Frame, PlaneSphereAndCone) {
  const SurfaceFrame p = surface_frame(plane(), 0.2, 0.3);
  EXPECT_EQ(p.n, (Vec3{0, 0, 1}));
  EXPECT_EQ(p.sqrt_a, 1.0);
  const SurfaceFrame s = surface_frame(sphere(2), 0.4, 0.0);
  EXPECT_NEAR(norm(s.n), 1.0, 1e-15);
  EXPECT_LT(norm(cross(s.n, sphere(2).position(0.4, 0.0))), 1e-14);
  const auto cone = make_surface([](auto u, auto v) { return Vec3T<decltype(u)>{u * cos(v), u * sin(v), u}; },
                                 {{0, 2}, {-kPi, kPi}});
  try {
    surface_frame(cone, 0.0, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularSurfacePoint);
  }
}

TEST(Forms, PlaneMongeAndPolar) {
  const FormBundle p = forms(plane(), 0.1, 0.2);
  EXPECT_EQ(p.E, 1.0);
  EXPECT_EQ(p.F, 0.0);
  EXPECT_EQ(p.G, 1.0);
  EXPECT_EQ(p.e + std::abs(p.f) + std::abs(p.g), 0.0);
  for (double g : p.gamma2) EXPECT_EQ(g, 0.0);

  const FormBundle m = forms(monge(1), 1, 0);
  EXPECT_NEAR(m.E, 5, 1e-15);
  EXPECT_NEAR(m.F, 0, 1e-15);
  EXPECT_NEAR(m.G, 1, 1e-15);
  // e = f_uu / sqrt(1 + f_u^2 + f_v^2)
  EXPECT_NEAR(m.e, 2 / std::sqrt(5.0), 1e-15);

  const FormBundle q = forms(polar_plane(), 2.0, 0.3);
  EXPECT_NEAR(q.Gamma(0, 1, 1), -2.0, 1e-14);
  EXPECT_NEAR(q.Gamma(1, 0, 1), 0.5, 1e-14);
  EXPECT_NEAR(q.Gamma(1, 1, 0), 0.5, 1e-14);
  EXPECT_NEAR(q.Gamma(0, 0, 0), 0.0, 1e-14);
}

TEST(Forms, ChristoffelCrossChecks) {
  for (const auto& s : {torus(), catenoid(), monge(-1)})
    for (const auto& p : test::random_points(s, 10, 4)) {
      EXPECT_LE(christoffel_crosscheck(s, p[0], p[1]), 1e-12);
      EXPECT_LE(metric_derivative_residual(s, p[0], p[1]), 1e-12);
    }
}

TEST(Riemann, PlaneSphereTorus) {
  EXPECT_EQ(riemann_R1212(plane(), 0.3, 0.4), 0.0);
  const auto s = sphere(2);
  const FormBundle fb = forms(s, 0.4, 0.5);
  EXPECT_NEAR(riemann_R1212(s, 0.4, 0.5), 0.25 * fb.det_a(), 1e-13);
  const auto t = torus();
  for (const auto& p : test::random_points(t, 20, 8)) {
    const FormBundle f = forms(t, p[0], p[1]);
    EXPECT_NEAR(gaussian_curvature_intrinsic(t, p[0], p[1]), (f.e * f.g - f.f * f.f) / f.det_a(), 1e-7);
  }
}

TEST(Curvatures, SphereTorusCylinder) {
  const CurvatureData s = curvatures(sphere(2), 0.3, 0.4);
  EXPECT_NEAR(s.K, 0.25, 1e-12);
  EXPECT_NEAR(std::abs(s.H), 0.5, 1e-12);
  EXPECT_TRUE(s.is_umbilic);
  EXPECT_EQ(s.shape, ShapeClass::Elliptic);
  EXPECT_FALSE(s.dir1.has_value());

  const CurvatureData t = curvatures(torus(3, 1), 1.0, kPi / 2);
  EXPECT_NEAR(t.K, 0.25, 1e-12);
  EXPECT_NEAR(t.H, 0.625, 1e-12);

  const CurvatureData c = curvatures(cylinder(2), 0.5, 1.0);
  EXPECT_NEAR(c.K, 0.0, 1e-14);
  EXPECT_NEAR(std::min(std::abs(c.kappa1), std::abs(c.kappa2)), 0.0, 1e-14);
  EXPECT_NEAR(std::max(std::abs(c.kappa1), std::abs(c.kappa2)), 0.5, 1e-14);
  EXPECT_EQ(c.shape, ShapeClass::Parabolic);
  ASSERT_TRUE(c.dir1.has_value());
  EXPECT_LT(std::abs(dot(*c.dir1, *c.dir2)), 1e-14);

  EXPECT_EQ(curvatures(plane(), 0, 0).shape, ShapeClass::Flat);
  EXPECT_EQ(curvatures(monge(-1), 0.2, 0.1).shape, ShapeClass::Hyperbolic);
}

TEST(Curvatures, PrincipalValuesSolveTheEigenproblem) {
  const auto s = monge(-0.5);
  for (const auto& p : test::random_points(s, 10, 9)) {
    const FormBundle fb = forms(s, p[0], p[1]);
    const CurvatureData d = curvatures(fb, s.scale());
    for (double k : {d.kappa1, d.kappa2}) {
      // det(b - k a) = 0
      const double det = (fb.e - k * fb.E) * (fb.g - k * fb.G) - (fb.f - k * fb.F) * (fb.f - k * fb.F);
      EXPECT_NEAR(det, 0.0, 1e-12);
    }
    EXPECT_NEAR(d.K, d.kappa1 * d.kappa2, 1e-13);
    EXPECT_NEAR(d.H, 0.5 * (d.kappa1 + d.kappa2), 1e-13);
  }
}

TEST(StructureEquations, PlaneSphereMonge) {
  EXPECT_EQ(gauss_weingarten_residuals(plane(), 0.1, 0.2).max(), 0.0);
  EXPECT_EQ(codazzi_compatibility_residuals(plane(), 0.1, 0.2).max(), 0.0);
  const auto s = sphere(1);
  for (const auto& p : test::random_points(s, 20, 10)) {
    const auto r = gauss_weingarten_residuals(s, p[0], p[1]);
    EXPECT_LE(r.max(), 1e-9);
    EXPECT_LE(r.normal_cross, 1e-9);
  }
  const auto m = monge(-1);
  for (const auto& p : test::random_points(m, 20, 11)) EXPECT_LE(codazzi_compatibility_residuals(m, p[0], p[1]).max(), 1e-8);
}

TEST(FormIdentity, SpherePlaneCatenoid) {
  const auto r = form_identity_residual(sphere(1), 0.2, 0.3);
  EXPECT_LE(r.identity, 1e-10);
  EXPECT_LE(form_identity_residual(plane(), 0.2, 0.3).identity, 1e-14);
  for (const auto& p : test::random_points(catenoid(), 10, 12)) {
    const auto c = form_identity_residual(catenoid(), p[0], p[1]);
    EXPECT_LE(c.identity, 1e-9);
    EXPECT_LE(c.trace, 1e-9);
  }
}

TEST(Integrals, AreaAndTotalCurvature) {
  const auto s = sphere(1);
  const Rectangle whole{{-kPi, kPi}, {-kPi / 2, kPi / 2}};
  EXPECT_NEAR(surface_area(s, whole), 4 * kPi, 1e-6);
  EXPECT_NEAR(total_curvature(s, whole), 4 * kPi, 1e-6);
  EXPECT_NEAR(total_curvature(torus(), {{0, 2 * kPi}, {0, 2 * kPi}}), 0.0, 1e-6);
  EXPECT_NEAR(surface_area(torus(3, 1), {{0, 2 * kPi}, {0, 2 * kPi}}), 4 * kPi * kPi * 3, 1e-6);
}

TEST(Angles, CoordinateCurves) {
  const AngleResult s = angle_between(sphere(1), 0.3, 0.2, {1, 0}, {0, 1});
  EXPECT_NEAR(s.theta, kPi / 2, 1e-14);
  EXPECT_LE(s.consistency, 1e-14);
  EXPECT_NEAR(angle_between(sphere(1), 0.3, 0.2, {0.4, 0.7}, {0.4, 0.7}).theta, 0.0, 1e-7);
  const AngleResult p = angle_between(polar_plane(), 2.0, 0.1, {1, 0}, {0, 1});
  EXPECT_NEAR(p.cos_theta, 0.0, 1e-15);
  // In the polar plane (1, 1) at u = 1 is 45 degrees from the radial direction.
  EXPECT_NEAR(angle_between(polar_plane(), 1.0, 0.1, {1, 0}, {1, 1}).theta, kPi / 4, 1e-14);
  EXPECT_LT(angle_between(polar_plane(), 1.0, 0.1, {1, 0}, {1, -1}).sin_theta, 0.0);
}

TEST(Dupin, SphereCylinderPlaneSaddle) {
  EXPECT_EQ(dupin_classification(sphere(1), 0.1, 0.2), DupinClass::Ellipse);
  EXPECT_EQ(dupin_classification(cylinder(1), 0.1, 0.2), DupinClass::TwoParallelLines);
  EXPECT_EQ(dupin_classification(plane(), 0.1, 0.2), DupinClass::Undefined);
  EXPECT_EQ(dupin_classification(monge(-1), 0.1, 0.2), DupinClass::ConjugateHyperbolas);
}
