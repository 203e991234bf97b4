#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"

using namespace diffgeo;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Domain;
}

}  // namespace

TEST(Catalog, EveryEntryBuilds) {
  ASSERT_FALSE(catalog_entries().empty());
  for (const auto& e : catalog_entries()) {
    const Shape s = make_shape(e.name);
    EXPECT_EQ(s.kind, e.kind) << e.name;
    EXPECT_EQ(s.curve.has_value(), e.kind == ShapeKind::Curve) << e.name;
    EXPECT_EQ(s.surface.has_value(), e.kind == ShapeKind::Surface) << e.name;
    EXPECT_EQ(catalog_entry(e.name).name, e.name);
  }
}

TEST(Catalog, CurveReferencesMatchTheKernel) {
  std::mt19937_64 rng(3);
  for (const auto& e : catalog_entries()) {
    if (e.kind != ShapeKind::Curve || !e.has_reference) continue;
    const ParametricCurve c = *make_shape(e.name).curve;
    for (int i = 0; i < 20; ++i) {
      const double t = test::interior(rng, c.domain());
      const auto ref = reference(e.name, {}, std::span<const double>(&t, 1));
      EXPECT_LT(test::relative_error(curvature(c, t), ref.at("kappa")), 1e-12) << e.name << " t=" << t;
      if (ref.contains("tau")) EXPECT_LT(test::relative_error(frenet(c, t).tau, ref.at("tau")), 1e-12) << e.name;
    }
  }
}

TEST(Catalog, SurfaceReferencesMatchTheKernel) {
  for (const auto& e : catalog_entries()) {
    if (e.kind != ShapeKind::Surface || !e.has_reference) continue;
    const ParametricSurface s = *make_shape(e.name).surface;
    for (const auto& p : test::random_points(s, 20, 5)) {
      const auto ref = reference(e.name, {}, p);
      const CurvatureData d = curvatures(s, p[0], p[1]);
      EXPECT_LT(test::relative_error(d.K, ref.at("K")), 1e-10) << e.name << " at " << p[0] << "," << p[1];
      if (ref.contains("H")) EXPECT_LT(test::relative_error(d.H, ref.at("H")), 1e-10) << e.name;
    }
  }
}

TEST(Catalog, OrientationSignsOfTwoSheetsAndCone) {
  // Both sheets' normals are set so that K stays positive and the cone bends toward its axis.
  const ParametricSurface h = *make_shape("hyperboloid-two-sheets").surface;
  EXPECT_GT(curvatures(h, 0.3, 1.0).K, 0.0);
  const ParametricSurface c = *make_shape("cone").surface;
  const CurvatureData d = curvatures(c, 2.0, 0.4);
  const Vec3 axis_ward = Vec3{0, 0, c.position(2.0, 0.4).z} - c.position(2.0, 0.4);
  EXPECT_GT(d.H * dot(surface_frame(c, 2.0, 0.4).n, axis_ward), 0.0);
}

TEST(Catalog, HelicoidIsMinimal) {
  const ParametricSurface s = *make_shape("helicoid", {{{"c", 0.7}}, {}}).surface;
  for (const auto& p : test::random_points(s, 50, 6)) EXPECT_LE(std::abs(curvatures(s, p[0], p[1]).H), 1e-12);
}

TEST(Catalog, PseudosphereProfileIsTheTractrix) {
  const double rho = 1.5;
  const ParametricSurface s = *make_shape("pseudosphere", {{{"rho", rho}}, {}}).surface;
  for (double v : {0.2, 0.8, 1.5, 2.7}) {
    const Vec3 p = s.position(0.0, v);
    // Tractrix dy/dx = -sqrt(rho^2 - x^2) / x from y(rho) = 0, integrated in a with x = rho sin(a).
    const auto tr = ode_solve(
        [&](double a, std::span<const double>, std::span<double> d) {
          d[0] = -rho * std::cos(a) * std::cos(a) / std::sin(a);
        },
        {0.0}, std::numbers::pi / 2, std::asin(p.x / rho));
    const double y = tr.back()[0];
    EXPECT_NEAR(p.z, y, 1e-6) << v;
    EXPECT_NEAR(curvatures(s, 0.3, v).K, -1 / (rho * rho), 1e-11);
  }
}

TEST(Catalog, MongeHeightOverride) {
  const Overrides o{{}, {{"f", "u^2 - v^2"}}};
  const ParametricSurface s = *make_shape("monge", o).surface;
  const std::array<double, 2> p{0.3, -0.4};
  // z = u^2 - v^2: K = -4 / (1 + 4u^2 + 4v^2)^2
  const double w = 1 + 4 * 0.09 + 4 * 0.16;
  EXPECT_NEAR(curvatures(s, p[0], p[1]).K, -4 / (w * w), 1e-13);
  EXPECT_NEAR(reference("monge", o, p).at("K"), -4 / (w * w), 1e-13);
  EXPECT_EQ(code_of([] { make_shape("monge", {{}, {{"f", "u^"}}}); }), ErrorCode::InvalidParameter);
  EXPECT_EQ(code_of([] { make_shape("monge", {{}, {{"g", "u"}}}); }), ErrorCode::InvalidParameter);
}

TEST(Catalog, Errors) {
  EXPECT_EQ(code_of([] { make_shape("klein-bottle"); }), ErrorCode::UnknownShape);
  EXPECT_EQ(code_of([] { catalog_entry("klein-bottle"); }), ErrorCode::UnknownShape);
  EXPECT_EQ(code_of([] { make_shape("torus", {{{"r", 3}}, {}}); }), ErrorCode::InvalidParameter);
  EXPECT_EQ(code_of([] { make_shape("torus", {{{"q", 1}}, {}}); }), ErrorCode::InvalidParameter);
  EXPECT_EQ(code_of([] { make_shape("sphere", {{{"R", -1}}, {}}); }), ErrorCode::InvalidParameter);
  EXPECT_EQ(code_of([] { make_shape("spherical-spiral", {{{"c", 0.25}}, {}}); }), ErrorCode::InvalidParameter);
  const double t = 0.1;
  EXPECT_EQ(code_of([&] { reference("spherical-spiral", {}, std::span<const double>(&t, 1)); }),
            ErrorCode::NoReference);
}

TEST(Catalog, ClosedSurfacesCarryTheirEulerCharacteristic) {
  EXPECT_EQ(make_shape("sphere").closure.chi, 2);
  EXPECT_EQ(make_shape("torus").closure.chi, 0);
  EXPECT_TRUE(make_shape("ellipsoid").closure.is_closed);
  EXPECT_FALSE(make_shape("plane").closure.is_closed);
}

TEST(Catalog, TorusPointTypesByRim) {
  const ParametricSurface s = *make_shape("torus", {{{"R", 3}, {"r", 1}}, {}}).surface;
  EXPECT_EQ(curvatures(s, 0.4, 1.2).shape, ShapeClass::Elliptic);
  EXPECT_EQ(curvatures(s, 0.4, 4.0).shape, ShapeClass::Hyperbolic);
  EXPECT_EQ(curvatures(s, 0.4, 0.0).shape, ShapeClass::Parabolic);
  EXPECT_EQ(curvatures(s, 0.4, std::numbers::pi).shape, ShapeClass::Parabolic);
  EXPECT_NEAR(curvatures(*make_shape("sphere", {{{"R", 2}}, {}}).surface, 0.7, -0.2).K, 0.25, 1e-14);
}
