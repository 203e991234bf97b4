#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace diffgeo;

namespace {

constexpr double kPi = std::numbers::pi;

ParametricCurve helix(double a = 1, double b = 0.5) {
  return make_curve([=](auto t) { return Vec3T<decltype(t)>{a * cos(t), a * sin(t), b * t}; }, {-10, 10});
}

ParametricCurve circle(double R) {
  return make_curve([=](auto t) { return Vec3T<decltype(t)>{R * cos(t), R * sin(t), decltype(t)(0.0)}; }, {0, 2 * kPi});
}

ParametricCurve twisted_cubic() {
  return make_curve([](auto t) { return Vec3T<decltype(t)>{t, t * t, t * t * t}; }, {-2, 2});
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Domain;
}

}  // namespace

TEST(Frenet, CircleHelixAndLine) {
  for (double t : {0.0, 1.0, 2.5}) {
    const FrenetData c = frenet(circle(3), t);
    EXPECT_NEAR(c.kappa, 1.0 / 3, 1e-14);
    EXPECT_NEAR(c.tau, 0.0, 1e-14);
    const FrenetData h = frenet(helix(), t);
    EXPECT_NEAR(h.kappa, 0.8, 1e-14);
    EXPECT_NEAR(h.tau, 0.4, 1e-14);
    // Darboux vector tau T + kappa B.
    EXPECT_LT(test::max_abs(h.darboux - (h.tau * h.T + h.kappa * h.B)), 1e-14);
  }
  const auto line = make_curve([](auto t) { return Vec3T<decltype(t)>{t, 2.0 * t, 3.0 * t}; }, {-1, 1});
  EXPECT_EQ(curvature(line, 0.3), 0.0);
  EXPECT_EQ(code_of([&] { frenet(line, 0.3); }), ErrorCode::InflectionPoint);
}

TEST(Frenet, SingularParameterization) {
  const auto cusp = make_curve([](auto t) { return Vec3T<decltype(t)>{t * t, t * t * t, decltype(t)(0.0)}; }, {-1, 1});
  EXPECT_EQ(code_of([&] { frenet(cusp, 0.0); }), ErrorCode::SingularPoint);
}

TEST(Frenet, TwistedCubicAgainstClosedForm) {
  // kappa = 2 sqrt(9t^4 + 9t^2 + 1) / (1 + 4t^2 + 9t^4)^(3/2), tau = 3 / (9t^4 + 9t^2 + 1)
  for (double t : {-0.7, 0.0, 0.4, 1.3}) {
    const double w = 9 * t * t * t * t + 9 * t * t + 1;
    const double sp = 1 + 4 * t * t + 9 * t * t * t * t;
    const FrenetData f = frenet(twisted_cubic(), t);
    EXPECT_NEAR(f.kappa, 2 * std::sqrt(w) / std::pow(sp, 1.5), 1e-13);
    EXPECT_NEAR(f.tau, 3 / w, 1e-13);
  }
}

TEST(Frenet, Residuals) {
  const FrenetResiduals h = frenet_residuals(helix(), 1.0);
  EXPECT_LE(std::max({h.dT, h.dN, h.dB}), 1e-10);
  EXPECT_LE(h.kappa_tau, 1e-10);
  EXPECT_LE(h.lancret, 1e-10);
  const FrenetResiduals c = frenet_residuals(circle(2), 0.4);
  EXPECT_LE(c.dB, 1e-12);
  const FrenetResiduals q = frenet_residuals(twisted_cubic(), 0.6);
  EXPECT_LE(std::max({q.dT, q.dN, q.dB, q.kappa_tau}), 1e-10);
}

TEST(Frenet, CurvatureRatesOfTheTwistedCubic) {
  const auto c = twisted_cubic();
  const double t = 0.5, h = 1e-3;
  const CurvatureRates r = curvature_rates(c, t);
  auto kappa_at = [&](double x) { return frenet(c, x).kappa; };
  auto tau_at = [&](double x) { return frenet(c, x).tau; };
  const double speed = frenet(c, t).speed;
  EXPECT_NEAR(r.dkappa, test::central_difference(kappa_at, t, h) / speed, 1e-8);
  EXPECT_NEAR(r.dtau, test::central_difference(tau_at, t, h) / speed, 1e-8);
}

TEST(ArcLength, ClosedFormLengths) {
  EXPECT_NEAR(arc_length(circle(2), 0, 2 * kPi), 4 * kPi, 1e-10);
  EXPECT_NEAR(arc_length(helix(), 0, 2 * kPi), 2 * kPi * std::sqrt(1.25), 1e-10);
  const auto line = make_curve([](auto t) { return Vec3T<decltype(t)>{t, decltype(t)(0.0), decltype(t)(0.0)}; }, {0, 5});
  EXPECT_NEAR(arc_length(line, 0, 5), 5.0, 1e-12);
}

TEST(ArcLength, ReparameterizationHasUnitSpeed) {
  const auto c = make_curve([](auto t) { return Vec3T<decltype(t)>{t, t * t, decltype(t)(0.0)}; }, {0, 2});
  const ParametricCurve s = reparam_to_arclength(c);
  EXPECT_NEAR(s.domain().hi, arc_length(c, 0, 2), 1e-9);
  for (double x : {0.1, 1.0, 2.5, 4.0}) {
    EXPECT_NEAR(norm(coefficient(s.jet(x), 1)), 1.0, 1e-9);
  }
  // Curvature is invariant under reparameterization.
  const double t = 1.2, sx = arc_length(c, 0, t);
  EXPECT_NEAR(frenet(s, sx).kappa, curvature(c, t), 1e-8);
}

TEST(Osculating, CircleAndHelix) {
  const OsculatingCircle oc = osculating_circle(circle(5), 0.7);
  EXPECT_NEAR(oc.radius, 5, 1e-13);
  EXPECT_LT(norm(oc.center), 1e-12);
  const OsculatingCircle hc = osculating_circle(helix(), 0.3);
  EXPECT_NEAR(hc.radius, 1.25, 1e-13);
  const OsculatingSphere hs = osculating_sphere(helix(), 0.3);
  EXPECT_NEAR(hs.radius, 1.25, 1e-12);
  EXPECT_EQ(code_of([] { osculating_sphere(circle(1), 0.1); }), ErrorCode::ZeroTorsion);
}

TEST(Osculating, LinesAndPlanes) {
  const FrenetLinesPlanes c = frenet_lines_and_planes(circle(1), 0.2);
  EXPECT_NEAR(std::abs(c.osculating.normal.z), 1, 1e-14);
  const FrenetLinesPlanes h = frenet_lines_and_planes(helix(), 0.0);
  EXPECT_LT(norm(cross(h.tangent.direction, Vec3{0, 1, 0.5})), 1e-14);
  const auto q = frenet_lines_and_planes(twisted_cubic(), 0.3);
  EXPECT_LT(std::abs(dot(q.osculating.normal, q.rectifying.normal)), 1e-12);
  EXPECT_LT(std::abs(dot(q.osculating.normal, q.normal.normal)), 1e-12);
  EXPECT_LT(std::abs(dot(q.rectifying.normal, q.normal.normal)), 1e-12);
}

TEST(Classify, LinePlanarHelixGeneral) {
  const auto line = make_curve([](auto t) { return Vec3T<decltype(t)>{t, 2.0 * t, 3.0 * t}; }, {-1, 1});
  EXPECT_EQ(classify_curve(line).kind, CurveKind::StraightLine);
  const auto ellipse =
      make_curve([](auto t) { return Vec3T<decltype(t)>{2.0 * cos(t), sin(t), decltype(t)(0.0)}; }, {0, 2 * kPi});
  EXPECT_EQ(classify_curve(ellipse).kind, CurveKind::Planar);
  EXPECT_EQ(classify_curve(helix()).kind, CurveKind::Helix);
  EXPECT_EQ(classify_curve(twisted_cubic()).kind, CurveKind::General);
}

TEST(Sphericity, SphericalSpiralHelixAndGreatCircle) {
  const auto spiral = make_curve(
      [](auto t) { return Vec3T<decltype(t)>{cos(t) * cos(0.2 * t), sin(t) * cos(0.2 * t), sin(0.2 * t)}; }, {-6, 6});
  for (double t : {-3.0, -0.5, 0.9, 2.0}) {
    ASSERT_NEAR(norm(spiral.position(t)), 1.0, 1e-15);
    EXPECT_LE(std::abs(sphericity_residual(spiral, t)), 1e-6) << t;
  }
  EXPECT_GT(std::abs(sphericity_residual(helix(), 1.0)), 0.1);
  const auto tilted = make_curve(
      [](auto t) { return Vec3T<decltype(t)>{cos(t), 0.6 * sin(t), 0.8 * sin(t)}; }, {0, 2 * kPi});
  EXPECT_EQ(code_of([&] { sphericity_residual(tilted, 0.5); }), ErrorCode::ZeroTorsion);
}

TEST(Involute, CircleInvolutesAreCongruent) {
  const ParametricCurve nat = reparam_to_arclength(circle(1));
  const ParametricCurve a = involute(nat, 0.0), b = involute(nat, 1.0);
  for (double s : {2.0, 3.0, 4.5}) {
    EXPECT_NEAR(curvature(a, s), curvature(b, s + 1), 1e-7);
    EXPECT_NEAR(norm(a.position(s) - b.position(s)), 1.0, 1e-9);
  }
}

TEST(Involute, TangentIsOrthogonalToTheEvolute) {
  const ParametricCurve nat = reparam_to_arclength(helix());
  const ParametricCurve inv = involute(nat, 0.0);
  for (int i = 0; i < 20; ++i) {
    const double s = 0.5 + 0.25 * i;
    const Vec3 ti = normalized(coefficient(inv.jet(s), 1));
    EXPECT_LE(std::abs(dot(ti, frenet(nat, s).T)), 1e-8);
  }
}

TEST(Indicatrix, HelixTangentIndicatrixIsACircle) {
  const double want = std::sqrt(0.8 * 0.8 + 0.4 * 0.4) / 0.8;
  const auto h = helix();
  const ParametricCurve ct = spherical_indicatrix(h, Indicatrix::T);
  for (double t : {0.2, 1.4}) {
    const IndicatrixCurvature ic = indicatrix_kappa_tau(h, t, Indicatrix::T);
    EXPECT_NEAR(ic.kappa, want, 1e-12);
    EXPECT_NEAR(ic.tau, 0.0, 1e-12);
    EXPECT_NEAR(frenet(ct, t).kappa, want, 1e-10);
    EXPECT_NEAR(norm(ct.position(t)), 1.0, 1e-15);
  }
}

TEST(Indicatrix, ClosedFormsAgreeWithTheIndicatrixCurves) {
  const auto c = twisted_cubic();
  const ParametricCurve ct = spherical_indicatrix(c, Indicatrix::T);
  // Binormal of (t, t^2, t^3) is proportional to (3t^2, -3t, 1).
  const auto cb = make_curve(
      [](auto t) {
        using T = decltype(t);
        Vec3T<T> b{3.0 * t * t, -3.0 * t, T(1.0)};
        return b / sqrt(dot(b, b));
      },
      {-2, 2});
  for (double t : {-0.6, 0.3, 0.8}) {
    const IndicatrixCurvature it = indicatrix_kappa_tau(c, t, Indicatrix::T);
    const FrenetData ft = frenet(ct, t);
    EXPECT_NEAR(it.kappa, ft.kappa, 1e-9);
    EXPECT_NEAR(it.tau, ft.tau, 1e-8);
    const IndicatrixCurvature ib = indicatrix_kappa_tau(c, t, Indicatrix::B);
    const FrenetData fb = frenet(cb, t);
    EXPECT_NEAR(ib.kappa, fb.kappa, 1e-9);
    EXPECT_NEAR(ib.tau, fb.tau, 1e-8);
    // Tangents of the T and B indicatrices are parallel.
    const ParametricCurve cbk = spherical_indicatrix(c, Indicatrix::B);
    EXPECT_LE(norm(cross(normalized(coefficient(ct.jet(t), 1)), normalized(coefficient(cbk.jet(t), 1)))), 1e-8);
    EXPECT_LE(norm(cbk.position(t) - cb.position(t)), 1e-12);
  }
}

TEST(Reconstruct, CircleCloses) {
  const ReconstructedCurve rc =
      reconstruct_from_kappa_tau([](double) { return 0.5; }, [](double) { return 0.0; }, {0, 0, 0}, {}, 4 * kPi);
  EXPECT_LE(norm(rc.r.back() - rc.r.front()), 1e-6);
  EXPECT_NEAR(rc.s.back(), 4 * kPi, 1e-12);
  for (const Vec3& p : rc.r) EXPECT_NEAR(norm(p - Vec3{0, 2, 0}), 2.0, 1e-8);
}

TEST(Reconstruct, HelixIsCongruentAfterAlignment) {
  const double w = std::sqrt(1.25);
  const ReconstructedCurve rc = reconstruct_from_kappa_tau([](double) { return 0.8; }, [](double) { return 0.4; },
                                                           {0, 0, 0}, {}, 10.0, {}, 0.1);
  std::vector<Vec3> analytic;
  for (double s : rc.s) analytic.push_back({std::cos(s / w), std::sin(s / w), 0.5 * s / w});
  EXPECT_LE(rigid_align(rc.r, analytic).rms, 1e-5);
}

TEST(Reconstruct, RotatedInitialFrameGivesTheSameTrace) {
  auto k = [](double s) { return 1.0 + 0.3 * std::sin(s); };
  auto t = [](double s) { return 0.2 * s; };
  const Frame rotated{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
  const ReconstructedCurve a = reconstruct_from_kappa_tau(k, t, {0, 0, 0}, {}, 6.0, {}, 0.1);
  const ReconstructedCurve b = reconstruct_from_kappa_tau(k, t, {1, 2, 3}, rotated, 6.0, {}, 0.1);
  ASSERT_EQ(a.r.size(), b.r.size());
  const RigidAlignment al = rigid_align(a.r, b.r);
  EXPECT_LE(al.rms, 1e-8);
  EXPECT_LE(norm(apply(al, Vec3{0, 0, 0}) - Vec3{1, 2, 3}), 1e-8);
  for (const Frame& f : b.frame) EXPECT_NEAR(dot(cross(f.T, f.N), f.B), 1.0, 1e-12);
}

TEST(Reconstruct, NonPositiveCurvatureIsRejected) {
  EXPECT_EQ(code_of([] {
              reconstruct_from_kappa_tau([](double) { return 0.0; }, [](double) { return 0.0; }, {}, {}, 1.0);
            }),
            ErrorCode::InvalidArgument);
}

TEST(Chebyshev, InterpolatesPolynomialsExactly) {
  const Interval d{-1, 3};
  const auto nodes = chebyshev_nodes(d, 6);
  ASSERT_EQ(nodes.size(), 6u);
  EXPECT_TRUE(std::is_sorted(nodes.begin(), nodes.end()));
  std::vector<Vec3> values;
  for (double x : nodes) values.push_back({x * x * x, 1 - x, 2 * x * x});
  const ParametricCurve p = chebyshev_curve(values, d);
  for (double x : {-0.8, 0.0, 1.7, 2.9}) {
    const CurvePoint j = p.jet(x);
    EXPECT_NEAR(j.x[0], x * x * x, 1e-12);
    EXPECT_NEAR(j.x[1], 3 * x * x, 1e-11);
    EXPECT_NEAR(j.x[3], 6.0, 1e-9);
    EXPECT_NEAR(j.z[2], 4.0, 1e-10);
  }
}

TEST(Alignment, RecoversAKnownMotion) {
  std::mt19937_64 rng(2);
  std::vector<Vec3> from, to;
  const double a = 0.7, c = std::cos(a), s = std::sin(a);
  for (int i = 0; i < 10; ++i) {
    const Vec3 p{test::uniform(rng, -1, 1), test::uniform(rng, -1, 1), test::uniform(rng, -1, 1)};
    from.push_back(p);
    to.push_back(Vec3{c * p.x - s * p.y, s * p.x + c * p.y, p.z} + Vec3{3, -1, 2});
  }
  const RigidAlignment al = rigid_align(from, to);
  EXPECT_LE(al.rms, 1e-12);
  EXPECT_NEAR(al.rotation[0][0], c, 1e-12);
  EXPECT_NEAR(al.rotation[1][0], s, 1e-12);
  EXPECT_LE(norm(al.translation - Vec3{3, -1, 2}), 1e-12);
}
