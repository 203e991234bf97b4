#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "diffgeo/curve.hpp"
#include "diffgeo/errors.hpp"
#include "diffgeo/ode.hpp"
#include "diffgeo/quadrature.hpp"
#include "diffgeo/surface.hpp"

namespace diffgeo {

using Param2 = std::array<double, 2>;

/// A curve t -> (u(t), v(t)) in the parameter domain of a host surface.
class SurfaceCurve {
 public:
  class Model {
   public:
    virtual ~Model() = default;
    virtual Param2 at(double t) const = 0;
    virtual std::array<CurveJet, 2> at(const CurveJet& t) const = 0;
  };

  SurfaceCurve(ParametricSurface host, std::shared_ptr<const Model> model, Interval domain);

  const ParametricSurface& host() const noexcept { return host_; }
  const Interval& domain() const noexcept { return domain_; }

  Param2 param(double t) const { return model_->at(t); }
  std::array<CurveJet, 2> param_jet(double t) const { return model_->at(CurveJet::variable(t)); }
  /// Jet of the composite space curve r(u(t), v(t)).
  CurvePoint space_jet(double t) const;
  Vec3 position(double t) const;
  /// The composite space curve as a stand-alone curve.
  ParametricCurve space_curve() const;

 private:
  ParametricSurface host_;
  std::shared_ptr<const Model> model_;
  Interval domain_;
};

namespace detail {

template <class F>
class LambdaSurfaceCurve final : public SurfaceCurve::Model {
 public:
  explicit LambdaSurfaceCurve(F f) : f_(std::move(f)) {}
  Param2 at(double t) const override {
    const auto p = f_(t);
    return {p[0], p[1]};
  }
  std::array<CurveJet, 2> at(const CurveJet& t) const override {
    const auto p = f_(t);
    return {p[0], p[1]};
  }

 private:
  F f_;
};

}  // namespace detail

/// Wraps a generic callable `f(auto t) -> std::array<decltype(t), 2>`.
template <class F>
SurfaceCurve make_surface_curve(const ParametricSurface& host, F f, Interval domain) {
  return SurfaceCurve(host, std::make_shared<detail::LambdaSurfaceCurve<F>>(std::move(f)), domain);
}

/// Surface curve from expressions in the single variable `t`.
SurfaceCurve surface_curve_from_exprs(const ParametricSurface& host, const Expr& u, const Expr& v, Interval domain);

// ---------------------------------------------------------------------------
// Curvature of surface curves
// ---------------------------------------------------------------------------

struct CurvatureSplit {
  Vec3 K_vec;  // dT/ds
  double kappa_n = 0;
  double kappa_g = 0;
  Vec3 u_vec;  // n x T
  double kappa = 0;
  // Alternative routes for the same quantities.
  double kappa_n_quotient = 0;   // II / I
  double kappa_g_extrinsic = 0;  // r'' . (n x r') / |r'|^3
  double kappa_g_intrinsic = 0;  // from Christoffel symbols and (u, v) derivatives
};

CurvatureSplit curvature_split(const SurfaceCurve& c, double t);

/// Normal curvature along a tangent given by parameter components.
double normal_curvature(const FormBundle& fb, Param2 dir);

struct GeodesicTorsion {
  double tau_g = 0;
  std::optional<double> principal_form;  // (k1 - k2) sin(theta) cos(theta); empty at umbilics
};

GeodesicTorsion geodesic_torsion(const SurfaceCurve& c, double t);

// ---------------------------------------------------------------------------
// Geodesics
// ---------------------------------------------------------------------------

struct GeodesicSample {
  double s = 0, u = 0, v = 0, du = 0, dv = 0;
};

struct GeodesicPath {
  std::vector<GeodesicSample> samples;
  double length = 0;
  bool left_domain = false;
  double endpoint_error = 0;  // parameter-space miss for boundary-value solutions
  double initial_angle = 0;   // shooting angle in the start frame
};

/// Integrates the geodesic equations from (u0, v0) along `direction` (parameter
/// components, normalized to unit speed). Stops early if the path leaves a
/// non-periodic side of the domain. `sample_step` > 0 requests uniform samples.
GeodesicPath geodesic_ivp(const ParametricSurface& s, Param2 start, Param2 direction, double length,
                          const OdeSpec& spec = {}, double sample_step = 0.0);

class GeodesicMultiplicity : public Error {
 public:
  GeodesicMultiplicity(std::vector<GeodesicPath> paths);
  const std::vector<GeodesicPath>& paths() const noexcept { return paths_; }

 private:
  std::vector<GeodesicPath> paths_;
};

/// Shooting on the initial angle from up to 8 seeds around the parameter chord.
/// Throws NoConvergence, or GeodesicMultiplicity when distinct solutions tie in length.
GeodesicPath geodesic_bvp(const ParametricSurface& s, Param2 p0, Param2 p1, const OdeSpec& spec = {});

/// Geodesic curvature at a path sample, evaluated through the composite space curve.
double path_geodesic_curvature(const ParametricSurface& s, const GeodesicSample& sample);
/// a_ab du^a du^b at a sample.
double path_speed_squared(const ParametricSurface& s, const GeodesicSample& sample);

// ---------------------------------------------------------------------------
// Parallel transport
// ---------------------------------------------------------------------------

struct TransportSample {
  double t = 0;
  double A1 = 0, A2 = 0;
  double norm = 0;  // sqrt(a_ab A^a A^b)
};

struct TransportState {
  std::vector<TransportSample> samples;
};

TransportState parallel_transport(const SurfaceCurve& c, Param2 A0, const OdeSpec& spec = {},
                                  std::span<const double> outputs = {});

/// Space vector A^a E_a at curve parameter t.
Vec3 tangent_vector(const SurfaceCurve& c, double t, Param2 A);

struct Holonomy {
  double angle = 0;  // signed rotation about n from A(start) to A(end)
  Param2 start{}, end{};
};

/// Transport around a closed curve and measure the rotation.
Holonomy holonomy(const SurfaceCurve& loop, Param2 A0, const OdeSpec& spec = {});

// ---------------------------------------------------------------------------
// Special directions
// ---------------------------------------------------------------------------

struct TangentDirection {
  Param2 components{};  // unit in the metric
  Vec3 vector;
};

struct AsymptoticDirections {
  bool all_directions = false;  // flat point
  std::vector<TangentDirection> directions;
  std::vector<double> normal_curvatures;
};

AsymptoticDirections asymptotic_directions(const ParametricSurface& s, double u, double v);

struct PrincipalDirections {
  TangentDirection dir1, dir2;
  double kappa1 = 0, kappa2 = 0;
  std::array<double, 2> rodrigues{};  // |dn + kappa_i dr| for unit dr
};

/// Throws UmbilicPoint.
PrincipalDirections principal_direction_field(const ParametricSurface& s, double u, double v);

/// Direction conjugate to `dir`; throws NoUniqueConjugate where the form degenerates.
TangentDirection conjugate_direction(const ParametricSurface& s, double u, double v, Param2 dir);

/// Unit asymptotic direction of one family; 0 picks (g, q), 1 picks (q, e).
Param2 asymptotic_family_direction(const FormBundle& fb, int family, double f_sign);

struct AsymptoticLine {
  std::vector<GeodesicSample> samples;  // du, dv hold the unit direction
  bool left_domain = false;
};

AsymptoticLine trace_asymptotic_line(const ParametricSurface& s, Param2 start, int family, double length,
                                     const OdeSpec& spec = {}, double sample_step = 0.0);

struct AsymptoticTorsion {
  double tau = 0;
  double K = 0;
  double residual = 0;  // |tau^2 + K|
};

/// Torsion of the asymptotic line of a family through (u, v), from its local jet.
AsymptoticTorsion asymptotic_line_torsion(const ParametricSurface& s, Param2 at, int family, double f_sign);

// ---------------------------------------------------------------------------
// Gauss-Bonnet
// ---------------------------------------------------------------------------

struct BoundaryLoop {
  std::vector<SurfaceCurve> arcs;
  /// Exterior angle at the end of arc j; empty entries are computed from tangents.
  std::vector<std::optional<double>> corners;
};

struct GaussBonnetLocal {
  double sum_kg = 0;
  double sum_angles = 0;
  double total_K = 0;
  double defect = 0;
  std::vector<double> corner_angles;
};

GaussBonnetLocal gauss_bonnet_local(const ParametricSurface& s, const BoundaryLoop& loop,
                                    const std::vector<Rectangle>& region, const QuadSpec& spec = {1e-9, 30});

struct GaussBonnetGlobal {
  double total_K = 0;
  double defect = 0;
};

GaussBonnetGlobal gauss_bonnet_global(const ParametricSurface& s, const Rectangle& closure, int chi,
                                      const QuadSpec& spec = {1e-9, 30});

/// Exterior angle between an incoming and outgoing tangent about n, in (-pi, pi].
double corner_angle(const Vec3& incoming, const Vec3& outgoing, const Vec3& n);

// ---------------------------------------------------------------------------
// Identity checks
// ---------------------------------------------------------------------------

struct LiouvilleCheck {
  double kappa_g = 0;
  double liouville = 0;
  double residual = 0;
};

/// Throws NonOrthogonalPatch when F does not vanish.
LiouvilleCheck liouville_check(const SurfaceCurve& c, double t);

struct BonnetCheck {
  double tau_g = 0;
  double tau = 0;
  double dphi_ds = 0;
  double residual = 0;
};

/// tau_g = tau - dphi/ds with phi the signed angle from n to N about T.
BonnetCheck bonnet_torsion_check(const SurfaceCurve& c, double t);

}  // namespace diffgeo
