#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "diffgeo/expr.hpp"
#include "diffgeo/jet.hpp"
#include "diffgeo/ode.hpp"
#include "diffgeo/quadrature.hpp"
#include "diffgeo/vec3.hpp"

namespace diffgeo {

inline constexpr int kCurveOrder = 4;
using CurveJet = Jet1<kCurveOrder>;
using CurvePoint = Vec3T<CurveJet>;

/// A map t -> R^3 over a closed interval, evaluable on plain values and jets.
class ParametricCurve {
 public:
  class Model {
   public:
    virtual ~Model() = default;
    virtual Vec3 at(double t) const = 0;
    virtual CurvePoint at(const CurveJet& t) const = 0;
  };

  ParametricCurve(std::shared_ptr<const Model> model, Interval domain, int valid_order = kCurveOrder);

  Vec3 position(double t) const { return model_->at(t); }
  /// Jet of r at t with t itself as the variable.
  CurvePoint jet(double t) const { return model_->at(CurveJet::variable(t)); }
  /// Composition r(t(w)) for an arbitrary parameter jet.
  CurvePoint eval(const CurveJet& t) const { return model_->at(t); }

  const Interval& domain() const noexcept { return domain_; }
  /// Highest derivative order carried exactly; higher coefficients are NaN.
  int valid_order() const noexcept { return valid_order_; }
  /// max(|r|, 1) over 16 interior probes.
  double scale() const noexcept { return scale_; }
  double eps_reg() const noexcept { return 1e-12 * scale_; }
  double eps_inflect() const noexcept { return 1e-10 / scale_; }

 private:
  std::shared_ptr<const Model> model_;
  Interval domain_;
  int valid_order_;
  double scale_ = 1.0;
};

namespace detail {

template <class F>
class LambdaCurve final : public ParametricCurve::Model {
 public:
  explicit LambdaCurve(F f) : f_(std::move(f)) {}
  Vec3 at(double t) const override { return f_(t); }
  CurvePoint at(const CurveJet& t) const override { return f_(t); }

 private:
  F f_;
};

/// Base for curves defined through a local jet at each parameter value.
class LocalJetCurve : public ParametricCurve::Model {
 public:
  Vec3 at(double t) const override { return value_of(local(t)); }
  CurvePoint at(const CurveJet& t) const override {
    const double t0 = t.value();
    return compose(local(t0), t - t0);
  }
  /// Jet of the curve at t0 in the variable t.
  virtual CurvePoint local(double t0) const = 0;
};

}  // namespace detail

/// Wraps a generic callable `f(auto t) -> Vec3T<decltype(t)>`.
template <class F>
ParametricCurve make_curve(F f, Interval domain) {
  return ParametricCurve(std::make_shared<detail::LambdaCurve<F>>(std::move(f)), domain);
}

/// Curve from a loaded definition. Parameters outside the declared interval are
/// rejected with OutOfDomain unless `clamp` is set.
ParametricCurve curve_from_definition(const ShapeDefinition& def, bool clamp = false);

// ---------------------------------------------------------------------------
// Frenet apparatus
// ---------------------------------------------------------------------------

struct FrenetData {
  Vec3 T, N, B;
  double kappa = 0.0;
  double tau = 0.0;
  Vec3 darboux;
  double speed = 0.0;  // |dr/dt|
};

/// Curvature only; defined at inflection points. Throws SingularPoint.
double curvature(const ParametricCurve& c, double t);

/// Throws SingularPoint or InflectionPoint.
FrenetData frenet(const ParametricCurve& c, double t);

struct FrenetResiduals {
  double dT = 0.0;  // |dT/ds - kappa N|
  double dN = 0.0;  // |dN/ds - (tau B - kappa T)|
  double dB = 0.0;  // |dB/ds + tau N|
  double kappa_tau = 0.0;  // | |kappa tau| - |T'.B'| |
  double lancret = 0.0;    // | |N'|^2 - (kappa^2 + tau^2) |
};

FrenetResiduals frenet_residuals(const ParametricCurve& c, double t);

/// kappa, tau and their arclength derivatives, from order-4 jets.
struct CurvatureRates {
  double kappa = 0.0, tau = 0.0;
  double dkappa = 0.0, dtau = 0.0;    // d/ds
  double d2kappa = 0.0;               // d2/ds2
};

CurvatureRates curvature_rates(const ParametricCurve& c, double t);

double arc_length(const ParametricCurve& c, double t1, double t2, const QuadSpec& spec = {});

/// Unit-speed reparameterization over [0, L]. The map s -> t is integrated as an
/// ODE; local jets of t(s) come from Picard iteration, so |dr/ds| = 1 to rounding.
ParametricCurve reparam_to_arclength(const ParametricCurve& c, const OdeSpec& spec = {});

struct OsculatingCircle {
  Vec3 center;
  double radius = 0.0;
};

struct OsculatingSphere {
  Vec3 center;
  double radius = 0.0;
};

OsculatingCircle osculating_circle(const ParametricCurve& c, double t);
/// Throws ZeroTorsion when tau vanishes.
OsculatingSphere osculating_sphere(const ParametricCurve& c, double t);

struct Line3 {
  Vec3 point, direction;
};
struct Plane3 {
  Vec3 point, normal;
};

struct FrenetLinesPlanes {
  Line3 tangent, principal_normal, binormal;
  Plane3 osculating, rectifying, normal;
};

FrenetLinesPlanes frenet_lines_and_planes(const ParametricCurve& c, double t);

enum class CurveKind { StraightLine, Planar, Helix, General };

std::string_view to_string(CurveKind k) noexcept;

struct CurveClass {
  CurveKind kind = CurveKind::General;
  double max_kappa = 0.0;
  double max_abs_tau = 0.0;
  double ratio_rel_std = 0.0;  // relative standard deviation of tau/kappa
};

CurveClass classify_curve(const ParametricCurve& c, int n_samples = 64, double tol = 1e-8);

/// R_kappa / R_tau + d/ds (R_tau dR_kappa/ds). Needs order-4 jets.
double sphericity_residual(const ParametricCurve& c, double t);

/// r_e(s) + (c - s) T_e(s) for a unit-speed input curve.
ParametricCurve involute(const ParametricCurve& natural, double c);

enum class Indicatrix { T, N, B };

ParametricCurve spherical_indicatrix(const ParametricCurve& c, Indicatrix which);

struct IndicatrixCurvature {
  double kappa = 0.0;
  double tau = 0.0;
};

/// Closed-form curvature and torsion of the T or B indicatrix.
IndicatrixCurvature indicatrix_kappa_tau(const ParametricCurve& c, double t, Indicatrix which);

// ---------------------------------------------------------------------------
// Reconstruction from curvature and torsion
// ---------------------------------------------------------------------------

struct Frame {
  Vec3 T{1, 0, 0}, N{0, 1, 0}, B{0, 0, 1};
};

struct ReconstructedCurve {
  std::vector<double> s;
  std::vector<Vec3> r;
  std::vector<Frame> frame;
};

/// Integrates dr/ds = T with the Frenet-Serret system, re-orthonormalizing the
/// frame after each accepted step. Samples are spaced by at most `sample_step`.
ReconstructedCurve reconstruct_from_kappa_tau(const std::function<double(double)>& kappa,
                                              const std::function<double(double)>& tau, const Vec3& r0,
                                              const Frame& frame0, double length, const OdeSpec& spec = {},
                                              double sample_step = 0.01);

/// Same integration, recording exactly the requested arclengths (ascending, in (0, length)).
ReconstructedCurve reconstruct_from_kappa_tau_at(const std::function<double(double)>& kappa,
                                                 const std::function<double(double)>& tau, const Vec3& r0,
                                                 const Frame& frame0, double length, std::span<const double> s_values,
                                                 const OdeSpec& spec = {});

/// Chebyshev points of the first kind on an interval, ascending.
std::vector<double> chebyshev_nodes(Interval domain, int n);
/// Polynomial curve through values at `chebyshev_nodes(domain, values.size())`.
ParametricCurve chebyshev_curve(std::span<const Vec3> values, Interval domain);

struct RigidAlignment {
  std::array<std::array<double, 3>, 3> rotation{};  // row-major, det = +1
  Vec3 translation;
  double rms = 0.0;  // after alignment
};

/// Least-squares rotation and translation taking `from` onto `to` (Kabsch).
RigidAlignment rigid_align(std::span<const Vec3> from, std::span<const Vec3> to);
Vec3 apply(const RigidAlignment& a, const Vec3& p);

// ---------------------------------------------------------------------------
// Jet-level helpers shared with the surface-curve kernel
// ---------------------------------------------------------------------------

namespace detail {

/// Unit tangent, binormal, curvature and torsion as jets in t, from a position jet.
struct FrenetJets {
  Vec3T<Jet1<3>> T;
  Vec3T<Jet1<2>> B;
  Vec3T<Jet1<2>> N;
  Jet1<3> speed;
  Jet1<2> kappa;
  Jet1<1> tau;
};

FrenetJets frenet_jets(const CurvePoint& r);

/// Marks coefficients above `order` as NaN.
void poison_above(CurvePoint& p, int order);

}  // namespace detail

}  // namespace diffgeo
