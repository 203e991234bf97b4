#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string_view>
#include <utility>

#include "diffgeo/curve.hpp"
#include "diffgeo/expr.hpp"
#include "diffgeo/jet.hpp"
#include "diffgeo/quadrature.hpp"
#include "diffgeo/vec3.hpp"

namespace diffgeo {

inline constexpr int kSurfaceOrder = 3;
using SurfaceJet = Jet2<kSurfaceOrder>;

template <int N>
using SurfacePointT = Vec3T<Jet2<N>>;
using SurfacePoint = SurfacePointT<kSurfaceOrder>;

/// A map (u, v) -> R^3 over a parameter rectangle. The normal is E1 x E2 / |E1 x E2|.
class ParametricSurface {
 public:
  class Model {
   public:
    virtual ~Model() = default;
    virtual Vec3 at(double u, double v) const = 0;
    virtual SurfacePointT<2> at(const Jet2<2>& u, const Jet2<2>& v) const = 0;
    virtual SurfacePointT<3> at(const Jet2<3>& u, const Jet2<3>& v) const = 0;
    virtual SurfacePointT<4> at(const Jet2<4>& u, const Jet2<4>& v) const = 0;
    /// Composition with a curve (u(t), v(t)) in parameter space.
    virtual CurvePoint at(const CurveJet& u, const CurveJet& v) const = 0;
  };

  ParametricSurface(std::shared_ptr<const Model> model, Rectangle domain, bool periodic_u = false,
                    bool periodic_v = false);

  Vec3 position(double u, double v) const { return model_->at(u, v); }

  /// All partials of r at (u, v) up to total order N.
  template <int N = kSurfaceOrder>
  SurfacePointT<N> jet(double u, double v) const {
    return model_->at(Jet2<N>::variable_u(u), Jet2<N>::variable_v(v));
  }

  CurvePoint compose(const CurveJet& u, const CurveJet& v) const { return model_->at(u, v); }

  const Rectangle& domain() const noexcept { return domain_; }
  bool periodic_u() const noexcept { return periodic_u_; }
  bool periodic_v() const noexcept { return periodic_v_; }
  /// max(|r|, 1) over a 4x4 interior probe grid.
  double scale() const noexcept { return scale_; }
  /// Regularity threshold on |E1 x E2|.
  double eps_reg() const noexcept { return 1e-12 * scale_ * scale_; }

 private:
  std::shared_ptr<const Model> model_;
  Rectangle domain_;
  bool periodic_u_, periodic_v_;
  double scale_ = 1.0;
};

namespace detail {

template <class F>
class LambdaSurface final : public ParametricSurface::Model {
 public:
  explicit LambdaSurface(F f) : f_(std::move(f)) {}
  Vec3 at(double u, double v) const override { return f_(u, v); }
  SurfacePointT<2> at(const Jet2<2>& u, const Jet2<2>& v) const override { return f_(u, v); }
  SurfacePointT<3> at(const Jet2<3>& u, const Jet2<3>& v) const override { return f_(u, v); }
  SurfacePointT<4> at(const Jet2<4>& u, const Jet2<4>& v) const override { return f_(u, v); }
  CurvePoint at(const CurveJet& u, const CurveJet& v) const override { return f_(u, v); }

 private:
  F f_;
};

}  // namespace detail

/// Wraps a generic callable `f(auto u, auto v) -> Vec3T<decltype(u)>`.
template <class F>
ParametricSurface make_surface(F f, Rectangle domain, bool periodic_u = false, bool periodic_v = false) {
  return ParametricSurface(std::make_shared<detail::LambdaSurface<F>>(std::move(f)), domain, periodic_u,
                           periodic_v);
}

/// Surface from a loaded definition; out-of-domain parameters are rejected unless `clamp`.
ParametricSurface surface_from_definition(const ShapeDefinition& def, bool clamp = false);

// ---------------------------------------------------------------------------
// Pointwise quantities
// ---------------------------------------------------------------------------

struct SurfaceFrame {
  Vec3 E1, E2, n;
  double sqrt_a = 0.0;
};

/// Index order of the six Christoffel entries: 11-1, 11-2, 12-1, 12-2, 22-1, 22-2.
inline constexpr int christoffel_index(int a, int b, int c) noexcept {
  const int pair = (a == 0 && b == 0) ? 0 : (a == 1 && b == 1) ? 2 : 1;
  return 2 * pair + c;
}

struct FormBundle {
  double E = 0, F = 0, G = 0;
  double e = 0, f = 0, g = 0;
  double c11 = 0, c12 = 0, c22 = 0;
  std::array<double, 6> gamma1{};  // [ab, c]
  std::array<double, 6> gamma2{};  // Gamma^c_ab
  double sqrt_a = 0;
  Vec3 E1, E2, n;

  double a(int i, int j) const noexcept { return i == 0 ? (j == 0 ? E : F) : (j == 0 ? F : G); }
  double b(int i, int j) const noexcept { return i == 0 ? (j == 0 ? e : f) : (j == 0 ? f : g); }
  double det_a() const noexcept { return E * G - F * F; }
  double Gamma(int c, int a, int b) const noexcept { return gamma2[christoffel_index(a, b, c)]; }
  /// Space vector x^a E_a.
  Vec3 tangent(double du, double dv) const { return du * E1 + dv * E2; }
};

SurfaceFrame surface_frame(const ParametricSurface& s, double u, double v);
FormBundle forms(const ParametricSurface& s, double u, double v);

/// max |Gamma^c_ab - (dE_a/du^b) . E^c| over all entries.
double christoffel_crosscheck(const ParametricSurface& s, double u, double v);
/// max |da_ab/du^c - ([ac, b] + [bc, a])|.
double metric_derivative_residual(const ParametricSurface& s, double u, double v);

double riemann_R1212(const ParametricSurface& s, double u, double v);

enum class ShapeClass { Flat, Elliptic, Parabolic, Hyperbolic };
std::string_view to_string(ShapeClass c) noexcept;

struct CurvatureData {
  double K = 0, H = 0;
  double kappa1 = 0, kappa2 = 0;
  std::optional<Vec3> dir1, dir2;  // empty at umbilics
  ShapeClass shape = ShapeClass::Flat;
  bool is_umbilic = false;
  // Parameter-space components of the principal directions (unit in the metric).
  std::array<double, 2> comp1{}, comp2{};
};

CurvatureData curvatures(const ParametricSurface& s, double u, double v);
CurvatureData curvatures(const FormBundle& fb, double scale);

/// R1212 / a, the intrinsic route to K.
double gaussian_curvature_intrinsic(const ParametricSurface& s, double u, double v);

struct GaussWeingartenResiduals {
  std::array<double, 3> gauss{};       // 11, 12, 22
  std::array<double, 2> weingarten{};  // u, v
  double normal_cross = 0;             // |n_u x n_v - K E1 x E2|
  double max() const;
};

GaussWeingartenResiduals gauss_weingarten_residuals(const ParametricSurface& s, double u, double v);

struct CodazziResiduals {
  double codazzi1 = 0, codazzi2 = 0, compatibility = 0;
  double max() const;
};

CodazziResiduals codazzi_compatibility_residuals(const ParametricSurface& s, double u, double v);

struct FormIdentityResiduals {
  double identity = 0;  // max |K a - 2H b + c| scaled
  double trace = 0;     // |tr(a^-1 c) - (4H^2 - 2K)| scaled
};

FormIdentityResiduals form_identity_residual(const ParametricSurface& s, double u, double v);

double surface_area(const ParametricSurface& s, const Rectangle& region, const QuadSpec& spec = {});
double total_curvature(const ParametricSurface& s, const Rectangle& region, const QuadSpec& spec = {});

struct AngleResult {
  double theta = 0;  // [0, pi]
  double cos_theta = 0;
  double sin_theta = 0;  // signed, from eps_ab A^a B^b
  double consistency = 0;  // |cos^2 + sin^2 - 1|
};

AngleResult angle_between(const ParametricSurface& s, double u, double v, std::array<double, 2> A,
                          std::array<double, 2> B);

enum class DupinClass { Ellipse, TwoParallelLines, ConjugateHyperbolas, Undefined };
std::string_view to_string(DupinClass c) noexcept;

DupinClass dupin_classification(const ParametricSurface& s, double u, double v);

namespace detail {

/// Forms from a jet of total order >= 2 at a point; throws SingularSurfacePoint.
template <int N>
FormBundle forms_from_jet(const SurfacePointT<N>& r, double eps_reg, double u, double v);

}  // namespace detail

}  // namespace diffgeo
