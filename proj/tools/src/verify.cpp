#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "commands.hpp"
#include "diffgeo/diffgeo.hpp"
#include "shape_source.hpp"

namespace diffgeo::cli {

namespace {

// Residual at one sample; nullopt means the identity does not apply there.
using Check = std::function<std::optional<double>(const std::vector<double>&, std::mt19937_64&)>;

struct Suite {
  std::string name;
  Check check;
};

// FNV-1a, so suite streams do not depend on the standard library's hash.
std::uint64_t stable_hash(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : s) h = (h ^ ch) * 1099511628211ull;
  return h;
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }
double symmetric(std::mt19937_64& rng) { return 2.0 * unit(rng) - 1.0; }

bool is_skippable(ErrorCode c) {
  switch (c) {
    case ErrorCode::SingularPoint:
    case ErrorCode::InflectionPoint:
    case ErrorCode::ZeroTorsion:
    case ErrorCode::SingularSurfacePoint:
    case ErrorCode::UmbilicPoint:
    case ErrorCode::AsymptoticPoint:
    case ErrorCode::NonOrthogonalPatch:
    case ErrorCode::InvalidArgument:
      return true;
    default:
      return false;
  }
}

// A short random quadratic through (u0, v0).
SurfaceCurve random_curve(const ParametricSurface& s, double u0, double v0, std::mt19937_64& rng) {
  const double a = symmetric(rng), b = symmetric(rng), c = symmetric(rng), d = symmetric(rng);
  const double h = 0.02 * std::min(s.domain().u.width(), s.domain().v.width());
  return make_surface_curve(
      s, [=](auto t) { return std::array<decltype(t), 2>{u0 + a * t + b * t * t, v0 + c * t + d * t * t}; },
      {-h, h});
}

std::vector<Suite> surface_suites(const ParametricSurface& s) {
  std::vector<Suite> out;
  out.push_back({"beltrami-enneper", [&](const std::vector<double>& x, std::mt19937_64&) -> std::optional<double> {
                   const FormBundle fb = forms(s, x[0], x[1]);
                   if (curvatures(fb, s.scale()).shape != ShapeClass::Hyperbolic) return std::nullopt;
                   const double sgn = fb.f >= 0 ? 1.0 : -1.0;
                   std::optional<double> worst;
                   for (int family = 0; family < 2; ++family) {
                     try {
                       const AsymptoticTorsion t = asymptotic_line_torsion(s, {x[0], x[1]}, family, sgn);
                       worst = std::max(worst.value_or(0.0), t.residual / std::max(1.0, std::abs(t.K)));
                     } catch (const Error& e) {
                       // A straight asymptotic line has no torsion.
                       if (e.code() != ErrorCode::InflectionPoint) throw;
                     }
                   }
                   return worst;
                 }});
  out.push_back({"bonnet", [&](const std::vector<double>& x, std::mt19937_64& rng) -> std::optional<double> {
                   return bonnet_torsion_check(random_curve(s, x[0], x[1], rng), 0.0).residual;
                 }});
  out.push_back({"christoffel", [&](const std::vector<double>& x, std::mt19937_64&) -> std::optional<double> {
                   return std::max(christoffel_crosscheck(s, x[0], x[1]), metric_derivative_residual(s, x[0], x[1]));
                 }});
  out.push_back({"codazzi", [&](const std::vector<double>& x, std::mt19937_64&) -> std::optional<double> {
                   return codazzi_compatibility_residuals(s, x[0], x[1]).max();
                 }});
  out.push_back({"curvature-split", [&](const std::vector<double>& x, std::mt19937_64& rng) -> std::optional<double> {
                   const CurvatureSplit c = curvature_split(random_curve(s, x[0], x[1], rng), 0.0);
                   const double r = std::max({std::abs(c.kappa_g - c.kappa_g_extrinsic),
                                              std::abs(c.kappa_g - c.kappa_g_intrinsic),
                                              std::abs(c.kappa_n - c.kappa_n_quotient),
                                              std::abs(c.kappa * c.kappa - c.kappa_n * c.kappa_n - c.kappa_g * c.kappa_g)});
                   return r / std::max(1.0, c.kappa * c.kappa);
                 }});
  out.push_back({"egregium", [&](const std::vector<double>& x, std::mt19937_64&) -> std::optional<double> {
                   const double ke = curvatures(s, x[0], x[1]).K;
                   return std::abs(gaussian_curvature_intrinsic(s, x[0], x[1]) - ke) / std::max(1.0, std::abs(ke));
                 }});
  out.push_back({"euler", [&](const std::vector<double>& x, std::mt19937_64&) -> std::optional<double> {
                   const FormBundle fb = forms(s, x[0], x[1]);
                   const CurvatureData cd = curvatures(fb, s.scale());
                   if (cd.is_umbilic) return std::nullopt;
                   double worst = 0.0;
                   for (int i = 0; i < 16; ++i) {
                     const double th = std::numbers::pi * i / 16.0, c = std::cos(th), sn = std::sin(th);
                     const Param2 d = {c * cd.comp1[0] + sn * cd.comp2[0], c * cd.comp1[1] + sn * cd.comp2[1]};
                     const double euler = cd.kappa1 * c * c + cd.kappa2 * sn * sn;
                     worst = std::max(worst, std::abs(normal_curvature(fb, d) - euler));
                   }
                   return worst / std::max({1.0, std::abs(cd.kappa1), std::abs(cd.kappa2)});
                 }});
  out.push_back({"form-identity", [&](const std::vector<double>& x, std::mt19937_64&) -> std::optional<double> {
                   const FormIdentityResiduals r = form_identity_residual(s, x[0], x[1]);
                   return std::max(r.identity, r.trace);
                 }});
  out.push_back({"gauss-weingarten", [&](const std::vector<double>& x, std::mt19937_64&) -> std::optional<double> {
                   return gauss_weingarten_residuals(s, x[0], x[1]).max();
                 }});
  out.push_back({"geodesic-torsion", [&](const std::vector<double>& x, std::mt19937_64& rng) -> std::optional<double> {
                   const GeodesicTorsion g = geodesic_torsion(random_curve(s, x[0], x[1], rng), 0.0);
                   if (!g.principal_form) return std::nullopt;
                   return std::abs(g.tau_g - *g.principal_form);
                 }});
  out.push_back({"liouville", [&](const std::vector<double>& x, std::mt19937_64& rng) -> std::optional<double> {
                   return liouville_check(random_curve(s, x[0], x[1], rng), 0.0).residual;
                 }});
  out.push_back({"meusnier", [&](const std::vector<double>& x, std::mt19937_64& rng) -> std::optional<double> {
                   const double a = symmetric(rng), c = symmetric(rng), b = symmetric(rng), d = symmetric(rng);
                   const double u0 = x[0], v0 = x[1];
                   const Interval dom{-0.01, 0.01};
                   const auto straight = make_surface_curve(
                       s, [=](auto t) { return std::array<decltype(t), 2>{u0 + a * t, v0 + c * t}; }, dom);
                   const auto bent = make_surface_curve(
                       s,
                       [=](auto t) { return std::array<decltype(t), 2>{u0 + a * t + b * t * t, v0 + c * t + d * t * t}; },
                       dom);
                   const double k1 = curvature_split(straight, 0.0).kappa_n, k2 = curvature_split(bent, 0.0).kappa_n;
                   return std::abs(k1 - k2) / std::max(1.0, std::abs(k1));
                 }});
  out.push_back({"rodrigues", [&](const std::vector<double>& x, std::mt19937_64&) -> std::optional<double> {
                   const PrincipalDirections p = principal_direction_field(s, x[0], x[1]);
                   return std::max(p.rodrigues[0], p.rodrigues[1]) /
                          std::max({1.0, std::abs(p.kappa1), std::abs(p.kappa2)});
                 }});
  return out;
}

std::vector<Suite> curve_suites(const ParametricCurve& c) {
  std::vector<Suite> out;
  out.push_back({"frame", [&](const std::vector<double>& x, std::mt19937_64&) -> std::optional<double> {
                   const FrenetData f = frenet(c, x[0]);
                   return std::max({std::abs(norm(f.T) - 1), std::abs(norm(f.N) - 1), std::abs(norm(f.B) - 1),
                                    std::abs(dot(f.T, f.N)), std::abs(dot(f.T, f.B)), std::abs(dot(f.N, f.B)),
                                    norm(cross(f.T, f.N) - f.B)});
                 }});
  out.push_back({"frenet", [&](const std::vector<double>& x, std::mt19937_64&) -> std::optional<double> {
                   const FrenetResiduals r = frenet_residuals(c, x[0]);
                   return std::max({r.dT, r.dN, r.dB, r.kappa_tau, r.lancret});
                 }});
  return out;
}

}  // namespace

Outcome cmd_verify(const CommonOptions& c, const VerifyOptions& o) {
  const ShapeSource src = load_shape(c.shape, c.file, c.params);
  if (o.samples < 1) throw UsageError("--samples must be positive");
  const double tol = resolve_tolerance(c, 1e-7);
  const bool is_curve = src.shape.kind == ShapeKind::Curve;
  std::vector<Suite> suites = is_curve ? curve_suites(*src.shape.curve) : surface_suites(*src.shape.surface);
  if (!o.suites.empty()) {
    std::vector<Suite> chosen;
    for (const auto& name : o.suites) {
      const auto it = std::find_if(suites.begin(), suites.end(), [&](const Suite& s) { return s.name == name; });
      if (it == suites.end()) {
        std::string known;
        for (const auto& s : suites) known += (known.empty() ? "" : ", ") + s.name;
        throw UsageError("unknown suite '" + name + "' (known: " + known + ")");
      }
      if (std::none_of(chosen.begin(), chosen.end(), [&](const Suite& s) { return s.name == name; }))
        chosen.push_back(*it);
    }
    std::sort(chosen.begin(), chosen.end(), [](const Suite& a, const Suite& b) { return a.name < b.name; });
    suites = std::move(chosen);
  }

  // Sample points stay off the outer 5% of the domain.
  std::mt19937_64 rng(c.seed);
  auto inner = [&](const Interval& d) { return d.lo + d.width() * (0.05 + 0.9 * unit(rng)); };
  std::vector<std::vector<double>> points;
  for (int i = 0; i < o.samples; ++i) {
    if (is_curve)
      points.push_back({inner(src.shape.curve->domain())});
    else
      points.push_back({inner(src.shape.surface->domain().u), inner(src.shape.surface->domain().v)});
  }

  Outcome out;
  out.body["shape"] = src.descriptor;
  out.body["seed"] = c.seed;
  out.body["samples"] = o.samples;
  Json results = Json::array();
  int failed = 0;
  double overall = 0.0;
  for (const Suite& suite : suites) {
    // Each suite draws its curve coefficients from its own stream.
    std::mt19937_64 local(c.seed ^ stable_hash(suite.name));
    int evaluated = 0, skipped = 0;
    double worst = 0.0;
    Json worst_point;
    Json first_error;
    for (const auto& p : points) {
      try {
        const auto r = suite.check(p, local);
        if (!r) {
          ++skipped;
          continue;
        }
        ++evaluated;
        if (!(*r <= worst) || std::isnan(*r)) {
          worst = std::isnan(*r) ? std::numeric_limits<double>::infinity() : *r;
          worst_point = point_json(src.variables, p);
        }
      } catch (const Error& e) {
        if (is_skippable(e.code())) {
          ++skipped;
          continue;
        }
        ++evaluated;
        worst = std::numeric_limits<double>::infinity();
        if (first_error.is_null()) first_error = {{"point", point_json(src.variables, p)}, {"error", error_json(e)}};
      }
    }
    const bool passed = evaluated == 0 || worst <= tol;
    Json r = {{"name", suite.name},
              {"status", evaluated == 0 ? "skipped" : (passed ? "passed" : "failed")},
              {"evaluated", evaluated},
              {"skipped", skipped},
              {"max_residual", worst},
              {"tolerance", tol}};
    if (!worst_point.is_null()) r["worst_point"] = worst_point;
    if (!first_error.is_null()) r["first_error"] = first_error;
    results.push_back(std::move(r));
    if (!passed) ++failed;
    if (evaluated > 0) overall = std::max(overall, worst);
  }
  out.body["suites"] = std::move(results);
  out.body["summary"] = {{"suites", suites.size()}, {"failed", failed}, {"max_residual", overall}};
  if (failed > 0) out.exit = kSuiteFailed;
  return out;
}

}  // namespace diffgeo::cli
