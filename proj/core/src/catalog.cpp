#include "diffgeo/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "diffgeo/errors.hpp"

namespace diffgeo {

namespace {

constexpr double kPi = std::numbers::pi;

using Params = std::map<std::string, double>;
using Texts = std::map<std::string, std::string>;

struct Builder {
  CatalogEntry entry;
  std::function<void(const Params&)> validate;
  std::function<Shape(const Params&, const Texts&)> build;
  std::function<std::map<std::string, double>(const Params&, const Texts&, std::span<const double>)> reference;
};

void require_positive(const Params& p, std::initializer_list<const char*> names) {
  for (const char* n : names)
    if (!(p.at(n) > 0.0))
      throw Error(ErrorCode::InvalidParameter, std::string("parameter ") + n + " must be positive");
}

Shape curve_shape(ParametricCurve c) {
  Shape s;
  s.kind = ShapeKind::Curve;
  s.curve = std::move(c);
  return s;
}

Shape surface_shape(ParametricSurface surf, Closure closure = {}) {
  Shape s;
  s.kind = ShapeKind::Surface;
  s.surface = std::move(surf);
  s.closure = closure;
  return s;
}

// Sum x^2/a^4 + y^2/b^4 + z^2/c^4 enters the Gaussian curvature of every central quadric.
double quadric_K(const Vec3& r, double a, double b, double c, double sign) {
  const double q = r.x * r.x / std::pow(a, 4) + r.y * r.y / std::pow(b, 4) + r.z * r.z / std::pow(c, 4);
  return sign / (a * a * b * b * c * c * q * q);
}

// Monge patch (u, v, h(u, v)) curvatures from the height derivatives.
std::map<std::string, double> monge_reference(double hu, double hv, double huu, double huv, double hvv) {
  const double w = 1.0 + hu * hu + hv * hv;
  return {{"K", (huu * hvv - huv * huv) / (w * w)},
          {"H", ((1.0 + hv * hv) * huu - 2.0 * hu * hv * huv + (1.0 + hu * hu) * hvv) / (2.0 * std::pow(w, 1.5))}};
}

Expr monge_height(const Texts& texts) {
  const auto it = texts.find("f");
  const std::string text = it == texts.end() ? "u^2 - v^2" : it->second;
  const std::vector<std::string> names = {"u", "v"};
  try {
    return parse_expression(text).bind(names);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidParameter, std::string("monge height f: ") + e.what());
  }
}

std::vector<Builder> make_builders() {
  std::vector<Builder> b;
  auto add = [&](std::string name, ShapeKind kind, std::vector<CatalogParameter> params, std::string orientation,
                 auto validate, auto build, auto reference) {
    Builder x;
    x.entry.name = std::move(name);
    x.entry.kind = kind;
    x.entry.parameters = std::move(params);
    x.entry.orientation = std::move(orientation);
    x.validate = validate;
    x.build = build;
    if constexpr (!std::is_same_v<decltype(reference), std::nullptr_t>) {
      x.reference = reference;
      x.entry.has_reference = true;
    }
    b.push_back(std::move(x));
  };
  const auto none = [](const Params&) {};

  // Curves.
  add("line", ShapeKind::Curve, {{"dx", 1}, {"dy", 2}, {"dz", 3}}, "",
      [](const Params& p) {
        if (p.at("dx") == 0 && p.at("dy") == 0 && p.at("dz") == 0)
          throw Error(ErrorCode::InvalidParameter, "line direction must be nonzero");
      },
      [](const Params& p, const Texts&) {
        const double dx = p.at("dx"), dy = p.at("dy"), dz = p.at("dz");
        return curve_shape(make_curve([=](auto t) { return Vec3T<decltype(t)>{dx * t, dy * t, dz * t}; }, {-5, 5}));
      },
      [](const Params&, const Texts&, std::span<const double>) { return std::map<std::string, double>{{"kappa", 0}}; });

  add("circle", ShapeKind::Curve, {{"R", 1}}, "",
      [](const Params& p) { require_positive(p, {"R"}); },
      [](const Params& p, const Texts&) {
        const double R = p.at("R");
        return curve_shape(make_curve(
            [=](auto t) { return Vec3T<decltype(t)>{R * cos(t), R * sin(t), decltype(t)(0.0)}; }, {0, 2 * kPi}));
      },
      [](const Params& p, const Texts&, std::span<const double>) {
        return std::map<std::string, double>{{"kappa", 1.0 / p.at("R")}, {"tau", 0.0}};
      });

  add("ellipse", ShapeKind::Curve, {{"a", 2}, {"b", 1}}, "",
      [](const Params& p) { require_positive(p, {"a", "b"}); },
      [](const Params& p, const Texts&) {
        const double a = p.at("a"), bb = p.at("b");
        return curve_shape(make_curve(
            [=](auto t) { return Vec3T<decltype(t)>{a * cos(t), bb * sin(t), decltype(t)(0.0)}; }, {0, 2 * kPi}));
      },
      [](const Params& p, const Texts&, std::span<const double> x) {
        const double a = p.at("a"), bb = p.at("b"), t = x[0];
        const double w = a * a * std::sin(t) * std::sin(t) + bb * bb * std::cos(t) * std::cos(t);
        return std::map<std::string, double>{{"kappa", a * bb / std::pow(w, 1.5)}, {"tau", 0.0}};
      });

  add("helix", ShapeKind::Curve, {{"a", 1}, {"b", 0.5}}, "",
      [](const Params& p) { require_positive(p, {"a"}); },
      [](const Params& p, const Texts&) {
        const double a = p.at("a"), bb = p.at("b");
        return curve_shape(
            make_curve([=](auto t) { return Vec3T<decltype(t)>{a * cos(t), a * sin(t), bb * t}; }, {0, 4 * kPi}));
      },
      [](const Params& p, const Texts&, std::span<const double>) {
        const double a = p.at("a"), bb = p.at("b"), w = a * a + bb * bb;
        return std::map<std::string, double>{{"kappa", a / w}, {"tau", bb / w}};
      });

  add("spherical-spiral", ShapeKind::Curve, {{"R", 1}, {"c", 0.2}}, "",
      [](const Params& p) {
        require_positive(p, {"R", "c"});
        if (!(p.at("c") < 0.25)) throw Error(ErrorCode::InvalidParameter, "spiral rate c must stay below 0.25");
      },
      [](const Params& p, const Texts&) {
        const double R = p.at("R"), c = p.at("c");
        return curve_shape(make_curve(
            [=](auto t) {
              return Vec3T<decltype(t)>{R * cos(c * t) * cos(t), R * cos(c * t) * sin(t), R * sin(c * t)};
            },
            {-2 * kPi, 2 * kPi}));
      },
      nullptr);

  // Surfaces.
  add("plane", ShapeKind::Surface, {}, "+z", none,
      [](const Params&, const Texts&) {
        return surface_shape(make_surface(
            [](auto u, auto v) { return Vec3T<decltype(u)>{u, v, decltype(u)(0.0)}; }, {{-5, 5}, {-5, 5}}));
      },
      [](const Params&, const Texts&, std::span<const double>) {
        return std::map<std::string, double>{{"K", 0}, {"H", 0}};
      });

  add("polar-plane", ShapeKind::Surface, {}, "+z", none,
      [](const Params&, const Texts&) {
        return surface_shape(make_surface(
            [](auto u, auto v) { return Vec3T<decltype(u)>{u * cos(v), u * sin(v), decltype(u)(0.0)}; },
            {{0, 5}, {-kPi, kPi}}, false, true));
      },
      [](const Params&, const Texts&, std::span<const double>) {
        return std::map<std::string, double>{{"K", 0}, {"H", 0}};
      });

  add("sphere", ShapeKind::Surface, {{"R", 1}}, "outward",
      [](const Params& p) { require_positive(p, {"R"}); },
      [](const Params& p, const Texts&) {
        const double R = p.at("R");
        const Rectangle d{{-kPi, kPi}, {-kPi / 2, kPi / 2}};
        return surface_shape(
            make_surface(
                [=](auto u, auto v) {
                  return Vec3T<decltype(u)>{R * cos(v) * cos(u), R * cos(v) * sin(u), R * sin(v)};
                },
                d, true, false),
            {true, 2, d});
      },
      [](const Params& p, const Texts&, std::span<const double>) {
        const double R = p.at("R");
        return std::map<std::string, double>{{"K", 1 / (R * R)}, {"H", -1 / R}};
      });

  add("cylinder", ShapeKind::Surface, {{"rho", 1}}, "outward",
      [](const Params& p) { require_positive(p, {"rho"}); },
      [](const Params& p, const Texts&) {
        const double rho = p.at("rho");
        return surface_shape(make_surface(
            [=](auto u, auto v) { return Vec3T<decltype(u)>{rho * cos(u), rho * sin(u), v}; },
            {{-kPi, kPi}, {-5, 5}}, true, false));
      },
      [](const Params& p, const Texts&, std::span<const double>) {
        return std::map<std::string, double>{{"K", 0}, {"H", -0.5 / p.at("rho")}};
      });

  add("cone", ShapeKind::Surface, {{"c", 1}}, "toward the axis",
      [](const Params& p) { require_positive(p, {"c"}); },
      [](const Params& p, const Texts&) {
        const double c = p.at("c");
        return surface_shape(make_surface(
            [=](auto u, auto v) { return Vec3T<decltype(u)>{u * cos(v), u * sin(v), c * u}; },
            {{0.1, 5}, {-kPi, kPi}}, false, true));
      },
      [](const Params& p, const Texts&, std::span<const double> x) {
        const double c = p.at("c");
        return std::map<std::string, double>{{"K", 0}, {"H", c / (2 * x[0] * std::sqrt(1 + c * c))}};
      });

  add("ellipsoid", ShapeKind::Surface, {{"a", 3}, {"b", 2}, {"c", 1}}, "outward",
      [](const Params& p) { require_positive(p, {"a", "b", "c"}); },
      [](const Params& p, const Texts&) {
        const double a = p.at("a"), bb = p.at("b"), c = p.at("c");
        const Rectangle d{{-kPi, kPi}, {-kPi / 2, kPi / 2}};
        return surface_shape(
            make_surface(
                [=](auto u, auto v) {
                  return Vec3T<decltype(u)>{a * cos(v) * cos(u), bb * cos(v) * sin(u), c * sin(v)};
                },
                d, true, false),
            {true, 2, d});
      },
      [](const Params& p, const Texts&, std::span<const double> x) {
        const double a = p.at("a"), bb = p.at("b"), c = p.at("c");
        const Vec3 r{a * std::cos(x[1]) * std::cos(x[0]), bb * std::cos(x[1]) * std::sin(x[0]), c * std::sin(x[1])};
        return std::map<std::string, double>{{"K", quadric_K(r, a, bb, c, 1.0)}};
      });

  add("hyperboloid-one-sheet", ShapeKind::Surface, {{"a", 1}, {"b", 1}, {"c", 1}}, "outward",
      [](const Params& p) { require_positive(p, {"a", "b", "c"}); },
      [](const Params& p, const Texts&) {
        const double a = p.at("a"), bb = p.at("b"), c = p.at("c");
        return surface_shape(make_surface(
            [=](auto u, auto v) {
              return Vec3T<decltype(u)>{a * cosh(v) * cos(u), bb * cosh(v) * sin(u), c * sinh(v)};
            },
            {{-kPi, kPi}, {-2, 2}}, true, false));
      },
      [](const Params& p, const Texts&, std::span<const double> x) {
        const double a = p.at("a"), bb = p.at("b"), c = p.at("c");
        const Vec3 r{a * std::cosh(x[1]) * std::cos(x[0]), bb * std::cosh(x[1]) * std::sin(x[0]), c * std::sinh(x[1])};
        return std::map<std::string, double>{{"K", quadric_K(r, a, bb, c, -1.0)}};
      });

  add("hyperboloid-two-sheets", ShapeKind::Surface, {{"a", 1}, {"b", 1}, {"c", 1}}, "away from the sheet's axis",
      [](const Params& p) { require_positive(p, {"a", "b", "c"}); },
      [](const Params& p, const Texts&) {
        const double a = p.at("a"), bb = p.at("b"), c = p.at("c");
        return surface_shape(make_surface(
            [=](auto u, auto v) {
              return Vec3T<decltype(u)>{a * sinh(v) * cos(u), bb * sinh(v) * sin(u), c * cosh(v)};
            },
            {{-kPi, kPi}, {0.1, 2}}, true, false));
      },
      [](const Params& p, const Texts&, std::span<const double> x) {
        const double a = p.at("a"), bb = p.at("b"), c = p.at("c");
        const Vec3 r{a * std::sinh(x[1]) * std::cos(x[0]), bb * std::sinh(x[1]) * std::sin(x[0]), c * std::cosh(x[1])};
        return std::map<std::string, double>{{"K", quadric_K(r, a, bb, c, 1.0)}};
      });

  add("elliptic-paraboloid", ShapeKind::Surface, {{"a", 1}, {"b", 1}}, "+z",
      [](const Params& p) { require_positive(p, {"a", "b"}); },
      [](const Params& p, const Texts&) {
        const double a2 = p.at("a") * p.at("a"), b2 = p.at("b") * p.at("b");
        return surface_shape(make_surface(
            [=](auto u, auto v) { return Vec3T<decltype(u)>{u, v, u * u / a2 + v * v / b2}; }, {{-2, 2}, {-2, 2}}));
      },
      [](const Params& p, const Texts&, std::span<const double> x) {
        const double a2 = p.at("a") * p.at("a"), b2 = p.at("b") * p.at("b");
        return monge_reference(2 * x[0] / a2, 2 * x[1] / b2, 2 / a2, 0, 2 / b2);
      });

  add("hyperbolic-paraboloid", ShapeKind::Surface, {{"a", 1}, {"b", 1}}, "+z",
      [](const Params& p) { require_positive(p, {"a", "b"}); },
      [](const Params& p, const Texts&) {
        const double a2 = p.at("a") * p.at("a"), b2 = p.at("b") * p.at("b");
        return surface_shape(make_surface(
            [=](auto u, auto v) { return Vec3T<decltype(u)>{u, v, u * u / a2 - v * v / b2}; }, {{-2, 2}, {-2, 2}}));
      },
      [](const Params& p, const Texts&, std::span<const double> x) {
        const double a2 = p.at("a") * p.at("a"), b2 = p.at("b") * p.at("b");
        return monge_reference(2 * x[0] / a2, -2 * x[1] / b2, 2 / a2, 0, -2 / b2);
      });

  add("quadric-cone", ShapeKind::Surface, {{"a", 1}, {"b", 1}, {"c", 1}}, "toward the axis",
      [](const Params& p) { require_positive(p, {"a", "b", "c"}); },
      [](const Params& p, const Texts&) {
        const double a = p.at("a"), bb = p.at("b"), c = p.at("c");
        return surface_shape(make_surface(
            [=](auto u, auto v) { return Vec3T<decltype(u)>{a * u * cos(v), bb * u * sin(v), c * u}; },
            {{0.1, 5}, {-kPi, kPi}}, false, true));
      },
      [](const Params&, const Texts&, std::span<const double>) { return std::map<std::string, double>{{"K", 0}}; });

  add("torus", ShapeKind::Surface, {{"R", 3}, {"r", 1}}, "toward the tube's core circle",
      [](const Params& p) {
        require_positive(p, {"R", "r"});
        if (!(p.at("r") < p.at("R"))) throw Error(ErrorCode::InvalidParameter, "torus needs r < R");
      },
      [](const Params& p, const Texts&) {
        const double R = p.at("R"), r = p.at("r");
        const Rectangle d{{0, 2 * kPi}, {0, 2 * kPi}};
        return surface_shape(
            make_surface(
                [=](auto u, auto v) {
                  return Vec3T<decltype(u)>{(R + r * sin(v)) * cos(u), (R + r * sin(v)) * sin(u), r * cos(v)};
                },
                d, true, true),
            {true, 0, d});
      },
      [](const Params& p, const Texts&, std::span<const double> x) {
        const double R = p.at("R"), r = p.at("r"), s = std::sin(x[1]);
        return std::map<std::string, double>{{"K", s / (r * (R + r * s))},
                                             {"H", (R + 2 * r * s) / (2 * r * (R + r * s))}};
      });

  add("catenoid", ShapeKind::Surface, {{"c", 1}}, "away from the axis",
      [](const Params& p) { require_positive(p, {"c"}); },
      [](const Params& p, const Texts&) {
        const double c = p.at("c");
        return surface_shape(make_surface(
            [=](auto u, auto v) { return Vec3T<decltype(u)>{c * cosh(v / c) * cos(u), c * cosh(v / c) * sin(u), v}; },
            {{-kPi, kPi}, {-2, 2}}, true, false));
      },
      [](const Params& p, const Texts&, std::span<const double> x) {
        const double c = p.at("c"), ch = std::cosh(x[1] / c);
        return std::map<std::string, double>{{"K", -1 / (c * c * std::pow(ch, 4))}, {"H", 0}};
      });

  add("helicoid", ShapeKind::Surface, {{"c", 1}}, "", [](const Params&) {},
      [](const Params& p, const Texts&) {
        const double c = p.at("c");
        return surface_shape(make_surface(
            [=](auto u, auto v) { return Vec3T<decltype(u)>{v * cos(u), v * sin(u), c * u}; }, {{-kPi, kPi}, {-2, 2}}));
      },
      [](const Params& p, const Texts&, std::span<const double> x) {
        const double c = p.at("c"), w = c * c + x[1] * x[1];
        return std::map<std::string, double>{{"K", -c * c / (w * w)}, {"H", 0}};
      });

  add("enneper", ShapeKind::Surface, {}, "", none,
      [](const Params&, const Texts&) {
        return surface_shape(make_surface(
            [](auto u, auto v) {
              return Vec3T<decltype(u)>{u - u * u * u / 3.0 + u * v * v, v - v * v * v / 3.0 + v * u * u, u * u - v * v};
            },
            {{-1.5, 1.5}, {-1.5, 1.5}}));
      },
      [](const Params&, const Texts&, std::span<const double> x) {
        const double w = 1 + x[0] * x[0] + x[1] * x[1];
        return std::map<std::string, double>{{"K", -4 / std::pow(w, 4)}, {"H", 0}};
      });

  add("monge", ShapeKind::Surface, {}, "+z", none,
      [](const Params&, const Texts& t) {
        const Expr f = monge_height(t);
        return surface_shape(make_surface(
            [f](auto u, auto v) {
              using T = decltype(u);
              const std::array<T, 2> uv{u, v};
              return Vec3T<T>{u, v, f.evaluate(std::span<const T>(uv))};
            },
            {{-1, 1}, {-1, 1}}));
      },
      [](const Params&, const Texts& t, std::span<const double> x) {
        const Expr f = monge_height(t);
        const std::array<Jet2<2>, 2> uv{Jet2<2>::variable_u(x[0]), Jet2<2>::variable_v(x[1])};
        const Jet2<2> h = f.evaluate(std::span<const Jet2<2>>(uv));
        return monge_reference(h.d(1, 0), h.d(0, 1), h.d(2, 0), h.d(1, 1), h.d(0, 2));
      });

  add("pseudosphere", ShapeKind::Surface, {{"rho", 1}}, "toward the axis",
      [](const Params& p) { require_positive(p, {"rho"}); },
      [](const Params& p, const Texts&) {
        const double rho = p.at("rho");
        return surface_shape(make_surface(
            [=](auto u, auto v) {
              return Vec3T<decltype(u)>{rho / cosh(v) * cos(u), rho / cosh(v) * sin(u), rho * (v - tanh(v))};
            },
            {{-kPi, kPi}, {0.1, 3}}, true, false));
      },
      [](const Params& p, const Texts&, std::span<const double>) {
        return std::map<std::string, double>{{"K", -1 / (p.at("rho") * p.at("rho"))}};
      });

  for (auto& x : b)
    if (x.entry.name == "monge") x.entry.text_parameters = {"f"};
  return b;
}

const std::vector<Builder>& builders() {
  static const std::vector<Builder> b = make_builders();
  return b;
}

const Builder& find(std::string_view name) {
  for (const auto& b : builders())
    if (b.entry.name == name) return b;
  throw Error(ErrorCode::UnknownShape, "unknown shape '" + std::string(name) + "'");
}

Params resolve(const Builder& b, const Overrides& o) {
  Params p;
  for (const auto& d : b.entry.parameters) p[d.name] = d.value;
  for (const auto& [k, v] : o.numbers) {
    if (!p.contains(k))
      throw Error(ErrorCode::InvalidParameter, "shape '" + b.entry.name + "' has no parameter '" + k + "'");
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidParameter, "parameter '" + k + "' must be finite");
    p[k] = v;
  }
  for (const auto& [k, v] : o.texts) {
    const auto& tp = b.entry.text_parameters;
    if (std::find(tp.begin(), tp.end(), k) == tp.end())
      throw Error(ErrorCode::InvalidParameter, "shape '" + b.entry.name + "' has no text parameter '" + k + "'");
  }
  b.validate(p);
  return p;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> e;
    for (const auto& b : builders()) e.push_back(b.entry);
    return e;
  }();
  return entries;
}

const CatalogEntry& catalog_entry(std::string_view name) { return find(name).entry; }

Shape make_shape(std::string_view name, const Overrides& overrides) {
  const Builder& b = find(name);
  const Params p = resolve(b, overrides);
  Shape s = b.build(p, overrides.texts);
  s.name = b.entry.name;
  s.parameters = p;
  return s;
}

std::map<std::string, double> reference(std::string_view name, const Overrides& overrides,
                                        std::span<const double> point) {
  const Builder& b = find(name);
  if (!b.reference) throw Error(ErrorCode::NoReference, "shape '" + b.entry.name + "' has no closed-form references");
  const std::size_t need = b.entry.kind == ShapeKind::Curve ? 1 : 2;
  if (point.size() != need) throw Error(ErrorCode::InvalidArgument, "reference point has the wrong dimension");
  return b.reference(resolve(b, overrides), overrides.texts, point);
}

}  // namespace diffgeo
