#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "diffgeo/curve.hpp"
#include "diffgeo/expr.hpp"
#include "diffgeo/surface.hpp"

namespace diffgeo {

struct CatalogParameter {
  std::string name;
  double value = 0.0;
};

struct Closure {
  bool is_closed = false;
  int chi = 0;
  Rectangle rect;  // covers the closed surface exactly once
};

struct CatalogEntry {
  std::string name;
  ShapeKind kind = ShapeKind::Curve;
  std::vector<CatalogParameter> parameters;  // defaults
  std::vector<std::string> text_parameters;  // e.g. the height function of a Monge patch
  std::string orientation;                   // which side n = E1 x E2 points to
  bool has_reference = false;
};

/// Parameter overrides. Numbers and expression texts are kept apart.
struct Overrides {
  std::map<std::string, double> numbers;
  std::map<std::string, std::string> texts;
};

struct Shape {
  std::string name;
  ShapeKind kind = ShapeKind::Curve;
  std::map<std::string, double> parameters;  // resolved values
  std::optional<ParametricCurve> curve;
  std::optional<ParametricSurface> surface;
  Closure closure;
};

/// Registry in a fixed order.
const std::vector<CatalogEntry>& catalog_entries();
const CatalogEntry& catalog_entry(std::string_view name);  // throws UnknownShape

/// Throws UnknownShape or InvalidParameter.
Shape make_shape(std::string_view name, const Overrides& overrides = {});

/// Closed-form values at a point: t for curves, (u, v) for surfaces.
/// Curves report kappa and tau, surfaces K and H. Throws NoReference.
std::map<std::string, double> reference(std::string_view name, const Overrides& overrides,
                                        std::span<const double> point);

}  // namespace diffgeo
