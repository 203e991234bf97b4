#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diffgeo/surface_curve.hpp"

namespace diffgeo::cli {

// Boundary description for gauss-bonnet, one directive per line:
//   arc t in [a, b] : u = <expr> ; v = <expr>
//   corner <expr> | corner auto      exterior angle at the end of the previous arc
//   region [u0, u1] x [v0, v1]       repeatable; the rectangles tile the enclosed region
// '#' starts a comment. Bounds and corners are constant expressions.
struct LoopArc {
  Expr u, v;
  Interval t;
};

struct LoopSpec {
  std::vector<LoopArc> arcs;
  std::vector<std::optional<double>> corners;
  std::vector<Rectangle> region;
};

/// Throws UsageError with the offending line number.
LoopSpec parse_loop(const std::string& text);

BoundaryLoop build_loop(const ParametricSurface& s, const LoopSpec& spec);

}  // namespace diffgeo::cli
