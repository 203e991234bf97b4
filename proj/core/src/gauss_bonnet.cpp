#include <cmath>
#include <numbers>

#include "diffgeo/errors.hpp"
#include "diffgeo/surface_curve.hpp"

namespace diffgeo {

double corner_angle(const Vec3& incoming, const Vec3& outgoing, const Vec3& n) {
  const double ni = norm(incoming), no = norm(outgoing);
  if (!(ni > 0.0) || !(no > 0.0)) throw Error(ErrorCode::ZeroVector, "corner tangents must be nonzero");
  const Vec3 a = incoming / ni, b = outgoing / no;
  return std::atan2(dot(n, cross(a, b)), dot(a, b));
}

GaussBonnetLocal gauss_bonnet_local(const ParametricSurface& s, const BoundaryLoop& loop,
                                    const std::vector<Rectangle>& region, const QuadSpec& spec) {
  const std::size_t n = loop.arcs.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "boundary loop has no arcs");
  if (!loop.corners.empty() && loop.corners.size() != n)
    throw Error(ErrorCode::InvalidArgument, "need one corner entry per arc");
  if (region.empty()) throw Error(ErrorCode::InvalidArgument, "region has no rectangles");
  spec.validate();

  GaussBonnetLocal out;
  for (std::size_t j = 0; j < n; ++j) {
    const SurfaceCurve& arc = loop.arcs[j];
    const SurfaceCurve& next = loop.arcs[(j + 1) % n];
    const Vec3 end = arc.position(arc.domain().hi), start = next.position(next.domain().lo);
    if (norm(end - start) > 1e-8 * s.scale())
      throw Error(ErrorCode::OpenLoop, "boundary arcs do not join", {static_cast<double>(j)});

    out.sum_kg += quad_adaptive(
        [&](double t) { return curvature_split(arc, t).kappa_g * norm(coefficient(arc.space_jet(t), 1)); },
        arc.domain(), spec);

    double angle;
    if (!loop.corners.empty() && loop.corners[j]) {
      angle = *loop.corners[j];
    } else {
      const Vec3 in = coefficient(arc.space_jet(arc.domain().hi), 1);
      const Vec3 outgoing = coefficient(next.space_jet(next.domain().lo), 1);
      const Param2 p = next.param(next.domain().lo);
      angle = corner_angle(in, outgoing, surface_frame(s, p[0], p[1]).n);
    }
    out.corner_angles.push_back(angle);
    out.sum_angles += angle;
  }
  for (const Rectangle& r : region) out.total_K += total_curvature(s, r, spec);
  out.defect = out.sum_kg + out.sum_angles + out.total_K - 2.0 * std::numbers::pi;
  return out;
}

GaussBonnetGlobal gauss_bonnet_global(const ParametricSurface& s, const Rectangle& closure, int chi,
                                      const QuadSpec& spec) {
  GaussBonnetGlobal out;
  out.total_K = total_curvature(s, closure, spec);
  out.defect = out.total_K - 2.0 * std::numbers::pi * chi;
  return out;
}

}  // namespace diffgeo
