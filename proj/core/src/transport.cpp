#include <cmath>

#include "diffgeo/errors.hpp"
#include "diffgeo/surface_curve.hpp"

namespace diffgeo {

namespace {

Trajectory integrate_transport(const SurfaceCurve& c, Param2 A0, const OdeSpec& spec,
                               std::span<const double> outputs) {
  auto field = [&](double t, std::span<const double> y, std::span<double> dy) {
    const auto pj = c.param_jet(t);
    const double ut[2] = {pj[0][1], pj[1][1]};
    const FormBundle fb = forms(c.host(), pj[0].value(), pj[1].value());
    for (int k = 0; k < 2; ++k) {
      double acc = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) acc += fb.Gamma(k, a, b) * y[b] * ut[a];
      dy[k] = -acc;
    }
  };
  const Interval d = c.domain();
  return ode_solve(field, {A0[0], A0[1]}, d.lo, d.hi, spec, {}, outputs);
}

}  // namespace

Vec3 tangent_vector(const SurfaceCurve& c, double t, Param2 A) {
  const Param2 p = c.param(t);
  return surface_frame(c.host(), p[0], p[1]).E1 * A[0] + surface_frame(c.host(), p[0], p[1]).E2 * A[1];
}

TransportState parallel_transport(const SurfaceCurve& c, Param2 A0, const OdeSpec& spec,
                                  std::span<const double> outputs) {
  const Trajectory tr = integrate_transport(c, A0, spec, outputs);
  TransportState out;
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    const Param2 p = c.param(tr.t[i]);
    const FormBundle fb = forms(c.host(), p[0], p[1]);
    const double a1 = tr.y[i][0], a2 = tr.y[i][1];
    out.samples.push_back({tr.t[i], a1, a2, std::sqrt(fb.E * a1 * a1 + 2.0 * fb.F * a1 * a2 + fb.G * a2 * a2)});
  }
  return out;
}

Holonomy holonomy(const SurfaceCurve& loop, Param2 A0, const OdeSpec& spec) {
  const Interval d = loop.domain();
  const Vec3 r0 = loop.position(d.lo), r1 = loop.position(d.hi);
  if (norm(r1 - r0) > 1e-8 * loop.host().scale())
    throw Error(ErrorCode::OpenLoop, "holonomy needs a closed curve", {d.lo, d.hi});
  const Trajectory tr = integrate_transport(loop, A0, spec, {});
  Holonomy out;
  out.start = A0;
  out.end = {tr.back()[0], tr.back()[1]};
  const Vec3 Va = tangent_vector(loop, d.lo, out.start);
  const Vec3 Vb = tangent_vector(loop, d.hi, out.end);
  const Param2 p = loop.param(d.lo);
  const Vec3 n = surface_frame(loop.host(), p[0], p[1]).n;
  out.angle = std::atan2(dot(n, cross(Va, Vb)), dot(Va, Vb));
  return out;
}

}  // namespace diffgeo
