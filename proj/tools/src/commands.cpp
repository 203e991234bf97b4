#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "diffgeo/diffgeo.hpp"
#include "loop_file.hpp"
#include "shape_source.hpp"

namespace diffgeo::cli {

double resolve_tolerance(const CommonOptions& c, double fallback) {
  if (c.tol) {
    if (!(*c.tol > 0.0)) throw UsageError("--tol must be positive");
    return *c.tol;
  }
  if (const char* env = std::getenv("DIFFGEO_TOL"); env && *env) {
    char* end = nullptr;
    const double x = std::strtod(env, &end);
    if (*end != '\0' || !(x > 0.0)) throw UsageError("DIFFGEO_TOL must be a positive number");
    return x;
  }
  return fallback;
}

Json error_json(const std::exception& e) {
  Json j = Json::object();
  if (const auto* de = dynamic_cast<const Error*>(&e)) {
    j["code"] = std::string(to_string(de->code()));
    j["message"] = e.what();
    j["location"] = de->location();
  } else {
    j["code"] = "Error";
    j["message"] = e.what();
  }
  return j;
}

namespace {

Json vec(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }

using Quantity = std::function<Json(const std::vector<double>&)>;

// Each quantity returns {"value": x}, {"vector": [...]} or {"values": {...}}.
std::map<std::string, Quantity> curve_quantities(const ParametricCurve& c) {
  return {
      {"position", [&](const std::vector<double>& x) { return Json{{"vector", vec(c.position(x[0]))}}; }},
      {"kappa", [&](const std::vector<double>& x) { return Json{{"value", curvature(c, x[0])}}; }},
      {"tau", [&](const std::vector<double>& x) { return Json{{"value", frenet(c, x[0]).tau}}; }},
      {"frenet",
       [&](const std::vector<double>& x) {
         const FrenetData f = frenet(c, x[0]);
         return Json{{"values",
                      {{"B", vec(f.B)}, {"N", vec(f.N)}, {"T", vec(f.T)}, {"darboux", vec(f.darboux)},
                       {"kappa", f.kappa}, {"speed", f.speed}, {"tau", f.tau}}}};
       }},
  };
}

std::map<std::string, Quantity> surface_quantities(const ParametricSurface& s) {
  return {
      {"position", [&](const std::vector<double>& x) { return Json{{"vector", vec(s.position(x[0], x[1]))}}; }},
      {"K", [&](const std::vector<double>& x) { return Json{{"value", curvatures(s, x[0], x[1]).K}}; }},
      {"H", [&](const std::vector<double>& x) { return Json{{"value", curvatures(s, x[0], x[1]).H}}; }},
      {"curvatures",
       [&](const std::vector<double>& x) {
         const CurvatureData d = curvatures(s, x[0], x[1]);
         return Json{{"values",
                      {{"H", d.H}, {"K", d.K}, {"kappa1", d.kappa1}, {"kappa2", d.kappa2}, {"umbilic", d.is_umbilic}}}};
       }},
      {"forms",
       [&](const std::vector<double>& x) {
         const FormBundle f = forms(s, x[0], x[1]);
         return Json{{"values", {{"E", f.E}, {"F", f.F}, {"G", f.G}, {"e", f.e}, {"f", f.f}, {"g", f.g}}}};
       }},
      {"christoffel",
       [&](const std::vector<double>& x) {
         const FormBundle f = forms(s, x[0], x[1]);
         Json j = Json::object();
         const char* names[6] = {"11^1", "11^2", "12^1", "12^2", "22^1", "22^2"};
         for (int i = 0; i < 6; ++i) j[names[i]] = f.gamma2[static_cast<std::size_t>(i)];
         return Json{{"values", j}};
       }},
      {"shape-class",
       [&](const std::vector<double>& x) {
         return Json{{"value", std::string(to_string(curvatures(s, x[0], x[1]).shape))}};
       }},
      {"dupin",
       [&](const std::vector<double>& x) {
         return Json{{"value", std::string(to_string(dupin_classification(s, x[0], x[1])))}};
       }},
      {"asymptotic",
       [&](const std::vector<double>& x) {
         const AsymptoticDirections a = asymptotic_directions(s, x[0], x[1]);
         Json dirs = Json::array();
         for (const auto& d : a.directions) dirs.push_back(Json::array({d.components[0], d.components[1]}));
         return Json{{"values", {{"all_directions", a.all_directions}, {"directions", dirs},
                                 {"normal_curvatures", a.normal_curvatures}}}};
       }},
      {"principal",
       [&](const std::vector<double>& x) {
         const PrincipalDirections p = principal_direction_field(s, x[0], x[1]);
         return Json{{"values",
                      {{"dir1", Json::array({p.dir1.components[0], p.dir1.components[1]})},
                       {"dir2", Json::array({p.dir2.components[0], p.dir2.components[1]})},
                       {"kappa1", p.kappa1},
                       {"kappa2", p.kappa2},
                       {"rodrigues", Json::array({p.rodrigues[0], p.rodrigues[1]})}}}};
       }},
  };
}

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream in(item);
    std::string part;
    while (std::getline(in, part, ','))
      if (!part.empty()) out.push_back(part);
  }
  return out;
}

Param2 parse_pair(const std::string& text, const std::vector<std::string>& names) {
  const auto x = parse_point(text, names);
  return {x[0], x[1]};
}

const ParametricSurface& need_surface(const ShapeSource& src) {
  if (!src.shape.surface) throw UsageError("this command needs a surface");
  return *src.shape.surface;
}

double wrap_angle(double a) { return std::remainder(a, 2.0 * std::numbers::pi); }

}  // namespace

Outcome cmd_eval(const CommonOptions& c, const EvalOptions& o) {
  const ShapeSource src = load_shape(c.shape, c.file, c.params);
  const bool is_curve = src.shape.kind == ShapeKind::Curve;
  const auto table = is_curve ? curve_quantities(*src.shape.curve) : surface_quantities(*src.shape.surface);

  std::vector<std::string> quantities = split_list(o.quantities);
  if (quantities.empty()) quantities.push_back(is_curve ? "frenet" : "curvatures");
  for (const auto& q : quantities)
    if (!table.contains(q)) {
      std::string known;
      for (const auto& [k, _] : table) known += (known.empty() ? "" : ", ") + k;
      throw UsageError("unknown quantity '" + q + "' (known: " + known + ")");
    }
  std::sort(quantities.begin(), quantities.end());
  quantities.erase(std::unique(quantities.begin(), quantities.end()), quantities.end());

  std::vector<std::vector<double>> points;
  for (const auto& a : o.at) points.push_back(parse_point(a, src.variables));
  if (!o.grid.empty()) {
    const auto n = parse_grid(o.grid, src.variables.size());
    if (is_curve) {
      for (double t : grid_axis(src.shape.curve->domain(), n[0], false)) points.push_back({t});
    } else {
      const ParametricSurface& s = *src.shape.surface;
      for (double u : grid_axis(s.domain().u, n[0], s.periodic_u()))
        for (double v : grid_axis(s.domain().v, n[1], s.periodic_v())) points.push_back({u, v});
    }
  }
  if (points.empty()) throw UsageError("give --at or --grid");

  Outcome out;
  Json records = Json::array();
  Json first_error;
  for (const auto& p : points)
    for (const auto& q : quantities) {
      Json r = {{"point", point_json(src.variables, p)}, {"quantity", q}};
      try {
        const Json value = table.at(q)(p);
        for (const auto& [k, v] : value.items()) r[k] = v;
        r["status"] = "ok";
      } catch (const Error& e) {
        r["status"] = "error";
        r["error"] = error_json(e);
        if (first_error.is_null()) first_error = r;
      }
      records.push_back(std::move(r));
    }
  out.body["shape"] = src.descriptor;
  out.body["records"] = std::move(records);
  if (!first_error.is_null()) {
    out.body["first_error"] = first_error;
    out.exit = kEvaluation;
  }
  return out;
}

Outcome cmd_geodesic(const CommonOptions& c, const GeodesicOptions& o) {
  const ShapeSource src = load_shape(c.shape, c.file, c.params);
  const ParametricSurface& s = need_surface(src);
  if (o.from.empty()) throw UsageError("--from is required");
  const Param2 p0 = parse_pair(o.from, src.variables);
  const bool ivp = !o.dir.empty();
  if (ivp == !o.to.empty()) throw UsageError("give either --dir with --length or --to");
  if (ivp && !o.length) throw UsageError("--dir needs --length");
  if (!ivp && o.length) throw UsageError("--length applies to --dir only");

  Outcome out;
  out.body["shape"] = src.descriptor;
  Json summary = Json::object();
  GeodesicPath path;
  try {
    if (ivp) {
      if (!(*o.length > 0.0)) throw UsageError("--length must be positive");
      const double step = o.step > 0 ? o.step : *o.length / 200.0;
      path = geodesic_ivp(s, p0, parse_pair(o.dir, {"du", "dv"}), *o.length, {}, step);
      summary["mode"] = "initial-value";
    } else {
      const Param2 p1 = parse_pair(o.to, src.variables);
      path = geodesic_bvp(s, p0, p1);
      summary["mode"] = "boundary-value";
      summary["endpoint_error"] = path.endpoint_error;
      summary["initial_angle"] = path.initial_angle;
    }
  } catch (const GeodesicMultiplicity& e) {
    Json lengths = Json::array();
    for (const auto& p : e.paths()) lengths.push_back(Json{{"initial_angle", p.initial_angle}, {"length", p.length}});
    out.body["error"] = error_json(e);
    out.body["error"]["paths"] = lengths;
    out.exit = kSolver;
    return out;
  } catch (const Error& e) {
    out.body["error"] = error_json(e);
    out.exit = kSolver;
    return out;
  }

  Csv csv({"s", "u", "v", "x", "y", "z"});
  double max_kg = 0.0;
  for (const auto& smp : path.samples) {
    const Vec3 r = s.position(smp.u, smp.v);
    csv.row({smp.s, smp.u, smp.v, r.x, r.y, r.z});
    try {
      max_kg = std::max(max_kg, std::abs(path_geodesic_curvature(s, smp)));
    } catch (const Error&) {
      // Samples on a coordinate singularity carry no geodesic curvature.
    }
  }
  summary["length"] = path.length;
  summary["left_domain"] = path.left_domain;
  summary["max_abs_kappa_g"] = max_kg;
  summary["samples"] = path.samples.size();
  out.body["summary"] = summary;
  out.csv = csv.str();
  return out;
}

Outcome cmd_transport(const CommonOptions& c, const TransportOptions& o) {
  const ShapeSource src = load_shape(c.shape, c.file, c.params);
  const ParametricSurface& s = need_surface(src);
  const double pi = std::numbers::pi;
  const std::vector<std::string> t_name = {"t"};
  Expr u, v;
  Interval range;
  std::optional<Rectangle> region;
  try {
    if (o.latitude) {
      if (!o.u.empty() || !o.v.empty()) throw UsageError("--latitude replaces --u and --v");
      const double v0 = pi / 2 - *o.latitude;
      u = parse_expression("t").bind(t_name);
      v = Expr::number(v0);
      range = {-pi, pi};
      region = Rectangle{{-pi, pi}, {v0, pi / 2}};
    } else {
      if (o.u.empty() || o.v.empty() || o.range.empty()) throw UsageError("give --u, --v and --range, or --latitude");
      u = parse_expression(o.u).bind(t_name);
      v = parse_expression(o.v).bind(t_name);
      const auto r = parse_point(o.range, {"a", "b"});
      range = {r[0], r[1]};
      if (!(range.lo < range.hi)) throw UsageError("--range needs a < b");
    }
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (!o.region.empty()) {
    const auto r = parse_point(o.region, {"u0", "u1", "v0", "v1"});
    region = Rectangle{{r[0], r[1]}, {r[2], r[3]}};
  }
  if (o.samples < 2) throw UsageError("--samples must be at least 2");
  const Param2 A0 = parse_pair(o.vector, {"A1", "A2"});

  Outcome out;
  out.body["shape"] = src.descriptor;
  try {
    const SurfaceCurve curve = surface_curve_from_exprs(s, u, v, range);
    std::vector<double> outputs;
    for (int k = 1; k < o.samples - 1; ++k) outputs.push_back(range.lo + range.width() * k / (o.samples - 1));
    const TransportState st = parallel_transport(curve, A0, {}, outputs);
    Csv csv({"t", "A1", "A2", "norm", "angle_to_initial"});
    const Vec3 V0 = tangent_vector(curve, range.lo, A0);
    const double n0 = st.samples.front().norm;
    double drift = 0.0;
    for (const auto& smp : st.samples) {
      const Vec3 V = tangent_vector(curve, smp.t, {smp.A1, smp.A2});
      csv.row({smp.t, smp.A1, smp.A2, smp.norm, std::atan2(norm(cross(V0, V)), dot(V0, V))});
      drift = std::max(drift, std::abs(smp.norm - n0));
    }
    Json summary = {{"initial_norm", n0}, {"max_norm_drift", drift}, {"samples", st.samples.size()}};
    const bool closed = norm(curve.position(range.hi) - curve.position(range.lo)) <= 1e-8 * s.scale();
    summary["closed"] = closed;
    if (closed) {
      const Holonomy h = holonomy(curve, A0);
      summary["holonomy"] = h.angle;
      if (region) {
        const double kt = total_curvature(s, *region);
        summary["enclosed_total_curvature"] = kt;
        summary["holonomy_minus_total_curvature"] = wrap_angle(h.angle - kt);
      }
    }
    out.body["summary"] = summary;
    out.csv = csv.str();
  } catch (const Error& e) {
    out.body["error"] = error_json(e);
    out.exit = kEvaluation;
  }
  return out;
}

Outcome cmd_gauss_bonnet(const CommonOptions& c, const GaussBonnetOptions& o) {
  const ShapeSource src = load_shape(c.shape, c.file, c.params);
  const ParametricSurface& s = need_surface(src);
  if (o.global == !o.loop.empty()) throw UsageError("give either --global or --loop");
  Outcome out;
  out.body["shape"] = src.descriptor;
  const double tol = resolve_tolerance(c, 1e-5);
  try {
    if (o.global) {
      const Closure& cl = src.shape.closure;
      if (!cl.is_closed) throw UsageError("--global needs a closed catalog surface");
      const int chi = o.chi.value_or(cl.chi);
      const GaussBonnetGlobal g = gauss_bonnet_global(s, cl.rect, chi);
      out.body["summary"] = {{"mode", "global"}, {"chi", chi}, {"total_curvature", g.total_K},
                             {"two_pi_chi", 2.0 * std::numbers::pi * chi}, {"defect", g.defect},
                             {"tolerance", tol}, {"passed", std::abs(g.defect) <= tol}};
      if (!(std::abs(g.defect) <= tol)) out.exit = kSuiteFailed;
    } else {
      std::ifstream in(o.loop, std::ios::binary);
      if (!in) throw InputFileError("cannot read " + o.loop);
      std::stringstream buf;
      buf << in.rdbuf();
      const LoopSpec spec = parse_loop(buf.str());
      const GaussBonnetLocal g = gauss_bonnet_local(s, build_loop(s, spec), spec.region);
      out.body["summary"] = {{"mode", "local"},
                             {"sum_geodesic_curvature", g.sum_kg},
                             {"sum_exterior_angles", g.sum_angles},
                             {"total_curvature", g.total_K},
                             {"corner_angles", g.corner_angles},
                             {"defect", g.defect},
                             {"tolerance", tol},
                             {"passed", std::abs(g.defect) <= tol}};
      if (!(std::abs(g.defect) <= tol)) out.exit = kSuiteFailed;
    }
  } catch (const Error& e) {
    out.body["error"] = error_json(e);
    out.exit = kEvaluation;
  }
  return out;
}

Outcome cmd_reconstruct(const CommonOptions& c, const ReconstructOptions& o) {
  if (!c.shape.empty() || !c.file.empty()) throw UsageError("reconstruct takes no shape");
  if (o.kappa.empty() || o.tau.empty()) throw UsageError("--kappa and --tau are required");
  if (!(o.length > 0.0)) throw UsageError("--length must be positive");
  if (!(o.step > 0.0)) throw UsageError("--step must be positive");
  const std::vector<std::string> s_name = {"s"};
  Expr ke, te;
  try {
    ke = parse_expression(o.kappa).bind(s_name);
    te = parse_expression(o.tau).bind(s_name);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  auto kappa = [&](double s) { return ke.evaluate(std::span<const double>(&s, 1)); };
  auto tau = [&](double s) { return te.evaluate(std::span<const double>(&s, 1)); };

  Outcome out;
  out.body["input"] = {{"kappa", ke.to_string()}, {"tau", te.to_string()}, {"length", o.length}};
  try {
    const ReconstructedCurve rc = reconstruct_from_kappa_tau(kappa, tau, {0, 0, 0}, {}, o.length, {}, o.step);
    Csv csv({"s", "x", "y", "z"});
    for (std::size_t i = 0; i < rc.s.size(); ++i) csv.row({rc.s[i], rc.r[i].x, rc.r[i].y, rc.r[i].z});

    // Recompute kappa and tau from a Chebyshev interpolant of the integrated positions.
    const Interval d{0.0, o.length};
    const int n = std::clamp(static_cast<int>(std::ceil(8.0 * o.length)), 32, 256);
    const auto nodes = chebyshev_nodes(d, n);
    const ReconstructedCurve at_nodes = reconstruct_from_kappa_tau_at(kappa, tau, {0, 0, 0}, {}, o.length, nodes);
    const std::vector<Vec3> values(at_nodes.r.begin() + 1, at_nodes.r.end() - 1);
    const ParametricCurve interp = chebyshev_curve(values, d);
    double dk = 0.0, dt = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double s = d.lo + (i + 0.5) / 50.0 * d.width();
      const FrenetData f = frenet(interp, s);
      dk = std::max(dk, std::abs(f.kappa - kappa(s)));
      dt = std::max(dt, std::abs(f.tau - tau(s)));
    }
    out.body["summary"] = {{"samples", rc.s.size()},
                           {"closure_error", norm(rc.r.back() - rc.r.front())},
                           {"roundtrip_kappa_deviation", dk},
                           {"roundtrip_tau_deviation", dt}};
    out.csv = csv.str();
  } catch (const Error& e) {
    out.body["error"] = error_json(e);
    out.exit = kEvaluation;
  }
  return out;
}

}  // namespace diffgeo::cli
