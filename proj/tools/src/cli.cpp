#include "cli.hpp"

#include <chrono>
#include <ostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "shape_source.hpp"

namespace diffgeo::cli {

namespace {

void add_common(CLI::App& app, CommonOptions& c, bool with_shape = true) {
  if (with_shape) {
    app.add_option("--shape", c.shape, "Catalog shape name");
    app.add_option("--file", c.file, "Definition file (.pc curve, .ps surface)");
    app.add_option("--param", c.params, "Catalog parameter override key=value (repeatable)");
  }
  app.add_option("--json", c.json_path, "Write the JSON report here instead of stdout");
  app.add_option("--csv", c.csv_path, "Write CSV data here");
  app.add_option("--tol", c.tol, "Tolerance override (also DIFFGEO_TOL)");
  app.add_option("--seed", c.seed, "Seed for randomized sampling");
  app.add_flag("--timing", c.timing, "Include wall-clock timing in the report");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical differential geometry of parametric curves and surfaces", "diffgeo"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  CommonOptions common;
  EvalOptions eval;
  VerifyOptions verify;
  GeodesicOptions geo;
  TransportOptions transport;
  GaussBonnetOptions gb;
  ReconstructOptions rec;

  auto* e = app.add_subcommand("eval", "Evaluate quantities at points or on a grid");
  add_common(*e, common);
  e->add_option("--at", eval.at, "Point such as u=0.3,v=0.4 or t=1 (repeatable)");
  e->add_option("--grid", eval.grid, "Grid such as 3x3 (surfaces) or 5 (curves)");
  e->add_option("--quantity", eval.quantities, "Quantities, comma separated or repeated");

  auto* v = app.add_subcommand("verify", "Run identity residual suites at random points");
  add_common(*v, common);
  v->add_option("--suite", verify.suites, "Restrict to these suites (repeatable)");
  v->add_option("--samples", verify.samples, "Random points per suite");

  auto* g = app.add_subcommand("geodesic", "Integrate or solve for a geodesic");
  add_common(*g, common);
  g->add_option("--from", geo.from, "Start point u,v");
  g->add_option("--dir", geo.dir, "Initial direction du,dv");
  g->add_option("--length", geo.length, "Arclength to integrate");
  g->add_option("--to", geo.to, "End point u,v for the boundary-value problem");
  g->add_option("--step", geo.step, "CSV sample spacing in arclength");

  auto* t = app.add_subcommand("transport", "Parallel transport along a surface curve");
  add_common(*t, common);
  t->add_option("--u", transport.u, "u(t) expression");
  t->add_option("--v", transport.v, "v(t) expression");
  t->add_option("--range", transport.range, "Parameter range a,b");
  t->add_option("--latitude", transport.latitude, "Colatitude of a closed latitude loop (sphere-style patches)");
  t->add_option("--vector", transport.vector, "Initial components A1,A2");
  t->add_option("--region", transport.region, "Enclosed rectangle u0,u1,v0,v1 for the total curvature");
  t->add_option("--samples", transport.samples, "CSV rows");

  auto* b = app.add_subcommand("gauss-bonnet", "Check the Gauss-Bonnet theorem");
  add_common(*b, common);
  b->add_option("--loop", gb.loop, "Boundary description file (.loop)");
  b->add_flag("--global", gb.global, "Integrate K over the whole closed surface");
  b->add_option("--chi", gb.chi, "Euler characteristic (defaults to catalog metadata)");

  auto* r = app.add_subcommand("reconstruct", "Rebuild a curve from curvature and torsion");
  add_common(*r, common, false);
  r->add_option("--kappa", rec.kappa, "kappa(s) expression");
  r->add_option("--tau", rec.tau, "tau(s) expression");
  r->add_option("--length", rec.length, "Arclength");
  r->add_option("--step", rec.step, "Sample spacing");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& ex) {
    err << "diffgeo: " << ex.what() << "\n";
    return kUsage;
  }

  const auto* sub = app.get_subcommands().front();
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    if (sub == e) outcome = cmd_eval(common, eval);
    if (sub == v) outcome = cmd_verify(common, verify);
    if (sub == g) outcome = cmd_geodesic(common, geo);
    if (sub == t) outcome = cmd_transport(common, transport);
    if (sub == b) outcome = cmd_gauss_bonnet(common, gb);
    if (sub == r) outcome = cmd_reconstruct(common, rec);
  } catch (const UsageError& ex) {
    err << "diffgeo " << sub->get_name() << ": " << ex.what() << "\n";
    return kUsage;
  } catch (const InputFileError& ex) {
    err << "diffgeo " << sub->get_name() << ": " << ex.what() << "\n";
    return kIo;
  } catch (const std::exception& ex) {
    err << "diffgeo " << sub->get_name() << ": " << ex.what() << "\n";
    return kEvaluation;
  }

  Json report = {{"schema", "diffgeo-report/1"}, {"command", Json::array()}};
  for (const auto& a : args) report["command"].push_back(a);
  for (auto& [k, val] : outcome.body.items()) report[k] = val;
  report["exit_code"] = outcome.exit;
  if (common.timing)
    report["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};

  try {
    const std::string text = dump(report);
    if (common.json_path.empty())
      out << text;
    else
      write_atomic(common.json_path, text);
    if (!common.csv_path.empty()) {
      if (outcome.csv.empty()) {
        if (outcome.exit == kOk) err << "diffgeo " << sub->get_name() << ": no CSV data for this command\n";
      } else {
        write_atomic(common.csv_path, outcome.csv);
      }
    }
  } catch (const std::exception& ex) {
    err << "diffgeo: " << ex.what() << "\n";
    return kIo;
  }
  if (outcome.exit != kOk && report.contains("error"))
    err << "diffgeo " << sub->get_name() << ": " << report["error"]["message"].get<std::string>() << "\n";
  return outcome.exit;
}

}  // namespace diffgeo::cli
