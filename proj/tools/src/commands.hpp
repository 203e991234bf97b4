#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "report.hpp"

namespace diffgeo::cli {

struct CommonOptions {
  std::string shape, file;
  std::vector<std::string> params;
  std::string json_path, csv_path;
  std::optional<double> tol;
  std::uint64_t seed = 0;
  bool timing = false;
};

struct EvalOptions {
  std::vector<std::string> at;
  std::string grid;
  std::vector<std::string> quantities;
};

struct VerifyOptions {
  std::vector<std::string> suites;
  int samples = 50;
};

struct GeodesicOptions {
  std::string from, dir, to;
  std::optional<double> length;
  double step = 0.0;
};

struct TransportOptions {
  std::string u, v, range;
  std::optional<double> latitude;
  std::string vector = "1,0";
  std::string region;
  int samples = 200;
};

struct GaussBonnetOptions {
  std::string loop;
  bool global = false;
  std::optional<int> chi;
};

struct ReconstructOptions {
  std::string kappa, tau;
  double length = 0.0;
  double step = 0.01;
};

/// What a command produced. The JSON report is always written; the CSV only on success.
struct Outcome {
  int exit = kOk;
  Json body = Json::object();
  std::string csv;
};

Outcome cmd_eval(const CommonOptions& c, const EvalOptions& o);
Outcome cmd_verify(const CommonOptions& c, const VerifyOptions& o);
Outcome cmd_geodesic(const CommonOptions& c, const GeodesicOptions& o);
Outcome cmd_transport(const CommonOptions& c, const TransportOptions& o);
Outcome cmd_gauss_bonnet(const CommonOptions& c, const GaussBonnetOptions& o);
Outcome cmd_reconstruct(const CommonOptions& c, const ReconstructOptions& o);

/// Explicit --tol, then DIFFGEO_TOL, then the fallback.
double resolve_tolerance(const CommonOptions& c, double fallback);

Json error_json(const std::exception& e);

}  // namespace diffgeo::cli
