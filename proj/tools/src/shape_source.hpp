#pragma once

#include <map>
#include <string>
#include <vector>

#include "diffgeo/catalog.hpp"
#include "report.hpp"

namespace diffgeo::cli {

/// Thrown for malformed command-line input; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input file that cannot be opened; maps to exit code 6.
class InputFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ShapeSource {
  Shape shape;
  std::vector<std::string> variables;  // t, or u and v
  Json descriptor;
};

ShapeSource load_shape(const std::string& name, const std::string& file, const std::vector<std::string>& params);

/// Constant expression such as "pi/3" or "-1.5e-2".
double eval_constant(const std::string& text);

/// "u=0.3,v=0.4" or "0.3,0.4"; names must follow `variables` when given.
std::vector<double> parse_point(const std::string& text, const std::vector<std::string>& variables);

/// "3x3" for surfaces or "5" for curves.
std::vector<int> parse_grid(const std::string& text, std::size_t dims);

/// Grid nodes over [lo, hi]; a periodic seam drops the upper endpoint.
std::vector<double> grid_axis(const Interval& d, int n, bool periodic);

Json point_json(const std::vector<std::string>& names, const std::vector<double>& x);

}  // namespace diffgeo::cli
