#include "loop_file.hpp"

#include <regex>
#include <sstream>

#include "shape_source.hpp"

namespace diffgeo::cli {

namespace {

const std::string kNum = R"(([^,\]]+))";

Interval parse_interval(const std::string& a, const std::string& b) {
  const Interval d{eval_constant(a), eval_constant(b)};
  if (!(d.lo < d.hi)) throw UsageError("interval must satisfy lo < hi");
  return d;
}

}  // namespace

LoopSpec parse_loop(const std::string& text) {
  static const std::regex arc_re(R"(^arc\s+t\s+in\s+\[)" + kNum + "," + kNum +
                                 R"(\]\s*:\s*u\s*=\s*([^;]+);\s*v\s*=\s*(.+)$)");
  static const std::regex corner_re(R"(^corner\s+(.+)$)");
  static const std::regex region_re(R"(^region\s+\[)" + kNum + "," + kNum + R"(\]\s*x\s*\[)" + kNum + "," + kNum +
                                    R"(\]\s*$)");
  LoopSpec spec;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  const std::vector<std::string> t_name = {"t"};
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line.erase(0, line.find_first_not_of(" \t\r"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (line.empty()) continue;
    std::smatch m;
    try {
      if (std::regex_match(line, m, arc_re)) {
        spec.arcs.push_back({parse_expression(m[3].str()).bind(t_name), parse_expression(m[4].str()).bind(t_name),
                             parse_interval(m[1].str(), m[2].str())});
        spec.corners.emplace_back();
      } else if (std::regex_match(line, m, corner_re)) {
        if (spec.arcs.empty()) throw UsageError("corner before any arc");
        if (spec.corners.back()) throw UsageError("second corner for the same arc");
        const std::string v = m[1].str();
        if (v != "auto") spec.corners.back() = eval_constant(v);
      } else if (std::regex_match(line, m, region_re)) {
        spec.region.push_back({parse_interval(m[1].str(), m[2].str()), parse_interval(m[3].str(), m[4].str())});
      } else {
        throw UsageError("unrecognized directive");
      }
    } catch (const UsageError& e) {
      throw UsageError("loop line " + std::to_string(lineno) + ": " + e.what());
    } catch (const Error& e) {
      throw UsageError("loop line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (spec.arcs.empty()) throw UsageError("loop file has no arcs");
  if (spec.region.empty()) throw UsageError("loop file has no region");
  return spec;
}

BoundaryLoop build_loop(const ParametricSurface& s, const LoopSpec& spec) {
  BoundaryLoop loop;
  for (const auto& a : spec.arcs) loop.arcs.push_back(surface_curve_from_exprs(s, a.u, a.v, a.t));
  loop.corners = spec.corners;
  return loop;
}

}  // namespace diffgeo::cli
