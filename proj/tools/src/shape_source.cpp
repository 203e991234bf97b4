#include "shape_source.hpp"

#include <fstream>
#include <sstream>

#include "diffgeo/errors.hpp"

namespace diffgeo::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

}  // namespace

double eval_constant(const std::string& text) {
  try {
    const Expr e = parse_expression(text).bind({});
    return e.evaluate(std::span<const double>{});
  } catch (const Error& e) {
    throw UsageError("bad number '" + text + "': " + e.what());
  }
}

ShapeSource load_shape(const std::string& name, const std::string& file, const std::vector<std::string>& params) {
  if (name.empty() == file.empty()) throw UsageError("give exactly one of --shape or --file");
  ShapeSource src;
  if (!file.empty()) {
    if (!params.empty()) throw UsageError("--param applies to catalog shapes; edit the definition file instead");
    std::ifstream in(file, std::ios::binary);
    if (!in) throw InputFileError("cannot read " + file);
    std::stringstream buf;
    buf << in.rdbuf();
    ShapeDefinition def;
    try {
      def = load_definition(buf.str());
    } catch (const Error& e) {
      throw UsageError(file + ": " + e.what());
    }
    src.shape.name = def.name;
    src.shape.kind = def.kind;
    for (const auto& p : def.parameters) src.variables.push_back(p.name);
    if (def.kind == ShapeKind::Curve)
      src.shape.curve = curve_from_definition(def);
    else
      src.shape.surface = surface_from_definition(def);
    src.descriptor = {{"source", "file"}, {"path", file}, {"name", def.name},
                      {"kind", def.kind == ShapeKind::Curve ? "curve" : "surface"}};
    return src;
  }

  Overrides o;
  const CatalogEntry* entry;
  try {
    entry = &catalog_entry(name);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  for (const auto& p : params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) throw UsageError("--param expects key=value, got '" + p + "'");
    const std::string key = trim(p.substr(0, eq)), value = trim(p.substr(eq + 1));
    const auto& tp = entry->text_parameters;
    if (std::find(tp.begin(), tp.end(), key) != tp.end())
      o.texts[key] = value;
    else
      o.numbers[key] = eval_constant(value);
  }
  try {
    src.shape = make_shape(name, o);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  src.variables = src.shape.kind == ShapeKind::Curve ? std::vector<std::string>{"t"} : std::vector<std::string>{"u", "v"};
  Json pj = Json::object();
  for (const auto& [k, v] : src.shape.parameters) pj[k] = v;
  for (const auto& [k, v] : o.texts) pj[k] = v;
  src.descriptor = {{"source", "catalog"}, {"name", src.shape.name},
                    {"kind", src.shape.kind == ShapeKind::Curve ? "curve" : "surface"}, {"parameters", pj}};
  return src;
}

std::vector<double> parse_point(const std::string& text, const std::vector<std::string>& variables) {
  const auto parts = split(text, ',');
  if (parts.size() != variables.size())
    throw UsageError("point '" + text + "' needs " + std::to_string(variables.size()) + " coordinates");
  std::vector<double> x(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::string v = parts[i];
    const auto eq = v.find('=');
    if (eq != std::string::npos) {
      if (trim(v.substr(0, eq)) != variables[i])
        throw UsageError("point coordinate " + std::to_string(i + 1) + " should be named " + variables[i]);
      v = v.substr(eq + 1);
    }
    x[i] = eval_constant(v);
  }
  return x;
}

std::vector<int> parse_grid(const std::string& text, std::size_t dims) {
  const auto parts = split(text, 'x');
  if (parts.size() != dims) throw UsageError("grid '" + text + "' needs " + std::to_string(dims) + " counts");
  std::vector<int> n;
  for (const auto& p : parts) {
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(p, &used);
      if (used != p.size()) k = 0;
    } catch (const std::exception&) {
      k = 0;
    }
    if (k < 1) throw UsageError("grid counts must be positive integers: '" + text + "'");
    n.push_back(k);
  }
  return n;
}

std::vector<double> grid_axis(const Interval& d, int n, bool periodic) {
  std::vector<double> x;
  if (n == 1) return {d.mid()};
  const int div = periodic ? n : n - 1;
  for (int i = 0; i < n; ++i) x.push_back(d.lo + d.width() * i / div);
  return x;
}

Json point_json(const std::vector<std::string>& names, const std::vector<double>& x) {
  Json j = Json::object();
  for (std::size_t i = 0; i < names.size(); ++i) j[names[i]] = x[i];
  return j;
}

}  // namespace diffgeo::cli
