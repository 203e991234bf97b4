#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace diffgeo::cli {

using Json = nlohmann::ordered_json;

/// Exit codes shared by every subcommand.
enum Exit : int {
  kOk = 0,
  kUsage = 2,
  kEvaluation = 3,
  kSuiteFailed = 4,
  kSolver = 5,
  kIo = 6,
};

/// JSON text with every number printed as %.17g (integers stay integral).
std::string dump(const Json& j);

/// Writes through a temporary file and renames it into place. Throws std::runtime_error.
void write_atomic(const std::string& path, const std::string& text);

/// Locale-independent %.17g.
std::string format_number(double x);

class Csv {
 public:
  explicit Csv(std::vector<std::string> header);
  void row(const std::vector<double>& values);
  std::string str() const { return text_; }

 private:
  std::size_t width_;
  std::string text_;
};

}  // namespace diffgeo::cli
