#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace diffgeo {

enum class ErrorCode {
  Domain,
  OutOfDomain,
  InvalidArgument,
  StepUnderflow,
  MaxStepsExceeded,
  MaxDepthExceeded,
  NoConvergence,
  Lex,
  Parse,
  Name,
  Arity,
  SingularPoint,
  InflectionPoint,
  ZeroTorsion,
  InsufficientOrder,
  NonOrthonormalSeed,
  SingularSurfacePoint,
  UmbilicPoint,
  ZeroVector,
  NoUniqueConjugate,
  AsymptoticPoint,
  NonOrthogonalPatch,
  OpenLoop,
  DegenerateMultiplicity,
  UnknownShape,
  InvalidParameter,
  NoReference,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base of every error raised by the library. `location()` holds the
/// parameter coordinates where the failure was detected, when known.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<double> location = {});

  ErrorCode code() const noexcept { return code_; }
  const std::vector<double>& location() const noexcept { return location_; }

 private:
  ErrorCode code_;
  std::vector<double> location_;
};

class MaxDepthExceeded : public Error {
 public:
  MaxDepthExceeded(double best_estimate, double error_estimate);
  double best_estimate() const noexcept { return best_; }
  double error_estimate() const noexcept { return err_; }

 private:
  double best_;
  double err_;
};

class LexError : public Error {
 public:
  LexError(std::size_t position, char character);
  std::size_t position() const noexcept { return position_; }
  char character() const noexcept { return character_; }

 private:
  std::size_t position_;
  char character_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::vector<std::string> expected, const std::string& detail = {});
  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

}  // namespace diffgeo
