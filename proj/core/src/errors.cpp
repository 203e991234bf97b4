#include "diffgeo/errors.hpp"

#include <cstdio>
#include <utility>

namespace diffgeo {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Domain: return "DomainError";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::MaxStepsExceeded: return "MaxStepsExceeded";
    case ErrorCode::MaxDepthExceeded: return "MaxDepthExceeded";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::Lex: return "LexError";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Name: return "NameError";
    case ErrorCode::Arity: return "ArityError";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::InflectionPoint: return "InflectionPoint";
    case ErrorCode::ZeroTorsion: return "ZeroTorsion";
    case ErrorCode::InsufficientOrder: return "InsufficientOrder";
    case ErrorCode::NonOrthonormalSeed: return "NonOrthonormalSeed";
    case ErrorCode::SingularSurfacePoint: return "SingularSurfacePoint";
    case ErrorCode::UmbilicPoint: return "UmbilicPoint";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NoUniqueConjugate: return "NoUniqueConjugate";
    case ErrorCode::AsymptoticPoint: return "AsymptoticPoint";
    case ErrorCode::NonOrthogonalPatch: return "NonOrthogonalPatch";
    case ErrorCode::OpenLoop: return "OpenLoop";
    case ErrorCode::DegenerateMultiplicity: return "DegenerateMultiplicity";
    case ErrorCode::UnknownShape: return "UnknownShape";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NoReference: return "NoReference";
  }
  return "Error";
}

namespace {

std::string decorate(ErrorCode code, const std::string& message, const std::vector<double>& location) {
  std::string out{to_string(code)};
  out += ": ";
  out += message;
  if (!location.empty()) {
    out += " at (";
    for (std::size_t i = 0; i < location.size(); ++i) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", location[i]);
      if (i) out += ", ";
      out += buf;
    }
    out += ")";
  }
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::vector<double> location)
    : std::runtime_error(decorate(code, message, location)), code_(code), location_(std::move(location)) {}

MaxDepthExceeded::MaxDepthExceeded(double best_estimate, double error_estimate)
    : Error(ErrorCode::MaxDepthExceeded,
            "adaptive quadrature hit its depth limit (best estimate " + std::to_string(best_estimate) + ")"),
      best_(best_estimate),
      err_(error_estimate) {}

LexError::LexError(std::size_t position, char character)
    : Error(ErrorCode::Lex,
            std::string("unexpected character '") + character + "' at offset " + std::to_string(position)),
      position_(position),
      character_(character) {}

namespace {

std::string expected_list(const std::vector<std::string>& expected, const std::string& detail) {
  std::string out = detail;
  if (!expected.empty()) {
    if (!out.empty()) out += "; ";
    out += "expected one of:";
    for (const auto& e : expected) out += " " + e;
  }
  return out;
}

}  // namespace

ParseError::ParseError(std::size_t position, std::vector<std::string> expected, const std::string& detail)
    : Error(ErrorCode::Parse, "at offset " + std::to_string(position) + ": " + expected_list(expected, detail)),
      position_(position),
      expected_(std::move(expected)) {}

}  // namespace diffgeo
