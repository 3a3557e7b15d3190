#pragma once

#include <stdexcept>
#include <string>

namespace toepspec {

/// Stable error identifiers carried across the C API boundary and printed
/// on the CLI diagnostic stream.
enum class ErrorCode {
  InvalidArgument,
  ConfigError,
  IoError,
  QuadratureNotConverged,
  NotRealValued,
  BandTooSmall,
  DegenerateSection,
  NotHermitian,
  NoConvergence,
  NotPositiveSemidefinite,
  Singular,
  GNotNonnegative,
  OutsideDomain,
  BeyondSpectralEdge,
  DomainViolation,
  EigenvalueInsideEssentialSpectrum,
};

constexpr const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::NotRealValued: return "NotRealValued";
    case ErrorCode::BandTooSmall: return "BandTooSmall";
    case ErrorCode::DegenerateSection: return "DegenerateSection";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotPositiveSemidefinite: return "NotPositiveSemidefinite";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::GNotNonnegative: return "GNotNonnegative";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::BeyondSpectralEdge: return "BeyondSpectralEdge";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::EigenvalueInsideEssentialSpectrum:
      return "EigenvalueInsideEssentialSpectrum";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  const char* name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace toepspec
