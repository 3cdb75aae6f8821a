#pragma once

#include <stdexcept>
#include <string>

namespace omc {

enum class ErrorCode {
  InvalidParameter,
  InvalidComposition,
  UnstableDynamics,
  NumericalFailure,
  SingularLimit,
  ConfigError,
  IoError,
};

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidParameter : public Error {
 public:
  explicit InvalidParameter(const std::string& what)
      : Error(ErrorCode::InvalidParameter, what) {}
};

class InvalidComposition : public Error {
 public:
  explicit InvalidComposition(const std::string& what)
      : Error(ErrorCode::InvalidComposition, what) {}
};

/// Raised when a drift matrix is not strictly stable. Carries the offending
/// spectral abscissa (max real part of the spectrum).
class UnstableDynamics : public Error {
 public:
  UnstableDynamics(double abscissa, const std::string& what)
      : Error(ErrorCode::UnstableDynamics, what), abscissa_(abscissa) {}
  double abscissa() const noexcept { return abscissa_; }

 private:
  double abscissa_;
};

class NumericalFailure : public Error {
 public:
  explicit NumericalFailure(const std::string& what)
      : Error(ErrorCode::NumericalFailure, what) {}
};

class SingularLimit : public Error {
 public:
  explicit SingularLimit(const std::string& what)
      : Error(ErrorCode::SingularLimit, what) {}
};

/// Configuration schema violation. Carries the path of the offending field,
/// e.g. "sweep[0].grid".
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field_path, const std::string& what)
      : Error(ErrorCode::ConfigError, field_path + ": " + what),
        field_path_(field_path) {}
  const std::string& field_path() const noexcept { return field_path_; }

 private:
  std::string field_path_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::IoError, what) {}
};

}  // namespace omc
