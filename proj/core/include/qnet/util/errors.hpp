#pragma once

#include <stdexcept>
#include <string>

namespace qnet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// Raised for inconsistent dimensions, labels or out-of-domain arguments.
class InvalidArgument : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid_argument"; }
};

class InvalidState : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid_state"; }
};

class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double achieved_error)
      : Error(what), achieved_error_(achieved_error) {}
  const char* kind() const noexcept override { return "integration_error"; }
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

class FitError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "fit_error"; }
};

class CalibrationError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "calibration_error"; }
};

/// Highest bus Fock level became populated beyond the safety bound.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double population)
      : Error(what), population_(population) {}
  const char* kind() const noexcept override { return "truncation_error"; }
  double population() const noexcept { return population_; }

 private:
  double population_;
};

}  // namespace qnet
