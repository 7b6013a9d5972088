#pragma once

#include <stdexcept>
#include <string>

namespace holoschwarz {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point or parameter lies outside the domain where an object is defined
/// (|z| >= 1, vanishing tangent, pole of an inversion, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Integrator, quadrature or mesh failure.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration text or value.
class ConfigError : public Error {
 public:
  ConfigError(std::string kind, int line, const std::string& message)
      : Error(format(kind, line, message)), kind_(std::move(kind)), line_(line) {}

  const std::string& kind() const noexcept { return kind_; }
  int line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& kind, int line, const std::string& message) {
    std::string out = kind;
    if (line > 0) out += " at line " + std::to_string(line);
    return out + ": " + message;
  }

  std::string kind_;
  int line_;
};

}  // namespace holoschwarz
