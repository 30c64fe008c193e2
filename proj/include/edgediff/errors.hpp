#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace edgediff {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Result (or an intermediate) would overflow double precision.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Integrand produced NaN or Inf at `abscissa`.
class NonFiniteError : public Error {
 public:
  NonFiniteError(const std::string& what, double abscissa)
      : Error(what), abscissa_(abscissa) {}
  double abscissa() const noexcept { return abscissa_; }

 private:
  double abscissa_;
};

/// Adaptive quadrature hit its subdivision limit. Carries the best estimate
/// available at that point.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::complex<double> best,
                   double error_estimate)
      : Error(what), best_(best), error_estimate_(error_estimate) {}
  std::complex<double> best_estimate() const noexcept { return best_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  std::complex<double> best_;
  double error_estimate_;
};

class SingularSystemError : public Error {
 public:
  using Error::Error;
};

/// Configuration problem, tagged with the offending key and 1-based line
/// number (0 when the problem is not tied to a line).
class ConfigError : public Error {
 public:
  ConfigError(const std::string& key, int line, const std::string& message)
      : Error(format(key, line, message)), key_(key), line_(line) {}
  const std::string& key() const noexcept { return key_; }
  int line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& key, int line,
                            const std::string& message) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!key.empty()) out += "'" + key + "': ";
    return out + message;
  }
  std::string key_;
  int line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace edgediff
