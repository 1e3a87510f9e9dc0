#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Machine-readable category of a failure. Values mirror `casimir_status`
/// in the C API.
enum class ErrorCode {
  invalid_argument = 1,
  domain = 2,
  parse = 3,
  convergence = 4,
  truncation = 5,
  precision = 6,
  regime = 7,
  fit = 8,
  io = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorCode::domain, what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorCode::invalid_argument, what) {}
};

/// Malformed or invalid permittivity input. `line()` is 1-based, 0 when the
/// problem is not tied to a single line (e.g. empty input).
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(ErrorCode::parse, what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Quadrature or cubature ran out of node budget. Carries the best estimate
/// reached so callers can decide whether it is usable.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_estimate,
                   double error_estimate)
      : Error(ErrorCode::convergence, what),
        best_estimate_(best_estimate),
        error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

/// The Matsubara series did not meet its stopping rule within the term budget.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double partial_sum, long long terms)
      : Error(ErrorCode::truncation, what),
        partial_sum_(partial_sum),
        terms_(terms) {}

  double partial_sum() const noexcept { return partial_sum_; }
  long long terms() const noexcept { return terms_; }

 private:
  double partial_sum_;
  long long terms_;
};

/// A computed difference is not resolved above its estimated numerical noise.
class PrecisionError : public Error {
 public:
  PrecisionError(const std::string& what, double value, double noise)
      : Error(ErrorCode::precision, what), value_(value), noise_(noise) {}

  double value() const noexcept { return value_; }
  double noise() const noexcept { return noise_; }

 private:
  double value_;
  double noise_;
};

/// The low-frequency expansion was asked for outside its validity range.
class RegimeError : public Error {
 public:
  explicit RegimeError(const std::string& what)
      : Error(ErrorCode::regime, what) {}
};

class FitError : public Error {
 public:
  FitError(const std::string& what, double condition_number)
      : Error(ErrorCode::fit, what), condition_number_(condition_number) {}

  double condition_number() const noexcept { return condition_number_; }

 private:
  double condition_number_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

}  // namespace casimir
