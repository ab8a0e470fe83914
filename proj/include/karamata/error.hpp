#pragma once

#include <stdexcept>
#include <string>

namespace karamata {

enum class ErrorKind {
  Domain,        // argument outside the mathematical domain
  Precondition,  // hypothesis of a theorem or operation not met
  Shape,         // dimension / length mismatch
  Numeric,       // iterative method failed to converge
  Consistency,   // two routes to the same value disagree
  Generator,     // random instance generator exhausted its attempt budget
  Usage,         // bad CLI / config input
};

const char* to_string(ErrorKind kind) noexcept;

// Round-trippable decimal rendering used in error messages.
std::string format_real(double value);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
  DomainError(const std::string& what, double offending)
      : Error(ErrorKind::Domain, what + " (at t=" + format_real(offending) + ")"),
        offending_(offending) {}
  double offending() const noexcept { return offending_; }

 private:
  double offending_ = 0.0;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorKind::Precondition, what) {}
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what) : Error(ErrorKind::Shape, what) {}
};

class NumericError : public Error {
 public:
  NumericError(const std::string& what, double residual)
      : Error(ErrorKind::Numeric, what + " (residual " + format_real(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class ConsistencyError : public Error {
 public:
  explicit ConsistencyError(const std::string& what)
      : Error(ErrorKind::Consistency, what) {}
};

class GeneratorExhausted : public Error {
 public:
  explicit GeneratorExhausted(const std::string& what)
      : Error(ErrorKind::Generator, what) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

}  // namespace karamata
