#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vp {

enum class ErrorKind {
  domain,
  overflow,
  division_by_zero,
  parse,
  insufficient_precision,
  no_convergence,
  degenerate,
  internal,
};

// Root of every error raised by the library. The kind drives the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class OverflowError : public Error {
 public:
  explicit OverflowError(const std::string& what) : Error(ErrorKind::overflow, what) {}
};

class DivisionByZero : public Error {
 public:
  explicit DivisionByZero(const std::string& what) : Error(ErrorKind::division_by_zero, what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(ErrorKind::parse, what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// The requested method cannot reach the target precision for this input; the
// caller has to pick another regime.
class InsufficientPrecision : public Error {
 public:
  explicit InsufficientPrecision(const std::string& what)
      : Error(ErrorKind::insufficient_precision, what) {}
};

class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, double best_log2)
      : Error(ErrorKind::no_convergence, what), best_log2_(best_log2) {}
  double best_log2() const noexcept { return best_log2_; }

 private:
  double best_log2_;
};

class DegenerateFraction : public Error {
 public:
  explicit DegenerateFraction(const std::string& what) : Error(ErrorKind::degenerate, what) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(ErrorKind::internal, what) {}
};

}  // namespace vp
