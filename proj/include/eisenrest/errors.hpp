#pragma once

#include <stdexcept>
#include <string>

namespace eisenrest {

/// Base of every error raised by the library. `kind()` is the stable
/// machine-readable tag the CLI puts in its `error.kind` field.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("domain", what) {}
};

class PoleError : public Error {
 public:
  explicit PoleError(const std::string& what) : Error("pole", what) {}
};

/// Raised when a special function cannot certify the requested tolerance.
class AccuracyError : public Error {
 public:
  AccuracyError(std::string regime, double achieved, const std::string& what)
      : Error("accuracy", what), regime_(std::move(regime)), achieved_(achieved) {}
  const std::string& regime() const noexcept { return regime_; }
  double achieved() const noexcept { return achieved_; }

 private:
  std::string regime_;
  double achieved_;
};

class TruncationError : public Error {
 public:
  explicit TruncationError(const std::string& what) : Error("truncation", what) {}
};

class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what) : Error("convergence", what) {}
};

class MissingEigenvalueError : public Error {
 public:
  explicit MissingEigenvalueError(const std::string& what)
      : Error("missing_eigenvalue", what) {}
};

}  // namespace eisenrest
