#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "ghr/quaternion.hpp"

namespace ghr {

// An argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A rule cannot be checked at the requested point, e.g. a degenerate rotation axis.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Invalid user-supplied settings: lengths, steps, tolerances, config files.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// A function returned a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, const Quaternion& point)
      : std::runtime_error(what + " at " + to_string(point)), point_(point) {}

  const Quaternion& point() const { return point_; }

 protected:
  struct Preformatted {};
  EvaluationError(Preformatted, const std::string& message, const Quaternion& point)
      : std::runtime_error(message), point_(point) {}

 private:
  Quaternion point_;
};

// Evaluation failed somewhere on a segment q0 + t (q1 - q0).
class SegmentError : public EvaluationError {
 public:
  SegmentError(const EvaluationError& cause, double t)
      : EvaluationError(Preformatted{},
                        std::string(cause.what()) + " (segment parameter t=" + std::to_string(t) + ")",
                        cause.point()),
        t_(t) {}

  double t() const { return t_; }

 private:
  double t_;
};

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::size_t step)
      : std::runtime_error(what), step_(step) {}

  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

}  // namespace ghr
