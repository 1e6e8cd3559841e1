#pragma once

#include <stdexcept>
#include <string>

namespace besovmm {

/// Malformed input: bad metric, bad weights, bad spec parameters.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of a function (t <= 0 and the like).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Numerical evaluation failed to converge.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// LP solver did not reach the requested duality gap.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::string dump_path)
      : std::runtime_error(what), dump_path_(std::move(dump_path)) {}
  const std::string& dump_path() const noexcept { return dump_path_; }

 private:
  std::string dump_path_;
};

/// A theorem check was asked for outside the hypotheses of the result.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Zero right-hand side with positive left-hand side.
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Symbolic analysis cannot handle the requested shape.
class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace besovmm
