#pragma once

#include <stdexcept>
#include <string>

namespace dclp {

// Shape mismatch between operands.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation
// (nonpositive scaling entry, guard violation, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed input file; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Structural problem with the LP model (inconsistent bounds,
// duplicate equality rows, rank-deficient constraint matrix).
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A pivot was significantly negative: the input matrix was not
// positive semidefinite.
class IndefiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A direction strategy failed to produce a direction of the requested
// accuracy (CG non-convergence, singular capacitance matrix).
class StrategyError : public std::runtime_error {
 public:
  explicit StrategyError(const std::string& what, int iterations = 0)
      : std::runtime_error(what), iterations_(iterations) {}
  int iterations() const { return iterations_; }

 private:
  int iterations_;
};

// NaN surfaced in an iterative recurrence: the supplied operator
// violated its contract (not symmetric positive definite).
class OperatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dclp
