#pragma once

#include <stdexcept>
#include <string>

namespace dimtrunc {

// Invalid argument values (bad parameters, out-of-range orders, ...).
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

// A requested mode whose mathematical precondition cannot be certified
// for the given inputs (e.g. a bounded-sup bound without a known sup).
class PreconditionRefused : public std::runtime_error {
 public:
  explicit PreconditionRefused(const std::string& what) : std::runtime_error(what) {}
};

// Numeric failure: non-convergent quadrature, overflow, lost precision.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dimtrunc
