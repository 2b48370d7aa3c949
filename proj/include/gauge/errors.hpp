#pragma once

#include <stdexcept>
#include <string>

namespace gauge {

// Base class for all library errors.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input document (bad JSON/CSV syntax or schema violation).
// Carries enough context to point at the offending location.
class parse_error : public error {
 public:
  explicit parse_error(const std::string& what) : error(what) {}
};

// Structurally valid input that violates an operation's contract
// (dimension mismatch, non-finite entries, incompatible operands).
class input_error : public error {
 public:
  explicit input_error(const std::string& what) : error(what) {}
};

// Out-of-range scalar parameter (negative t, p < 1, k > n, empty family).
class parameter_error : public error {
 public:
  explicit parameter_error(const std::string& what) : error(what) {}
};

// Query outside the domain of a function (integration bounds past the
// domain end, evaluation at negative abscissa).
class domain_error : public error {
 public:
  explicit domain_error(const std::string& what) : error(what) {}
};

// A required precondition established by another operation does not hold
// (e.g. dominance transfer requested for a non-dominated pair).
class precondition_error : public error {
 public:
  explicit precondition_error(const std::string& what) : error(what) {}
};

// Iterative kernel failed to converge within its iteration cap.
class numeric_error : public error {
 public:
  explicit numeric_error(const std::string& what) : error(what) {}
};

}  // namespace gauge
