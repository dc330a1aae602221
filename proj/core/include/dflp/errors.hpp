#pragma once

#include <stdexcept>
#include <string>

namespace dflp {

/// Pivoting stalled, a basis went singular, or an internal consistency
/// check failed. The result would not be trustworthy, so nothing is returned.
struct NumericalFailure : std::runtime_error {
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

/// Dimension mismatch or out-of-range index in a problem description.
struct MalformedProblem : std::runtime_error {
  explicit MalformedProblem(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidDimension : std::runtime_error {
  explicit InvalidDimension(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidParam : std::runtime_error {
  explicit InvalidParam(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// File parsed as JSON but does not match the expected schema/version.
struct SchemaError : std::runtime_error {
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

/// Normalization denominator |sum of true optima| is numerically zero.
struct DegenerateNormalization : std::runtime_error {
  explicit DegenerateNormalization(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dflp
