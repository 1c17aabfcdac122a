#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace hdmt {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Precondition or configuration violations (bad sizes, out-of-range
// parameters, unsupported levels).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The data itself cannot be tested: non-finite entries, constant columns,
// malformed CSV input.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical routine failed (non-PD matrix, diverging solver, singular
// projected covariance).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

}  // namespace hdmt
