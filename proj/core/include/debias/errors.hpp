#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace debias {

/// Bad arguments or violated preconditions. The CLI maps these to exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure on well-formed input. The CLI maps these to exit code 1.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EigenConvergenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

class QuadratureError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// The weighted design matrix lost column rank. `collisions` lists index
/// pairs (into the sorted node set) of nodes that coincide numerically.
class RankDeficientError : public NumericError {
 public:
  RankDeficientError(const std::string& what,
                     std::vector<std::pair<std::size_t, std::size_t>> collisions)
      : NumericError(what), collisions_(std::move(collisions)) {}

  const std::vector<std::pair<std::size_t, std::size_t>>& collisions() const noexcept {
    return collisions_;
  }

 private:
  std::vector<std::pair<std::size_t, std::size_t>> collisions_;
};

}  // namespace debias
