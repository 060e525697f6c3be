#pragma once

#include <stdexcept>

namespace ndpc {

// Input outside an operation's domain (negative power, NaN, Q = 0 for mu, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A covariance (sub)matrix with non-positive determinant where a density is
// required.
class DegenerateDistribution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Internal invariant broken beyond floating-point noise.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ndpc
