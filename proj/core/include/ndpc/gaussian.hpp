#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "ndpc/rate.hpp"

namespace ndpc {

/// Small dense symmetric positive-semidefinite matrix (dim <= 8), row-major.
///
/// Construction checks exact symmetry and that every eigenvalue is at least
/// -1e-10 times the largest diagonal entry; violations throw DomainError.
class CovarianceMatrix {
 public:
  static constexpr std::size_t kMaxDim = 8;

  CovarianceMatrix(std::size_t dim, std::vector<double> entries);
  CovarianceMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static CovarianceMatrix identity(std::size_t dim);
  static CovarianceMatrix diagonal(std::span<const double> variances);

  std::size_t dim() const { return dim_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  std::span<const double> entries() const { return entries_; }

  /// Principal submatrix on `indices` (in the given order).
  CovarianceMatrix principal(std::span<const std::size_t> indices) const;

 private:
  void validate() const;

  std::size_t dim_;
  std::vector<double> entries_;
};

/// Determinant of a dim x dim row-major matrix, dim <= 8. Cofactor
/// expansion up to 4x4, LU with partial pivoting above.
double determinant(std::span<const double> row_major, std::size_t dim);
double determinant(const CovarianceMatrix& m);

/// Differential entropy 0.5 ln((2 pi e)^dim det m), in nats.
/// Throws DegenerateDistribution when det m <= 0.
double gaussian_entropy(const CovarianceMatrix& m);

/// I(A;B) = H(A) + H(B) - H(A u B) from principal submatrices of `joint`.
///
/// Groups must be nonempty, disjoint and in range (DomainError otherwise).
/// Results in [-1e-9, 0) are clamped to zero; anything more negative throws
/// ConsistencyError.
Rate mutual_info(const CovarianceMatrix& joint, std::span<const std::size_t> group_a,
                 std::span<const std::size_t> group_b);

}  // namespace ndpc
