#include "ndpc/gaussian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "ndpc/errors.hpp"

namespace ndpc {

namespace {

constexpr double kPsdTolerance = 1e-10;
constexpr double kMiClamp = 1e-9;

double det2(double a, double b, double c, double d) { return a * d - b * c; }

double det3(std::span<const double> m) {
  return m[0] * det2(m[4], m[5], m[7], m[8]) - m[1] * det2(m[3], m[5], m[6], m[8]) +
         m[2] * det2(m[3], m[4], m[6], m[7]);
}

// Laplace expansion along the first two rows using 2x2 minors.
double det4(std::span<const double> m) {
  auto at = [&](int r, int c) { return m[static_cast<std::size_t>(r * 4 + c)]; };
  const double s0 = det2(at(0, 0), at(0, 1), at(1, 0), at(1, 1));
  const double s1 = det2(at(0, 0), at(0, 2), at(1, 0), at(1, 2));
  const double s2 = det2(at(0, 0), at(0, 3), at(1, 0), at(1, 3));
  const double s3 = det2(at(0, 1), at(0, 2), at(1, 1), at(1, 2));
  const double s4 = det2(at(0, 1), at(0, 3), at(1, 1), at(1, 3));
  const double s5 = det2(at(0, 2), at(0, 3), at(1, 2), at(1, 3));
  const double c5 = det2(at(2, 2), at(2, 3), at(3, 2), at(3, 3));
  const double c4 = det2(at(2, 1), at(2, 3), at(3, 1), at(3, 3));
  const double c3 = det2(at(2, 1), at(2, 2), at(3, 1), at(3, 2));
  const double c2 = det2(at(2, 0), at(2, 3), at(3, 0), at(3, 3));
  const double c1 = det2(at(2, 0), at(2, 2), at(3, 0), at(3, 2));
  const double c0 = det2(at(2, 0), at(2, 1), at(3, 0), at(3, 1));
  return s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0;
}

double det_lu(std::span<const double> m, std::size_t n) {
  std::array<double, CovarianceMatrix::kMaxDim * CovarianceMatrix::kMaxDim> a{};
  std::copy(m.begin(), m.end(), a.begin());
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(a[r * n + k]) > std::abs(a[pivot * n + k])) pivot = r;
    }
    if (a[pivot * n + k] == 0.0) return 0.0;
    if (pivot != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[pivot * n + c]);
      det = -det;
    }
    const double diag = a[k * n + k];
    det *= diag;
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = a[r * n + k] / diag;
      for (std::size_t c = k + 1; c < n; ++c) a[r * n + c] -= f * a[k * n + c];
    }
  }
  return det;
}

double log_det_or_throw(const CovarianceMatrix& m) {
  const double d = determinant(m);
  if (!(d > 0.0) || !std::isfinite(d)) {
    throw DegenerateDistribution("covariance determinant is " + std::to_string(d) +
                                 " (dim " + std::to_string(m.dim()) + ")");
  }
  return std::log(d);
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(std::size_t dim, std::vector<double> entries)
    : dim_(dim), entries_(std::move(entries)) {
  validate();
}

CovarianceMatrix::CovarianceMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : dim_(rows.size()) {
  entries_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw DomainError("covariance rows must form a square matrix");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  validate();
}

CovarianceMatrix CovarianceMatrix::identity(std::size_t dim) {
  std::vector<double> e(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = 1.0;
  return {dim, std::move(e)};
}

CovarianceMatrix CovarianceMatrix::diagonal(std::span<const double> variances) {
  const std::size_t dim = variances.size();
  std::vector<double> e(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = variances[i];
  return {dim, std::move(e)};
}

CovarianceMatrix CovarianceMatrix::principal(std::span<const std::size_t> indices) const {
  const std::size_t k = indices.size();
  std::vector<double> e(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) e[i * k + j] = (*this)(indices[i], indices[j]);
  }
  return {k, std::move(e)};
}

void CovarianceMatrix::validate() const {
  if (dim_ == 0 || dim_ > kMaxDim) {
    throw DomainError("covariance dimension must be in [1, 8], got " + std::to_string(dim_));
  }
  if (entries_.size() != dim_ * dim_) throw DomainError("covariance entry count mismatch");
  double max_diag = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      const double v = (*this)(i, j);
      if (!std::isfinite(v)) throw DomainError("covariance entries must be finite");
      if (v != (*this)(j, i)) throw DomainError("covariance matrix is not symmetric");
    }
    max_diag = std::max(max_diag, (*this)(i, i));
  }
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> mat(
      entries_.data(), static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mat, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -kPsdTolerance * max_diag) {
    throw DomainError("covariance matrix is not positive semidefinite (min eigenvalue " +
                      std::to_string(min_eig) + ")");
  }
}

double determinant(std::span<const double> m, std::size_t dim) {
  if (dim == 0 || dim > CovarianceMatrix::kMaxDim || m.size() != dim * dim) {
    throw DomainError("determinant supports square matrices up to 8x8");
  }
  switch (dim) {
    case 1: return m[0];
    case 2: return det2(m[0], m[1], m[2], m[3]);
    case 3: return det3(m);
    case 4: return det4(m);
    default: return det_lu(m, dim);
  }
}

double determinant(const CovarianceMatrix& m) { return determinant(m.entries(), m.dim()); }

double gaussian_entropy(const CovarianceMatrix& m) {
  const double log_2pie = std::log(2.0 * std::numbers::pi * std::numbers::e);
  return 0.5 * (static_cast<double>(m.dim()) * log_2pie + log_det_or_throw(m));
}

Rate mutual_info(const CovarianceMatrix& joint, std::span<const std::size_t> group_a,
                 std::span<const std::size_t> group_b) {
  if (group_a.empty() || group_b.empty()) throw DomainError("mutual_info groups must be nonempty");
  std::vector<std::size_t> both(group_a.begin(), group_a.end());
  both.insert(both.end(), group_b.begin(), group_b.end());
  for (std::size_t idx : both) {
    if (idx >= joint.dim()) throw DomainError("mutual_info index out of range");
  }
  std::vector<std::size_t> sorted = both;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("mutual_info groups must be disjoint");
  }

  // The (2 pi e)^k factors cancel; work with log-determinants only.
  const double mi = 0.5 * (log_det_or_throw(joint.principal(group_a)) +
                           log_det_or_throw(joint.principal(group_b)) -
                           log_det_or_throw(joint.principal(both)));
  if (mi < -kMiClamp) {
    throw ConsistencyError("negative mutual information " + std::to_string(mi));
  }
  return Rate::from_nats(std::max(mi, 0.0));
}

}  // namespace ndpc
