#include "ndpc/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "ndpc/errors.hpp"

namespace ndpc {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double NormalSource::uniform() {
  // 53 random bits mapped onto (-1, 1).
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

double NormalSource::operator()() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double x = 0.0;
  double y = 0.0;
  double s = 0.0;
  do {
    x = uniform();
    y = uniform();
    s = x * x + y * y;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = y * scale;
  has_spare_ = true;
  return x * scale;
}

GaussianSampler::GaussianSampler(const CovarianceMatrix& cov)
    : dim_(cov.dim()), factor_(cov.dim() * cov.dim(), 0.0) {
  using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const auto n = static_cast<Eigen::Index>(dim_);
  const Eigen::Map<const RowMat> m(cov.entries().data(), n, n);

  Eigen::LLT<Eigen::MatrixXd> llt(m);
  Eigen::MatrixXd lower;
  if (llt.info() == Eigen::Success) {
    lower = llt.matrixL();
    cholesky_ = lower.allFinite();
  } else {
    cholesky_ = false;
  }
  if (!cholesky_) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
    if (eig.info() != Eigen::Success) {
      throw DegenerateDistribution("eigendecomposition of sampling covariance failed");
    }
    const Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    lower = eig.eigenvectors() * root.asDiagonal();
  }
  Eigen::Map<RowMat>(factor_.data(), n, n) = lower;
}

void GaussianSampler::draw(NormalSource& normals, std::span<double> out) const {
  std::array<double, CovarianceMatrix::kMaxDim> z{};
  for (std::size_t j = 0; j < dim_; ++j) z[j] = normals();
  for (std::size_t i = 0; i < dim_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) acc += factor_[i * dim_ + j] * z[j];
    out[i] = acc;
  }
}

}  // namespace ndpc
