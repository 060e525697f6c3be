#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ndpc/gaussian.hpp"

namespace ndpc {

/// splitmix64 finaliser applied to seed + stream; used to derive independent
/// per-shard seeds from one user seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Standard normal deviates: mt19937_64 uniforms (53-bit) through the
/// Marsaglia polar method. Fully specified, so a seed reproduces the same
/// stream on any conforming platform with an IEEE libm.
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

  double operator()();

 private:
  double uniform();  // in (-1, 1)

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Draws zero-mean vectors with a given covariance through a factor L with
/// L L^T = cov. Cholesky when it succeeds, otherwise an eigendecomposition
/// with negative eigenvalues clamped to zero (semidefinite models).
class GaussianSampler {
 public:
  explicit GaussianSampler(const CovarianceMatrix& cov);

  std::size_t dim() const { return dim_; }
  bool uses_cholesky() const { return cholesky_; }
  std::span<const double> factor() const { return factor_; }

  void draw(NormalSource& normals, std::span<double> out) const;

 private:
  std::size_t dim_;
  std::vector<double> factor_;  // row-major dim x dim
  bool cholesky_ = true;
};

}  // namespace ndpc
