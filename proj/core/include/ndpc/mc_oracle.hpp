#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "ndpc/gaussian.hpp"
#include "ndpc/noisy_dpc.hpp"
#include "ndpc/rate.hpp"

// Independent checks for the closed forms in noisy_dpc.hpp and
// error_exponent.hpp. Nothing here calls the formula it verifies.
namespace ndpc::oracle {

/// Stand-in for an infinite observation variance inside covariance matrices.
inline constexpr double kInfinitySurrogate = 1e12;

// Variable order of theorem_covariance().
inline constexpr std::size_t kU = 0;
inline constexpr std::size_t kX = 1;
inline constexpr std::size_t kY = 2;
inline constexpr std::size_t kM1 = 3;
inline constexpr std::size_t kM2 = 4;

struct SampleSpec {
  std::uint64_t seed = 42;
  std::size_t num_samples = 1'000'000;

  /// num_samples >= 100, else DomainError.
  void validate() const;
};

/// Replaces infinite observation variances with kInfinitySurrogate.
DirtyPaperChannel with_surrogates(DirtyPaperChannel ch);

/// Joint covariance of (X, Y, M1, M2) with Y = X + S + Z0, Mi = S + Zi.
CovarianceMatrix observation_covariance(const DirtyPaperChannel& ch);

/// I(X; Y, M1, M2) from determinants of observation_covariance. Equals the
/// channel capacity because X is independent of (M1, M2).
Rate determinant_capacity(const DirtyPaperChannel& ch);

/// 5x5 covariance of (U, X, Y, M1, M2) with U = X + alpha M1.
CovarianceMatrix theorem_covariance(const DirtyPaperChannel& ch, double alpha);

/// I(U; Y, M2) - I(U; M1) evaluated on a (U, X, Y, M1, M2) covariance.
double binning_rate(const CovarianceMatrix& joint);

/// Maximises rate_of_alpha over lo, lo + step, ... <= hi. Ties resolve to
/// the grid point nearest zero, then to the smaller one. At most 1e7 + 1
/// grid points.
double grid_argmax_alpha(const DirtyPaperChannel& ch, double lo, double hi, double step);

/// Empirical covariance (unbiased) of spec.num_samples draws from N(0, model).
///
/// Sampling runs in fixed-size shards with seeds derived from spec.seed and
/// merges in shard order, so the result is independent of the thread count.
CovarianceMatrix sample_covariance(const CovarianceMatrix& model, const SampleSpec& spec);

/// Monte-Carlo estimate of I(A; B) over the theorem_covariance variables.
Rate mc_mutual_info(const DirtyPaperChannel& ch, double alpha,
                    std::span<const std::size_t> group_a,
                    std::span<const std::size_t> group_b, const SampleSpec& spec);

/// Monte-Carlo estimate of binning_rate at `alpha`.
double mc_binning_rate(const DirtyPaperChannel& ch, double alpha, const SampleSpec& spec);

/// Five fixed channels for Monte-Carlo spot checks: symmetric, unequal
/// sides, a perfect transmitter observation, a receiver-blind case and a
/// strong-interference case.
std::span<const DirtyPaperChannel> representative_channels();

/// Gallager function for Gaussian inputs under a power constraint,
///   E0(rho) = max_{r >= 0} (1+rho) r A + 0.5 ln(1 - 2rA) + (rho/2) ln(1 - 2rA + A/(1+rho)),
/// maximised numerically over the shaping parameter r.
double gallager_e0(double rho, double snr);

/// max over rho in [0, 1] of gallager_e0(rho) - rho * rate, by numeric search.
double gallager_exponent_search(double snr, double rate);

}  // namespace ndpc::oracle
