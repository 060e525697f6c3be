#pragma once

#include <limits>
#include <vector>

#include "ndpc/rate.hpp"

namespace ndpc {

/// Observation noise variance meaning "no observation of the interference".
inline constexpr double kNoObservation = std::numeric_limits<double>::infinity();

/// Scalar Gaussian channel Y = X + S + Z0 with noisy interference
/// observations M1 = S + Z1 at the encoder and M2 = S + Z2 at the decoder.
///
/// tx_noise / rx_noise may be kNoObservation; a value of 0 means the
/// interference is known perfectly on that side.
struct DirtyPaperChannel {
  double power = 1.0;         // input power constraint P
  double interference = 1.0;  // Var(S) = Q
  double noise = 1.0;         // Var(Z0) = N0
  double tx_noise = kNoObservation;  // Var(Z1) = N1
  double rx_noise = kNoObservation;  // Var(Z2) = N2

  /// Throws DomainError on negative/NaN fields or noise == 0.
  void validate() const;

  DirtyPaperChannel with_sides_swapped() const {
    DirtyPaperChannel c = *this;
    c.tx_noise = rx_noise;
    c.rx_noise = tx_noise;
    return c;
  }
};

/// Independent noisy observations of the interference held at the
/// transmitter and at the receiver.
struct ObservationSet {
  double interference = 1.0;
  std::vector<double> tx_variances;
  std::vector<double> rx_variances;
};

/// mu = 1 / (1 + Q/N1 + Q/N2): the fraction of interference power left
/// uncancelled. Exactly 0 when either observation is noiseless. Requires
/// Q > 0 (DomainError otherwise).
double residual_fraction(const DirtyPaperChannel& ch);

/// C(P / (mu Q + N0)). Q = 0 returns C(P/N0) without touching mu.
Rate capacity(const DirtyPaperChannel& ch);

/// Capacity with a single observation at the transmitter / receiver only.
Rate capacity_tx_only(double power, double interference, double noise, double tx_noise);
Rate capacity_rx_only(double power, double interference, double noise, double rx_noise);

/// Capacity with any number of independent observations on either side.
/// Only the multiset of variances matters; empty lists mean mu = 1.
Rate capacity_multi_obs(const ObservationSet& obs, double power, double noise);

/// Binning rate of the auxiliary U = X + alpha M1, i.e.
/// I(U; Y, M2) - I(U; M1) in closed form. Requires a finite tx_noise.
/// rx_noise = kNoObservation takes the limit (M2 dropped). Negative values,
/// which occur only for alpha far from the optimum, are clamped to 0.
Rate rate_of_alpha(const DirtyPaperChannel& ch, double alpha);

/// The alpha maximising rate_of_alpha:
///   Q P N2 / [Q (P + N0)(N1 + N2) + (Q + P + N0) N1 N2].
/// Returns 0 when the denominator vanishes (e.g. P = Q = 0).
double optimal_alpha(const DirtyPaperChannel& ch);

}  // namespace ndpc
