#pragma once

#include <cstdint>
#include <string_view>

namespace ndpc {

/// Decoding a Gaussian random codebook of rate `rate` (nats/use) at receive
/// SNR `snr`.
struct DecodeSetting {
  double snr = 1.0;
  double rate = 0.1;

  /// snr > 0 and rate >= 0, both finite. Throws DomainError.
  void validate() const;
};

enum class ExponentBranch { above_capacity, high_rate, low_rate };

std::string_view to_string(ExponentBranch b);

/// Rate below which the exponent is a straight line of slope -1:
/// 0.5 ln(0.5 + A/4 + 0.5 sqrt(1 + A^2/4)).
double critical_rate(double snr);

ExponentBranch exponent_branch(const DecodeSetting& s);

/// Gallager's random-coding exponent E(R) for the power-constrained AWGN
/// channel. Zero above C(snr); the rate = C(snr) boundary is evaluated on
/// the high-rate branch. Always >= 0.
double random_coding_exponent(const DecodeSetting& s);

// The two non-trivial branches evaluated unconditionally (continuity checks).
double high_rate_exponent(const DecodeSetting& s);
double low_rate_exponent(const DecodeSetting& s);

/// ln of the bound P_e <= exp(-symbols * exponent), kept in log domain.
double log_error_bound(double exponent, std::int64_t symbols);

}  // namespace ndpc
