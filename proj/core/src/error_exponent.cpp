#include "ndpc/error_exponent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ndpc/errors.hpp"

namespace ndpc {

namespace {

double gamma_term(double a) { return 0.5 * (1.0 + a / 2.0 + std::sqrt(1.0 + a * a / 4.0)); }

}  // namespace

void DecodeSetting::validate() const {
  if (!std::isfinite(snr) || !(snr > 0.0)) {
    throw DomainError("decode snr must be finite and positive, got " + std::to_string(snr));
  }
  if (!std::isfinite(rate) || rate < 0.0) {
    throw DomainError("decode rate must be finite and non-negative, got " + std::to_string(rate));
  }
}

std::string_view to_string(ExponentBranch b) {
  switch (b) {
    case ExponentBranch::above_capacity: return "above_capacity";
    case ExponentBranch::high_rate: return "high_rate";
    case ExponentBranch::low_rate: return "low_rate";
  }
  return "unknown";
}

double critical_rate(double snr) {
  return 0.5 * std::log(0.5 + snr / 4.0 + 0.5 * std::sqrt(1.0 + snr * snr / 4.0));
}

ExponentBranch exponent_branch(const DecodeSetting& s) {
  s.validate();
  if (s.rate > 0.5 * std::log1p(s.snr)) return ExponentBranch::above_capacity;
  if (s.rate >= critical_rate(s.snr)) return ExponentBranch::high_rate;
  return ExponentBranch::low_rate;
}

double high_rate_exponent(const DecodeSetting& s) {
  s.validate();
  const double a = s.snr;
  const double beta = std::exp(2.0 * s.rate);
  const double root = std::sqrt(1.0 + 4.0 * beta / (a * (beta - 1.0)));
  return a / (4.0 * beta) * ((beta + 1.0) - (beta - 1.0) * root) +
         0.5 * std::log(beta - a * (beta - 1.0) / 2.0 * (root - 1.0));
}

double low_rate_exponent(const DecodeSetting& s) {
  s.validate();
  const double a = s.snr;
  const double g = gamma_term(a);
  return 1.0 - g + a / 2.0 + 0.5 * std::log(g - a / 2.0) + 0.5 * std::log(g) - s.rate;
}

double random_coding_exponent(const DecodeSetting& s) {
  switch (exponent_branch(s)) {
    case ExponentBranch::above_capacity: return 0.0;
    case ExponentBranch::high_rate: return std::max(0.0, high_rate_exponent(s));
    case ExponentBranch::low_rate: return std::max(0.0, low_rate_exponent(s));
  }
  return 0.0;
}

double log_error_bound(double exponent, std::int64_t symbols) {
  if (std::isnan(exponent) || exponent < 0.0) throw DomainError("exponent must be >= 0");
  if (symbols < 1) throw DomainError("symbol count must be >= 1");
  if (exponent == 0.0) return 0.0;
  return -static_cast<double>(symbols) * exponent;
}

}  // namespace ndpc
