#include "ndpc/rate.hpp"

#include <cmath>
#include <string>

#include "ndpc/errors.hpp"

namespace ndpc {

std::string_view to_string(Units u) {
  return u == Units::nats ? "nats" : "bits";
}

std::optional<Units> parse_units(std::string_view s) {
  if (s == "nats") return Units::nats;
  if (s == "bits") return Units::bits;
  return std::nullopt;
}

Rate Rate::from_nats(double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw DomainError("rate must be finite and non-negative, got " +
                      std::to_string(value));
  }
  return Rate(value);
}

Rate Rate::from_bits(double value) {
  return from_nats(value * std::numbers::ln2);
}

Rate cap(double snr) {
  if (!std::isfinite(snr) || snr < 0.0) {
    throw DomainError("snr must be finite and non-negative, got " +
                      std::to_string(snr));
  }
  return Rate::from_nats(0.5 * std::log1p(snr));
}

}  // namespace ndpc
