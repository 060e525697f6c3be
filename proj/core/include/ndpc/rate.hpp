#pragma once

#include <numbers>
#include <optional>
#include <string_view>

namespace ndpc {

enum class Units { nats, bits };

std::string_view to_string(Units u);
std::optional<Units> parse_units(std::string_view s);

/// Information rate per channel use. Stored in nats; bits are a view.
class Rate {
 public:
  constexpr Rate() = default;

  /// Throws DomainError unless `value` is finite and >= 0.
  static Rate from_nats(double value);
  static Rate from_bits(double value);

  constexpr double nats() const { return nats_; }
  constexpr double bits() const { return nats_ / std::numbers::ln2; }
  constexpr double in(Units u) const { return u == Units::nats ? nats() : bits(); }

  friend constexpr auto operator<=>(const Rate&, const Rate&) = default;

 private:
  explicit constexpr Rate(double nats) : nats_(nats) {}
  double nats_ = 0.0;
};

/// C(x) = 0.5 ln(1 + x), in nats. Throws DomainError for negative or
/// non-finite snr.
Rate cap(double snr);

}  // namespace ndpc
