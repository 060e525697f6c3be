#include "ndpc/noisy_dpc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ndpc/errors.hpp"

namespace ndpc {

namespace {

void require_non_negative(double v, const char* name) {
  if (std::isnan(v) || v < 0.0) {
    throw DomainError(std::string(name) + " must be non-negative, got " + std::to_string(v));
  }
}

void require_finite_non_negative(double v, const char* name) {
  require_non_negative(v, name);
  if (!std::isfinite(v)) throw DomainError(std::string(name) + " must be finite");
}

void require_noise(double noise) {
  require_finite_non_negative(noise, "noise");
  if (noise == 0.0) throw DomainError("noise = 0 is unsupported (infinite capacity)");
}

// Q / N with the conventions Q / inf = 0 and Q / 0 = inf (Q > 0).
double cancel_ratio(double interference, double obs_noise) {
  return obs_noise == 0.0 ? std::numeric_limits<double>::infinity()
                          : interference / obs_noise;
}

// Residual interference power Q N / (Q + N), i.e. Q / (1 + Q/N).
double residual_power(double interference, double obs_noise) {
  if (interference == 0.0 || obs_noise == 0.0) return 0.0;
  return interference / (1.0 + interference / obs_noise);
}

}  // namespace

void DirtyPaperChannel::validate() const {
  require_finite_non_negative(power, "power");
  require_finite_non_negative(interference, "interference");
  require_noise(noise);
  require_non_negative(tx_noise, "tx_noise");
  require_non_negative(rx_noise, "rx_noise");
}

double residual_fraction(const DirtyPaperChannel& ch) {
  ch.validate();
  if (ch.interference == 0.0) {
    throw DomainError("residual fraction is undefined for interference = 0; use capacity()");
  }
  if (ch.tx_noise == 0.0 || ch.rx_noise == 0.0) return 0.0;
  return 1.0 / (1.0 + cancel_ratio(ch.interference, ch.tx_noise) +
                cancel_ratio(ch.interference, ch.rx_noise));
}

Rate capacity(const DirtyPaperChannel& ch) {
  ch.validate();
  if (ch.interference == 0.0) return cap(ch.power / ch.noise);
  const double mu = residual_fraction(ch);
  return cap(ch.power / (mu * ch.interference + ch.noise));
}

Rate capacity_tx_only(double power, double interference, double noise, double tx_noise) {
  DirtyPaperChannel{power, interference, noise, tx_noise, kNoObservation}.validate();
  return cap(power / (residual_power(interference, tx_noise) + noise));
}

Rate capacity_rx_only(double power, double interference, double noise, double rx_noise) {
  DirtyPaperChannel{power, interference, noise, kNoObservation, rx_noise}.validate();
  return cap(power / (residual_power(interference, rx_noise) + noise));
}

Rate capacity_multi_obs(const ObservationSet& obs, double power, double noise) {
  require_finite_non_negative(power, "power");
  require_finite_non_negative(obs.interference, "interference");
  require_noise(noise);

  std::vector<double> all(obs.tx_variances);
  all.insert(all.end(), obs.rx_variances.begin(), obs.rx_variances.end());
  for (double v : all) require_non_negative(v, "observation variance");
  if (obs.interference == 0.0) return cap(power / noise);

  // Summing in sorted order makes the result depend only on the multiset.
  std::sort(all.begin(), all.end());
  if (!all.empty() && all.front() == 0.0) return cap(power / noise);
  double inv_mu = 1.0;
  for (double v : all) inv_mu += cancel_ratio(obs.interference, v);
  return cap(power / (obs.interference / inv_mu + noise));
}

Rate rate_of_alpha(const DirtyPaperChannel& ch, double alpha) {
  ch.validate();
  if (!std::isfinite(alpha)) throw DomainError("alpha must be finite");
  if (!std::isfinite(ch.tx_noise)) {
    throw DomainError("rate_of_alpha needs a transmitter observation (finite tx_noise)");
  }
  const double p = ch.power;
  const double q = ch.interference;
  const double n0 = ch.noise;
  const double n1 = ch.tx_noise;
  if (p == 0.0) return Rate{};

  double numerator = 0.0;
  double denominator = 0.0;
  if (std::isfinite(ch.rx_noise)) {
    const double n2 = ch.rx_noise;
    numerator = p * ((q + p + n0) * (q + n2) - q * q);
    denominator = alpha * alpha * (q * (p + n0) * (n1 + n2) + (q + p + n0) * n1 * n2) -
                  2.0 * alpha * q * p * n2 + p * (q * n0 + q * n2 + n0 * n2);
  } else {
    // Both sides divided by N2, N2 -> infinity.
    numerator = p * (q + p + n0);
    denominator = alpha * alpha * (q * (p + n0) + (q + p + n0) * n1) - 2.0 * alpha * q * p +
                  p * (q + n0);
  }
  if (!(denominator > 0.0)) return Rate{};
  const double r = 0.5 * std::log(numerator / denominator);
  return r > 0.0 ? Rate::from_nats(r) : Rate{};
}

double optimal_alpha(const DirtyPaperChannel& ch) {
  ch.validate();
  if (!std::isfinite(ch.tx_noise)) {
    throw DomainError("optimal_alpha needs a transmitter observation (finite tx_noise)");
  }
  const double p = ch.power;
  const double q = ch.interference;
  const double n0 = ch.noise;
  const double n1 = ch.tx_noise;

  double numerator = 0.0;
  double denominator = 0.0;
  if (std::isfinite(ch.rx_noise)) {
    const double n2 = ch.rx_noise;
    numerator = q * p * n2;
    denominator = q * (p + n0) * (n1 + n2) + (q + p + n0) * n1 * n2;
  } else {
    numerator = q * p;
    denominator = q * (p + n0) + (q + p + n0) * n1;
  }
  if (denominator == 0.0) return 0.0;
  return numerator / denominator;
}

}  // namespace ndpc
