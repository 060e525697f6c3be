#include "ndpc/cognitive.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "ndpc/error_exponent.hpp"
#include "ndpc/errors.hpp"
#include "ndpc/log_math.hpp"

namespace ndpc {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

double exponent_for(double snr, double rate) {
  if (snr == 0.0) return 0.0;
  return random_coding_exponent(DecodeSetting{snr, rate});
}

struct Exponents {
  double at_c;
  double at_d;
};

double mu_from_exponents(const Exponents& e, int m, int n, DpcSide which) {
  // 1/mu = 1 + 0.5 e^{x} [+ 0.5 e^{y}], summed in log domain.
  std::array<double, 3> terms{};
  std::size_t count = 0;
  terms[count++] = 0.0;
  if (which != DpcSide::rx_only) {
    terms[count++] = static_cast<double>(m) * e.at_c - std::numbers::ln2;
  }
  if (which != DpcSide::tx_only) {
    terms[count++] = static_cast<double>(n) * e.at_d - std::numbers::ln2;
  }
  return std::exp(-log_sum_exp(std::span<const double>(terms.data(), count)));
}

double interference_at_d(const CognitiveNetwork& net) {
  return net.gain_ad * net.gain_ad * net.primary_power;
}

double secondary_signal(const CognitiveNetwork& net) {
  return net.gain_cd * net.gain_cd * net.secondary_power;
}

double listening_rate_nats(const CognitiveNetwork& net, const Exponents& e, int m,
                           DpcSide which) {
  const int n = net.block_length;
  const double mu = mu_from_exponents(e, m, n, which);
  const double boost = static_cast<double>(n) / static_cast<double>(n - m);
  const double snr = secondary_signal(net) * boost / (mu * interference_at_d(net) + net.noise_d);
  return (1.0 - static_cast<double>(m) / static_cast<double>(n)) * cap(snr).nats();
}

void check_listening_args(const CognitiveNetwork& net, int m, DpcSide which) {
  require(which != DpcSide::rx_only, "listening length applies to tx_only/both only");
  require(m >= 1 && m <= net.block_length - 1, "listening length must be in [1, n-1]");
}

Exponents exponents(const CognitiveNetwork& net) {
  return {exponent_at_c(net), exponent_at_d(net)};
}

}  // namespace

void CognitiveNetwork::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  require(finite(primary_power) && primary_power > 0.0, "primary power must be positive");
  require(finite(secondary_power) && secondary_power >= 0.0,
          "secondary power must be non-negative");
  require(finite(noise_c) && noise_c > 0.0, "noise at C must be positive");
  require(finite(noise_d) && noise_d > 0.0, "noise at D must be positive");
  require(finite(gain_ac) && gain_ac >= 0.0, "gain h_AC must be non-negative");
  require(finite(gain_ad) && gain_ad >= 0.0, "gain h_AD must be non-negative");
  require(finite(gain_cd) && gain_cd >= 0.0, "gain h_CD must be non-negative");
  require(finite(primary_rate) && primary_rate > 0.0, "primary rate must be positive");
  require(block_length >= 2, "block length must be >= 2");
}

std::string_view to_string(RateCase c) {
  switch (c) {
    case RateCase::ub_achieving: return "UB_ACHIEVING";
    case RateCase::treat_as_noise: return "TREAT_AS_NOISE";
    case RateCase::rx_only_dpc: return "RX_ONLY_DPC";
    case RateCase::tx_only_dpc: return "TX_ONLY_DPC";
    case RateCase::both_dpc: return "BOTH_DPC";
  }
  return "UNKNOWN";
}

CaseThresholds case_thresholds(const CognitiveNetwork& net) {
  net.validate();
  const double excess = std::expm1(2.0 * net.primary_rate) / net.primary_power;
  return {(secondary_signal(net) + net.noise_d) * excess, net.noise_d * excess,
          net.noise_c * excess};
}

Rate rate_lower_bound(const CognitiveNetwork& net) {
  net.validate();
  return cap(secondary_signal(net) / (net.noise_d + interference_at_d(net)));
}

Rate rate_upper_bound(const CognitiveNetwork& net) {
  net.validate();
  return cap(secondary_signal(net) / net.noise_d);
}

RateCase classify_case(const CognitiveNetwork& net) {
  const CaseThresholds t = case_thresholds(net);
  const double ad = net.gain_ad * net.gain_ad;
  const double ac = net.gain_ac * net.gain_ac;
  if (ad >= t.d_high) return RateCase::ub_achieving;
  const bool d_decodes = ad > t.d_low;
  if (ac <= t.c) return d_decodes ? RateCase::rx_only_dpc : RateCase::treat_as_noise;
  return d_decodes ? RateCase::both_dpc : RateCase::tx_only_dpc;
}

double exponent_at_c(const CognitiveNetwork& net) {
  net.validate();
  return exponent_for(net.gain_ac * net.gain_ac * net.primary_power / net.noise_c,
                      net.primary_rate);
}

double exponent_at_d(const CognitiveNetwork& net) {
  net.validate();
  return exponent_for(interference_at_d(net) / net.noise_d, net.primary_rate);
}

double residual_mu(const CognitiveNetwork& net, int m, DpcSide which) {
  if (which != DpcSide::rx_only) check_listening_args(net, m, which);
  return mu_from_exponents(exponents(net), m, net.block_length, which);
}

Rate listening_rate(const CognitiveNetwork& net, int m, DpcSide which) {
  net.validate();
  check_listening_args(net, m, which);
  return Rate::from_nats(listening_rate_nats(net, exponents(net), m, which));
}

ListeningOptimum optimize_m(const CognitiveNetwork& net, DpcSide which) {
  net.validate();
  require(which != DpcSide::rx_only, "optimize_m applies to tx_only/both only");
  const Exponents e = exponents(net);
  ListeningOptimum best{1, Rate::from_nats(listening_rate_nats(net, e, 1, which))};
  for (int m = 2; m < net.block_length; ++m) {
    const double r = listening_rate_nats(net, e, m, which);
    if (r > best.rate.nats()) best = {m, Rate::from_nats(r)};
  }
  return best;
}

RateOutcome achievable_rate(const CognitiveNetwork& net) {
  const RateCase id = classify_case(net);
  RateOutcome out{id, Rate{}, std::nullopt, std::nullopt, rate_lower_bound(net),
                  rate_upper_bound(net)};
  switch (id) {
    case RateCase::ub_achieving:
      out.rate = out.upper_bound;
      break;
    case RateCase::treat_as_noise:
      out.rate = out.lower_bound;
      out.mu_effective = 1.0;
      break;
    case RateCase::rx_only_dpc: {
      const double mu = residual_mu(net, 0, DpcSide::rx_only);
      out.mu_effective = mu;
      out.rate = cap(secondary_signal(net) / (mu * interference_at_d(net) + net.noise_d));
      break;
    }
    case RateCase::tx_only_dpc:
    case RateCase::both_dpc: {
      const DpcSide side = id == RateCase::both_dpc ? DpcSide::both : DpcSide::tx_only;
      const ListeningOptimum best = optimize_m(net, side);
      out.m_opt = best.m;
      out.mu_effective = residual_mu(net, best.m, side);
      out.fell_back_to_noise = best.rate < out.lower_bound;
      out.rate = out.fell_back_to_noise ? out.lower_bound : best.rate;
      break;
    }
  }
  return out;
}

std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::m: return "m";
    case SweepVariable::gain_ad: return "hAD";
    case SweepVariable::gain_ac: return "hAC";
    case SweepVariable::block_length: return "n";
  }
  return "unknown";
}

std::optional<SweepVariable> parse_sweep_variable(std::string_view s) {
  if (s == "m") return SweepVariable::m;
  if (s == "hAD") return SweepVariable::gain_ad;
  if (s == "hAC") return SweepVariable::gain_ac;
  if (s == "n") return SweepVariable::block_length;
  return std::nullopt;
}

namespace {

bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v); }

SweepRow outcome_row(double value, const RateOutcome& o) {
  return {value, o.case_id, o.rate.nats(), o.m_opt, o.mu_effective, {}};
}

SweepRow sweep_point(CognitiveNetwork net, SweepVariable variable, double value) {
  switch (variable) {
    case SweepVariable::m: {
      if (!is_integer(value) || value < 1.0 || value > net.block_length - 1) {
        throw DomainError("m must be an integer in [1, n-1]");
      }
      const int m = static_cast<int>(value);
      const RateCase id = classify_case(net);
      if (id != RateCase::tx_only_dpc && id != RateCase::both_dpc) {
        return outcome_row(value, achievable_rate(net));
      }
      const DpcSide side = id == RateCase::both_dpc ? DpcSide::both : DpcSide::tx_only;
      return {value, id, listening_rate(net, m, side).nats(), m, residual_mu(net, m, side), {}};
    }
    case SweepVariable::gain_ad:
      net.gain_ad = value;
      break;
    case SweepVariable::gain_ac:
      net.gain_ac = value;
      break;
    case SweepVariable::block_length:
      if (!is_integer(value) || value < 2.0 || value > 1e9) {
        throw DomainError("n must be an integer >= 2");
      }
      net.block_length = static_cast<int>(value);
      break;
  }
  return outcome_row(value, achievable_rate(net));
}

}  // namespace

std::vector<SweepRow> sweep(const CognitiveNetwork& net, SweepVariable variable,
                            std::span<const double> grid) {
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double value : grid) {
    try {
      rows.push_back(sweep_point(net, variable, value));
    } catch (const DomainError& e) {
      SweepRow bad{value, std::nullopt, 0.0, std::nullopt, std::nullopt, e.what()};
      rows.push_back(std::move(bad));
    }
  }
  return rows;
}

}  // namespace ndpc
