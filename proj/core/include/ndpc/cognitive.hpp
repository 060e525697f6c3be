#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ndpc/rate.hpp"

namespace ndpc {

/// Primary pair A -> B and secondary pair C -> D sharing a band. Node B is
/// far away, so only A's interference at C and D is modelled.
struct CognitiveNetwork {
  double primary_power = 10.0;   // P_A
  double secondary_power = 2.0;  // P_C
  double noise_c = 1.0;          // N_C
  double noise_d = 1.0;          // N_D
  double gain_ac = 0.0;          // |h_AC|
  double gain_ad = 0.0;          // |h_AD|
  double gain_cd = 1.0;          // |h_CD|
  double primary_rate = 0.8;     // R, nats per use
  int block_length = 100;        // n

  /// Throws DomainError. primary_power, noises and primary_rate must be
  /// positive, secondary_power and gains non-negative, block_length >= 2.
  void validate() const;
};

enum class RateCase { ub_achieving, treat_as_noise, rx_only_dpc, tx_only_dpc, both_dpc };

/// Which side(s) decode the primary codeword before noisy DPC.
enum class DpcSide { rx_only, tx_only, both };

std::string_view to_string(RateCase c);

/// Squared-gain thresholds of the case partition:
///   d_high = (P_C |h_CD|^2 + N_D)(e^{2R} - 1) / P_A
///   d_low  = N_D (e^{2R} - 1) / P_A
///   c      = N_C (e^{2R} - 1) / P_A
struct CaseThresholds {
  double d_high;
  double d_low;
  double c;
};

CaseThresholds case_thresholds(const CognitiveNetwork& net);

struct RateOutcome {
  RateCase case_id;
  Rate rate;
  std::optional<int> m_opt;            // set for tx_only_dpc / both_dpc
  std::optional<double> mu_effective;  // residual interference fraction used
  Rate lower_bound;
  Rate upper_bound;
  // tx_only_dpc / both_dpc only: the best listening schedule did not beat
  // treating A as noise, so `rate` is the lower bound.
  bool fell_back_to_noise = false;
};

/// C(|h_CD|^2 P_C / (N_D + |h_AD|^2 P_A)): A's signal treated as noise at D.
Rate rate_lower_bound(const CognitiveNetwork& net);
/// C(|h_CD|^2 P_C / N_D): A's signal perfectly known.
Rate rate_upper_bound(const CognitiveNetwork& net);

/// Boundary ties go to the non-decoding case, except h_AD^2 == d_high which
/// is UB_ACHIEVING; the five regions tile the (h_AC^2, h_AD^2) quadrant.
RateCase classify_case(const CognitiveNetwork& net);

/// Random-coding exponents for decoding A at node C and node D.
double exponent_at_c(const CognitiveNetwork& net);
double exponent_at_d(const CognitiveNetwork& net);

/// Residual interference fraction after decoding A with error probability
/// at its random-coding bound:
///   rx_only: 1 / (1 + 0.5 e^{n E_D})
///   tx_only: 1 / (1 + 0.5 e^{m E_C})
///   both:    1 / (1 + 0.5 e^{m E_C} + 0.5 e^{n E_D})
/// Evaluated in log domain; `m` is ignored for rx_only.
double residual_mu(const CognitiveNetwork& net, int m, DpcSide which);

/// (1 - m/n) C(|h_CD|^2 P_C (n/(n-m)) / (mu |h_AD|^2 P_A + N_D)) for a
/// listening length 1 <= m <= n-1 (tx_only or both).
Rate listening_rate(const CognitiveNetwork& net, int m, DpcSide which);

struct ListeningOptimum {
  int m;
  Rate rate;
};

/// Exhaustive search over m in [1, n-1]; the smallest m wins ties.
ListeningOptimum optimize_m(const CognitiveNetwork& net, DpcSide which);

RateOutcome achievable_rate(const CognitiveNetwork& net);

enum class SweepVariable { m, gain_ad, gain_ac, block_length };

std::string_view to_string(SweepVariable v);
std::optional<SweepVariable> parse_sweep_variable(std::string_view s);

struct SweepRow {
  double value;
  std::optional<RateCase> case_id;  // empty when the row failed
  double rate_nats = 0.0;
  std::optional<int> m;
  std::optional<double> mu;
  std::string error;
};

/// One row per grid value with every other parameter of `net` held fixed.
/// For the m variable, tx_only/both instances report the rate at that
/// listening length (no fallback); other cases report achievable_rate.
/// Invalid grid values yield a row with `error` set; the sweep continues.
std::vector<SweepRow> sweep(const CognitiveNetwork& net, SweepVariable variable,
                            std::span<const double> grid);

}  // namespace ndpc
