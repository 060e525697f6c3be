#include "ndpc/mc_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "ndpc/errors.hpp"
#include "ndpc/sampling.hpp"

namespace ndpc::oracle {

namespace {

constexpr std::size_t kShardSize = 1u << 16;

// Golden-section search for the maximum of a unimodal f on [lo, hi].
template <class F>
double golden_max(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    }
  }
  return std::max({f(a), f(b), fc, fd});
}

struct ShardSums {
  std::array<double, CovarianceMatrix::kMaxDim> sum{};
  std::array<double, CovarianceMatrix::kMaxDim * CovarianceMatrix::kMaxDim> outer{};
};

void run_shard(const GaussianSampler& sampler, std::uint64_t seed, std::size_t count,
               ShardSums& out) {
  NormalSource normals(seed);
  const std::size_t d = sampler.dim();
  std::array<double, CovarianceMatrix::kMaxDim> v{};
  for (std::size_t s = 0; s < count; ++s) {
    sampler.draw(normals, std::span<double>(v.data(), d));
    for (std::size_t i = 0; i < d; ++i) {
      out.sum[i] += v[i];
      for (std::size_t j = i; j < d; ++j) out.outer[i * d + j] += v[i] * v[j];
    }
  }
}

}  // namespace

void SampleSpec::validate() const {
  if (num_samples < 100) {
    throw DomainError("num_samples must be >= 100, got " + std::to_string(num_samples));
  }
}

DirtyPaperChannel with_surrogates(DirtyPaperChannel ch) {
  if (std::isinf(ch.tx_noise)) ch.tx_noise = kInfinitySurrogate;
  if (std::isinf(ch.rx_noise)) ch.rx_noise = kInfinitySurrogate;
  return ch;
}

CovarianceMatrix observation_covariance(const DirtyPaperChannel& raw) {
  raw.validate();
  const DirtyPaperChannel ch = with_surrogates(raw);
  const double p = ch.power;
  const double q = ch.interference;
  return {
      {p, p, 0.0, 0.0},
      {p, p + q + ch.noise, q, q},
      {0.0, q, q + ch.tx_noise, q},
      {0.0, q, q, q + ch.rx_noise},
  };
}

Rate determinant_capacity(const DirtyPaperChannel& ch) {
  const CovarianceMatrix joint = observation_covariance(ch);
  const std::array<std::size_t, 1> x{0};
  const std::array<std::size_t, 3> rest{1, 2, 3};
  return mutual_info(joint, x, rest);
}

CovarianceMatrix theorem_covariance(const DirtyPaperChannel& raw, double alpha) {
  raw.validate();
  if (!std::isfinite(alpha)) throw DomainError("alpha must be finite");
  const DirtyPaperChannel ch = with_surrogates(raw);
  const double p = ch.power;
  const double q = ch.interference;
  const double m1 = q + ch.tx_noise;
  const double u = p + alpha * alpha * m1;
  return {
      {u, p, p + alpha * q, alpha * m1, alpha * q},
      {p, p, p, 0.0, 0.0},
      {p + alpha * q, p, p + q + ch.noise, q, q},
      {alpha * m1, 0.0, q, m1, q},
      {alpha * q, 0.0, q, q, q + ch.rx_noise},
  };
}

double binning_rate(const CovarianceMatrix& joint) {
  const std::array<std::size_t, 1> u{kU};
  const std::array<std::size_t, 2> y_m2{kY, kM2};
  const std::array<std::size_t, 1> m1{kM1};
  return mutual_info(joint, u, y_m2).nats() - mutual_info(joint, u, m1).nats();
}

double grid_argmax_alpha(const DirtyPaperChannel& ch, double lo, double hi, double step) {
  if (!(lo < hi) || !(step > 0.0) || !std::isfinite(hi - lo)) {
    throw DomainError("grid needs lo < hi and step > 0");
  }
  const double span = (hi - lo) / step;
  if (span > 1e7) throw DomainError("grid has more than 1e7 steps");
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;

  double best_alpha = lo;
  double best_rate = rate_of_alpha(ch, lo).nats();
  for (std::size_t k = 1; k < count; ++k) {
    const double alpha = lo + static_cast<double>(k) * step;
    const double r = rate_of_alpha(ch, alpha).nats();
    if (r > best_rate || (r == best_rate && std::abs(alpha) < std::abs(best_alpha))) {
      best_rate = r;
      best_alpha = alpha;
    }
  }
  return best_alpha;
}

CovarianceMatrix sample_covariance(const CovarianceMatrix& model, const SampleSpec& spec) {
  spec.validate();
  const GaussianSampler sampler(model);
  const std::size_t d = model.dim();
  const std::size_t shards = (spec.num_samples + kShardSize - 1) / kShardSize;
  std::vector<ShardSums> sums(shards);

  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, shards);
  auto work = [&](std::size_t first) {
    for (std::size_t s = first; s < shards; s += workers) {
      const std::size_t count = std::min(kShardSize, spec.num_samples - s * kShardSize);
      run_shard(sampler, derive_seed(spec.seed, s), count, sums[s]);
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work, w);
  work(0);
  pool.clear();

  ShardSums total;
  for (const ShardSums& s : sums) {
    for (std::size_t i = 0; i < d; ++i) total.sum[i] += s.sum[i];
    for (std::size_t k = 0; k < d * d; ++k) total.outer[k] += s.outer[k];
  }
  const auto n = static_cast<double>(spec.num_samples);
  std::vector<double> cov(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      const double c = (total.outer[i * d + j] - total.sum[i] * total.sum[j] / n) / (n - 1.0);
      cov[i * d + j] = c;
      cov[j * d + i] = c;
    }
  }
  try {
    return {d, std::move(cov)};
  } catch (const DomainError& e) {
    throw DegenerateDistribution(std::string("empirical covariance rejected: ") + e.what());
  }
}

Rate mc_mutual_info(const DirtyPaperChannel& ch, double alpha,
                    std::span<const std::size_t> group_a,
                    std::span<const std::size_t> group_b, const SampleSpec& spec) {
  const CovarianceMatrix empirical = sample_covariance(theorem_covariance(ch, alpha), spec);
  return mutual_info(empirical, group_a, group_b);
}

double mc_binning_rate(const DirtyPaperChannel& ch, double alpha, const SampleSpec& spec) {
  return binning_rate(sample_covariance(theorem_covariance(ch, alpha), spec));
}

std::span<const DirtyPaperChannel> representative_channels() {
  static const DirtyPaperChannel channels[] = {
      {1.0, 1.0, 1.0, 1.0, 1.0},
      {10.0, 5.0, 1.0, 2.0, 3.0},
      {2.0, 100.0, 1.0, 0.0, kNoObservation},
      {5.0, 10.0, 2.0, 1.0, kNoObservation},
      {1.0, 20.0, 0.5, 10.0, 0.5},
  };
  return channels;
}

double gallager_e0(double rho, double snr) {
  if (!(snr > 0.0) || !std::isfinite(snr)) throw DomainError("snr must be positive");
  if (!(rho >= 0.0) || rho > 1.0) throw DomainError("rho must lie in [0, 1]");
  // Substitute u = 1 - 2 r A in (0, 1]; the objective is concave in u.
  const double shifted = snr / (1.0 + rho);
  auto objective = [&](double u) {
    return (1.0 + rho) * (1.0 - u) / 2.0 + 0.5 * std::log(u) +
           0.5 * rho * std::log(u + shifted);
  };
  return golden_max(objective, 1e-300, 1.0, 1e-13);
}

double gallager_exponent_search(double snr, double rate) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) throw DomainError("rate must be >= 0");
  auto objective = [&](double rho) { return gallager_e0(rho, snr) - rho * rate; };
  constexpr int kCoarse = 50;
  int best = 0;
  double best_val = objective(0.0);
  for (int k = 1; k <= kCoarse; ++k) {
    const double v = objective(static_cast<double>(k) / kCoarse);
    if (v > best_val) {
      best_val = v;
      best = k;
    }
  }
  const double lo = std::max(0, best - 1) / static_cast<double>(kCoarse);
  const double hi = std::min(kCoarse, best + 1) / static_cast<double>(kCoarse);
  return std::max({best_val, golden_max(objective, lo, hi, 1e-12), 0.0});
}

}  // namespace ndpc::oracle
