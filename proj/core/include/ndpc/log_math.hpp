#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace ndpc {

// ln(sum_i exp(terms[i])) without overflow.
inline double log_sum_exp(std::span<const double> terms) {
  if (terms.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(terms.begin(), terms.end());
  if (!std::isfinite(top)) return top;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - top);
  return top + std::log(sum);
}

}  // namespace ndpc
