#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 the nuht authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

// Base-2 log-space arithmetic. All probabilities in this library are stored
// as log2 values; zero probability is represented as -infinity and the
// convention 0 * log 0 = 0 is applied wherever counts multiply log-probs.

#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

namespace nuht {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();
inline constexpr double pos_inf = std::numeric_limits<double>::infinity();
inline constexpr double ln2 = std::numbers::ln2;

/// Units for logarithmic quantities (exponents, divergences, nu=1 losses).
enum class log_base { bits, nats };

/// Convert a base-2 quantity to the requested base.
inline double from_bits(double v, log_base base) {
  return base == log_base::bits ? v : v * ln2;
}

/// log2(2^a + 2^b), safe for -inf operands.
inline double log2_add(double a, double b) {
  if (a == neg_inf) return b;
  if (b == neg_inf) return a;
  const double hi = a > b ? a : b;
  const double lo = a > b ? b : a;
  return hi + std::log1p(std::exp2(lo - hi)) / ln2;
}

/// log2 of a sum of exponentials, skipping -inf entries.
inline double log2_sum_exp(std::span<const double> xs) {
  double m = neg_inf;
  for (double x : xs) m = x > m ? x : m;
  if (m == neg_inf) return neg_inf;
  double s = 0.0;
  for (double x : xs) s += std::exp2(x - m);
  return m + std::log2(s);
}

/// -log2(1 + 2^u), evaluated on the stable side for any u (including +-inf).
/// This is log2 of the logistic 1/(1 + 2^u); the pair of calls with u and -u
/// gives stable log-probabilities for both outcomes of a soft threshold.
inline double log2_logistic(double u) {
  if (std::isnan(u)) return std::numeric_limits<double>::quiet_NaN();
  if (u >= 0.0) return -u - std::log1p(std::exp2(-u)) / ln2;
  return -std::log1p(std::exp2(u)) / ln2;
}

/// Deterministic pairwise (tree) summation. Order of the input fixes the
/// result bit-for-bit regardless of how callers might batch the work.
inline double pairwise_sum(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace nuht
