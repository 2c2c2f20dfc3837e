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

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nuht/errors.hpp"
#include "nuht/logspace.hpp"

namespace nuht {

/// A finite discrete probability distribution stored as base-2
/// log-probabilities. Zero probability is log-prob -inf.
class distribution {
public:
  /// Normalize non-negative weights. At least two symbols, sum > 0.
  static distribution from_weights(std::span<const double> weights) {
    validate_weight_count(weights.size());
    double sum = 0.0;
    for (double w : weights) {
      if (!std::isfinite(w) || w < 0.0)
        throw validation_error("weights must be finite and non-negative");
      sum += w;
    }
    if (sum <= 0.0) throw validation_error("weights must not all be zero");
    std::vector<double> lp(weights.size());
    const double log2_sum = std::log2(sum);
    for (std::size_t i = 0; i < weights.size(); ++i)
      lp[i] = weights[i] == 0.0 ? neg_inf : std::log2(weights[i]) - log2_sum;
    return distribution(std::move(lp));
  }

  /// Normalize weights given as base-2 logs. This path never leaves log
  /// space, so weights as small as 2^-2000 survive (-inf marks true zeros).
  static distribution from_log2_weights(std::span<const double> log2_weights) {
    validate_weight_count(log2_weights.size());
    for (double lw : log2_weights)
      if (std::isnan(lw) || lw == pos_inf)
        throw validation_error("log2 weights must be < +inf and not NaN");
    const double norm = log2_sum_exp(log2_weights);
    if (norm == neg_inf) throw validation_error("weights must not all be zero");
    std::vector<double> lp(log2_weights.begin(), log2_weights.end());
    for (double& x : lp)
      if (x != neg_inf) x -= norm;
    return distribution(std::move(lp));
  }

  int alphabet_size() const { return static_cast<int>(log2_probs_.size()); }
  double log2_prob(int symbol) const { return log2_probs_[symbol]; }
  double prob(int symbol) const { return std::exp2(log2_probs_[symbol]); }
  const std::vector<double>& log2_probs() const { return log2_probs_; }

  std::vector<double> probs() const {
    std::vector<double> p(log2_probs_.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::exp2(log2_probs_[i]);
    return p;
  }

  friend bool operator==(const distribution& a, const distribution& b) {
    return a.log2_probs_ == b.log2_probs_;
  }

private:
  explicit distribution(std::vector<double> lp) : log2_probs_(std::move(lp)) {
    double s = 0.0;
    for (double x : log2_probs_) s += std::exp2(x);
    if (std::abs(s - 1.0) > 1e-12)
      throw validation_error("normalization failed: total mass " +
                             std::to_string(s));
  }

  static void validate_weight_count(std::size_t n) {
    if (n < 2) throw validation_error("a distribution needs at least 2 symbols");
  }

  std::vector<double> log2_probs_;
};

/// Spec-facing alias for the validating constructor.
inline distribution make_distribution(std::span<const double> weights) {
  return distribution::from_weights(weights);
}
inline distribution make_distribution(std::initializer_list<double> weights) {
  return distribution::from_weights(std::span<const double>(weights.begin(), weights.size()));
}

/// Prior mass on the two hypotheses.
struct prior {
  double pi0;
  double pi1;

  prior(double p0, double p1) : pi0(p0), pi1(p1) {
    if (!(p0 >= 0.0 && p0 <= 1.0 && p1 >= 0.0 && p1 <= 1.0))
      throw validation_error("prior probabilities must lie in [0, 1]");
    if (std::abs(p0 + p1 - 1.0) > 1e-12)
      throw validation_error("prior must sum to 1");
  }
};

/// The two single-letter hypotheses H0: X ~ p0 and H1: X ~ p1 over a shared
/// alphabet, with an optional prior for the Bayesian setting.
class hypothesis_pair {
public:
  hypothesis_pair(distribution p0, distribution p1,
                  std::optional<prior> pr = std::nullopt)
      : p0_(std::move(p0)), p1_(std::move(p1)), prior_(pr) {
    if (p0_.alphabet_size() != p1_.alphabet_size())
      throw validation_error("hypotheses must share an alphabet");
  }

  const distribution& p0() const { return p0_; }
  const distribution& p1() const { return p1_; }
  int alphabet_size() const { return p0_.alphabet_size(); }

  bool has_prior() const { return prior_.has_value(); }
  const prior& get_prior() const {
    if (!prior_) throw validation_error("this operation needs a prior");
    return *prior_;
  }

  hypothesis_pair with_prior(prior pr) const {
    return hypothesis_pair(p0_, p1_, pr);
  }

private:
  distribution p0_;
  distribution p1_;
  std::optional<prior> prior_;
};

/// log2 probability of one representative sequence of the given type under
/// `dist`: sum of counts(x) * log2 p(x), with 0 * log 0 = 0.
inline double log2_rep_prob(const distribution& dist,
                            std::span<const int> counts) {
  if (static_cast<int>(counts.size()) != dist.alphabet_size())
    throw validation_error("counts length does not match the alphabet");
  double s = 0.0;
  for (std::size_t x = 0; x < counts.size(); ++x) {
    if (counts[x] < 0) throw validation_error("counts must be non-negative");
    if (counts[x] == 0) continue;
    const double lp = dist.log2_prob(static_cast<int>(x));
    if (lp == neg_inf) return neg_inf;
    s += counts[x] * lp;
  }
  return s;
}

/// Per-sequence log-likelihood ratio log2(p0(x^n)/p1(x^n)) for any sequence
/// of the given type. +inf/-inf when exactly one hypothesis assigns zero
/// mass; NaN when both do (such sequences carry no probability anywhere).
inline double seq_log_likelihood_ratio(const hypothesis_pair& pair,
                                       std::span<const int> counts) {
  if (static_cast<int>(counts.size()) != pair.alphabet_size())
    throw validation_error("counts length does not match the alphabet");
  for (std::size_t x = 0; x < counts.size(); ++x)
    if (counts[x] > 0 && pair.p0().log2_prob(static_cast<int>(x)) == neg_inf &&
        pair.p1().log2_prob(static_cast<int>(x)) == neg_inf)
      throw validation_error(
          "symbol with positive count has zero probability under both "
          "hypotheses");
  const double l0 = log2_rep_prob(pair.p0(), counts);
  const double l1 = log2_rep_prob(pair.p1(), counts);
  if (l0 == neg_inf && l1 == neg_inf)
    return std::numeric_limits<double>::quiet_NaN();
  return l0 - l1;
}

/// Draw an i.i.d. sequence of symbol indices. Deterministic for a given
/// seed: the generator and the uniform mapping are pinned here rather than
/// delegated to implementation-defined standard distributions.
inline std::vector<int> sample_iid(const distribution& dist, int n,
                                   std::uint64_t seed) {
  if (n < 1) throw validation_error("sample length must be >= 1");
  std::vector<double> cum(dist.alphabet_size());
  double acc = 0.0;
  for (int x = 0; x < dist.alphabet_size(); ++x) {
    acc += dist.prob(x);
    cum[x] = acc;
  }
  cum.back() = 1.0;

  std::mt19937_64 eng(seed);
  std::vector<int> seq(n);
  for (int i = 0; i < n; ++i) {
    const double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
    int x = 0;
    while (u >= cum[x]) ++x;
    seq[i] = x;
  }
  return seq;
}

}  // namespace nuht
