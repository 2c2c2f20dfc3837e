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
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nuht/distribution.hpp"
#include "nuht/errors.hpp"
#include "nuht/logspace.hpp"
#include "nuht/nu_param.hpp"

namespace nuht {

enum class test_kind { nu_mp, infty_mp, nu_bayes, infty_bayes, aep, table };

inline const char* to_string(test_kind k) {
  switch (k) {
    case test_kind::nu_mp: return "nu-mp";
    case test_kind::infty_mp: return "infty-mp";
    case test_kind::nu_bayes: return "nu-bayes";
    case test_kind::infty_bayes: return "infty-bayes";
    case test_kind::aep: return "aep";
    case test_kind::table: return "table";
  }
  return "?";
}

/// The decision probabilities of one test at one observation, with both
/// log-probabilities carried so that tail quantities like E[-log d] and
/// 1 - d^t never lose precision on either side.
struct test_decision {
  double reject;       // delta*(x^n, 1)
  double log2_reject;  // log2 delta*(x^n, 1)
  double log2_accept;  // log2 delta*(x^n, 0)

  double accept() const { return std::exp2(log2_accept); }

  /// Soft-threshold decision from a log-odds score: reject = 1/(1 + 2^u).
  static test_decision from_log_odds(double u) {
    const double lr = log2_logistic(u);
    const double la = log2_logistic(-u);
    return {std::exp2(lr), lr, la};
  }

  static test_decision deterministic(bool reject_h0) {
    return reject_h0 ? test_decision{1.0, 0.0, neg_inf}
                     : test_decision{0.0, neg_inf, 0.0};
  }

  static test_decision from_reject_prob(double r) {
    if (!(r >= 0.0 && r <= 1.0))
      throw validation_error("rejection probability must lie in [0, 1]");
    return {r, std::log2(r), std::log1p(-r) / ln2};
  }
};

/// A randomized test of length n. Closed-form kinds are functions of the
/// per-sequence log-likelihood ratio (plus their parameters); the table
/// kind stores an explicit rejection probability per count vector.
class randomized_test {
public:
  static randomized_test from_table(
      int n, std::map<std::vector<int>, double> reject_by_counts) {
    if (n < 1) throw validation_error("test length must be >= 1");
    for (const auto& [counts, r] : reject_by_counts) {
      if (!(r >= 0.0 && r <= 1.0))
        throw validation_error("table rejection probabilities must be in [0, 1]");
      int total = 0;
      for (int c : counts) total += c;
      if (total != n)
        throw validation_error("table counts must sum to the test length");
    }
    randomized_test t(test_kind::table, n);
    t.table_ = std::move(reject_by_counts);
    return t;
  }

  // Raw parameterized constructors; the validating free functions in
  // mp_test.hpp / bayes_test.hpp / typical_set.hpp validate the contracts.
  static randomized_test make_nu_mp(nu_param nu, double log2_lambda, int n) {
    randomized_test t(test_kind::nu_mp, n);
    t.nu_ = nu;
    t.log2_lambda_ = log2_lambda;
    return t;
  }
  static randomized_test make_infty_mp(double log2_lambda, int n) {
    randomized_test t(test_kind::infty_mp, n);
    t.log2_lambda_ = log2_lambda;
    return t;
  }
  static randomized_test make_nu_bayes(nu_param nu, prior pr, int n) {
    randomized_test t(test_kind::nu_bayes, n);
    t.nu_ = nu;
    t.prior_ = pr;
    t.posterior_shift_ = std::log2(pr.pi1) - std::log2(pr.pi0);
    return t;
  }
  static randomized_test make_infty_bayes(prior pr, int n) {
    randomized_test t(test_kind::infty_bayes, n);
    t.prior_ = pr;
    t.posterior_shift_ = std::log2(pr.pi1) - std::log2(pr.pi0);
    return t;
  }
  static randomized_test make_aep(double epsilon_prime, double center, int n) {
    randomized_test t(test_kind::aep, n);
    t.epsilon_prime_ = epsilon_prime;
    t.center_ = center;
    return t;
  }

  test_kind kind() const { return kind_; }
  int length() const { return n_; }

  bool is_closed_form() const { return kind_ != test_kind::table; }

  /// delta*(x^n, .) for a sequence with the given counts.
  test_decision decide(const hypothesis_pair& pair,
                       std::span<const int> counts) const {
    if (kind_ == test_kind::table) {
      const auto it = table_.find(std::vector<int>(counts.begin(), counts.end()));
      if (it == table_.end())
        throw validation_error("count vector not present in table test");
      return test_decision::from_reject_prob(it->second);
    }
    return decide_llr(decision_llr(pair, counts));
  }

  /// Closed-form kinds only: decision as a function of the log-likelihood
  /// ratio. NaN llr (zero mass under both hypotheses) yields a fixed 1/2.
  test_decision decide_llr(double llr) const {
    if (std::isnan(llr)) return test_decision::from_reject_prob(0.5);
    switch (kind_) {
      case test_kind::nu_mp:
        return test_decision::from_log_odds(nu_.value() *
                                            (log2_lambda_ + llr));
      case test_kind::infty_mp:
        // Ties rejected: the region is p0/p1 <= lambda.
        return test_decision::deterministic(llr <= log2_lambda_);
      case test_kind::nu_bayes:
        // accept = pi(theta0|x)^nu / (pi(theta0|x)^nu + pi(theta1|x)^nu),
        // driven by the posterior log-odds (llr - log2(pi1/pi0)).
        return test_decision::from_log_odds(nu_.value() *
                                            (llr - posterior_shift_));
      case test_kind::infty_bayes:
        // Ties accepted: accept iff pi(theta0 | x) >= pi(theta1 | x).
        return test_decision::deterministic(llr - posterior_shift_ < 0.0);
      case test_kind::aep:
        return test_decision::deterministic(
            !(std::abs(llr / n_ - center_) <= epsilon_prime_));
      case test_kind::table:
        break;
    }
    throw validation_error("table tests have no likelihood-ratio form");
  }

  const nu_param& nu() const { return nu_; }
  double log2_lambda() const { return log2_lambda_; }
  double lambda() const { return std::exp2(log2_lambda_); }
  const prior& test_prior() const {
    if (!prior_) throw validation_error("test carries no prior");
    return *prior_;
  }
  double epsilon_prime() const { return epsilon_prime_; }
  double center() const { return center_; }
  const std::map<std::vector<int>, double>& table() const { return table_; }

private:
  randomized_test(test_kind k, int n) : kind_(k), n_(n) {}

  test_kind kind_;
  int n_;
  nu_param nu_ = nu_param::infinity();
  double log2_lambda_ = 0.0;
  std::optional<prior> prior_;
  double posterior_shift_ = 0.0;  // log2(pi1/pi0), llr offset of the posterior
  double epsilon_prime_ = 0.0;
  double center_ = 0.0;
  std::map<std::vector<int>, double> table_;

  double decision_llr(const hypothesis_pair& pair,
                      std::span<const int> counts) const {
    int total = 0;
    for (int c : counts) total += c;
    if (total != n_)
      throw validation_error("counts do not match the test length");
    return seq_log_likelihood_ratio(pair, counts);
  }
};

}  // namespace nuht
