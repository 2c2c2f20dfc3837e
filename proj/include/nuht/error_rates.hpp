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

// Exact nu-Type I/II errors and nu-Bayesian error of a randomized test,
// computed by summing over type classes. Expectations are taken under the
// relevant hypothesis; types with zero mass there are skipped, which also
// keeps NaN likelihood ratios (zero mass under both) out of the sums.

#include <cmath>
#include <span>
#include <vector>

#include "nuht/distribution.hpp"
#include "nuht/errors.hpp"
#include "nuht/logspace.hpp"
#include "nuht/nu_param.hpp"
#include "nuht/randomized_test.hpp"
#include "nuht/type_class.hpp"

namespace nuht {

struct error_pair {
  double alpha;     // nu-Type I error
  double beta_bar;  // nu-Type II error
  nu_param nu;
  int n;
};

struct bayes_risk_report {
  double risk;
  double alpha;
  double beta_bar;
  prior pr;
};

namespace detail {

/// One per-type decision, resolved through the table or the llr form.
inline test_decision decide_type(const randomized_test& test,
                                 const hypothesis_pair& pair,
                                 const type_ensemble& e, std::size_t i) {
  if (test.is_closed_form()) return test.decide_llr(e.llr[i]);
  return test.decide(pair, e.types[i].counts);
}

/// E-side risk: given per-type weights log2_w and the log2 probability the
/// test assigns to the *correct* action, return the nu-risk
///   nu finite>1:  (nu/(nu-1)) sum w (1 - d^((nu-1)/nu))
///   nu = 1:       sum w (-log d)            (in `base`)
///   nu = inf:     sum w (1 - d)
/// Each contribution is assembled in log space before the single exp2, so
/// tiny weights and near-one decisions both keep full precision.
inline double side_risk(const nu_param& nu, std::span<const double> log2_w,
                        std::span<const double> log2_correct, log_base base) {
  std::vector<double> contrib;
  contrib.reserve(log2_w.size());
  const bool finite_branch = nu.is_finite() && !nu.is_one();
  const double t = finite_branch ? nu.power_ratio() : 0.0;
  for (std::size_t i = 0; i < log2_w.size(); ++i) {
    const double lw = log2_w[i];
    if (lw == neg_inf) continue;
    const double lc = log2_correct[i];
    double term;
    if (nu.is_one()) {
      if (lc == neg_inf) return pos_inf;  // -log 0 with positive mass
      term = -lc;  // bits; converted below if nats were requested
    } else if (nu.is_infinity()) {
      term = -std::expm1(lc * ln2);  // 1 - d
    } else {
      term = -std::expm1(t * lc * ln2);  // 1 - d^t
    }
    if (term <= 0.0) continue;
    contrib.push_back(std::exp2(lw + std::log2(term)));
  }
  double s = pairwise_sum(contrib);
  if (nu.is_one()) return from_bits(s, base);
  if (nu.is_infinity()) return s;
  return nu.prefactor() * s;
}

inline double type1(const randomized_test& test, const hypothesis_pair& pair,
                    const type_ensemble& e, const nu_param& nu,
                    log_base base) {
  std::vector<double> log2_acc(e.size());
  for (std::size_t i = 0; i < e.size(); ++i)
    log2_acc[i] = e.log2_w0[i] == neg_inf
                      ? 0.0
                      : decide_type(test, pair, e, i).log2_accept;
  return side_risk(nu, e.log2_w0, log2_acc, base);
}

inline double type2(const randomized_test& test, const hypothesis_pair& pair,
                    const type_ensemble& e, const nu_param& nu,
                    log_base base) {
  std::vector<double> log2_rej(e.size());
  for (std::size_t i = 0; i < e.size(); ++i)
    log2_rej[i] = e.log2_w1[i] == neg_inf
                      ? 0.0
                      : decide_type(test, pair, e, i).log2_reject;
  return side_risk(nu, e.log2_w1, log2_rej, base);
}

}  // namespace detail

/// alpha_nu: the nu-risk of the test under H0 (the loss of the acceptance
/// probability). For deterministic tests and nu = inf this is the classical
/// type I error.
inline double nu_type1_error(const randomized_test& test,
                             const hypothesis_pair& pair, const nu_param& nu,
                             log_base base = log_base::bits,
                             std::size_t cap = default_enumeration_cap) {
  const auto e = type_ensemble::build(pair, test.length(), cap);
  return detail::type1(test, pair, e, nu, base);
}

/// beta_bar_nu: mirror of alpha_nu under H1 with the rejection probability.
inline double nu_type2_error(const randomized_test& test,
                             const hypothesis_pair& pair, const nu_param& nu,
                             log_base base = log_base::bits,
                             std::size_t cap = default_enumeration_cap) {
  const auto e = type_ensemble::build(pair, test.length(), cap);
  return detail::type2(test, pair, e, nu, base);
}

inline error_pair nu_errors(const randomized_test& test,
                            const hypothesis_pair& pair, const nu_param& nu,
                            log_base base = log_base::bits,
                            std::size_t cap = default_enumeration_cap) {
  const auto e = type_ensemble::build(pair, test.length(), cap);
  return {detail::type1(test, pair, e, nu, base),
          detail::type2(test, pair, e, nu, base), nu, test.length()};
}

/// r = pi0 alpha_nu + pi1 beta_bar_nu.
inline bayes_risk_report bayes_risk(const nu_param& nu,
                                    const randomized_test& test,
                                    const hypothesis_pair& pair,
                                    log_base base = log_base::bits,
                                    std::size_t cap = default_enumeration_cap) {
  const prior pr = pair.get_prior();
  const error_pair ep = nu_errors(test, pair, nu, base, cap);
  return {pr.pi0 * ep.alpha + pr.pi1 * ep.beta_bar, ep.alpha, ep.beta_bar, pr};
}

}  // namespace nuht
