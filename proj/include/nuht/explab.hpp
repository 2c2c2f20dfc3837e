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

// Finite-n exponent experiments: exact error traces whose -(1/n) log values
// estimate the asymptotic exponents, with the single-letter limits attached
// as reference lines. Exact type-class computation throughout -- no
// sampling noise on top of the slow O(1/sqrt(n)) convergence.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nuht/bayes_test.hpp"
#include "nuht/error_rates.hpp"
#include "nuht/exponents.hpp"
#include "nuht/mp_test.hpp"
#include "nuht/nu_param.hpp"

namespace nuht {

/// Which type II error a Neyman-Pearson trace records: the nu-loss version
/// (default) or the classical rejection-probability version of the same
/// calibrated test.
enum class beta_reading { nu_loss, classical };

struct trace_row {
  int n;
  double error;
  double estimate;  // -(1/n) log(error), in the trace's base
};

struct exponent_trace {
  nu_param nu;
  std::optional<double> epsilon;  // Neyman-Pearson traces
  std::optional<prior> pr;        // Bayes traces
  std::vector<trace_row> rows;
  double reference;  // D for NP traces; D_{B,nu} or C for Bayes traces
  log_base base;
  beta_reading reading = beta_reading::nu_loss;
};

namespace detail {

inline double estimate_from(double error, int n, log_base base) {
  return from_bits(-std::log2(error) / n, base);
}

}  // namespace detail

/// Calibrate the nu-MP test at size epsilon for each n and record its type
/// II error; the estimates approach D(p0 || p1) for every nu and epsilon.
inline exponent_trace np_exponent_trace(
    const nu_param& nu, double epsilon, const hypothesis_pair& pair,
    std::span<const int> n_list, log_base base = log_base::bits,
    beta_reading reading = beta_reading::nu_loss,
    std::size_t cap = default_enumeration_cap) {
  exponent_trace tr{nu,
                    epsilon,
                    std::nullopt,
                    {},
                    kl_divergence(pair.p0(), pair.p1(), base),
                    base,
                    reading};
  std::vector<int> ns(n_list.begin(), n_list.end());
  std::sort(ns.begin(), ns.end());
  for (int n : ns) {
    const auto cal = calibrate_lambda(nu, epsilon, pair, n, base, 200, cap);
    const auto test =
        detail::mp_test_from_log2_lambda(nu, cal.log2_lambda, n);
    const nu_param eval_nu =
        reading == beta_reading::nu_loss ? nu : nu_param::infinity();
    const double beta = nu_type2_error(test, pair, eval_nu, base, cap);
    tr.rows.push_back({n, beta, detail::estimate_from(beta, n, base)});
  }
  return tr;
}

/// Exact minimal nu-Bayesian error per n; reference D_{B,nu} (finite nu)
/// or the Chernoff information (nu = inf).
inline exponent_trace bayes_exponent_trace(
    const nu_param& nu, const hypothesis_pair& pair,
    std::span<const int> n_list, log_base base = log_base::bits,
    std::size_t cap = default_enumeration_cap) {
  const double reference =
      nu.is_infinity()
          ? chernoff_information(pair.p0(), pair.p1(), 1e-10, base).value
          : d_b_nu(nu, pair.p0(), pair.p1(), base);
  exponent_trace tr{nu, std::nullopt, pair.get_prior(), {}, reference, base};
  std::vector<int> ns(n_list.begin(), n_list.end());
  std::sort(ns.begin(), ns.end());
  for (int n : ns) {
    const auto test = bayes_test(nu, pair, n);
    const double risk = bayes_risk(nu, test, pair, base, cap).risk;
    tr.rows.push_back({n, risk, detail::estimate_from(risk, n, base)});
  }
  return tr;
}

struct bound_check_result {
  double risk;
  double bound;
  bool holds;
};

/// Tensorized affinity bound on the minimal Bayes risk:
///   r(bayes test) <= (nu/(nu-1)) max{BC_{nu/2}, BC_{1-nu/2}}^n.
inline bound_check_result risk_affinity_bound_check(
    const nu_param& nu, const hypothesis_pair& pair, int n,
    std::size_t cap = default_enumeration_cap) {
  if (!nu.is_finite() || nu.is_one())
    throw validation_error("the bound check needs nu in (1, inf)");
  const double risk =
      bayes_risk(nu, bayes_test(nu, pair, n), pair, log_base::bits, cap).risk;
  const double log2_bc = -d_b_nu(nu, pair.p0(), pair.p1(), log_base::bits);
  const double bound =
      std::exp2(std::log2(nu.prefactor()) + n * log2_bc);
  return {risk, bound, risk <= bound};
}

/// D_{B,nu} over a nu grid; reproduces the lower-bound curve (concave,
/// nonnegative on [1,2), zero at nu = 2).
inline std::vector<std::pair<double, double>> sweep_d_b_nu(
    const hypothesis_pair& pair, std::span<const double> nu_grid,
    log_base base = log_base::bits) {
  std::vector<std::pair<double, double>> rows;
  rows.reserve(nu_grid.size());
  for (double v : nu_grid)
    rows.emplace_back(
        v, d_b_nu(nu_param::finite(v), pair.p0(), pair.p1(), base));
  return rows;
}

/// Convenience: uniform nu grid endpoints included.
inline std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps < 2) throw validation_error("a sweep needs at least 2 steps");
  std::vector<double> xs(steps);
  for (int i = 0; i < steps; ++i)
    xs[i] = lo + (hi - lo) * i / static_cast<double>(steps - 1);
  xs.back() = hi;
  return xs;
}

}  // namespace nuht
