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

// Brute-force verification of the closed-form tests. Both the Lagrangian of
// the size-constrained problem and the Bayes objective are separable across
// sequences, so the exponential search over tests collapses to independent
// one-dimensional scans per type class; a refined grid scan then replays
// the KKT solution numerically.

#include <cmath>
#include <map>
#include <vector>

#include "nuht/distribution.hpp"
#include "nuht/errors.hpp"
#include "nuht/nu_loss.hpp"
#include "nuht/nu_param.hpp"
#include "nuht/randomized_test.hpp"
#include "nuht/type_class.hpp"

namespace nuht {

struct oracle_config {
  int grid_points = 2001;
  int refinement_rounds = 2;

  void validate() const {
    if (grid_points < 11)
      throw validation_error("oracle grid needs at least 11 points");
    if (refinement_rounds < 0)
      throw validation_error("refinement rounds must be >= 0");
  }
};

namespace detail {

/// Grid-minimize a scalar objective of the acceptance probability over
/// [0, 1], zooming 100x around the incumbent each refinement round. Scan
/// order is ascending and replacement strict, so exact ties resolve to the
/// smallest acceptance probability deterministically.
template <class F>
double grid_minimize_unit(F&& objective, const oracle_config& cfg) {
  double lo = 0.0, hi = 1.0;
  double best_x = 0.0;
  for (int round = 0; round <= cfg.refinement_rounds; ++round) {
    if (round > 0) {
      const double half = (hi - lo) / 200.0;  // zoom 100x, keep incumbent inside
      lo = best_x - half;
      hi = best_x + half;
      if (lo < 0.0) {
        hi -= lo;
        lo = 0.0;
      }
      if (hi > 1.0) {
        lo -= hi - 1.0;
        hi = 1.0;
        if (lo < 0.0) lo = 0.0;
      }
    }
    double best_f = pos_inf;
    for (int i = 0; i < cfg.grid_points; ++i) {
      const double x =
          i == cfg.grid_points - 1
              ? hi
              : lo + (hi - lo) * i / static_cast<double>(cfg.grid_points - 1);
      const double f = objective(x);
      if (f < best_f) {
        best_f = f;
        best_x = x;
      }
    }
  }
  return best_x;
}

/// Objective per type: wr * loss(1 - d0) + wa * loss(d0), where wa and wr
/// carry the caller's multipliers already.
inline randomized_test scan_tables(const type_ensemble& e, const nu_param& nu,
                                   const std::vector<double>& log2_wa,
                                   const std::vector<double>& log2_wr,
                                   const oracle_config& cfg) {
  std::map<std::vector<int>, double> table;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double wa = std::exp2(log2_wa[i]);
    const double wr = std::exp2(log2_wr[i]);
    const auto objective = [&](double d0) {
      double f = 0.0;
      if (wr > 0.0) f += wr * nu_loss(nu, 1.0 - d0);
      if (wa > 0.0) f += wa * nu_loss(nu, d0);
      return f;
    };
    const double d0 = grid_minimize_unit(objective, cfg);
    table[e.types[i].counts] = 1.0 - d0;
  }
  return randomized_test::from_table(e.n, std::move(table));
}

}  // namespace detail

/// Solve min beta_bar_nu + mu * alpha_nu by per-type scans of
///   p1(x^n) loss(1 - d0) + mu p0(x^n) loss(d0)
/// and return the minimizing table test. The multiplier matching a
/// closed-form threshold lambda is mu = lambda for finite nu and
/// mu = 1/lambda at nu = inf.
inline randomized_test lagrangian_mp_oracle(
    const nu_param& nu, double mu, const hypothesis_pair& pair, int n,
    const oracle_config& cfg = {}, std::size_t cap = default_enumeration_cap) {
  cfg.validate();
  if (!(mu >= 0.0) || !std::isfinite(mu))
    throw validation_error("mu must be a finite non-negative real");
  const auto e = type_ensemble::build(pair, n, cap);
  const double log2_mu = std::log2(mu);  // -inf at mu = 0
  std::vector<double> log2_wa(e.size()), log2_wr(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    // Representative-sequence weights: the class multiplicity scales both
    // terms equally and cannot move the per-type argmin.
    log2_wa[i] = log2_mu + (e.log2_w0[i] - e.types[i].log2_multiplicity);
    log2_wr[i] = e.log2_w1[i] - e.types[i].log2_multiplicity;
  }
  return detail::scan_tables(e, nu, log2_wa, log2_wr, cfg);
}

/// Per-type minimization of pi0 p0(x^n) loss(d0) + pi1 p1(x^n) loss(1 - d0):
/// the Bayes objective, separable across sequences.
inline randomized_test bayes_oracle(const nu_param& nu,
                                    const hypothesis_pair& pair, int n,
                                    const oracle_config& cfg = {},
                                    std::size_t cap = default_enumeration_cap) {
  cfg.validate();
  const prior pr = pair.get_prior();
  const auto e = type_ensemble::build(pair, n, cap);
  std::vector<double> log2_wa(e.size()), log2_wr(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    log2_wa[i] = std::log2(pr.pi0) + (e.log2_w0[i] - e.types[i].log2_multiplicity);
    log2_wr[i] = std::log2(pr.pi1) + (e.log2_w1[i] - e.types[i].log2_multiplicity);
  }
  return detail::scan_tables(e, nu, log2_wa, log2_wr, cfg);
}

}  // namespace nuht
