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
#include <span>
#include <vector>

#include "nuht/errors.hpp"
#include "nuht/logspace.hpp"
#include "nuht/nu_param.hpp"

namespace nuht {

/// The tunable loss applied to the probability p assigned to the correct
/// action:
///
///   nu = 1:        -ln p                       (log-loss)
///   1 < nu < inf:  (nu/(nu-1)) (1 - p^((nu-1)/nu))
///   nu = inf:      1 - p                       (soft 0-1 loss)
///
/// The nu = 1 branch is the natural-log limit of the finite branch, so the
/// family is continuous in nu. Use the log_base overload to report nu = 1
/// values in bits instead.
inline double nu_loss(const nu_param& nu, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw validation_error("nu_loss needs p in [0, 1]");
  if (nu.is_infinity()) return 1.0 - p;
  if (nu.is_one()) return p == 0.0 ? pos_inf : -std::log(p) + 0.0;
  // 1 - p^t as -expm1(t ln p); exact 0 at p = 1, prefactor at p = 0.
  if (p == 0.0) return nu.prefactor();
  return nu.prefactor() * -std::expm1(nu.power_ratio() * std::log(p)) + 0.0;
}

/// Display variant: converts the nu = 1 branch into the requested base
/// (bits by default elsewhere in the library); other branches are base-free.
inline double nu_loss(const nu_param& nu, double p, log_base base) {
  const double v = nu_loss(nu, p);
  if (nu.is_one() && base == log_base::bits) return v / ln2;
  return v;
}

struct loss_curve_row {
  nu_param nu;
  double p;
  double loss;
};

/// Tabulate the loss over a uniform grid of p in (0, 1] for each nu.
inline std::vector<loss_curve_row> loss_curve(std::span<const nu_param> nus,
                                              int grid_points,
                                              log_base base = log_base::bits) {
  if (grid_points < 2) throw validation_error("loss_curve needs >= 2 points");
  std::vector<loss_curve_row> rows;
  rows.reserve(nus.size() * grid_points);
  for (const nu_param& nu : nus)
    for (int i = 1; i <= grid_points; ++i) {
      const double p = static_cast<double>(i) / grid_points;
      rows.push_back({nu, p, nu_loss(nu, p, base)});
    }
  return rows;
}

}  // namespace nuht
