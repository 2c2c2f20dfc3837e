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

// Single-letter exponent quantities: KL divergence, Chernoff information,
// skewed Bhattacharyya affinities and the lower bound D_{B,nu} built from
// them.

#include <cmath>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "nuht/distribution.hpp"
#include "nuht/errors.hpp"
#include "nuht/logspace.hpp"
#include "nuht/nu_param.hpp"

namespace nuht {

/// D(p0 || p1) = sum p0 log(p0/p1), with 0 log 0 = 0 and +inf when p0 puts
/// mass where p1 has none.
inline double kl_divergence(const distribution& p0, const distribution& p1,
                            log_base base = log_base::bits) {
  if (p0.alphabet_size() != p1.alphabet_size())
    throw validation_error("kl_divergence needs a shared alphabet");
  double s = 0.0;
  for (int x = 0; x < p0.alphabet_size(); ++x) {
    const double l0 = p0.log2_prob(x);
    if (l0 == neg_inf) continue;
    const double l1 = p1.log2_prob(x);
    if (l1 == neg_inf) return from_bits(pos_inf, base);
    s += std::exp2(l0) * (l0 - l1);
  }
  return from_bits(s, base);
}

namespace detail {

/// Golden-section minimization of a unimodal scalar function on [a, b].
inline std::pair<double, double> golden_section_min(
    const std::function<double(double)>& f, double a, double b, double tol) {
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

/// log2 sum_x p0(x)^s p1(x)^(1-s), the log of the skewed affinity. Symbols
/// outside both supports are skipped; a bare zero on the side with a
/// non-positive exponent yields +inf (log2 = +inf).
inline double log2_affinity(double s, const distribution& p0,
                            const distribution& p1) {
  std::vector<double> terms;
  terms.reserve(p0.alphabet_size());
  for (int x = 0; x < p0.alphabet_size(); ++x) {
    const double l0 = p0.log2_prob(x);
    const double l1 = p1.log2_prob(x);
    if (l0 == neg_inf && l1 == neg_inf) continue;
    double e;
    if (s == 0.0)
      e = l1;  // p0^0 = 1 even at p0 = 0 (endpoint convention)
    else if (s == 1.0)
      e = l0;
    else
      e = s * l0 + (1.0 - s) * l1;  // carries +-inf per IEEE when one side is 0
    if (std::isnan(e)) e = neg_inf;  // 0^positive * 0^negative: no mass
    if (e == pos_inf) return pos_inf;
    terms.push_back(e);
  }
  return log2_sum_exp(terms);
}

}  // namespace detail

struct chernoff_result {
  double value;
  double lambda_star;
};

/// C(p0, p1) = -min_{0<=lambda<=1} log sum p0^lambda p1^(1-lambda). The
/// objective is convex in lambda (log of a nonnegative mixture of
/// exponentials), so golden-section search is exact up to tol; the dense
/// grid cross-check lives in the test suite.
inline chernoff_result chernoff_information(const distribution& p0,
                                            const distribution& p1,
                                            double tol = 1e-10,
                                            log_base base = log_base::bits) {
  if (p0.alphabet_size() != p1.alphabet_size())
    throw validation_error("chernoff_information needs a shared alphabet");
  const auto f = [&](double s) { return detail::log2_affinity(s, p0, p1); };
  auto [x, fx] = detail::golden_section_min(f, 0.0, 1.0, tol);
  // Endpoints are included in the feasible set; both give log2(1) = 0.
  if (fx > 0.0) {
    x = 0.0;
    fx = 0.0;
  }
  return {from_bits(-fx, base), x};
}

/// BC_{nu/2} = sum_x p0(x)^(nu/2) p1(x)^(1-nu/2). For nu > 2 the second
/// exponent is negative, so any symbol with p1 = 0 < p0 makes BC = +inf.
inline double skewed_bhattacharyya(const nu_param& nu, const distribution& p0,
                                   const distribution& p1) {
  if (nu.is_infinity())
    throw validation_error("skewed_bhattacharyya needs finite nu");
  if (p0.alphabet_size() != p1.alphabet_size())
    throw validation_error("skewed_bhattacharyya needs a shared alphabet");
  return std::exp2(detail::log2_affinity(nu.value() / 2.0, p0, p1));
}

/// D_{B,nu} = -log max{BC_{nu/2}, BC_{1-nu/2}}, where BC_{1-nu/2} is the
/// argument-swapped affinity (exponent nu/2 on p1). BC = +inf gives -inf.
inline double d_b_nu(const nu_param& nu, const distribution& p0,
                     const distribution& p1, log_base base = log_base::bits) {
  if (nu.is_infinity()) throw validation_error("d_b_nu needs finite nu");
  if (p0.alphabet_size() != p1.alphabet_size())
    throw validation_error("d_b_nu needs a shared alphabet");
  const double s = nu.value() / 2.0;
  const double a = detail::log2_affinity(s, p0, p1);
  const double b = detail::log2_affinity(s, p1, p0);
  return from_bits(-(a > b ? a : b), base) + 0.0;  // normalize -0
}

/// The single-letter quantities of one hypothesis pair in one report.
struct exponent_report {
  double kl;
  chernoff_result chernoff;
  std::map<double, double> bc;   // nu -> BC_{nu/2}
  std::map<double, double> d_b;  // nu -> D_{B,nu}
  log_base base;
};

inline exponent_report make_exponent_report(const hypothesis_pair& pair,
                                            std::span<const double> nu_values,
                                            log_base base = log_base::bits) {
  exponent_report r{kl_divergence(pair.p0(), pair.p1(), base),
                    chernoff_information(pair.p0(), pair.p1(), 1e-10, base),
                    {},
                    {},
                    base};
  for (double v : nu_values) {
    const nu_param nu = nu_param::finite(v);
    r.bc[v] = skewed_bhattacharyya(nu, pair.p0(), pair.p1());
    r.d_b[v] = d_b_nu(nu, pair.p0(), pair.p1(), base);
  }
  return r;
}

}  // namespace nuht
