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

// Relative typical sets and the AEP test built on them: the direct-part
// construction behind the error-exponent results.

#include <cmath>
#include <vector>

#include "nuht/errors.hpp"
#include "nuht/exponents.hpp"
#include "nuht/randomized_test.hpp"
#include "nuht/type_class.hpp"

namespace nuht {

/// Membership: | (1/n) log2 p0(x^n)/p1(x^n) - center | <= epsilon_prime,
/// with center = D(p0 || p1). The direct-part argument at parameter nu
/// uses the scaled slack epsilon' (nu-1)/nu; callers apply that scaling.
struct typical_set_spec {
  double epsilon_prime;
  int n;
  double center;

  typical_set_spec(double eps, int len, double d)
      : epsilon_prime(eps), n(len), center(d) {
    if (!(eps > 0.0)) throw validation_error("epsilon' must be positive");
    if (len < 1) throw validation_error("length must be >= 1");
    if (!std::isfinite(d))
      throw validation_error("typical sets need a finite divergence center");
  }
};

/// The member type classes of the relative typical set.
inline std::vector<type_class> typical_set(
    const typical_set_spec& spec, const hypothesis_pair& pair,
    std::size_t cap = default_enumeration_cap) {
  const auto e = type_ensemble::build(pair, spec.n, cap);
  std::vector<type_class> members;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (std::abs(e.llr[i] / spec.n - spec.center) <= spec.epsilon_prime)
      members.push_back(e.types[i]);
  return members;
}

/// Deterministic test accepting exactly on the typical set centered at
/// D(p0 || p1) with half-width epsilon_prime.
inline randomized_test aep_test(double epsilon_prime, int n,
                                const hypothesis_pair& pair) {
  if (!(epsilon_prime > 0.0))
    throw validation_error("epsilon' must be positive");
  if (n < 1) throw validation_error("test length must be >= 1");
  const double center = kl_divergence(pair.p0(), pair.p1(), log_base::bits);
  if (!std::isfinite(center))
    throw validation_error(
        "aep_test needs D(p0||p1) finite (supports must nest)");
  return randomized_test::make_aep(epsilon_prime, center, n);
}

}  // namespace nuht
