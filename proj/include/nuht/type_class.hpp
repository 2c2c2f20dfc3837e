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

// Method-of-types machinery. Every test in this library depends on a
// sequence only through its type (count vector), which turns sums over
// |X|^n sequences into sums over compositions of n -- exact computation
// stays feasible to n ~ 10^3 on binary alphabets.

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nuht/distribution.hpp"
#include "nuht/errors.hpp"
#include "nuht/logspace.hpp"

namespace nuht {

using big_int = boost::multiprecision::cpp_int;

/// Default cap on the number of compositions a single enumeration may emit.
inline constexpr std::size_t default_enumeration_cap = 10'000'000;

/// log2 of a positive big integer, exact to double precision: take the top
/// 53 bits and add the shift. Multinomials overflow double around n ~ 1000
/// on ternary alphabets, so conversion through double is not an option.
inline double log2_big(const big_int& v) {
  if (v <= 0) throw validation_error("log2_big needs a positive integer");
  const unsigned bits = boost::multiprecision::msb(v);
  if (bits <= 52) return std::log2(v.convert_to<double>());
  const big_int top = v >> (bits - 52);
  return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 52);
}

/// Exact multinomial coefficient n! / prod(counts[i]!), built as a product
/// of binomials so intermediate values stay integral.
inline big_int multinomial_coefficient(std::span<const int> counts) {
  big_int result = 1;
  long long placed = 0;
  for (int c : counts) {
    if (c < 0) throw validation_error("counts must be non-negative");
    // result *= C(placed + c, c)
    for (int j = 1; j <= c; ++j) {
      result *= (placed + j);
      result /= j;
    }
    placed += c;
  }
  return result;
}

/// Number of compositions of n into k parts: C(n+k-1, k-1).
inline big_int count_compositions(int alphabet_size, int n) {
  big_int result = 1;
  for (int j = 1; j <= alphabet_size - 1; ++j) {
    result *= (n + j);
    result /= j;
  }
  return result;
}

/// One type class: the sequences of length n sharing a count vector.
struct type_class {
  std::vector<int> counts;
  big_int multiplicity;       // exact sequence count in the class
  double log2_multiplicity;   // log2(multiplicity), for log-space weights

  int length() const {
    int n = 0;
    for (int c : counts) n += c;
    return n;
  }
};

/// All compositions of n into alphabet_size parts, first symbol's count
/// descending. Throws resource_error when there would be more than `cap`.
inline std::vector<type_class> enumerate_type_classes(
    int alphabet_size, int n, std::size_t cap = default_enumeration_cap) {
  if (n < 1) throw validation_error("sequence length must be >= 1");
  if (alphabet_size < 2) throw validation_error("alphabet size must be >= 2");
  const big_int total = count_compositions(alphabet_size, n);
  if (total > cap)
    throw resource_error("type-class enumeration would produce " +
                         total.str() + " classes (cap " +
                         std::to_string(cap) + ")");

  std::vector<type_class> out;
  out.reserve(total.convert_to<std::size_t>());
  std::vector<int> counts(alphabet_size, 0);

  // Composition walk carrying the multinomial coefficient incrementally:
  // the factor for placing c of `remaining` items at this position is
  // C(remaining, c), stepped via C(rem, c-1) = C(rem, c) * c / (rem-c+1).
  const auto recurse = [&](auto&& self, int pos, int remaining,
                           const big_int& partial) -> void {
    if (pos == alphabet_size - 1) {
      counts[pos] = remaining;
      type_class tc;
      tc.counts = counts;
      tc.multiplicity = partial;
      tc.log2_multiplicity = log2_big(tc.multiplicity);
      out.push_back(std::move(tc));
      return;
    }
    big_int factor = 1;  // C(remaining, remaining)
    for (int c = remaining; c >= 0; --c) {
      counts[pos] = c;
      self(self, pos + 1, remaining - c, partial * factor);
      if (c > 0) {
        factor *= c;
        factor /= remaining - c + 1;
      }
    }
  };
  recurse(recurse, 0, n, big_int(1));
  return out;
}

/// All types of X^n with per-hypothesis log-space weights precomputed.
/// log2_w[i] = log2(multiplicity * p_i(representative)) is the log of the
/// full class probability; llr is the per-sequence log-likelihood ratio.
struct type_ensemble {
  int n = 0;
  std::vector<type_class> types;
  std::vector<double> llr;
  std::vector<double> log2_w0;
  std::vector<double> log2_w1;

  std::size_t size() const { return types.size(); }

  static type_ensemble build(const hypothesis_pair& pair, int n,
                             std::size_t cap = default_enumeration_cap) {
    type_ensemble e;
    e.n = n;
    e.types = enumerate_type_classes(pair.alphabet_size(), n, cap);
    e.llr.resize(e.types.size());
    e.log2_w0.resize(e.types.size());
    e.log2_w1.resize(e.types.size());
    for (std::size_t i = 0; i < e.types.size(); ++i) {
      const auto& tc = e.types[i];
      const double l0 = log2_rep_prob(pair.p0(), tc.counts);
      const double l1 = log2_rep_prob(pair.p1(), tc.counts);
      e.llr[i] = (l0 == neg_inf && l1 == neg_inf)
                     ? std::numeric_limits<double>::quiet_NaN()
                     : l0 - l1;
      e.log2_w0[i] = tc.log2_multiplicity + l0;
      e.log2_w1[i] = tc.log2_multiplicity + l1;
    }
    return e;
  }
};

}  // namespace nuht
