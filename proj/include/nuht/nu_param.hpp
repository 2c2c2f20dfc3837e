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
#include <cstdio>
#include <string>
#include <string_view>

#include "nuht/errors.hpp"
#include "nuht/logspace.hpp"

namespace nuht {

/// The tunable parameter of the loss family: a finite value in [1, inf) or
/// the distinguished infinity. Finite values in (1, 1+1e-9) are rejected --
/// nu/(nu-1) blows up there and the exact nu=1 branch must be used instead.
class nu_param {
public:
  static nu_param one() { return nu_param(1.0); }

  static nu_param finite(double v) {
    if (!std::isfinite(v) || v < 1.0)
      throw validation_error("nu must be a finite value >= 1 (got " +
                             std::to_string(v) + ")");
    if (v > 1.0 && v < 1.0 + 1e-9)
      throw validation_error(
          "nu in (1, 1+1e-9) is rejected; use nu = 1 exactly");
    return nu_param(v);
  }

  static nu_param infinity() { return nu_param(pos_inf); }

  /// Accepts "inf" (any case) or a finite number.
  static nu_param parse(std::string_view s) {
    if (s == "inf" || s == "Inf" || s == "INF" || s == "infinity")
      return infinity();
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(std::string(s), &pos);
    } catch (const std::exception&) {
      throw validation_error("cannot parse nu from '" + std::string(s) + "'");
    }
    if (pos != s.size())
      throw validation_error("cannot parse nu from '" + std::string(s) + "'");
    return finite(v);
  }

  bool is_infinity() const { return std::isinf(value_); }
  bool is_one() const { return value_ == 1.0; }
  bool is_finite() const { return !is_infinity(); }

  double value() const {
    if (is_infinity()) throw validation_error("nu is infinite");
    return value_;
  }

  /// (nu-1)/nu, the exponent applied to decision probabilities. Finite nu > 1.
  double power_ratio() const { return (value() - 1.0) / value(); }

  /// nu/(nu-1), the prefactor of the finite-nu loss. Finite nu > 1.
  double prefactor() const {
    if (is_one()) throw validation_error("nu/(nu-1) undefined at nu = 1");
    return value() / (value() - 1.0);
  }

  std::string str() const {
    if (is_infinity()) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value_);
    return buf;
  }

  friend bool operator==(const nu_param& a, const nu_param& b) {
    return a.value_ == b.value_ || (a.is_infinity() && b.is_infinity());
  }
  friend bool operator!=(const nu_param& a, const nu_param& b) {
    return !(a == b);
  }

private:
  explicit nu_param(double v) : value_(v) {}
  double value_;
};

}  // namespace nuht
