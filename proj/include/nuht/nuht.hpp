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

// Umbrella header: simple hypothesis testing under the tunable nu-loss --
// closed-form randomized tests, exact finite-n error computation, threshold
// calibration, exponent quantities and brute-force oracles.

#include "nuht/bayes_test.hpp"
#include "nuht/distribution.hpp"
#include "nuht/error_rates.hpp"
#include "nuht/errors.hpp"
#include "nuht/explab.hpp"
#include "nuht/exponents.hpp"
#include "nuht/io.hpp"
#include "nuht/logspace.hpp"
#include "nuht/mp_test.hpp"
#include "nuht/nu_loss.hpp"
#include "nuht/nu_param.hpp"
#include "nuht/oracle.hpp"
#include "nuht/randomized_test.hpp"
#include "nuht/type_class.hpp"
#include "nuht/typical_set.hpp"
#include "nuht/verify.hpp"
