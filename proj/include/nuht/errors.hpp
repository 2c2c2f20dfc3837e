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

#include <stdexcept>
#include <string>

namespace nuht {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bad inputs: malformed distributions, out-of-range parameters, mismatched
/// alphabets, missing priors.
class validation_error : public error {
public:
  using error::error;
};

/// A requested computation exceeds a configured size cap (e.g. the number of
/// type classes to enumerate).
class resource_error : public error {
public:
  using error::error;
};

/// An iterative routine failed to converge; the message carries the last
/// bracketing state.
class numeric_error : public error {
public:
  using error::error;
};

}  // namespace nuht
