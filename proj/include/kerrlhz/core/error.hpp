// Copyright 2026 The kerrlhz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace kerrlhz {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an argument violates a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Raised when a numerical routine cannot meet its tolerance
/// (integrator underflow, truncation not converged, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

namespace detail {
inline void require(bool cond, const std::string& what) {
  if (!cond) throw InvalidArgument(what);
}
}  // namespace detail

}  // namespace kerrlhz
