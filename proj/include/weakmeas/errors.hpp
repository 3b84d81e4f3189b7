// Copyright 2026 The weakmeas Authors
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

namespace weakmeas {

/// Argument outside the domain of a formula (s <= 0, non-finite input,
/// orthogonal pre/post pair passed to a non-orthogonal routine, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Both <f|i> and <f|A|i> vanish; no detector state survives post-selection.
class DegenerateSetupError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Grid too small or too coarse for the requested coupling.
class ConfigurationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A truncated series stopped before its tail became negligible.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void domain_fail(const std::string& what) { throw DomainError(what); }

inline void require_finite(double x, const char* name) {
  if (!(x - x == 0.0)) domain_fail(std::string(name) + " must be finite");
}

inline void require_coupling(double s) {
  require_finite(s, "s");
  if (!(s > 0.0)) domain_fail("coupling s must be strictly positive, got " + std::to_string(s));
}

}  // namespace detail
}  // namespace weakmeas
