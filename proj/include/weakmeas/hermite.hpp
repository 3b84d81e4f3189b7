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

#include <map>
#include <span>
#include <string>

namespace weakmeas::oracle {

inline constexpr unsigned kHermiteMaxOrder = 64;

/// Probabilists' Hermite polynomial He_n(x) from the three-term recurrence
/// He_{n+1} = x He_n - n He_{n-1}. Throws DomainError for n > 64.
[[nodiscard]] double hermite(unsigned n, double x);

/// Maximum residual of each Hermite identity over k <= k_max and x in xs.
///
/// Residuals are scale-relative: |lhs - rhs| / max(1, sum of |terms|), where
/// the sum runs over the magnitudes of every term that enters either side.
/// Keys: parity_even, parity_odd, zero_even, zero_odd, sum_rule,
/// sum_even_even, sum_odd_odd, sum_odd_even, sum_even_odd, generating_cosh,
/// generating_sinh.
[[nodiscard]] std::map<std::string, double> hermite_identity_residuals(unsigned k_max,
                                                                       std::span<const double> xs);

}  // namespace weakmeas::oracle
