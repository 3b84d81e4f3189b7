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

#include "weakmeas/types.hpp"

namespace weakmeas {

/// <a|b>, conjugate-linear in the first argument.
[[nodiscard]] Complex inner(const Ket2& a, const Ket2& b) noexcept;

[[nodiscard]] Ket2 apply(const Matrix2& m, const Ket2& k) noexcept;

/// <f|i>.
[[nodiscard]] Complex overlap(const TwoLevelSetup& setup) noexcept;

/// <f|A|i>.
[[nodiscard]] Complex transition(const TwoLevelSetup& setup) noexcept;

/// Checks unit norms, hermiticity and A^2 = 1, each within 1e-12. Throws
/// DomainError otherwise.
void validate_setup(const TwoLevelSetup& setup);

}  // namespace weakmeas
