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

#include "weakmeas/two_level.hpp"

#include <cmath>

#include "weakmeas/errors.hpp"

namespace weakmeas {

namespace {
constexpr double kTol = 1e-12;
}

Complex inner(const Ket2& a, const Ket2& b) noexcept {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

Ket2 apply(const Matrix2& m, const Ket2& k) noexcept {
  return {m[0][0] * k[0] + m[0][1] * k[1], m[1][0] * k[0] + m[1][1] * k[1]};
}

Complex overlap(const TwoLevelSetup& setup) noexcept { return inner(setup.post, setup.pre); }

Complex transition(const TwoLevelSetup& setup) noexcept {
  return inner(setup.post, apply(setup.observable, setup.pre));
}

void validate_setup(const TwoLevelSetup& setup) {
  for (const Ket2* k : {&setup.pre, &setup.post}) {
    for (const Complex& c : *k) {
      detail::require_finite(c.real(), "state amplitude");
      detail::require_finite(c.imag(), "state amplitude");
    }
    if (std::abs(inner(*k, *k).real() - 1.0) > kTol) detail::domain_fail("state is not unit-normalized");
  }
  const Matrix2& a = setup.observable;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      detail::require_finite(a[i][j].real(), "observable entry");
      detail::require_finite(a[i][j].imag(), "observable entry");
      if (std::abs(a[i][j] - std::conj(a[j][i])) > kTol) detail::domain_fail("observable is not Hermitian");
      const Complex sq = a[i][0] * a[0][j] + a[i][1] * a[1][j];
      if (std::abs(sq - (i == j ? 1.0 : 0.0)) > kTol) detail::domain_fail("observable does not square to identity");
    }
  }
}

}  // namespace weakmeas
