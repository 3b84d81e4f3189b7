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

/**
 * @file
 * Gaussian detector moments and the truncated operator-series evaluation of
 * the post-selected normalization and pointer moments.
 *
 * Every series is summed term by term in u/v units. Summation stops as soon as
 * a term drops to 1e-15 of the running sum, or after `n_terms` terms. Under the
 * strict policy a sum that is cut off while its last term still exceeds 1e-12
 * of the sum raises ConvergenceError; the partial policy returns the partial
 * sum, which is what low-order (e.g. first-order) comparisons need.
 *
 * The terms behave like (s/4)^n / n! times bounded factors, so n_terms = 60
 * converges to double precision for s up to about 5. Large s brings alternating
 * cancellation and is outside the intended envelope.
 */

#pragma once

#include "weakmeas/types.hpp"

namespace weakmeas::oracle {

/// <u^n> of the initial Gaussian, (n-1)!! (s/2)^{n/2} for even n, 0 for odd n.
[[nodiscard]] double gaussian_moment_p(unsigned n, double s);

enum class MixedKind {
  qp_sym,       ///< <v u^n + u^n v>, n >= 1
  q2p2n_sym,    ///< <v^2 u^{2n} + u^{2n} v^2>, n >= 0
  q2p_odd_sym,  ///< <v^2 u^{2n+1} + u^{2n+1} v^2>, n >= 0
};

/// Symmetrized mixed moments of the initial Gaussian in u/v units. Throws
/// DomainError for an invalid (kind, n) combination.
[[nodiscard]] double mixed_gaussian_moment(MixedKind kind, int n, double s);

enum class TruncationPolicy { strict, partial };

[[nodiscard]] double series_z(const MeasurementPoint& pt, int n_terms,
                              TruncationPolicy policy = TruncationPolicy::strict);

[[nodiscard]] PointerStats series_moments(const MeasurementPoint& pt, int n_terms,
                                          TruncationPolicy policy = TruncationPolicy::strict);

/// Orthogonal normalization from the generic double sum over orthogonal weak
/// values <A^n>_ow.
[[nodiscard]] double series_z_orthogonal(double s, int n_terms,
                                         TruncationPolicy policy = TruncationPolicy::strict);

}  // namespace weakmeas::oracle
