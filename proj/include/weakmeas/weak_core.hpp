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
 * Exact all-order closed forms for a post-selected von Neumann pointer
 * coupled to an involutory observable (A^2 = 1) with a zero-mean Gaussian
 * detector state.
 *
 * Densities are returned per unit of the dimensionless abscissa: the p-space
 * density is a density in u = g p, the q-space density a density in v = q / g.
 */

#pragma once

#include "weakmeas/types.hpp"

namespace weakmeas::core {

/// Initial Gaussian densities, sqrt(1/(pi s)) exp(-u^2/s) and
/// sqrt(s/pi) exp(-s v^2).
[[nodiscard]] double initial_density_p(double s, double u);
[[nodiscard]] double initial_density_q(double s, double v);

/// Z = 1 + (1 - |A_w|^2)(e^{-s} - 1) / 2. Equals Tr(rho' Pi_f) / |<f|i>|^2.
[[nodiscard]] double normalization(const MeasurementPoint& pt);

/// Z, means and variances from the closed forms. Throws DomainError on s <= 0
/// or non-finite input.
[[nodiscard]] PointerStats moments_nonorthogonal(const MeasurementPoint& pt);

/// Post-selected density in u = g p.
[[nodiscard]] double density_p_nonorthogonal(const MeasurementPoint& pt, double u);

/// Post-selected density in v = q / g. Evaluated as the squared modulus of two
/// displaced Gaussian amplitudes, so it is non-negative and never overflows.
[[nodiscard]] double density_q_nonorthogonal(const MeasurementPoint& pt, double v);

struct Shifts {
  double delta_q = 0.0;  ///< delta q / g
  double delta_p = 0.0;  ///< g delta p
};

/// Wu-Li approximate pointer shifts with denominator
/// 1 + g^2<p^2>(|A_w|^2 - Re<A^2>_w). `anti_qp` is <{q,p}> of the initial
/// detector state. Throws DomainError when the denominator is not positive.
[[nodiscard]] Shifts wu_li_shifts(const MeasurementPoint& pt, WeakValue a2_w, double anti_qp);

/// Orthogonal weak value <A^n>_ow for A^2 = 1: 1/(n+1) for even n, 0 for odd n.
[[nodiscard]] double orthogonal_weak_value(unsigned n);

/// Reference orthogonal closed forms next to the series value of Z_o and the
/// grid-oracle variances (default grid).
[[nodiscard]] OrthogonalStats moments_orthogonal(double s);

/// Reference closed forms, each independently usable. They do not normalize.
[[nodiscard]] double z_orthogonal_paper(double s);
[[nodiscard]] double var_p_orthogonal_paper(double s);
[[nodiscard]] double var_q_orthogonal_paper(double s);

enum class DensityVariant { paper, oracle_normalized };

/// (1 - cos 2u) times the initial u-Gaussian, either with the reference
/// denominator 2(4 - 4e^{-s} - 3s) or rescaled to unit integral.
[[nodiscard]] double density_p_orthogonal(double s, double u, DensityVariant variant);

/// 2 e^{-s} sinh^2(s v) times the initial v-Gaussian, reference or unit-normalized.
[[nodiscard]] double density_q_orthogonal(double s, double v, DensityVariant variant);

}  // namespace weakmeas::core
