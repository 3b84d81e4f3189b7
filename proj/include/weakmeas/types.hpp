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
 * Value types shared by every module.
 *
 * All quantities are dimensionless. With coupling constant g and detector
 * momentum p, position q, the library works in u = g p, v = q / g and the
 * coupling parameter s = 2 g^2 <p^2>. The initial detector state is the
 * zero-mean Gaussian with <u^2> = s / 2 and <v^2> = 1 / (2 s).
 */

#pragma once

#include <array>
#include <complex>

namespace weakmeas {

using Complex = std::complex<double>;

/// A_w = <f|A|i> / <f|i>.
struct WeakValue {
  double re = 0.0;
  double im = 0.0;

  [[nodiscard]] constexpr double norm2() const noexcept { return re * re + im * im; }
  [[nodiscard]] Complex value() const noexcept { return {re, im}; }
  [[nodiscard]] static WeakValue from(Complex z) noexcept { return {z.real(), z.imag()}; }

  friend constexpr bool operator==(const WeakValue&, const WeakValue&) = default;
};

/// Coupling s together with the weak value it is evaluated at.
struct MeasurementPoint {
  double s = 1.0;
  WeakValue a_w;
};

/// Post-selected pointer statistics in dimensionless units:
/// mean_q = <q>'/g, mean_p = g<p>', var_q = (dq/g)^2, var_p = (g dp)^2.
struct PointerStats {
  double z = 1.0;
  double mean_q = 0.0;
  double mean_p = 0.0;
  double var_q = 0.0;
  double var_p = 0.0;
};

/// Orthogonal (<f|i> = 0) statistics. The `*_paper` closed forms and the
/// independently computed values sit side by side; neither replaces the other.
struct OrthogonalStats {
  double z_o_paper = 0.0;
  double z_o_series = 0.0;
  double mean_q = 0.0;
  double mean_p = 0.0;
  double var_p_paper = 0.0;
  double var_q_paper = 0.0;
  double var_p_oracle_ref = 0.0;
  double var_q_oracle_ref = 0.0;
};

using Ket2 = std::array<Complex, 2>;
using Matrix2 = std::array<std::array<Complex, 2>, 2>;

/// Pre-selected state, post-selected state and an involutory observable
/// (A^2 = 1) of a two-level system.
struct TwoLevelSetup {
  Ket2 pre{};
  Ket2 post{};
  Matrix2 observable{};
};

}  // namespace weakmeas
