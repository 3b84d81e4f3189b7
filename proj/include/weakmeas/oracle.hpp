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
 * Grid simulation of pre-selection, von Neumann coupling and post-selection.
 *
 * The detector wave is sampled at u_j = -U + j du, du = 2U/N. Because A^2 = 1,
 * exp(-i u A) = cos(u) - i sin(u) A, so the post-selected amplitude is exact
 * pointwise: [<f|i> cos u - i <f|A|i> sin u] phi(u). Position space is reached
 * by a unitary DFT onto the dual grid v_k = -V + k dv with V = pi / du and
 * dv = 2 pi / (N du), discretizing psi(v) = (2 pi)^{-1/2} int e^{i u v} psi(u) du.
 *
 * Integrals use the periodic trapezoid rule, which on these grids is the plain
 * sum times the spacing.
 */

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "weakmeas/types.hpp"

namespace weakmeas::oracle {

struct GridSpec {
  double half_width = 36.0;  ///< U (or V for a position-space grid)
  std::size_t points = std::size_t{1} << 15;

  /// 2^15 points, U = 36 max(sqrt(s), 1).
  [[nodiscard]] static GridSpec default_for(double s);

  [[nodiscard]] double step() const noexcept { return 2.0 * half_width / static_cast<double>(points); }
  [[nodiscard]] double abscissa(std::size_t i) const noexcept { return -half_width + static_cast<double>(i) * step(); }

  /// Throws ConfigurationError unless points >= 256 is a power of two and
  /// U >= 12 sqrt(s/2).
  void validate(double s) const;
};

enum class Space { momentum, position };

struct WaveGrid {
  GridSpec spec;
  std::vector<Complex> amplitudes;
  Space space = Space::momentum;

  [[nodiscard]] double norm() const;
  [[nodiscard]] std::vector<double> density() const;
};

[[nodiscard]] WaveGrid initial_wave(double s, const GridSpec& spec);

struct PostSelection {
  WaveGrid wave;       ///< normalized
  double probability;  ///< Tr(rho' Pi_f) before normalization
};

/// Throws DegenerateSetupError when the probability is below 1e-300.
[[nodiscard]] PostSelection postselect_wave(const TwoLevelSetup& setup, double s, const WaveGrid& wave);

[[nodiscard]] WaveGrid to_position_space(const WaveGrid& wave);
[[nodiscard]] WaveGrid to_momentum_space(const WaveGrid& wave);

/// Quadrature of f(x) |psi(x)|^2 over the wave's own axis.
template <typename F>
[[nodiscard]] double expectation(const WaveGrid& wave, F f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < wave.amplitudes.size(); ++i) {
    acc += f(wave.spec.abscissa(i)) * std::norm(wave.amplitudes[i]);
  }
  return acc * wave.spec.step();
}

/// pre = |0>, post = |1>, A = sigma_x, so <f|i> = 0 and <f|A|i> = 1.
[[nodiscard]] TwoLevelSetup canonical_orthogonal_setup();

struct OracleReport {
  bool orthogonal = false;
  double post_selection_probability = 0.0;
  double mean_u = 0.0;
  double mean_v = 0.0;
  double var_u = 0.0;
  double var_v = 0.0;
  std::vector<double> abscissa_u;
  std::vector<double> density_u;
  std::vector<double> abscissa_v;
  std::vector<double> density_v;
  /// |oracle - reference| / max(|reference|, 1e-2); densities report the
  /// pointwise maximum. Keys ending in "_paper" compare against the reference
  /// orthogonal formulas and are informational only.
  std::map<std::string, double> residuals_vs_closed_form;
};

/// Residual of an oracle value against a reference under the shared metric.
[[nodiscard]] double residual(double oracle, double reference) noexcept;

[[nodiscard]] OracleReport oracle_report(const TwoLevelSetup& setup, double s, const GridSpec& spec);

/// True for residual keys that are compared without a pass/fail threshold.
[[nodiscard]] bool is_informational(const std::string& key);

}  // namespace weakmeas::oracle
