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

#include <functional>
#include <map>
#include <string>

namespace weakmeas::optimize {

struct OptimalPoint {
  double s = 0.0;
  double angle = 0.0;  ///< radians
  double objective_value = 0.0;
  std::map<std::string, double> companion_stats;
};

/// cos(alpha) = -e^{-s}; objective <p_z>'/g = 1 / sqrt(1 - e^{-2s}).
/// Companions: delta_pz (on-line fluctuation), delta_pz_closed (1/sqrt(2s)), snr.
[[nodiscard]] OptimalPoint aav_optimal_expectation(double s);

/// Admissible root of cos^2 a + 2 b cos a + 1 = 0, b = (cosh s + s e^s)/(1 + s),
/// evaluated as -1 / (b + sqrt(b^2 - 1)). Objective is the SNR there.
/// Companions: cos_angle, quadratic_residual, other_root, mean_pz, delta_pz.
[[nodiscard]] OptimalPoint aav_optimal_snr(double s);

/// Maximizer of the first-order (Wu-Li) shift tan(a/2) / (1 + (s/2)(tan^2(a/2) - 1)),
/// tan(a/2) = sqrt(2/s - 1). Exists for s < 2 only; throws DomainError otherwise.
/// Companions: exact_mean_pz (the exact mean at that angle).
[[nodiscard]] OptimalPoint aav_wu_li_optimal(double s);

/// cos(phi) = e^{-s}; objective -k<x>' = s e^{-s} / sqrt(1 - e^{-2s}).
/// Companions: delta_kx, snr.
[[nodiscard]] OptimalPoint dsjh_optimal_expectation(double s);

/// Admissible root of (s - 1) cos^2 p + 2 N cos p + (s - 1) = 0,
/// N = cosh s - s e^{-s}, evaluated as (1 - s) / (N + sqrt(N^2 - (s-1)^2)),
/// which is regular at s = 1. Companions as for aav_optimal_snr.
[[nodiscard]] OptimalPoint dsjh_optimal_snr(double s);

struct GlobalMax {
  double s_m = 0.0;
  double phi_m = 0.0;
  double value = 0.0;  ///< -k<x>' at (s_m, phi_m)
  double residual = 0.0;
};

/// Root of 1 - s - e^{-2s} on [0.1, 2], bracketed.
[[nodiscard]] GlobalMax dsjh_global_max();

struct ScanResult {
  double angle = 0.0;
  double value = 0.0;
};

/// Dense-grid argmax with n samples on [lo, hi], golden-section refinement on
/// the neighbouring cells, then a bracketed root of a five-point derivative
/// estimate to push the angle below the golden-section floor. Throws
/// DomainError on non-finite objective values or n < 3.
[[nodiscard]] ScanResult argmax_scan(const std::function<double(double)>& objective, double lo, double hi, int n);

}  // namespace weakmeas::optimize
