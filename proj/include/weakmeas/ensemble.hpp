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
 * Monte Carlo sampling from tabulated pointer densities.
 *
 * Randomness is always seeded explicitly. Stream i of seed S is a
 * std::mt19937_64 seeded with splitmix64(S + (i + 1) * 0x9E3779B97F4A7C15);
 * uniforms are the top 53 bits of each output scaled by 2^-53, so draws are
 * identical across platforms and standard libraries.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "weakmeas/setups.hpp"

namespace weakmeas::ensemble {

/// A density tabulated on an ascending abscissa, with its cumulative
/// trapezoid integral.
struct SampledCurve {
  std::vector<double> x;
  std::vector<double> density;
  std::vector<double> cdf;  ///< cdf.front() = 0, cdf.back() = 1 after rescaling
  double mean = 0.0;
  double stddev = 0.0;

  /// Piecewise-linear interpolation of the cumulative integral.
  [[nodiscard]] double cdf_at(double t) const;
};

/// Validates non-negativity and unit integral (within 1e-6); throws
/// DomainError otherwise.
[[nodiscard]] std::shared_ptr<const SampledCurve> make_curve(std::vector<double> x, std::vector<double> density);

/// Samples f at n equally spaced points on [lo, hi].
[[nodiscard]] std::shared_ptr<const SampledCurve> tabulate(const std::function<double(double)>& f, double lo,
                                                           double hi, int n);

/// Post-selected p_z density of the spin setup, in p_z / g.
[[nodiscard]] std::shared_ptr<const SampledCurve> aav_curve(const setups::AavPoint& pt, int n = 8193);

/// Post-selected x density of the interferometer setup, in k x.
[[nodiscard]] std::shared_ptr<const SampledCurve> dsjh_curve(const setups::DsjhPoint& pt, int n = 8193);

[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x) noexcept;
[[nodiscard]] std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

struct SampleBatch {
  std::vector<double> draws;
  std::uint64_t seed = 0;
  std::shared_ptr<const SampledCurve> source_curve;
};

/// n inverse-CDF draws using stream 0 of `seed`.
[[nodiscard]] SampleBatch sample_density(std::shared_ptr<const SampledCurve> curve, std::size_t n, std::uint64_t seed);

struct ScalingRow {
  std::size_t n = 0;
  double mean_of_means = 0.0;
  double std_of_means = 0.0;
  double snr = 0.0;
};

struct ScalingTable {
  std::vector<ScalingRow> rows;
  double slope = 0.0;      ///< least-squares slope of log snr against log N
  double intercept = 0.0;  ///< in log space
  double single_shot_snr = 0.0;  ///< |mean| / stddev of the source curve
  bool zero_signal = false;      ///< curve mean indistinguishable from zero
};

/// For each N, `trials` independent N-sample averages; SNR is |mean| / std of
/// those averages. Trial t of the j-th N uses stream j * trials + t.
/// Requires ascending n_values and trials >= 30.
[[nodiscard]] ScalingTable snr_scaling(std::shared_ptr<const SampledCurve> curve, const std::vector<std::size_t>& n_values,
                                       int trials, std::uint64_t seed);

}  // namespace weakmeas::ensemble
