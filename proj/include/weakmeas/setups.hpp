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
 * The two concrete setups and their closed forms.
 *
 * Spin sequence (AAV): pre-selection angle alpha, post-selection |up_x>,
 * observable sigma_z, weak value tan(alpha/2). The pointer is p_z and
 * corresponds to the generic q; z corresponds to -p.
 *
 * Sagnac interferometer (DSJH): phase phi, dark-port post-selection,
 * which-path observable, weak value -i cot(phi/2). The pointer x corresponds
 * to the generic p with g -> k; the generic q corresponds to -p.
 *
 * Basis order for the interferometer is (clockwise, counter-clockwise).
 */

#pragma once

#include <optional>

#include "weakmeas/types.hpp"

namespace weakmeas::setups {

struct WeakValueResult {
  Complex overlap;               ///< <f|i>
  Complex transition;            ///< <f|A|i>
  std::optional<WeakValue> a_w;  ///< empty when |<f|i>|^2 < 1e-12

  [[nodiscard]] bool orthogonal() const noexcept { return !a_w.has_value(); }
};

/// Throws DegenerateSetupError if both amplitudes fall below the threshold.
[[nodiscard]] WeakValueResult weak_value_of(const TwoLevelSetup& setup);

[[nodiscard]] TwoLevelSetup aav_setup(double alpha);
[[nodiscard]] TwoLevelSetup dsjh_setup(double phi);

/// sigma_z observable, post (1, 1)/sqrt2, pre chosen so that A_w = w.
[[nodiscard]] TwoLevelSetup custom_setup(WeakValue w);

struct AavPoint {
  double s = 1.0;
  double alpha = 0.0;
};

struct DsjhPoint {
  double s = 1.0;
  double phi = 0.0;
};

struct AavStats {
  double z = 0.0;
  double mean_pz = 0.0;      ///< <p_z>'/g
  double delta_pz_sq = 0.0;  ///< (dp_z/g)^2
  double delta_z_sq = 0.0;   ///< g^2 (dz)^2
  double snr = 0.0;          ///< <p_z>'/dp_z
};

struct DsjhStats {
  double z = 0.0;
  double mean_kx = 0.0;     ///< k<x>'
  double delta_x_sq = 0.0;  ///< k^2 (dx)^2
  double delta_p_sq = 0.0;  ///< (dp)^2 / k^2
  double snr = 0.0;         ///< sqrt(2s) e^{-s} sin(phi) / ..., i.e. -<x>'/dx
};

[[nodiscard]] WeakValue aav_weak_value(double alpha);
[[nodiscard]] WeakValue dsjh_weak_value(double phi);

/// Throws DomainError at the orthogonal angle alpha = pi (mod 2 pi).
[[nodiscard]] AavStats aav_closed_forms(const AavPoint& pt);

/// Density of x = p_z / g.
[[nodiscard]] double aav_density(const AavPoint& pt, double x);

/// Throws DomainError at phi = 0 (mod 2 pi).
[[nodiscard]] DsjhStats dsjh_closed_forms(const DsjhPoint& pt);

/// Density of k x.
[[nodiscard]] double dsjh_density(const DsjhPoint& pt, double kx);

/// |<x>'| / delta = |k<x>'| / (k delta).
[[nodiscard]] double dsjh_amplification(const DsjhPoint& pt, double k, double delta);

/// Generic statistics mapped through each setup's variable correspondence.
[[nodiscard]] AavStats aav_from_generic(const PointerStats& st);
[[nodiscard]] DsjhStats dsjh_from_generic(const PointerStats& st);

}  // namespace weakmeas::setups
