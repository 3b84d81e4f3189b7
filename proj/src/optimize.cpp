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

#include "weakmeas/optimize.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "weakmeas/errors.hpp"
#include "weakmeas/setups.hpp"

namespace weakmeas::optimize {
namespace {

double finite_or_throw(double v) {
  if (!std::isfinite(v)) detail::domain_fail("objective returned a non-finite value");
  return v;
}

// Relative residual of a x^2 + b x + c at x.
double quadratic_residual(double a, double b, double c, double x) {
  const double scale = std::max({std::abs(a * x * x), std::abs(b * x), std::abs(c)});
  const double value = std::abs(a * x * x + b * x + c);
  return scale > 0.0 ? value / scale : value;
}

OptimalPoint with_aav_companions(double s, double alpha, double objective) {
  const auto st = setups::aav_closed_forms({s, alpha});
  OptimalPoint out{s, alpha, objective, {}};
  out.companion_stats["mean_pz"] = st.mean_pz;
  out.companion_stats["delta_pz"] = std::sqrt(st.delta_pz_sq);
  out.companion_stats["snr"] = st.snr;
  return out;
}

OptimalPoint with_dsjh_companions(double s, double phi, double objective) {
  const auto st = setups::dsjh_closed_forms({s, phi});
  OptimalPoint out{s, phi, objective, {}};
  out.companion_stats["mean_kx"] = st.mean_kx;
  out.companion_stats["delta_kx"] = std::sqrt(st.delta_x_sq);
  out.companion_stats["snr"] = st.snr;
  return out;
}

}  // namespace

OptimalPoint aav_optimal_expectation(double s) {
  detail::require_coupling(s);
  const double alpha = std::acos(-std::exp(-s));
  auto out = with_aav_companions(s, alpha, 1.0 / std::sqrt(-std::expm1(-2.0 * s)));
  out.companion_stats["delta_pz_closed"] = 1.0 / std::sqrt(2.0 * s);
  return out;
}

OptimalPoint aav_optimal_snr(double s) {
  detail::require_coupling(s);
  // b - 1 and b + 1 without cancellation near s = 0
  const double sh = std::sinh(0.5 * s);
  const double b_minus = (2.0 * sh * sh + s * std::expm1(s)) / (1.0 + s);
  const double b = 1.0 + b_minus;
  const double root = std::sqrt(b_minus * (b + 1.0));
  const double cos_a = -1.0 / (b + root);
  const double other = -(b + root);
  if (!(cos_a >= -1.0 && cos_a < 0.0) || other >= -1.0) {
    throw ConvergenceError("optimal-SNR root outside [-1, 0); internal defect");
  }
  const double alpha = std::acos(cos_a);
  auto out = with_aav_companions(s, alpha, setups::aav_closed_forms({s, alpha}).snr);
  out.companion_stats["cos_angle"] = cos_a;
  out.companion_stats["other_root"] = other;
  out.companion_stats["quadratic_residual"] = quadratic_residual(1.0, 2.0 * b, 1.0, cos_a);
  return out;
}

OptimalPoint aav_wu_li_optimal(double s) {
  detail::require_coupling(s);
  if (!(s < 2.0)) detail::domain_fail("first-order optimum exists only for s < 2");
  const double t = std::sqrt(2.0 / s - 1.0);
  const double alpha = 2.0 * std::atan(t);
  const double wu_li = t / (1.0 + 0.5 * s * (t * t - 1.0));
  auto out = with_aav_companions(s, alpha, wu_li);
  out.companion_stats["exact_mean_pz"] = out.companion_stats.at("mean_pz");
  return out;
}

OptimalPoint dsjh_optimal_expectation(double s) {
  detail::require_coupling(s);
  const double phi = std::acos(std::exp(-s));
  return with_dsjh_companions(s, phi, s * std::exp(-s) / std::sqrt(-std::expm1(-2.0 * s)));
}

OptimalPoint dsjh_optimal_snr(double s) {
  detail::require_coupling(s);
  const double sh = std::sinh(0.5 * s);
  const double n = std::cosh(s) - s * std::exp(-s);
  // N^2 - (s-1)^2 = (N + s - 1)(N - s + 1); N + s - 1 = 2 sinh^2(s/2) - s expm1(-s)
  const double plus = 2.0 * sh * sh - s * std::expm1(-s);
  const double minus = n - s + 1.0;
  const double root = std::sqrt(plus * minus);
  const double cos_p = (1.0 - s) / (n + root);
  if (!(std::abs(cos_p) <= 1.0)) throw ConvergenceError("optimal-SNR root outside [-1, 1]; internal defect");
  const double phi = std::acos(cos_p);
  auto out = with_dsjh_companions(s, phi, setups::dsjh_closed_forms({s, phi}).snr);
  out.companion_stats["cos_angle"] = cos_p;
  // product of the two roots is 1, so the discarded one is 1 / cos_p
  out.companion_stats["other_root"] = s == 1.0 ? -std::numeric_limits<double>::infinity() : 1.0 / cos_p;
  out.companion_stats["quadratic_residual"] = quadratic_residual(s - 1.0, 2.0 * n, s - 1.0, cos_p);
  return out;
}

GlobalMax dsjh_global_max() {
  const auto f = [](double s) { return 1.0 - s - std::exp(-2.0 * s); };
  std::uintmax_t iters = 200;
  const auto [a, b] =
      boost::math::tools::toms748_solve(f, 0.1, 2.0, boost::math::tools::eps_tolerance<double>(52), iters);
  const double s_m = 0.5 * (a + b);
  GlobalMax out;
  out.s_m = s_m;
  out.phi_m = std::acos(std::exp(-s_m));
  out.value = std::sqrt(s_m) * std::exp(-s_m);
  out.residual = std::abs(f(s_m));
  return out;
}

ScanResult argmax_scan(const std::function<double(double)>& objective, double lo, double hi, int n) {
  if (n < 3) detail::domain_fail("argmax_scan needs at least 3 samples");
  if (!(hi > lo)) detail::domain_fail("argmax_scan needs lo < hi");
  const double h = (hi - lo) / (n - 1);
  int best = 0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double v = finite_or_throw(objective(lo + i * h));
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  const double a = lo + std::max(best - 1, 0) * h;
  const double b = lo + std::min(best + 1, n - 1) * h;
  const auto neg = [&](double x) { return -finite_or_throw(objective(x)); };
  auto [x, fx] = boost::math::tools::brent_find_minima(neg, a, b, 52);

  // Golden-section/Brent stalls near sqrt(eps); refine on the derivative.
  const double step = 1e-4 * std::max(1.0, hi - lo);
  const auto deriv = [&](double t) {
    return (objective(t - 2 * step) - 8 * objective(t - step) + 8 * objective(t + step) - objective(t + 2 * step)) /
           (12 * step);
  };
  double width = 1e-7;
  for (int k = 0; k < 8; ++k, width *= 4) {
    const double l = std::max(a, x - width);
    const double r = std::min(b, x + width);
    const double dl = deriv(l);
    const double dr = deriv(r);
    if (dl > 0.0 && dr < 0.0) {
      std::uintmax_t iters = 100;
      const auto [p, q] =
          boost::math::tools::toms748_solve(deriv, l, r, dl, dr, boost::math::tools::eps_tolerance<double>(50), iters);
      const double polished = 0.5 * (p + q);
      const double pv = objective(polished);
      if (pv >= -fx - 1e-12 * std::abs(fx)) {
        x = polished;
        fx = -pv;
      }
      break;
    }
  }
  return {x, -fx};
}

}  // namespace weakmeas::optimize
