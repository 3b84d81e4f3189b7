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

#include "weakmeas/setups.hpp"

#include <cmath>
#include <numbers>

#include "weakmeas/errors.hpp"
#include "weakmeas/two_level.hpp"
#include "weakmeas/weak_core.hpp"

namespace weakmeas::setups {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kThreshold = 1e-12;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

Matrix2 sigma_z() { return {{{Complex(1.0), Complex(0.0)}, {Complex(0.0), Complex(-1.0)}}}; }

void check_angle(double angle, const char* name) {
  detail::require_finite(angle, name);
}

}  // namespace

WeakValueResult weak_value_of(const TwoLevelSetup& setup) {
  validate_setup(setup);
  WeakValueResult out{overlap(setup), transition(setup), std::nullopt};
  if (std::norm(out.overlap) >= kThreshold) {
    out.a_w = WeakValue::from(out.transition / out.overlap);
  } else if (std::norm(out.transition) < kThreshold) {
    throw DegenerateSetupError("both <f|i> and <f|A|i> vanish");
  }
  return out;
}

TwoLevelSetup aav_setup(double alpha) {
  check_angle(alpha, "alpha");
  // sqrt(1 +- sin a) taken as the signed cos(a/2) +- sin(a/2)
  const double c = std::cos(0.5 * alpha);
  const double s = std::sin(0.5 * alpha);
  TwoLevelSetup out;
  out.pre = {Complex((c + s) * kInvSqrt2), Complex((c - s) * kInvSqrt2)};
  out.post = {Complex(kInvSqrt2), Complex(kInvSqrt2)};
  out.observable = sigma_z();
  return out;
}

TwoLevelSetup dsjh_setup(double phi) {
  check_angle(phi, "phi");
  // (e^{i phi/2} |cw> + i e^{-i phi/2} |ccw>) / sqrt2; the relative phase sign
  // is the one that yields -i cot(phi/2)
  const Complex i(0.0, 1.0);
  TwoLevelSetup out;
  out.pre = {std::polar(kInvSqrt2, 0.5 * phi), i * std::polar(kInvSqrt2, -0.5 * phi)};
  out.post = {i * kInvSqrt2, Complex(kInvSqrt2)};
  out.observable = sigma_z();
  return out;
}

TwoLevelSetup custom_setup(WeakValue w) {
  detail::require_finite(w.re, "Re A_w");
  detail::require_finite(w.im, "Im A_w");
  const Complex a = w.value();
  const double n = std::sqrt(2.0 + 2.0 * w.norm2());
  TwoLevelSetup out;
  out.pre = {(1.0 + a) / n, (1.0 - a) / n};
  out.post = {Complex(kInvSqrt2), Complex(kInvSqrt2)};
  out.observable = sigma_z();
  return out;
}

WeakValue aav_weak_value(double alpha) { return {std::tan(0.5 * alpha), 0.0}; }

WeakValue dsjh_weak_value(double phi) { return {0.0, -1.0 / std::tan(0.5 * phi)}; }

AavStats aav_closed_forms(const AavPoint& pt) {
  detail::require_coupling(pt.s);
  check_angle(pt.alpha, "alpha");
  const double ca = std::cos(pt.alpha);
  const double sa = std::sin(pt.alpha);
  if (std::abs(std::cos(0.5 * pt.alpha)) < 1e-12) detail::domain_fail("alpha = pi is the orthogonal point");
  const double es = std::exp(-pt.s);
  const double d = 1.0 + es * ca;

  AavStats out;
  out.z = d / (1.0 + ca);
  out.mean_pz = sa / d;
  out.delta_pz_sq = 1.0 / (2.0 * pt.s) + ca * (ca + es) / (d * d);
  out.delta_z_sq = pt.s / 2.0 - pt.s * pt.s * es * ca / d;
  out.snr = std::sqrt(2.0 * pt.s) * sa / std::sqrt(d * d + 2.0 * pt.s * ca * (ca + es));
  return out;
}

double aav_density(const AavPoint& pt, double x) {
  detail::require_coupling(pt.s);
  if (std::abs(std::cos(0.5 * pt.alpha)) < 1e-12) detail::domain_fail("alpha = pi is the orthogonal point");
  // [cos a + cosh 2sx + sin a sinh 2sx] e^{-s} e^{-s x^2}
  //   = ((c+t) e^{-s(x-1)^2/2} + (c-t) e^{-s(x+1)^2/2})^2 / 2
  const double c = std::cos(0.5 * pt.alpha);
  const double t = std::sin(0.5 * pt.alpha);
  const double amp = (c + t) * std::exp(-0.5 * pt.s * (x - 1.0) * (x - 1.0)) +
                     (c - t) * std::exp(-0.5 * pt.s * (x + 1.0) * (x + 1.0));
  const double d = 1.0 + std::exp(-pt.s) * std::cos(pt.alpha);
  return 0.5 * amp * amp / d * std::sqrt(pt.s / kPi);
}

DsjhStats dsjh_closed_forms(const DsjhPoint& pt) {
  detail::require_coupling(pt.s);
  check_angle(pt.phi, "phi");
  if (std::abs(std::sin(0.5 * pt.phi)) < 1e-12) detail::domain_fail("phi = 0 is the orthogonal point");
  const double cp = std::cos(pt.phi);
  const double sp = std::sin(pt.phi);
  const double es = std::exp(-pt.s);
  const double d = 1.0 - es * cp;

  DsjhStats out;
  out.z = d / (1.0 - cp);
  out.mean_kx = -pt.s * es * sp / d;
  out.delta_x_sq = pt.s / 2.0 + pt.s * pt.s * es * (cp - es) / (d * d);
  out.delta_p_sq = 1.0 / (2.0 * pt.s) + 1.0 / d;
  out.snr = std::sqrt(2.0 * pt.s) * es * sp / std::sqrt(d * d + 2.0 * pt.s * es * (cp - es));
  return out;
}

double dsjh_density(const DsjhPoint& pt, double kx) {
  if (std::abs(std::sin(0.5 * pt.phi)) < 1e-12) detail::domain_fail("phi = 0 is the orthogonal point");
  const double d = 1.0 - std::exp(-pt.s) * std::cos(pt.phi);
  return (1.0 - std::cos(2.0 * kx - pt.phi)) / d * core::initial_density_p(pt.s, kx);
}

double dsjh_amplification(const DsjhPoint& pt, double k, double delta) {
  if (!(k > 0.0) || !(delta > 0.0)) detail::domain_fail("k and delta must be positive");
  detail::require_finite(k, "k");
  detail::require_finite(delta, "delta");
  return std::abs(dsjh_closed_forms(pt).mean_kx) / (k * delta);
}

AavStats aav_from_generic(const PointerStats& st) {
  return {st.z, st.mean_q, st.var_q, st.var_p, st.mean_q / std::sqrt(st.var_q)};
}

DsjhStats dsjh_from_generic(const PointerStats& st) {
  return {st.z, st.mean_p, st.var_p, st.var_q, -st.mean_p / std::sqrt(st.var_p)};
}

}  // namespace weakmeas::setups
