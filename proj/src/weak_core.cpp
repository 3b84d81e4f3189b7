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

#include "weakmeas/weak_core.hpp"

#include <cmath>
#include <numbers>

#include "weakmeas/errors.hpp"
#include "weakmeas/oracle.hpp"
#include "weakmeas/series.hpp"

namespace weakmeas::core {
namespace {

constexpr double kPi = std::numbers::pi;

void validate(const MeasurementPoint& pt) {
  detail::require_coupling(pt.s);
  detail::require_finite(pt.a_w.re, "Re A_w");
  detail::require_finite(pt.a_w.im, "Im A_w");
}

// Denominator shared by the reference orthogonal densities.
double orthogonal_paper_denominator(double s) { return 4.0 - 4.0 * std::exp(-s) - 3.0 * s; }

}  // namespace

double initial_density_p(double s, double u) {
  detail::require_coupling(s);
  return std::exp(-u * u / s) / std::sqrt(kPi * s);
}

double initial_density_q(double s, double v) {
  detail::require_coupling(s);
  return std::sqrt(s / kPi) * std::exp(-s * v * v);
}

double normalization(const MeasurementPoint& pt) {
  validate(pt);
  return 1.0 + 0.5 * (1.0 - pt.a_w.norm2()) * std::expm1(-pt.s);
}

PointerStats moments_nonorthogonal(const MeasurementPoint& pt) {
  validate(pt);
  const double s = pt.s;
  const double re = pt.a_w.re;
  const double im = pt.a_w.im;
  const double mod2 = pt.a_w.norm2();
  const double es = std::exp(-s);
  const double z = normalization(pt);

  PointerStats out;
  out.z = z;
  out.mean_q = re / z;
  out.mean_p = s * es * im / z;
  out.var_q = 1.0 / (2.0 * s) + (1.0 + mod2) / (2.0 * z) - re * re / (z * z);
  out.var_p = s / 2.0 - s * s * es * (1.0 - mod2) / (2.0 * z) - s * s * es * es * im * im / (z * z);
  return out;
}

double density_p_nonorthogonal(const MeasurementPoint& pt, double u) {
  const double z = normalization(pt);
  const double bracket = 2.0 + (1.0 - pt.a_w.norm2()) * (std::cos(2.0 * u) - 1.0) +
                         2.0 * pt.a_w.im * std::sin(2.0 * u);
  return bracket / (2.0 * z) * initial_density_p(pt.s, u);
}

double density_q_nonorthogonal(const MeasurementPoint& pt, double v) {
  const double z = normalization(pt);
  const double s = pt.s;
  // [1-|A|^2 + (1+|A|^2) cosh 2sv + 2 Re A sinh 2sv] e^{-s} e^{-s v^2}
  //   = |(1+A) e^{-s(v-1)^2/2} + (1-A) e^{-s(v+1)^2/2}|^2 / 2
  const Complex a = pt.a_w.value();
  const Complex amp = (1.0 + a) * std::exp(-0.5 * s * (v - 1.0) * (v - 1.0)) +
                      (1.0 - a) * std::exp(-0.5 * s * (v + 1.0) * (v + 1.0));
  return std::sqrt(s / kPi) * std::norm(amp) / (4.0 * z);
}

Shifts wu_li_shifts(const MeasurementPoint& pt, WeakValue a2_w, double anti_qp) {
  validate(pt);
  detail::require_finite(a2_w.re, "Re <A^2>_w");
  detail::require_finite(a2_w.im, "Im <A^2>_w");
  detail::require_finite(anti_qp, "<{q,p}>");
  // g^2 <p^2> = s / 2
  const double denom = 1.0 + 0.5 * pt.s * (pt.a_w.norm2() - a2_w.re);
  if (!(denom > 0.0)) {
    detail::domain_fail("Wu-Li shift denominator is not positive; outside the formula's range");
  }
  return {(pt.a_w.re + pt.a_w.im * anti_qp) / denom, pt.s * pt.a_w.im / denom};
}

double orthogonal_weak_value(unsigned n) { return n % 2 == 0 ? 1.0 / (n + 1.0) : 0.0; }

double z_orthogonal_paper(double s) {
  detail::require_coupling(s);
  return 4.0 / s * (1.0 - std::exp(-s) - 0.75 * s);
}

double var_p_orthogonal_paper(double s) {
  detail::require_coupling(s);
  return s / 2.0 * (1.0 + (2.0 * s - 1.0) * std::exp(-s)) / (4.0 - 3.0 * s - 4.0 * std::exp(-s));
}

double var_q_orthogonal_paper(double s) {
  detail::require_coupling(s);
  return 1.0 / (2.0 * s) * (1.0 - std::exp(-s) + 4.0 * s) / orthogonal_paper_denominator(s);
}

OrthogonalStats moments_orthogonal(double s) {
  detail::require_coupling(s);
  OrthogonalStats out;
  out.z_o_paper = z_orthogonal_paper(s);
  out.z_o_series = oracle::series_z_orthogonal(s, 40);
  out.mean_q = 0.0;
  out.mean_p = 0.0;
  out.var_p_paper = var_p_orthogonal_paper(s);
  out.var_q_paper = var_q_orthogonal_paper(s);

  const auto report = oracle::oracle_report(oracle::canonical_orthogonal_setup(), s,
                                            oracle::GridSpec::default_for(s));
  out.var_p_oracle_ref = report.var_u;
  out.var_q_oracle_ref = report.var_v;
  return out;
}

double density_p_orthogonal(double s, double u, DensityVariant variant) {
  detail::require_coupling(s);
  const double shape = 1.0 - std::cos(2.0 * u);
  if (variant == DensityVariant::paper) {
    return shape / (2.0 * orthogonal_paper_denominator(s)) * initial_density_p(s, u);
  }
  // integral of (1 - cos 2u) against the u-Gaussian is 1 - e^{-s}
  const double sin_u = std::sin(u);
  return 2.0 * sin_u * sin_u * initial_density_p(s, u) / -std::expm1(-s);
}

double density_q_orthogonal(double s, double v, DensityVariant variant) {
  detail::require_coupling(s);
  // e^{-s} sinh^2(s v) e^{-s v^2} = (e^{-s(v-1)^2/2} - e^{-s(v+1)^2/2})^2 / 4
  const double diff = std::exp(-0.5 * s * (v - 1.0) * (v - 1.0)) -
                      std::exp(-0.5 * s * (v + 1.0) * (v + 1.0));
  const double shifted = 0.25 * diff * diff * std::sqrt(s / kPi);
  if (variant == DensityVariant::paper) {
    return 2.0 * shifted / orthogonal_paper_denominator(s);
  }
  return 2.0 * shifted / -std::expm1(-s);
}

}  // namespace weakmeas::core
