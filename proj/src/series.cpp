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

#include "weakmeas/series.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "weakmeas/errors.hpp"
#include "weakmeas/weak_core.hpp"

namespace weakmeas::oracle {
namespace {

constexpr double kStopRatio = 1e-15;
constexpr double kGuardRatio = 1e-12;
constexpr double kLn2 = std::numbers::ln2;

// log((m-1)!!) for even m >= 0.
double log_double_factorial_below(unsigned m) {
  const double k = m / 2.0;
  return std::lgamma(m + 1.0) - k * kLn2 - std::lgamma(k + 1.0);
}

// 2^{pow2} <u^m> / j! for even m, evaluated in log space.
double scaled_moment(unsigned m, double s, double pow2, unsigned j) {
  if (m % 2 == 1) return 0.0;
  return std::exp(pow2 * kLn2 + log_double_factorial_below(m) + 0.5 * m * std::log(0.5 * s) -
                  std::lgamma(j + 1.0));
}

double sign(unsigned n) { return n % 2 == 0 ? 1.0 : -1.0; }

void validate(const MeasurementPoint& pt, int n_terms) {
  detail::require_coupling(pt.s);
  detail::require_finite(pt.a_w.re, "Re A_w");
  detail::require_finite(pt.a_w.im, "Im A_w");
  if (n_terms < 1) detail::domain_fail("n_terms must be at least 1");
}

class Summation {
public:
  Summation(int n_terms, TruncationPolicy policy) : n_terms_(n_terms), policy_(policy) {}

  template <typename Term>
  double operator()(const char* name, unsigned first, Term term) const {
    double sum = 0.0;
    double last = 0.0;
    for (int i = 0; i < n_terms_; ++i) {
      last = term(first + static_cast<unsigned>(i));
      sum += last;
      if (i >= 1 && std::abs(last) <= kStopRatio * std::abs(sum)) return sum;
    }
    if (policy_ == TruncationPolicy::strict && std::abs(last) > kGuardRatio * std::abs(sum)) {
      throw ConvergenceError(std::string("series '") + name + "' not converged after " +
                             std::to_string(n_terms_) + " terms");
    }
    return sum;
  }

private:
  int n_terms_;
  TruncationPolicy policy_;
};

}  // namespace

double gaussian_moment_p(unsigned n, double s) {
  detail::require_coupling(s);
  if (n % 2 == 1) return 0.0;
  return std::exp(log_double_factorial_below(n) + 0.5 * n * std::log(0.5 * s));
}

double mixed_gaussian_moment(MixedKind kind, int n, double s) {
  detail::require_coupling(s);
  switch (kind) {
    case MixedKind::qp_sym:
      if (n < 1) detail::domain_fail("qp_sym requires n >= 1");
      return 0.0;
    case MixedKind::q2p_odd_sym:
      if (n < 0) detail::domain_fail("q2p_odd_sym requires n >= 0");
      return 0.0;
    case MixedKind::q2p2n_sym: {
      if (n < 0) detail::domain_fail("q2p2n_sym requires n >= 0");
      // -((2n-1)/2) (2n-1)!! / (2a)^{n-1} with a = 1 / (2<p^2>), in u/v units
      const auto m = static_cast<unsigned>(2 * n);
      const double df = std::exp(log_double_factorial_below(m));
      return -0.5 * (2.0 * n - 1.0) * df * std::pow(0.5 * s, n - 1.0);
    }
  }
  detail::domain_fail("unknown mixed moment kind");
}

double series_z(const MeasurementPoint& pt, int n_terms, TruncationPolicy policy) {
  validate(pt, n_terms);
  const Summation sum(n_terms, policy);
  const double s = pt.s;
  const double even = sum("z/even", 1, [&](unsigned n) {
    return sign(n) * scaled_moment(2 * n, s, 2.0 * n, 2 * n);
  });
  const double odd = sum("z/odd", 0, [&](unsigned n) {
    return sign(n) * scaled_moment(2 * n + 1, s, 2.0 * n + 1, 2 * n + 1);
  });
  return 1.0 + 0.5 * (1.0 - pt.a_w.norm2()) * even + pt.a_w.im * odd;
}

PointerStats series_moments(const MeasurementPoint& pt, int n_terms, TruncationPolicy policy) {
  validate(pt, n_terms);
  const Summation sum(n_terms, policy);
  const double s = pt.s;
  const double re = pt.a_w.re;
  const double im = pt.a_w.im;
  const double one_minus = 1.0 - pt.a_w.norm2();
  const double z = series_z(pt, n_terms, policy);

  auto mixed_q2 = [&](unsigned m) {
    return m % 2 == 0 ? mixed_gaussian_moment(MixedKind::q2p2n_sym, static_cast<int>(m / 2), s)
                      : mixed_gaussian_moment(MixedKind::q2p_odd_sym, static_cast<int>(m / 2), s);
  };
  auto mixed_q1 = [&](unsigned m) { return mixed_gaussian_moment(MixedKind::qp_sym, static_cast<int>(m), s); };

  // Z <u>'
  const double zu = gaussian_moment_p(1, s) +
                    0.5 * one_minus * sum("u/even", 1, [&](unsigned n) {
                      return sign(n) * scaled_moment(2 * n + 1, s, 2.0 * n, 2 * n);
                    }) +
                    im * sum("u/odd", 0, [&](unsigned n) {
                      return sign(n) * scaled_moment(2 * n + 2, s, 2.0 * n + 1, 2 * n + 1);
                    });

  // Z <v>'; the initial state has <v> = 0
  const double zv = re + im * mixed_q1(1) +
                    0.5 * im * sum("v/odd", 1, [&](unsigned n) {
                      return sign(n) * std::ldexp(1.0, 2 * static_cast<int>(n) + 1) /
                             std::tgamma(2.0 * n + 2.0) * mixed_q1(2 * n + 1);
                    }) +
                    0.25 * one_minus * sum("v/even", 1, [&](unsigned n) {
                      return sign(n) * std::ldexp(1.0, 2 * static_cast<int>(n)) /
                             std::tgamma(2.0 * n + 1.0) * mixed_q1(2 * n);
                    });

  // Z <u^2>'
  const double zu2 = gaussian_moment_p(2, s) +
                     0.5 * one_minus * sum("u2/even", 1, [&](unsigned n) {
                       return sign(n) * scaled_moment(2 * n + 2, s, 2.0 * n, 2 * n);
                     }) +
                     im * sum("u2/odd", 0, [&](unsigned n) {
                       return sign(n) * scaled_moment(2 * n + 3, s, 2.0 * n + 1, 2 * n + 1);
                     });

  // Z <v^2>'
  const double v2 = 1.0 / (2.0 * s);
  const double zv2 =
      v2 + im * mixed_q2(1) + 0.5 * (2.0 * pt.a_w.norm2() - one_minus * mixed_q2(2)) +
      0.25 * one_minus * sum("v2/even", 2, [&](unsigned n) {
        const double inner = mixed_q2(2 * n) + 0.5 * (2.0 * n) * (2.0 * n - 1.0) * gaussian_moment_p(2 * n - 2, s);
        return sign(n) * std::exp(2.0 * n * kLn2 - std::lgamma(2.0 * n + 1.0)) * inner;
      }) +
      0.5 * im * sum("v2/odd", 1, [&](unsigned n) {
        const double inner = mixed_q2(2 * n + 1) + 0.5 * (2.0 * n + 1) * (2.0 * n) * gaussian_moment_p(2 * n - 1, s);
        return sign(n) * std::exp((2.0 * n + 1) * kLn2 - std::lgamma(2.0 * n + 2.0)) * inner;
      });

  PointerStats out;
  out.z = z;
  out.mean_p = zu / z;
  out.mean_q = zv / z;
  out.var_p = zu2 / z - out.mean_p * out.mean_p;
  out.var_q = zv2 / z - out.mean_q * out.mean_q;
  return out;
}

double series_z_orthogonal(double s, int n_terms, TruncationPolicy policy) {
  detail::require_coupling(s);
  if (n_terms < 1) detail::domain_fail("n_terms must be at least 1");
  const Summation sum(n_terms, policy);
  const double u2 = gaussian_moment_p(2, s);
  // Only even n survive the Gaussian moments; the i^n phase becomes (-1)^{n/2}.
  const double tail = sum("z_o", 1, [&](unsigned m) {
    const unsigned n = 2 * m;
    double inner = 0.0;
    for (unsigned k = 0; k <= n; ++k) {
      const double binom = std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
      inner += sign(k) * binom * core::orthogonal_weak_value(n - k) * core::orthogonal_weak_value(k);
    }
    return sign(m) * scaled_moment(n + 2, s, 0.0, n) / u2 * inner;
  });
  return 1.0 + tail;
}

}  // namespace weakmeas::oracle
