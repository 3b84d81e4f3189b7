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

#include "weakmeas/hermite.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "weakmeas/errors.hpp"

namespace weakmeas::oracle {
namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

double binomial(unsigned n, unsigned k) {
  double out = 1.0;
  for (unsigned i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

double double_factorial_odd(int m) {  // (m)!! for odd m, with (-1)!! = 1
  double out = 1.0;
  for (int i = m; i > 1; i -= 2) out *= i;
  return out;
}

double relative(double lhs, double rhs, double scale) {
  return std::abs(lhs - rhs) / std::max(1.0, scale);
}

struct MaxTracker {
  std::map<std::string, double> values;
  void update(const std::string& key, double r) {
    auto [it, inserted] = values.try_emplace(key, r);
    if (!inserted) it->second = std::max(it->second, r);
  }
};

// cosh(t x) or sinh(t x) against e^{t^2/2} sum He_m(x) t^m / m! over even or
// odd m. Truncated once two consecutive terms fall below 1e-14 of the sum.
double generating_residual(double t, double x, bool odd) {
  double sum = 0.0;
  double scale = 0.0;
  int small = 0;
  double t_pow_over_fact = odd ? t : 1.0;
  for (unsigned m = odd ? 1 : 0; m <= kHermiteMaxOrder; m += 2) {
    if (m >= 2) t_pow_over_fact *= t * t / (static_cast<double>(m) * (m - 1));
    const double term = hermite(m, x) * t_pow_over_fact;
    sum += term;
    scale += std::abs(term);
    small = std::abs(term) < 1e-14 * std::abs(sum) ? small + 1 : 0;
    if (small >= 2) break;
  }
  const double weight = std::exp(0.5 * t * t);
  const double rhs = weight * sum;
  const double lhs = odd ? std::sinh(t * x) : std::cosh(t * x);
  return relative(lhs, rhs, weight * scale);
}

}  // namespace

double hermite(unsigned n, double x) {
  if (n > kHermiteMaxOrder) {
    detail::domain_fail("Hermite order " + std::to_string(n) + " exceeds the ceiling of 64");
  }
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (unsigned k = 1; k < n; ++k) {
    const double next = x * cur - k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::map<std::string, double> hermite_identity_residuals(unsigned k_max,
                                                         std::span<const double> xs) {
  if (k_max > 12) detail::domain_fail("k_max must not exceed 12");
  MaxTracker out;
  for (const char* key : {"parity_even", "parity_odd", "zero_even", "zero_odd", "sum_rule",
                          "sum_even_even", "sum_odd_odd", "sum_odd_even", "sum_even_odd",
                          "generating_cosh", "generating_sinh"}) {
    out.values[key] = 0.0;
  }

  for (unsigned k = 0; k <= k_max; ++k) {
    const double even_zero = (k % 2 == 0 ? 1.0 : -1.0) * double_factorial_odd(2 * static_cast<int>(k) - 1);
    out.update("zero_even", relative(hermite(2 * k, 0.0), even_zero, std::abs(even_zero)));
    out.update("zero_odd", std::abs(hermite(2 * k + 1, 0.0)));
  }

  for (const double x : xs) {
    const double r2x = kSqrt2 * x;
    for (unsigned k = 0; k <= k_max; ++k) {
      const double he = hermite(2 * k, x);
      const double ho = hermite(2 * k + 1, x);
      out.update("parity_even", relative(hermite(2 * k, -x), he, std::abs(he)));
      out.update("parity_odd", relative(hermite(2 * k + 1, -x), -ho, std::abs(ho)));

      const double df = (k % 2 == 0 ? 1.0 : -1.0) * double_factorial_odd(2 * static_cast<int>(k) - 1);
      const double h2k_2x = hermite(2 * k, 2.0 * x);
      const double h2k1_2x = hermite(2 * k + 1, 2.0 * x);

      if (k >= 1) {
        double lhs = 0.0;
        double scale = 0.0;
        for (unsigned r = 0; r <= k; ++r) {
          const double term = binomial(2 * k, 2 * r) * hermite(2 * k - 2 * r, r2x) * hermite(2 * r, r2x);
          lhs += term;
          scale += std::abs(term);
        }
        const double rhs = std::ldexp(h2k_2x + df, static_cast<int>(k) - 1);
        out.update("sum_even_even", relative(lhs, rhs, scale + std::abs(rhs)));

        lhs = 0.0;
        scale = 0.0;
        for (unsigned r = 0; r + 1 <= k; ++r) {
          const double term =
              binomial(2 * k, 2 * r + 1) * hermite(2 * k - 2 * r - 1, r2x) * hermite(2 * r + 1, r2x);
          lhs += term;
          scale += std::abs(term);
        }
        const double rhs_odd = std::ldexp(h2k_2x - df, static_cast<int>(k) - 1);
        out.update("sum_odd_odd", relative(lhs, rhs_odd, scale + std::abs(rhs_odd)));
      }

      const double rhs_half = std::pow(2.0, static_cast<double>(k) - 0.5) * h2k1_2x;
      double lhs = 0.0;
      double scale = 0.0;
      for (unsigned r = 0; r <= k; ++r) {
        const double term = binomial(2 * k + 1, 2 * r) * hermite(2 * k + 1 - 2 * r, r2x) * hermite(2 * r, r2x);
        lhs += term;
        scale += std::abs(term);
      }
      out.update("sum_odd_even", relative(lhs, rhs_half, scale + std::abs(rhs_half)));

      lhs = 0.0;
      scale = 0.0;
      for (unsigned r = 0; r <= k; ++r) {
        const double term = binomial(2 * k + 1, 2 * r + 1) * hermite(2 * k - 2 * r, r2x) * hermite(2 * r + 1, r2x);
        lhs += term;
        scale += std::abs(term);
      }
      out.update("sum_even_odd", relative(lhs, rhs_half, scale + std::abs(rhs_half)));
    }

    // Sum rule He_n(x + y) = 2^{-n/2} sum C(n,r) He_{n-r}(sqrt2 x) He_r(sqrt2 y),
    // checked against every y in xs, including y = -x.
    for (const double y : xs) {
      for (unsigned n = 0; n <= 2 * k_max + 1; ++n) {
        double acc = 0.0;
        double scale = 0.0;
        for (unsigned r = 0; r <= n; ++r) {
          const double term = binomial(n, r) * hermite(n - r, r2x) * hermite(r, kSqrt2 * y);
          acc += term;
          scale += std::abs(term);
        }
        const double factor = std::pow(2.0, -0.5 * n);
        out.update("sum_rule", relative(hermite(n, x + y), factor * acc, factor * scale));
      }
    }

    for (const double t : {0.25, 0.5, 1.0, 2.0}) {
      out.update("generating_cosh", generating_residual(t, x, false));
      out.update("generating_sinh", generating_residual(t, x, true));
    }
  }
  return out.values;
}

}  // namespace weakmeas::oracle
