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

#include "weakmeas/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "weakmeas/errors.hpp"

namespace weakmeas::ensemble {
namespace {

double uniform(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

double draw(const SampledCurve& c, double u) {
  const auto it = std::upper_bound(c.cdf.begin(), c.cdf.end(), u);
  const std::size_t hi = std::clamp<std::size_t>(static_cast<std::size_t>(it - c.cdf.begin()), 1, c.cdf.size() - 1);
  const std::size_t lo = hi - 1;
  const double span = c.cdf[hi] - c.cdf[lo];
  const double frac = span > 0.0 ? (u - c.cdf[lo]) / span : 0.0;
  return c.x[lo] + frac * (c.x[hi] - c.x[lo]);
}

}  // namespace

double SampledCurve::cdf_at(double t) const {
  if (t <= x.front()) return 0.0;
  if (t >= x.back()) return 1.0;
  const auto it = std::upper_bound(x.begin(), x.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - x.begin());
  const std::size_t lo = hi - 1;
  const double frac = (t - x[lo]) / (x[hi] - x[lo]);
  return cdf[lo] + frac * (cdf[hi] - cdf[lo]);
}

std::shared_ptr<const SampledCurve> make_curve(std::vector<double> x, std::vector<double> density) {
  if (x.size() < 2 || x.size() != density.size()) detail::domain_fail("curve needs matching abscissa and density");
  auto c = std::make_shared<SampledCurve>();
  c->cdf.assign(x.size(), 0.0);
  double m1 = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    detail::require_finite(x[i], "abscissa");
    detail::require_finite(density[i], "density");
    if (density[i] < 0.0) detail::domain_fail("density must be non-negative");
    if (i == 0) continue;
    if (!(x[i] > x[i - 1])) detail::domain_fail("abscissa must be strictly ascending");
    const double h = x[i] - x[i - 1];
    c->cdf[i] = c->cdf[i - 1] + 0.5 * h * (density[i] + density[i - 1]);
    m1 += 0.5 * h * (x[i] * density[i] + x[i - 1] * density[i - 1]);
    m2 += 0.5 * h * (x[i] * x[i] * density[i] + x[i - 1] * x[i - 1] * density[i - 1]);
  }
  const double total = c->cdf.back();
  if (std::abs(total - 1.0) > 1e-6) detail::domain_fail("density does not integrate to 1 within 1e-6");
  for (double& v : c->cdf) v /= total;
  c->mean = m1 / total;
  c->stddev = std::sqrt(std::max(m2 / total - c->mean * c->mean, 0.0));
  c->x = std::move(x);
  c->density = std::move(density);
  return c;
}

std::shared_ptr<const SampledCurve> tabulate(const std::function<double(double)>& f, double lo, double hi, int n) {
  if (n < 2 || !(hi > lo)) detail::domain_fail("tabulation needs n >= 2 and lo < hi");
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> d(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    x[i] = lo + (hi - lo) * i / (n - 1);
    d[i] = f(x[i]);
  }
  return make_curve(std::move(x), std::move(d));
}

std::shared_ptr<const SampledCurve> aav_curve(const setups::AavPoint& pt, int n) {
  // two lobes at +-1, each of width 1/sqrt(2s)
  const double reach = 1.0 + 14.0 / std::sqrt(2.0 * pt.s);
  return tabulate([&](double x) { return setups::aav_density(pt, x); }, -reach, reach, n);
}

std::shared_ptr<const SampledCurve> dsjh_curve(const setups::DsjhPoint& pt, int n) {
  const double reach = 14.0 * std::sqrt(0.5 * pt.s);
  return tabulate([&](double kx) { return setups::dsjh_density(pt, kx); }, -reach, reach, n);
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(seed + (stream + 1) * 0x9E3779B97F4A7C15ULL);
}

SampleBatch sample_density(std::shared_ptr<const SampledCurve> curve, std::size_t n, std::uint64_t seed) {
  if (!curve) detail::domain_fail("no curve to sample");
  if (n < 1) detail::domain_fail("sample size must be at least 1");
  std::mt19937_64 gen(stream_seed(seed, 0));
  SampleBatch out;
  out.seed = seed;
  out.draws.resize(n);
  for (auto& d : out.draws) d = draw(*curve, uniform(gen));
  out.source_curve = std::move(curve);
  return out;
}

ScalingTable snr_scaling(std::shared_ptr<const SampledCurve> curve, const std::vector<std::size_t>& n_values,
                         int trials, std::uint64_t seed) {
  if (!curve) detail::domain_fail("no curve to sample");
  if (trials < 30) detail::domain_fail("at least 30 trials are required");
  if (n_values.empty() || n_values.front() < 1 || !std::is_sorted(n_values.begin(), n_values.end()) ||
      std::adjacent_find(n_values.begin(), n_values.end()) != n_values.end()) {
    detail::domain_fail("n_values must be strictly ascending and positive");
  }

  ScalingTable table;
  table.single_shot_snr = std::abs(curve->mean) / curve->stddev;
  table.zero_signal = std::abs(curve->mean) <= 1e-9 * curve->stddev;

  std::vector<double> means(static_cast<std::size_t>(trials));
  for (std::size_t j = 0; j < n_values.size(); ++j) {
    const std::size_t n = n_values[j];
    for (int t = 0; t < trials; ++t) {
      std::mt19937_64 gen(stream_seed(seed, j * static_cast<std::uint64_t>(trials) + static_cast<std::uint64_t>(t)));
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += draw(*curve, uniform(gen));
      means[static_cast<std::size_t>(t)] = acc / static_cast<double>(n);
    }
    double mu = 0.0;
    for (double m : means) mu += m;
    mu /= trials;
    double var = 0.0;
    for (double m : means) var += (m - mu) * (m - mu);
    var /= trials - 1;
    const double sd = std::sqrt(var);
    table.rows.push_back({n, mu, sd, std::abs(mu) / sd});
  }

  if (table.rows.size() >= 2 && !table.zero_signal) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double k = static_cast<double>(table.rows.size());
    for (const auto& r : table.rows) {
      const double lx = std::log(static_cast<double>(r.n));
      const double ly = std::log(r.snr);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    table.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    table.intercept = (sy - table.slope * sx) / k;
  } else {
    table.slope = std::nan("");
    table.intercept = std::nan("");
  }
  return table;
}

}  // namespace weakmeas::ensemble
