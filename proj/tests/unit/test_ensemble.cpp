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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "weakmeas/ensemble.hpp"
#include "weakmeas/errors.hpp"
#include "weakmeas/optimize.hpp"

using namespace weakmeas;
using namespace weakmeas::ensemble;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kKs1Percent = 1.6276;

double mean_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

double ks_statistic(std::vector<double> draws, const SampledCurve& curve) {
  std::sort(draws.begin(), draws.end());
  const double n = static_cast<double>(draws.size());
  double d = 0.0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const double f = curve.cdf_at(draws[i]);
    d = std::max({d, std::abs((i + 1) / n - f), std::abs(f - i / n)});
  }
  return d;
}

std::shared_ptr<const SampledCurve> gaussian() {
  return tabulate([](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2 * kPi); }, -12.0, 12.0, 8193);
}
}  // namespace

TEST_CASE("stream seeds are deterministic and distinct") {
  CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
  CHECK(stream_seed(7, 0) != stream_seed(7, 1));
  CHECK(stream_seed(7, 0) != stream_seed(8, 0));
  const auto curve = gaussian();
  const auto a = sample_density(curve, 1000, 42);
  const auto b = sample_density(curve, 1000, 42);
  const auto c = sample_density(curve, 1000, 43);
  CHECK(a.draws == b.draws);
  CHECK(a.draws != c.draws);
  CHECK(a.seed == 42);
  CHECK(a.source_curve == curve);
}

TEST_CASE("curve validation") {
  CHECK_THROWS_AS((void)tabulate([](double) { return 1.0; }, 0.0, 2.0, 101), DomainError);
  CHECK_THROWS_AS((void)tabulate([](double x) { return x; }, -1.0, 1.0 + 1e-9, 101), DomainError);
  CHECK_NOTHROW((void)tabulate([](double) { return 0.5; }, 0.0, 2.0, 101));
  CHECK_THROWS_AS((void)sample_density(gaussian(), 0, 1), DomainError);
}

TEST_CASE("gaussian sampling is unbiased") {
  const std::size_t n = 100000;
  const auto batch = sample_density(gaussian(), n, 2026);
  CHECK(std::abs(mean_of(batch.draws)) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(ks_statistic(batch.draws, *batch.source_curve) < kKs1Percent / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("setup densities: tabulated moments and KS") {
  const std::size_t n = 100000;
  const auto aav = aav_curve({1.0, 3 * kPi / 4});
  CHECK(aav->mean == doctest::Approx(0.9557176620136972).epsilon(1e-6));
  const auto batch = sample_density(aav, n, 11);
  const double sd = aav->stddev / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(mean_of(batch.draws) - 0.9557176620136972) < 4.0 * sd);
  CHECK(ks_statistic(batch.draws, *aav) < kKs1Percent / std::sqrt(static_cast<double>(n)));

  for (double s : {0.1, 1.0, 10.0}) {
    for (double ang : {0.3, 2.0, 2.8}) {
      const auto a = aav_curve({s, ang});
      const auto d = dsjh_curve({s, ang});
      const auto ca = setups::aav_closed_forms({s, ang});
      const auto cd = setups::dsjh_closed_forms({s, ang});
      INFO("s=" << s << " angle=" << ang);
      CHECK(std::abs(a->mean - ca.mean_pz) < 1e-6 * std::max(1.0, std::abs(ca.mean_pz)));
      CHECK(std::abs(d->mean - cd.mean_kx) < 1e-6 * std::max(1.0, std::abs(cd.mean_kx)));
      const auto ba = sample_density(a, n, 100 + static_cast<std::uint64_t>(10 * s));
      const auto bd = sample_density(d, n, 200 + static_cast<std::uint64_t>(10 * s));
      CHECK(ks_statistic(ba.draws, *a) < kKs1Percent / std::sqrt(static_cast<double>(n)));
      CHECK(ks_statistic(bd.draws, *d) < kKs1Percent / std::sqrt(static_cast<double>(n)));
    }
  }
}

TEST_CASE("sqrt(N) scaling") {
  const std::vector<std::size_t> ns{1, 10, 100, 1000, 10000};
  const auto opt = optimize::aav_optimal_snr(1.0);
  const auto t = snr_scaling(aav_curve({1.0, opt.angle}), ns, 400, 5);
  REQUIRE(t.rows.size() == ns.size());
  CHECK_FALSE(t.zero_signal);
  CHECK(t.slope >= 0.45);
  CHECK(t.slope <= 0.55);
  CHECK(t.single_shot_snr == doctest::Approx(opt.objective_value).epsilon(1e-5));
  CHECK(t.rows.front().snr == doctest::Approx(t.single_shot_snr).epsilon(0.1));

  const auto g = optimize::dsjh_global_max();
  const auto d = snr_scaling(dsjh_curve({g.s_m, g.phi_m}), {10000}, 4000, 9);
  CHECK(d.rows.back().snr == doctest::Approx(60.0).epsilon(0.10));
  CHECK(d.rows.back().snr == doctest::Approx(100.0 * d.single_shot_snr).epsilon(0.05));

  CHECK(snr_scaling(dsjh_curve({1.0, kPi}), ns, 50, 1).zero_signal);
  CHECK_THROWS_AS((void)snr_scaling(aav_curve({1.0, 1.0}), {10, 1}, 50, 1), DomainError);
  CHECK_THROWS_AS((void)snr_scaling(aav_curve({1.0, 1.0}), ns, 29, 1), DomainError);
}
