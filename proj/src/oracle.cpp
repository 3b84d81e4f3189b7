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

#include "weakmeas/oracle.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string_view>

#include "weakmeas/errors.hpp"
#include "weakmeas/series.hpp"
#include "weakmeas/two_level.hpp"
#include "weakmeas/weak_core.hpp"

namespace weakmeas::oracle {
namespace {

constexpr double kPi = std::numbers::pi;

// FFTW's planner is not re-entrant; execution of a finished plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class Dft {
public:
  Dft(std::vector<Complex>& data, int sign) {
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    const std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf, sign, FFTW_ESTIMATE);
  }
  Dft(const Dft&) = delete;
  Dft& operator=(const Dft&) = delete;
  ~Dft() {
    const std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  void run() { fftw_execute(plan_); }

private:
  fftw_plan plan_;
};

// Both directions share the (-1)^j pre- and (-1)^k post-modulation; the
// overall phase e^{i N pi / 2} is 1 because N is a multiple of 4.
WaveGrid transform(const WaveGrid& wave, Space target, int sign) {
  const std::size_t n = wave.amplitudes.size();
  WaveGrid out;
  out.space = target;
  out.spec.points = n;
  out.spec.half_width = kPi / wave.spec.step();
  out.amplitudes = wave.amplitudes;
  for (std::size_t j = 1; j < n; j += 2) out.amplitudes[j] = -out.amplitudes[j];
  Dft dft(out.amplitudes, sign);
  dft.run();
  const double scale = wave.spec.step() / std::sqrt(2.0 * kPi);
  for (std::size_t k = 0; k < n; ++k) out.amplitudes[k] *= (k % 2 == 0 ? scale : -scale);
  return out;
}

double max_density_residual(const std::vector<double>& grid, const std::vector<double>& ref) {
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) worst = std::max(worst, residual(grid[i], ref[i]));
  return worst;
}

}  // namespace

GridSpec GridSpec::default_for(double s) {
  detail::require_coupling(s);
  return {36.0 * std::max(std::sqrt(s), 1.0), std::size_t{1} << 15};
}

void GridSpec::validate(double s) const {
  detail::require_coupling(s);
  if (points < 256 || !std::has_single_bit(points)) {
    throw ConfigurationError("grid points must be a power of two and at least 256");
  }
  if (!(half_width >= 12.0 * std::sqrt(0.5 * s))) {
    throw ConfigurationError("grid half-width must cover 12 standard deviations, sqrt(s/2) each");
  }
}

double WaveGrid::norm() const {
  return expectation(*this, [](double) { return 1.0; });
}

std::vector<double> WaveGrid::density() const {
  std::vector<double> out(amplitudes.size());
  std::transform(amplitudes.begin(), amplitudes.end(), out.begin(), [](const Complex& a) { return std::norm(a); });
  return out;
}

WaveGrid initial_wave(double s, const GridSpec& spec) {
  spec.validate(s);
  WaveGrid out;
  out.spec = spec;
  out.space = Space::momentum;
  out.amplitudes.resize(spec.points);
  const double amp = std::pow(kPi * s, -0.25);
  for (std::size_t j = 0; j < spec.points; ++j) {
    const double u = spec.abscissa(j);
    out.amplitudes[j] = amp * std::exp(-u * u / (2.0 * s));
  }
  return out;
}

PostSelection postselect_wave(const TwoLevelSetup& setup, double s, const WaveGrid& wave) {
  detail::require_coupling(s);
  validate_setup(setup);
  if (wave.space != Space::momentum) detail::domain_fail("post-selection acts on a momentum-space wave");
  const Complex c = overlap(setup);
  const Complex t = transition(setup);
  const Complex minus_i_t = Complex(0.0, -1.0) * t;

  PostSelection out{wave, 0.0};
  for (std::size_t j = 0; j < wave.amplitudes.size(); ++j) {
    const double u = wave.spec.abscissa(j);
    out.wave.amplitudes[j] = (c * std::cos(u) + minus_i_t * std::sin(u)) * wave.amplitudes[j];
  }
  out.probability = out.wave.norm();
  if (!(out.probability >= 1e-300)) {
    throw DegenerateSetupError("post-selection probability vanishes; no detector state survives");
  }
  const double inv = 1.0 / std::sqrt(out.probability);
  for (auto& a : out.wave.amplitudes) a *= inv;
  return out;
}

WaveGrid to_position_space(const WaveGrid& wave) {
  if (wave.space != Space::momentum) detail::domain_fail("wave is already in position space");
  return transform(wave, Space::position, FFTW_BACKWARD);
}

WaveGrid to_momentum_space(const WaveGrid& wave) {
  if (wave.space != Space::position) detail::domain_fail("wave is already in momentum space");
  return transform(wave, Space::momentum, FFTW_FORWARD);
}

TwoLevelSetup canonical_orthogonal_setup() {
  TwoLevelSetup out;
  out.pre = {Complex(1.0), Complex(0.0)};
  out.post = {Complex(0.0), Complex(1.0)};
  out.observable = {{{Complex(0.0), Complex(1.0)}, {Complex(1.0), Complex(0.0)}}};
  return out;
}

double residual(double oracle, double reference) noexcept {
  return std::abs(oracle - reference) / std::max(std::abs(reference), 1e-2);
}

bool is_informational(const std::string& key) {
  constexpr std::string_view suffix = "_paper";
  return key.size() >= suffix.size() && key.compare(key.size() - suffix.size(), suffix.size(), suffix) == 0;
}

OracleReport oracle_report(const TwoLevelSetup& setup, double s, const GridSpec& spec) {
  const WaveGrid phi = initial_wave(s, spec);
  const PostSelection post = postselect_wave(setup, s, phi);
  const WaveGrid pos = to_position_space(post.wave);

  OracleReport rep;
  rep.post_selection_probability = post.probability;
  rep.mean_u = expectation(post.wave, [](double u) { return u; });
  rep.var_u = expectation(post.wave, [&](double u) { return (u - rep.mean_u) * (u - rep.mean_u); });
  rep.mean_v = expectation(pos, [](double v) { return v; });
  rep.var_v = expectation(pos, [&](double v) { return (v - rep.mean_v) * (v - rep.mean_v); });
  rep.density_u = post.wave.density();
  rep.density_v = pos.density();
  rep.abscissa_u.resize(spec.points);
  rep.abscissa_v.resize(spec.points);
  for (std::size_t i = 0; i < spec.points; ++i) {
    rep.abscissa_u[i] = post.wave.spec.abscissa(i);
    rep.abscissa_v[i] = pos.spec.abscissa(i);
  }

  const Complex c = overlap(setup);
  const Complex t = transition(setup);
  auto& res = rep.residuals_vs_closed_form;
  std::vector<double> ref_u(spec.points);
  std::vector<double> ref_v(spec.points);

  if (std::norm(c) >= 1e-12) {
    const MeasurementPoint pt{s, WeakValue::from(t / c)};
    const PointerStats cf = core::moments_nonorthogonal(pt);
    res["z"] = residual(post.probability / std::norm(c), cf.z);
    res["mean_q"] = residual(rep.mean_v, cf.mean_q);
    res["mean_p"] = residual(rep.mean_u, cf.mean_p);
    res["var_q"] = residual(rep.var_v, cf.var_q);
    res["var_p"] = residual(rep.var_u, cf.var_p);
    for (std::size_t i = 0; i < spec.points; ++i) {
      ref_u[i] = core::density_p_nonorthogonal(pt, rep.abscissa_u[i]);
      ref_v[i] = core::density_q_nonorthogonal(pt, rep.abscissa_v[i]);
    }
    res["density_p"] = max_density_residual(rep.density_u, ref_u);
    res["density_q"] = max_density_residual(rep.density_v, ref_v);
    return rep;
  }

  rep.orthogonal = true;
  const double z_o = post.probability / (0.5 * s * std::norm(t));
  res["z_o_series"] = residual(z_o, series_z_orthogonal(s, 40));
  res["z_o_paper"] = residual(z_o, core::z_orthogonal_paper(s));
  res["mean_q"] = residual(rep.mean_v, 0.0);
  res["mean_p"] = residual(rep.mean_u, 0.0);
  res["var_p_paper"] = residual(rep.var_u, core::var_p_orthogonal_paper(s));
  res["var_q_paper"] = residual(rep.var_v, core::var_q_orthogonal_paper(s));
  for (auto variant : {core::DensityVariant::oracle_normalized, core::DensityVariant::paper}) {
    for (std::size_t i = 0; i < spec.points; ++i) {
      ref_u[i] = core::density_p_orthogonal(s, rep.abscissa_u[i], variant);
      ref_v[i] = core::density_q_orthogonal(s, rep.abscissa_v[i], variant);
    }
    const bool paper = variant == core::DensityVariant::paper;
    res[paper ? "density_p_paper" : "density_p_normalized"] = max_density_residual(rep.density_u, ref_u);
    res[paper ? "density_q_paper" : "density_q_normalized"] = max_density_residual(rep.density_v, ref_v);
  }
  return rep;
}

}  // namespace weakmeas::oracle
