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

#include "weakmeas/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "weakmeas/ensemble.hpp"
#include "weakmeas/errors.hpp"
#include "weakmeas/optimize.hpp"
#include "weakmeas/oracle.hpp"
#include "weakmeas/series.hpp"
#include "weakmeas/setups.hpp"
#include "weakmeas/weak_core.hpp"

namespace weakmeas::cli {
namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kPi = std::numbers::pi;

struct Config {
  std::string setup = "aav";
  double s = 1.0;
  double angle = 0.0;
  bool angle_given = false;
  double re = 0.0;
  double im = 0.0;
  bool degrees = false;

  double s_min = 0.1;
  double s_max = 10.0;
  int s_steps = 20;
  double angle_min = 0.1;
  double angle_max = 3.0;
  int angle_steps = 30;

  std::string space;
  double x_min = std::nan("");
  double x_max = std::nan("");
  int points = 2001;

  std::string kind = "expectation";

  std::size_t grid_points = 0;
  double grid_half_width = 0.0;
  double tolerance = 1e-8;

  std::vector<double> s_values{0.1, 0.5, 1.0, 2.0, 5.0};
  std::vector<std::size_t> n_values{1, 10, 100, 1000, 10000};
  int trials = 400;
  std::uint64_t seed = 1;

  int figure = 0;
  int resolution = 60;

  [[nodiscard]] double radians(double a) const { return degrees ? a * kPi / 180.0 : a; }
};

std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps < 1) throw ConfigurationError("step counts must be positive");
  if (steps == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (steps - 1);
  return out;
}

// Midpoints of `cells` equal cells covering (lo, hi).
std::vector<double> cell_centres(double lo, double hi, int cells) {
  if (cells < 1) throw ConfigurationError("resolution must be positive");
  std::vector<double> out(static_cast<std::size_t>(cells));
  for (int i = 0; i < cells; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * (i + 0.5) / cells;
  return out;
}

TwoLevelSetup build_setup(const Config& cfg) {
  if (cfg.setup == "aav") return setups::aav_setup(cfg.radians(cfg.angle));
  if (cfg.setup == "dsjh") return setups::dsjh_setup(cfg.radians(cfg.angle));
  return setups::custom_setup({cfg.re, cfg.im});
}

void require_named_setup(const Config& cfg, const char* command) {
  if (cfg.setup == "custom") throw ConfigurationError(std::string(command) + " needs --setup aav or dsjh");
}

// ---- stats / scan ----------------------------------------------------------

const std::vector<std::string> kScanHeader{"s", "angle", "z", "mean", "var_pointer", "var_conjugate", "snr"};

std::vector<Cell> scan_row(const std::string& setup, double s, double angle) {
  if (setup == "aav") {
    const auto st = setups::aav_closed_forms({s, angle});
    return {s, angle, st.z, st.mean_pz, st.delta_pz_sq, st.delta_z_sq, st.snr};
  }
  const auto st = setups::dsjh_closed_forms({s, angle});
  return {s, angle, st.z, st.mean_kx, st.delta_x_sq, st.delta_p_sq, st.snr};
}

std::string quantity_note(const std::string& setup) {
  return setup == "aav" ? "mean = <p_z>'/g, var_pointer = (dp_z/g)^2, var_conjugate = g^2 (dz)^2"
                        : "mean = k<x>', var_pointer = k^2 (dx)^2, var_conjugate = (dp/k)^2";
}

Table stats_table(const Config& cfg) {
  Table t;
  t.metadata.push_back("setup: " + cfg.setup);
  if (cfg.setup == "custom") {
    const auto st = core::moments_nonorthogonal({cfg.s, {cfg.re, cfg.im}});
    t.metadata.push_back("units: mean_q, var_q in q/g; mean_p, var_p in g p");
    t.header = {"s", "re_aw", "im_aw", "z", "mean_q", "mean_p", "var_q", "var_p"};
    t.rows.push_back({cfg.s, cfg.re, cfg.im, st.z, st.mean_q, st.mean_p, st.var_q, st.var_p});
    return t;
  }
  t.metadata.push_back(quantity_note(cfg.setup));
  t.header = kScanHeader;
  t.rows.push_back(scan_row(cfg.setup, cfg.s, cfg.radians(cfg.angle)));
  return t;
}

Table scan_table(const Config& cfg) {
  require_named_setup(cfg, "scan");
  Table t;
  t.metadata.push_back("setup: " + cfg.setup);
  t.metadata.push_back(quantity_note(cfg.setup));
  t.header = kScanHeader;
  for (double s : linspace(cfg.s_min, cfg.s_max, cfg.s_steps)) {
    for (double a : linspace(cfg.radians(cfg.angle_min), cfg.radians(cfg.angle_max), cfg.angle_steps)) {
      t.rows.push_back(scan_row(cfg.setup, s, a));
    }
  }
  return t;
}

// ---- density ---------------------------------------------------------------

Table density_table(const Config& cfg) {
  const std::string space = cfg.space.empty() ? (cfg.setup == "dsjh" ? "p" : "q") : cfg.space;
  detail::require_coupling(cfg.s);
  const double s = cfg.s;
  const auto wv = setups::weak_value_of(build_setup(cfg));
  const bool momentum = space == "p";
  const double reach = momentum ? 14.0 * std::sqrt(s / 2.0) : 1.0 + 14.0 / std::sqrt(2.0 * s);
  const double lo = std::isnan(cfg.x_min) ? -reach : cfg.x_min;
  const double hi = std::isnan(cfg.x_max) ? reach : cfg.x_max;
  if (!(hi > lo)) throw ConfigurationError("density range needs min < max");
  if (cfg.points < 2) throw ConfigurationError("density needs at least 2 points");

  Table t;
  t.metadata.push_back("setup: " + cfg.setup);
  t.metadata.push_back(momentum ? "abscissa: u = g p" : "abscissa: v = q / g");
  if (wv.orthogonal()) t.metadata.push_back("orthogonal pre/post-selection: unit-normalized density");
  t.header = {"abscissa", "initial", "post_selected"};
  for (double x : linspace(lo, hi, cfg.points)) {
    double post = 0.0;
    if (wv.orthogonal()) {
      post = momentum ? core::density_p_orthogonal(s, x, core::DensityVariant::oracle_normalized)
                      : core::density_q_orthogonal(s, x, core::DensityVariant::oracle_normalized);
    } else {
      const MeasurementPoint pt{s, *wv.a_w};
      post = momentum ? core::density_p_nonorthogonal(pt, x) : core::density_q_nonorthogonal(pt, x);
    }
    const double init = momentum ? core::initial_density_p(s, x) : core::initial_density_q(s, x);
    t.rows.push_back({x, init, post});
  }
  return t;
}

// ---- optimal ---------------------------------------------------------------

Table optimal_table(const Config& cfg) {
  require_named_setup(cfg, "optimal");
  Table t;
  t.metadata.push_back("setup: " + cfg.setup);
  t.metadata.push_back("kind: " + cfg.kind);
  if (cfg.kind == "max") {
    if (cfg.setup != "dsjh") throw DomainError("kind max is defined for the dsjh setup only");
    const auto g = optimize::dsjh_global_max();
    t.header = {"s_m", "phi_m", "value", "residual"};
    t.rows.push_back({g.s_m, g.phi_m, g.value, g.residual});
    return t;
  }
  optimize::OptimalPoint (*fn)(double) = nullptr;
  if (cfg.setup == "aav") {
    fn = cfg.kind == "expectation" ? optimize::aav_optimal_expectation
         : cfg.kind == "snr"       ? optimize::aav_optimal_snr
                                   : optimize::aav_wu_li_optimal;
  } else {
    if (cfg.kind == "first-order") throw DomainError("kind first-order is defined for the aav setup only");
    fn = cfg.kind == "expectation" ? optimize::dsjh_optimal_expectation : optimize::dsjh_optimal_snr;
  }
  for (double s : linspace(cfg.s_min, cfg.s_max, cfg.s_steps)) {
    const auto p = fn(s);
    if (t.header.empty()) {
      t.header = {"s", "angle", "objective"};
      for (const auto& [key, _] : p.companion_stats) t.header.push_back(key);
    }
    std::vector<Cell> row{p.s, p.angle, p.objective_value};
    for (const auto& [_, value] : p.companion_stats) row.emplace_back(value);
    t.rows.push_back(std::move(row));
  }
  return t;
}

// ---- oracle-check ----------------------------------------------------------

struct Checked {
  Table table;
  bool violated = false;
};

Checked oracle_check_table(const Config& cfg) {
  detail::require_coupling(cfg.s);
  const auto setup = build_setup(cfg);
  auto spec = oracle::GridSpec::default_for(cfg.s);
  if (cfg.grid_points != 0) spec.points = cfg.grid_points;
  if (cfg.grid_half_width != 0.0) spec.half_width = cfg.grid_half_width;
  spec.validate(cfg.s);

  Checked out;
  Table& t = out.table;
  t.metadata.push_back("setup: " + cfg.setup);
  t.metadata.push_back("grid: points=" + std::to_string(spec.points) + " half_width=" + format_number(spec.half_width));
  t.metadata.push_back("residual: |x - ref| / max(|ref|, 1e-2)");
  t.header = {"source", "key", "residual", "tolerance", "status"};

  const auto add = [&](const std::string& source, const std::string& key, double r, double tol, bool info) {
    std::string status = "info";
    if (!info) {
      status = r <= tol ? "pass" : "fail";
      out.violated = out.violated || !(r <= tol);
    }
    t.rows.push_back({source, key, r, tol, status});
  };

  const auto rep = oracle::oracle_report(setup, cfg.s, spec);
  for (const auto& [key, r] : rep.residuals_vs_closed_form) {
    add("grid_oracle", key, r, cfg.tolerance, oracle::is_informational(key));
  }

  const auto wv = setups::weak_value_of(setup);
  if (!wv.orthogonal() && cfg.s <= 5.0) {
    const MeasurementPoint pt{cfg.s, *wv.a_w};
    const auto cf = core::moments_nonorthogonal(pt);
    const auto sr = oracle::series_moments(pt, 60);
    constexpr double kSeriesTol = 1e-10;
    add("series", "z", oracle::residual(sr.z, cf.z), kSeriesTol, false);
    add("series", "mean_q", oracle::residual(sr.mean_q, cf.mean_q), kSeriesTol, false);
    add("series", "mean_p", oracle::residual(sr.mean_p, cf.mean_p), kSeriesTol, false);
    add("series", "var_q", oracle::residual(sr.var_q, cf.var_q), kSeriesTol, false);
    add("series", "var_p", oracle::residual(sr.var_p, cf.var_p), kSeriesTol, false);
  } else if (!wv.orthogonal()) {
    t.metadata.push_back("series: skipped for s > 5");
  }
  return out;
}

// ---- errata ----------------------------------------------------------------

double trapezoid(const std::function<double(double)>& f, double lo, double hi, int n) {
  const double h = (hi - lo) / (n - 1);
  double sum = 0.5 * (f(lo) + f(hi));
  for (int i = 1; i < n - 1; ++i) sum += f(lo + i * h);
  return sum * h;
}

Table errata_table(const Config& cfg) {
  Table t;
  t.metadata.push_back("orthogonal pre/post-selection, A^2 = 1");
  t.metadata.push_back("*_paper columns evaluate the reference closed forms; a consistent density integral is 1");
  t.header = {"s",
              "z_o_series",
              "z_o_paper",
              "z_o_paper_residual",
              "z_o_series_vs_oracle",
              "var_p_oracle",
              "var_p_paper",
              "var_q_oracle",
              "var_q_paper",
              "density_p_paper_integral",
              "density_q_paper_integral",
              "density_p_normalized_vs_oracle",
              "density_q_normalized_vs_oracle"};
  for (double s : cfg.s_values) {
    detail::require_coupling(s);
    const auto st = core::moments_orthogonal(s);
    const auto rep = oracle::oracle_report(oracle::canonical_orthogonal_setup(), s, oracle::GridSpec::default_for(s));
    const double ru = 14.0 * std::sqrt(s / 2.0);
    const double rv = 1.0 + 14.0 / std::sqrt(2.0 * s);
    const double ip = trapezoid(
        [&](double u) { return core::density_p_orthogonal(s, u, core::DensityVariant::paper); }, -ru, ru, 20001);
    const double iq = trapezoid(
        [&](double v) { return core::density_q_orthogonal(s, v, core::DensityVariant::paper); }, -rv, rv, 20001);
    const auto& r = rep.residuals_vs_closed_form;
    t.rows.push_back({s, st.z_o_series, st.z_o_paper, oracle::residual(st.z_o_paper, st.z_o_series),
                      r.at("z_o_series"), st.var_p_oracle_ref, st.var_p_paper, st.var_q_oracle_ref, st.var_q_paper, ip,
                      iq, r.at("density_p_normalized"), r.at("density_q_normalized")});
  }
  return t;
}

// ---- ensemble --------------------------------------------------------------

Table ensemble_table(const Config& cfg) {
  require_named_setup(cfg, "ensemble");
  detail::require_coupling(cfg.s);
  const bool aav = cfg.setup == "aav";
  double angle = cfg.radians(cfg.angle);
  if (!cfg.angle_given) angle = aav ? optimize::aav_optimal_snr(cfg.s).angle : optimize::dsjh_optimal_snr(cfg.s).angle;
  const auto curve = aav ? ensemble::aav_curve({cfg.s, angle}) : ensemble::dsjh_curve({cfg.s, angle});
  const auto res = ensemble::snr_scaling(curve, cfg.n_values, cfg.trials, cfg.seed);

  Table t;
  t.metadata.push_back("setup: " + cfg.setup);
  t.metadata.push_back("s: " + format_number(cfg.s) + " angle: " + format_number(angle));
  t.metadata.push_back("trials: " + std::to_string(cfg.trials) + " seed: " + std::to_string(cfg.seed));
  t.metadata.push_back("single_shot_snr: " + format_number(res.single_shot_snr));
  t.metadata.push_back("slope: " + format_number(res.slope) + " intercept: " + format_number(res.intercept));
  t.metadata.push_back(std::string("zero_signal: ") + (res.zero_signal ? "true" : "false"));
  t.header = {"n", "mean_of_means", "std_of_means", "snr"};
  for (const auto& row : res.rows) {
    t.rows.push_back({static_cast<double>(row.n), row.mean_of_means, row.std_of_means, row.snr});
  }
  return t;
}

// ---- figures ---------------------------------------------------------------

void surface(Table& t, int panel, const std::vector<double>& ss, const std::vector<double>& angles,
             const std::function<double(double, double)>& f) {
  for (double s : ss) {
    for (double a : angles) t.rows.push_back({static_cast<double>(panel), s, a, f(s, a)});
  }
}

Table figure_surface_aav_mean(int r) {
  Table t;
  t.metadata.push_back("spin setup: <p_z>'/g over (s, alpha); panels s in (0,0.1), (0,1), (0,10)");
  t.header = {"panel", "s", "alpha", "mean_pz"};
  const auto f = [](double s, double a) { return setups::aav_closed_forms({s, a}).mean_pz; };
  const auto alphas = cell_centres(0.0, kPi, r);
  surface(t, 1, cell_centres(0.0, 0.1, r), alphas, f);
  surface(t, 2, cell_centres(0.0, 1.0, r), alphas, f);
  surface(t, 3, cell_centres(0.0, 10.0, r), alphas, f);
  return t;
}

Table figure_aav_expectation_line(int r) {
  Table t;
  t.metadata.push_back("spin setup: optimal expectation line cos(alpha) = -exp(-s)");
  t.header = {"s", "alpha", "mean_pz", "delta_pz", "mean_plus_delta", "mean_minus_delta"};
  for (double s : cell_centres(0.0, 10.0, 4 * r)) {
    const auto p = optimize::aav_optimal_expectation(s);
    const double m = p.objective_value;
    const double d = p.companion_stats.at("delta_pz");
    t.rows.push_back({s, p.angle, m, d, m + d, m - d});
  }
  return t;
}

Table figure_aav_densities() {
  Table t;
  t.metadata.push_back("spin setup: p_z/g densities on the optimal expectation line");
  t.header = {"s", "pz", "initial", "post_selected"};
  for (double s : {0.1, 1.0, 10.0, 1000.0}) {
    const double alpha = optimize::aav_optimal_expectation(s).angle;
    const double reach = 1.0 + 14.0 / std::sqrt(2.0 * s);
    for (double x : linspace(-reach, reach, 4001)) {
      t.rows.push_back({s, x, core::initial_density_q(s, x), setups::aav_density({s, alpha}, x)});
    }
  }
  return t;
}

Table figure_surface_aav_snr(int r) {
  Table t;
  t.metadata.push_back("spin setup: SNR over (s, alpha); panel 1 s in (0,1), alpha in (pi/2,pi); panel 2 s in (0,10)");
  t.header = {"panel", "s", "alpha", "snr"};
  const auto f = [](double s, double a) { return setups::aav_closed_forms({s, a}).snr; };
  surface(t, 1, cell_centres(0.0, 1.0, r), cell_centres(kPi / 2, kPi, r), f);
  surface(t, 2, cell_centres(0.0, 10.0, r), cell_centres(0.0, kPi, r), f);
  return t;
}

Table figure_aav_snr_line(int r) {
  Table t;
  t.metadata.push_back("spin setup: optimal SNR line and optimal SNR");
  t.header = {"s", "alpha", "snr", "cos_alpha"};
  for (double s : cell_centres(0.0, 10.0, 4 * r)) {
    const auto p = optimize::aav_optimal_snr(s);
    t.rows.push_back({s, p.angle, p.objective_value, p.companion_stats.at("cos_angle")});
  }
  return t;
}

Table figure_surface_dsjh_mean(int r) {
  Table t;
  t.metadata.push_back("interferometer: -k<x>' over (s, phi); panels s in (0,10), (0,2)");
  t.header = {"panel", "s", "phi", "minus_mean_kx"};
  const auto f = [](double s, double p) { return -setups::dsjh_closed_forms({s, p}).mean_kx; };
  const auto phis = cell_centres(0.0, kPi, r);
  surface(t, 1, cell_centres(0.0, 10.0, r), phis, f);
  surface(t, 2, cell_centres(0.0, 2.0, r), phis, f);
  return t;
}

Table figure_dsjh_expectation_line(int r) {
  Table t;
  t.metadata.push_back("interferometer: optimal expectation line cos(phi) = exp(-s)");
  t.header = {"s", "phi", "minus_mean_kx"};
  for (double s : cell_centres(0.0, 10.0, 4 * r)) {
    const auto p = optimize::dsjh_optimal_expectation(s);
    t.rows.push_back({s, p.angle, p.objective_value});
  }
  return t;
}

Table figure_dsjh_densities() {
  Table t;
  t.metadata.push_back("interferometer: kx densities on the optimal expectation line");
  t.header = {"s", "kx", "initial", "post_selected"};
  const double s_m = optimize::dsjh_global_max().s_m;
  for (double s : {0.1, 1.0, s_m, 10.0, 1000.0}) {
    const double phi = optimize::dsjh_optimal_expectation(s).angle;
    const double reach = 14.0 * std::sqrt(s / 2.0);
    for (double x : linspace(-reach, reach, 20001)) {
      t.rows.push_back({s, x, core::initial_density_p(s, x), setups::dsjh_density({s, phi}, x)});
    }
  }
  return t;
}

Table figure_surface_dsjh_snr(int r) {
  Table t;
  t.metadata.push_back("interferometer: SNR over (s, phi), s in (0,3)");
  t.header = {"panel", "s", "phi", "snr"};
  surface(t, 1, cell_centres(0.0, 3.0, r), cell_centres(0.0, kPi, r),
          [](double s, double p) { return setups::dsjh_closed_forms({s, p}).snr; });
  return t;
}

Table figure_dsjh_snr_line(int r) {
  Table t;
  t.metadata.push_back("interferometer: optimal SNR angle and optimal SNR");
  t.header = {"s", "phi", "snr", "cos_phi"};
  for (double s : cell_centres(0.0, 5.0, 4 * r)) {
    const auto p = optimize::dsjh_optimal_snr(s);
    t.rows.push_back({s, p.angle, p.objective_value, p.companion_stats.at("cos_angle")});
  }
  return t;
}

std::string command_echo(int argc, const char* const* argv) {
  std::string out;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) out += ' ';
    out += argv[i];
  }
  return out;
}

}  // namespace

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::out_of_range("no column " + name);
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& out, const Table& table) {
  for (const auto& m : table.metadata) out << "# " << m << '\n';
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (const auto* d = std::get_if<double>(&row[i])) {
        out << format_number(*d);
      } else {
        out << std::get<std::string>(row[i]);
      }
    }
    out << '\n';
  }
}

Table figure_table(int n, int resolution) {
  switch (n) {
    case 1: return figure_surface_aav_mean(resolution);
    case 2: return figure_aav_expectation_line(resolution);
    case 3: return figure_aav_densities();
    case 4: return figure_surface_aav_snr(resolution);
    case 5: return figure_aav_snr_line(resolution);
    case 6: return figure_surface_dsjh_mean(resolution);
    case 7: return figure_dsjh_expectation_line(resolution);
    case 8: return figure_dsjh_densities();
    case 9: return figure_surface_dsjh_snr(resolution);
    case 10: return figure_dsjh_snr_line(resolution);
    default: throw ConfigurationError("figure number must be in 1..10");
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  std::string output;

  CLI::App app{"Exact post-selected pointer statistics for weak measurements with A^2 = 1", "weakmeas"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("-o,--output", output, "Write CSV to this file instead of stdout");
  app.add_flag("--degrees", cfg.degrees, "Angles are given in degrees");

  const auto setup_opt = [&](CLI::App* sub, bool allow_custom) {
    sub->add_option("--setup", cfg.setup, "Measurement setup")
        ->check(allow_custom ? CLI::IsMember({"aav", "dsjh", "custom"}) : CLI::IsMember({"aav", "dsjh"}));
  };
  const auto point_opts = [&](CLI::App* sub) {
    sub->add_option("--s", cfg.s, "Coupling s");
    sub->add_option("--angle", cfg.angle, "Pre-selection angle (alpha or phi)");
    sub->add_option("--re", cfg.re, "Re A_w (custom setup)");
    sub->add_option("--im", cfg.im, "Im A_w (custom setup)");
  };
  const auto s_range = [&](CLI::App* sub) {
    sub->add_option("--s-min", cfg.s_min);
    sub->add_option("--s-max", cfg.s_max);
    sub->add_option("--s-steps", cfg.s_steps)->check(CLI::PositiveNumber);
  };

  auto* stats = app.add_subcommand("stats", "Closed-form statistics at one point");
  setup_opt(stats, true);
  point_opts(stats);

  auto* scan = app.add_subcommand("scan", "Closed-form statistics over an (s, angle) lattice");
  setup_opt(scan, false);
  s_range(scan);
  scan->add_option("--angle-min", cfg.angle_min);
  scan->add_option("--angle-max", cfg.angle_max);
  scan->add_option("--angle-steps", cfg.angle_steps)->check(CLI::PositiveNumber);

  auto* density = app.add_subcommand("density", "Initial and post-selected pointer densities");
  setup_opt(density, true);
  point_opts(density);
  density->add_option("--space", cfg.space, "p (u = g p) or q (v = q/g)")->check(CLI::IsMember({"p", "q"}));
  density->add_option("--min", cfg.x_min);
  density->add_option("--max", cfg.x_max);
  density->add_option("--points", cfg.points);

  auto* optimal = app.add_subcommand("optimal", "Optimal pre-selection lines");
  setup_opt(optimal, false);
  s_range(optimal);
  optimal->add_option("--kind", cfg.kind)->check(CLI::IsMember({"expectation", "snr", "max", "first-order"}));

  auto* check = app.add_subcommand("oracle-check", "Closed forms against the grid oracle and the series");
  setup_opt(check, true);
  point_opts(check);
  check->add_option("--grid-points", cfg.grid_points);
  check->add_option("--grid-half-width", cfg.grid_half_width);
  check->add_option("--tolerance", cfg.tolerance);

  auto* errata = app.add_subcommand("errata", "Orthogonal-case report");
  errata->add_option("--s-values", cfg.s_values)->delimiter(',');

  auto* ens = app.add_subcommand("ensemble", "Monte Carlo sqrt(N) table");
  setup_opt(ens, false);
  ens->add_option("--s", cfg.s);
  auto* angle_flag = ens->add_option("--angle", cfg.angle, "Defaults to the optimal-SNR angle");
  ens->add_option("--n-values", cfg.n_values)->delimiter(',');
  ens->add_option("--trials", cfg.trials);
  ens->add_option("--seed", cfg.seed);

  auto* figure = app.add_subcommand("figure", "Data underlying a figure");
  figure->add_option("n", cfg.figure, "Figure number")->required()->check(CLI::Range(1, 10));
  figure->add_option("--resolution", cfg.resolution, "Cells per surface axis")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  cfg.angle_given = angle_flag->count() > 0;

  Table table;
  int status = kExitOk;
  try {
    if (*stats) {
      table = stats_table(cfg);
    } else if (*scan) {
      table = scan_table(cfg);
    } else if (*density) {
      table = density_table(cfg);
    } else if (*optimal) {
      table = optimal_table(cfg);
    } else if (*check) {
      auto c = oracle_check_table(cfg);
      table = std::move(c.table);
      if (c.violated) status = kExitTolerance;
    } else if (*errata) {
      table = errata_table(cfg);
    } else if (*ens) {
      table = ensemble_table(cfg);
    } else {
      table = figure_table(cfg.figure, cfg.resolution);
    }
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const ConfigurationError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    err << "convergence error: " << e.what() << '\n';
    return kExitTolerance;
  }

  table.metadata.insert(table.metadata.begin(), {std::string("weakmeas ") + kVersion, "command: " + command_echo(argc, argv)});
  if (output.empty()) {
    write_csv(out, table);
    return status;
  }
  std::ofstream file(output);
  if (file) write_csv(file, table);
  if (!file) {
    err << "cannot write " << output << '\n';
    return kExitIo;
  }
  return status;
}

}  // namespace weakmeas::cli
