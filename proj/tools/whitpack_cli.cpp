// whitpack: command line front end for the continuum-wavepacket library.
// Subcommands cover mode tabulation, packet synthesis, spread/lifetime
// characterization, radiative decay, the closed-form trade-off table, and
// law calibration. All outputs are full-precision CSV/JSON so runs are
// byte-reproducible regardless of --threads.

#include <complex>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "whitpack/constants.hpp"
#include "whitpack/errors.hpp"
#include "whitpack/fitting.hpp"
#include "whitpack/io.hpp"
#include "whitpack/laws.hpp"
#include "whitpack/observables.hpp"
#include "whitpack/packet.hpp"
#include "whitpack/parallel.hpp"
#include "whitpack/radiative.hpp"
#include "whitpack/specfun.hpp"

namespace wp = whitpack;

namespace {

struct CommonOpts {
  double energy_ev = 1.0;
  double spread_ev = 0.1;
  double tmax_fs = 0.0;  // 0 = choose from the lifetime law
  int grid_ppw = 24;
  double rel_tol = 1e-10;
  std::string out_dir = ".";
  unsigned long seed = 0;  // recorded in outputs; only resampling uses it
  int threads = 0;

  wp::QuadratureSpec quad() const {
    wp::QuadratureSpec spec;
    spec.rel_tol = rel_tol;
    return spec;
  }
  std::string path(const std::string& name) const {
    return out_dir + "/" + name;
  }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_params = true) {
  if (with_params) {
    cmd->add_option("--energy-ev", o.energy_ev, "mean kinetic energy E [eV]");
    cmd->add_option("--spread-ev", o.spread_ev, "energy spread dE [eV]");
  }
  cmd->add_option("--tmax-fs", o.tmax_fs, "time horizon [fs]");
  cmd->add_option("--grid-ppw", o.grid_ppw, "radial points per wavelength");
  cmd->add_option("--rel-tol", o.rel_tol, "quadrature relative tolerance");
  cmd->add_option("--out-dir", o.out_dir, "output directory");
  cmd->add_option("--seed", o.seed, "random seed (recorded with outputs)");
  cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)");
}

void emit_error(const std::string& kind, const std::string& message,
                int code) {
  wp::ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  j["exit_code"] = code;
  std::cerr << j.dump() << "\n";
}

wp::ordered_json run_header(const CommonOpts& o) {
  wp::ordered_json j;
  j["seed"] = o.seed;
  j["rel_tol"] = o.rel_tol;
  return j;
}

int run_mode(const CommonOpts& o, double kappa, double x_max, int points) {
  if (points < 2) throw wp::DomainError("mode: need at least 2 points");
  if (!(x_max > 0.0)) throw wp::DomainError("mode: x-max must be positive");
  const wp::QuadratureSpec spec = o.quad();
  std::vector<std::vector<double>> rows(points);
  wp::parallel_for(static_cast<std::size_t>(points), o.threads,
                   [&](std::size_t a, std::size_t b) {
                     for (std::size_t i = a; i < b; ++i) {
                       const double x = x_max * static_cast<double>(i) /
                                        (points - 1);
                       const std::complex<double> w =
                           wp::whittaker_mode(kappa, x, spec);
                       rows[i] = {x, w.real(), w.imag()};
                     }
                   });
  wp::write_csv(o.path("mode.csv"), "kappa=" + wp::format_full(kappa),
                {"x", "re_w", "im_w"}, rows);
  wp::ordered_json j = run_header(o);
  j["kappa"] = kappa;
  j["x_max"] = x_max;
  j["points"] = points;
  j["energy_ev"] = 2.0 * wp::E_H_EV * kappa * kappa;
  wp::write_json(o.path("mode.json"), j);
  return 0;
}

int run_packet(const CommonOpts& o, std::vector<double> times,
               double r_max_a0) {
  const wp::PacketParams params =
      wp::map_energy_params(o.energy_ev, o.spread_ev);
  if (times.empty()) times = {0.0};
  const double r_max = r_max_a0 > 0.0 ? r_max_a0 : wp::norm_radius_a0(params);
  const wp::RadialGrid grid =
      wp::RadialGrid::resolve(params, r_max, o.grid_ppw);
  auto field = std::make_shared<wp::PacketField>(
      params, grid, wp::ModeKind::whittaker, o.quad(),
      wp::suggested_kappa_points(params, grid.r_max), o.threads);
  field->compute_norm(o.threads);

  wp::ordered_json j = run_header(o);
  j["params"] = wp::params_json(params);
  j["norm_constant"] = field->norm();
  j["r_max_a0"] = r_max;
  j["grid_points"] = grid.r_values.size();
  wp::ordered_json per_time = wp::ordered_json::array();
  for (std::size_t i = 0; i < times.size(); ++i) {
    const wp::RadialField snap = field->at_time(times[i]);
    wp::write_field_csv(o.path("packet_t" + std::to_string(i) + ".csv"), snap);
    const wp::GaussianDynamics dyn = wp::gaussian_dynamics(params, times[i]);
    wp::ordered_json t;
    t["t_fs"] = times[i];
    t["file"] = "packet_t" + std::to_string(i) + ".csv";
    t["predicted_center_x"] = dyn.mu_x;
    t["predicted_width_x"] = dyn.sigma_x;
    per_time.push_back(t);
  }
  j["times"] = per_time;
  try {
    const wp::EnvelopeFit env = wp::extract_envelope(field->at_time(0.0));
    j["envelope"] = {{"delta_r_a0", env.fitted_sigma},
                     {"delta_r_nm", env.fitted_sigma * wp::A0_NM},
                     {"fit_r2", env.fit_r2},
                     {"peaks", env.peak_positions.size()}};
  } catch (const wp::Error& e) {
    j["envelope"] = {{"error", e.what()}};
  }
  wp::write_json(o.path("packet.json"), j);
  return 0;
}

int run_characterize(const CommonOpts& o) {
  const wp::PacketParams params =
      wp::map_energy_params(o.energy_ev, o.spread_ev);
  const wp::QuadratureSpec spec = o.quad();
  wp::ordered_json j = run_header(o);
  j["params"] = wp::params_json(params);

  const wp::RadialGrid grid =
      wp::RadialGrid::resolve(params, wp::norm_radius_a0(params), o.grid_ppw);
  auto field = std::make_shared<wp::PacketField>(
      params, grid, wp::ModeKind::whittaker, spec,
      wp::suggested_kappa_points(params, grid.r_max), o.threads);
  const wp::RadialField f0 = field->at_time(0.0);

  try {
    const wp::EnvelopeFit env = wp::extract_envelope(f0);
    wp::write_envelope_csv(o.path("envelope.csv"), params, env);
    j["delta_r_a0"] = env.fitted_sigma;
    j["delta_r_nm"] = env.fitted_sigma * wp::A0_NM;
    j["envelope_fit_r2"] = env.fit_r2;
  } catch (const wp::Error& e) {
    j["envelope_error"] = e.what();
  }

  wp::OverlapSeries series;
  const double dt = wp::diffraction_lifetime(params, spec, o.threads, &series);
  wp::write_overlap_csv(o.path("overlap.csv"), params, series);
  j["delta_t_fs"] = dt;
  j["delta_t_as"] = dt * 1000.0;
  j["overlap_fit_r2"] = series.fit_r2;

  try {
    const wp::NodeTrack nodes = wp::find_nodes(f0);
    wp::write_nodes_csv(o.path("nodes.csv"), params, nodes);
    j["node_count"] = nodes.node_positions.size();
  } catch (const wp::Error& e) {
    j["nodes_error"] = e.what();
  }

  wp::write_json(o.path("characterize.json"), j);
  return 0;
}

int run_decay(const CommonOpts& o, int n_limit, int time_points) {
  const wp::PacketParams params =
      wp::map_energy_params(o.energy_ev, o.spread_ev);
  const wp::QuadratureSpec spec = o.quad();
  wp::OverlapSeries series;
  const double dt = wp::diffraction_lifetime(params, spec, o.threads, &series);
  const double t_max = o.tmax_fs > 0.0 ? o.tmax_fs : 10.0 * dt;

  const wp::DecayModel model(params, spec, 0, o.threads);
  const wp::DecayTable table =
      model.table(wp::overlap_time_mesh(t_max, time_points), n_limit);
  wp::write_decay_csv(o.path("decay.csv"), table);

  // average rate at twice the diffraction lifetime
  wp::TotalDecay at_2dt;
  for (int n = 2; n <= n_limit; ++n) {
    const double p = model.probability(n, 2.0 * dt);
    at_2dt.probability += p;
    at_2dt.n_max = n;
    if (p <= 1e-3 * at_2dt.probability) break;
  }
  const double gamma_hz = at_2dt.probability / (2.0 * dt) * 1e15;

  wp::ordered_json j = run_header(o);
  j["params"] = wp::params_json(params);
  j["delta_t_fs"] = dt;
  j["t_max_fs"] = t_max;
  j["n_max"] = table.n_max_used;
  j["p_total_at_tmax"] = table.total.back();
  j["gamma_avg_hz"] = gamma_hz;
  j["lifetime_rate_product"] = dt * 1e-15 * gamma_hz;
  wp::write_json(o.path("decay.json"), j);
  return 0;
}

int run_table1(const CommonOpts& o) {
  const std::vector<wp::TradeOffCell> cells = wp::trade_off_table();
  std::ofstream out(o.path("table1.csv"), std::ios::binary);
  if (!out) throw wp::Error("cannot open " + o.path("table1.csv"));
  out << "block,quantity,energy_ev,reference,computed,rel_error\n";
  double worst = 0.0;
  for (const auto& c : cells) {
    out << c.block << "," << c.quantity << "," << wp::format_full(c.energy_eV)
        << "," << wp::format_full(c.reference) << ","
        << wp::format_full(c.computed) << "," << wp::format_full(c.rel_error)
        << "\n";
    worst = std::max(worst, c.rel_error);
  }
  out.close();
  wp::ordered_json j = run_header(o);
  j["cells"] = cells.size();
  j["max_rel_error"] = worst;
  j["spread_constant_a0_sqrt_ev"] = wp::C_R_A0_SQRT_EV;
  j["lifetime_constant_ev_fs"] = wp::C_T_EV_FS;
  wp::write_json(o.path("table1.json"), j);
  return 0;
}

wp::ordered_json fit_json(const wp::PowerLawFit& f) {
  wp::ordered_json j;
  j["constant"] = f.coefficient;
  j["exponent"] = f.exponent;
  j["residual_rms"] = f.residual_rms;
  j["sample_count"] = f.sample_count;
  return j;
}

int run_calibrate(const CommonOpts& o, const std::string& law,
                  std::vector<double> spread_list,
                  std::vector<std::string> pair_list) {
  const wp::QuadratureSpec spec = o.quad();
  wp::ordered_json j = run_header(o);
  wp::CalibrationResult result;
  if (law == "spread") {
    if (spread_list.empty()) spread_list = wp::default_spread_grid_eV();
    const double energy = o.energy_ev > 0.0 ? o.energy_ev
                                            : wp::default_spread_energy_eV();
    result = wp::calibrate_spread_constant(energy, spread_list, spec,
                                           o.threads);
    j["law"] = "spread";
    j["energy_ev"] = energy;
  } else if (law == "lifetime") {
    std::vector<std::pair<double, double>> pairs;
    for (const std::string& s : pair_list) {
      const auto colon = s.find(':');
      if (colon == std::string::npos) {
        throw wp::DomainError("calibrate: --pair wants E:dE, got " + s);
      }
      pairs.emplace_back(std::stod(s.substr(0, colon)),
                         std::stod(s.substr(colon + 1)));
    }
    if (pairs.empty()) pairs = wp::default_lifetime_pairs();
    result = wp::calibrate_lifetime_constant(pairs, spec, o.threads);
    j["law"] = "lifetime";
  } else {
    throw wp::DomainError("calibrate: law must be 'spread' or 'lifetime'");
  }
  j["fixed"] = fit_json(result.fixed);
  j["free"] = fit_json(result.free_fit);
  wp::ordered_json samples = wp::ordered_json::array();
  for (const auto& s : result.samples) {
    samples.push_back({{"x", s.x}, {"y", s.y}});
  }
  j["samples"] = samples;
  wp::write_json(o.path("calibration_" + law + ".json"), j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"continuum electron wavepacket toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI config file (long option names as keys)");

  CommonOpts mode_o, packet_o, char_o, decay_o, table_o, cal_o;

  double mode_kappa = 0.1356;
  double mode_xmax = 100.0;
  int mode_points = 2000;
  CLI::App* mode = app.add_subcommand("mode", "tabulate a continuum mode");
  mode->add_option("--kappa", mode_kappa, "dimensionless momentum k a0")
      ->required();
  mode->add_option("--x-max", mode_xmax, "upper end of x = 2 r / a0");
  mode->add_option("--points", mode_points, "number of samples");
  add_common(mode, mode_o, false);

  std::vector<double> packet_times;
  double packet_rmax = 0.0;
  CLI::App* packet =
      app.add_subcommand("packet", "synthesize a wavepacket on a radial grid");
  packet->add_option("--times-fs", packet_times, "sample times [fs]");
  packet->add_option("--r-max-a0", packet_rmax,
                     "grid radius [a0] (0 = envelope-scaled)");
  add_common(packet, packet_o);

  CLI::App* characterize = app.add_subcommand(
      "characterize", "spatial spread, diffraction lifetime, nodes");
  add_common(characterize, char_o);

  int decay_nlimit = 12;
  int decay_points = 64;
  CLI::App* decay =
      app.add_subcommand("decay", "radiative decay probabilities and rate");
  decay->add_option("--n-limit", decay_nlimit, "highest bound shell");
  decay->add_option("--time-points", decay_points, "time mesh size");
  add_common(decay, decay_o);

  CLI::App* table1 =
      app.add_subcommand("table1", "closed-form spread/lifetime trade-off table");
  add_common(table1, table_o, false);

  std::string cal_law = "spread";
  std::vector<double> cal_spreads;
  std::vector<std::string> cal_pairs;
  CLI::App* calibrate =
      app.add_subcommand("calibrate", "recover a scaling-law constant");
  calibrate->add_option("--law", cal_law, "spread or lifetime");
  calibrate->add_option("--spread-ev-list", cal_spreads,
                        "spread sweep [eV] (spread law)");
  calibrate->add_option("--pair", cal_pairs, "E:dE pair (lifetime law)");
  add_common(calibrate, cal_o);
  cal_o.energy_ev = 0.0;  // 0 = default calibration energy

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("usage", e.what(), 2);
    return 2;
  }

  try {
    if (mode->parsed()) return run_mode(mode_o, mode_kappa, mode_xmax,
                                        mode_points);
    if (packet->parsed()) return run_packet(packet_o, packet_times,
                                            packet_rmax);
    if (characterize->parsed()) return run_characterize(char_o);
    if (decay->parsed()) return run_decay(decay_o, decay_nlimit, decay_points);
    if (table1->parsed()) return run_table1(table_o);
    if (calibrate->parsed()) return run_calibrate(cal_o, cal_law, cal_spreads,
                                                  cal_pairs);
  } catch (const wp::DomainError& e) {
    emit_error("domain", e.what(), 2);
    return 2;
  } catch (const wp::QuadratureNonConvergence& e) {
    emit_error("quadrature", e.what(), 3);
    return 3;
  } catch (const wp::Error& e) {
    emit_error("numerical", e.what(), 3);
    return 3;
  } catch (const std::exception& e) {
    emit_error("internal", e.what(), 1);
    return 1;
  }
  return 0;
}
