#include "whitpack/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "whitpack/constants.hpp"
#include "whitpack/errors.hpp"

namespace whitpack {

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::filesystem::create_directories(p.parent_path());
  }
  std::ofstream out(path, std::ios::binary);  // binary keeps LF on all hosts
  if (!out) throw Error("cannot open output file: " + path);
  return out;
}

}  // namespace

void write_csv(const std::string& path, const std::string& preamble,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out = open_out(path);
  if (!preamble.empty()) out << "# " << preamble << "\n";
  for (std::size_t c = 0; c < columns.size(); ++c) {
    out << columns[c] << (c + 1 < columns.size() ? "," : "");
  }
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << format_full(row[c]) << (c + 1 < row.size() ? "," : "");
    }
    out << "\n";
  }
}

void write_json(const std::string& path, const ordered_json& doc) {
  std::ofstream out = open_out(path);
  out << doc.dump(2) << "\n";
}

std::string params_preamble(const PacketParams& params) {
  return "energy_ev=" + format_full(params.energy_eV) +
         " spread_ev=" + format_full(params.spread_eV) +
         " mu=" + format_full(params.mu) + " sigma=" + format_full(params.sigma);
}

ordered_json params_json(const PacketParams& params) {
  ordered_json j;
  j["energy_ev"] = params.energy_eV;
  j["spread_ev"] = params.spread_eV;
  j["mu"] = params.mu;
  j["sigma"] = params.sigma;
  j["kappa_lo"] = params.kappa_lo;
  j["kappa_hi"] = params.kappa_hi;
  j["window_clipped"] = params.clipped;
  return j;
}

ordered_json constants_json() {
  ordered_json j;
  j["bohr_radius_nm"] = A0_NM;
  j["hartree_ev"] = E_H_EV;
  j["hbar_ev_fs"] = HBAR_EV_FS;
  j["omega0_per_fs"] = OMEGA0_FS;
  j["fine_structure"] = ALPHA_FS;
  return j;
}

void write_field_csv(const std::string& path, const RadialField& field) {
  std::vector<std::vector<double>> rows;
  rows.reserve(field.grid.r_values.size());
  for (std::size_t i = 0; i < field.grid.r_values.size(); ++i) {
    const double r = field.grid.r_values[i];
    rows.push_back({r, field.amplitudes[i].real(), field.amplitudes[i].imag(),
                    r * r * std::norm(field.amplitudes[i])});
  }
  write_csv(path,
            params_preamble(field.params) + " t_fs=" +
                format_full(field.time_fs),
            {"r_a0", "re_psi", "im_psi", "density"}, rows);
}

void write_envelope_csv(const std::string& path, const PacketParams& params,
                        const EnvelopeFit& fit) {
  std::vector<std::vector<double>> rows;
  rows.reserve(fit.peak_positions.size());
  for (std::size_t i = 0; i < fit.peak_positions.size(); ++i) {
    const bool used = i >= fit.body_first && i <= fit.body_last;
    rows.push_back({fit.peak_positions[i], fit.peak_values[i],
                    used ? 1.0 : 0.0});
  }
  write_csv(path,
            params_preamble(params) + " delta_r_a0=" +
                format_full(fit.fitted_sigma) + " fit_r2=" +
                format_full(fit.fit_r2),
            {"peak_r_a0", "peak_abs_psi", "used_in_fit"}, rows);
}

void write_overlap_csv(const std::string& path, const PacketParams& params,
                       const OverlapSeries& series) {
  std::vector<std::vector<double>> rows;
  rows.reserve(series.times.size());
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    rows.push_back({series.times[i], series.values[i]});
  }
  write_csv(path,
            params_preamble(params) + " delta_t_fs=" +
                format_full(series.fitted_sigma_t) + " fit_r2=" +
                format_full(series.fit_r2),
            {"t_fs", "overlap"}, rows);
}

void write_nodes_csv(const std::string& path, const PacketParams& params,
                     const NodeTrack& track) {
  std::vector<std::vector<double>> rows;
  rows.reserve(track.node_positions.size());
  for (std::size_t i = 0; i < track.node_positions.size(); ++i) {
    rows.push_back({track.node_positions[i], track.min_density_at_nodes[i]});
  }
  write_csv(path,
            params_preamble(params) + " t_fs=" + format_full(track.time_fs),
            {"node_r_a0", "density"}, rows);
}

void write_decay_csv(const std::string& path, const DecayTable& table) {
  std::vector<std::vector<double>> rows;
  rows.reserve(table.times.size() * table.per_n.size());
  for (const auto& [n, curve] : table.per_n) {
    for (std::size_t i = 0; i < table.times.size(); ++i) {
      rows.push_back({table.times[i], static_cast<double>(n), curve[i]});
    }
  }
  write_csv(path,
            params_preamble(table.params) + " n_max=" +
                std::to_string(table.n_max_used),
            {"t_fs", "n", "p_n"}, rows);
}

}  // namespace whitpack
