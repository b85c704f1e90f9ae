#include "whitpack/fitting.hpp"

#include <cmath>
#include <string>

#include "whitpack/errors.hpp"
#include "whitpack/observables.hpp"
#include "whitpack/packet.hpp"

namespace whitpack {

PowerLawFit fit_power_law(
    const std::vector<std::pair<double, double>>& samples,
    std::optional<double> fixed_exponent) {
  if (samples.size() < 4) {
    throw DomainError("fit_power_law: need at least 4 samples, got " +
                      std::to_string(samples.size()));
  }
  std::vector<double> lx(samples.size()), ly(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].first > 0.0) || !(samples[i].second > 0.0)) {
      throw DomainError("fit_power_law: samples must be positive");
    }
    lx[i] = std::log(samples[i].first);
    ly[i] = std::log(samples[i].second);
  }
  const double n = static_cast<double>(samples.size());
  PowerLawFit fit;
  fit.sample_count = static_cast<int>(samples.size());
  double intercept;
  if (fixed_exponent) {
    fit.exponent = *fixed_exponent;
    double s = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      s += ly[i] - fit.exponent * lx[i];
    }
    intercept = s / n;
  } else {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      sx += lx[i];
      sy += ly[i];
      sxx += lx[i] * lx[i];
      sxy += lx[i] * ly[i];
    }
    const double det = n * sxx - sx * sx;
    if (det <= 1e-12 * n * sxx) {
      throw RankDeficient("fit_power_law: abscissa values are all equal");
    }
    fit.exponent = (n * sxy - sx * sy) / det;
    intercept = (sy - fit.exponent * sx) / n;
  }
  fit.coefficient = std::exp(intercept);
  double ss = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double e = ly[i] - (intercept + fit.exponent * lx[i]);
    ss += e * e;
  }
  fit.residual_rms = std::sqrt(ss / n);
  return fit;
}

namespace {

CalibrationResult finish(std::vector<CalibrationSample> samples) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(samples.size());
  for (const auto& s : samples) pts.emplace_back(s.x, s.y);
  CalibrationResult out;
  out.fixed = fit_power_law(pts, -0.5);
  out.free_fit = fit_power_law(pts);
  out.samples = std::move(samples);
  return out;
}

}  // namespace

CalibrationResult calibrate_spread_constant(double energy_eV,
                                            const std::vector<double>& dE_list,
                                            const QuadratureSpec& spec,
                                            int threads) {
  std::vector<CalibrationSample> samples;
  samples.reserve(dE_list.size());
  for (double dE : dE_list) {
    const PacketParams params = map_energy_params(energy_eV, dE);
    const RadialGrid grid =
        RadialGrid::resolve(params, norm_radius_a0(params));
    const PacketField field(params, grid, ModeKind::whittaker, spec,
                            suggested_kappa_points(params, grid.r_max),
                            threads);
    const EnvelopeFit env = extract_envelope(field.at_time(0.0));
    samples.push_back({dE, env.fitted_sigma});
  }
  return finish(std::move(samples));
}

CalibrationResult calibrate_lifetime_constant(
    const std::vector<std::pair<double, double>>& pairs,
    const QuadratureSpec& spec, int threads) {
  std::vector<CalibrationSample> samples;
  samples.reserve(pairs.size());
  for (const auto& [energy_eV, dE] : pairs) {
    const PacketParams params = map_energy_params(energy_eV, dE);
    const double dt = diffraction_lifetime(params, spec, threads);
    samples.push_back({energy_eV * dE, dt});
  }
  return finish(std::move(samples));
}

double default_spread_energy_eV() { return 16.0; }

std::vector<double> default_spread_grid_eV() {
  return {1e-3, std::pow(10.0, -2.5), 1e-2, std::pow(10.0, -1.5), 1e-1};
}

std::vector<std::pair<double, double>> default_lifetime_pairs() {
  // E * dE spans two decades; every pair keeps mu >= 5 sigma (no window
  // clipping) except the mildest (1, 0.1) case. A clipped window realizes a
  // larger energy spread than its nominal dE and falls below the law, so
  // heavy-clip pairs would calibrate the clipping, not the law.
  return {{40.0, 1.65e-3}, {1.0, 0.1},      {4.0, 5e-2},
          {5.0, 0.1},      {19.0, 0.1},     {200.0, 3.3e-2},
          {10000.0, 6.6e-4}};
}

}  // namespace whitpack
