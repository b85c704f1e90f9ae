#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "whitpack/quadrature.hpp"

namespace whitpack {

struct PowerLawFit {
  double exponent = 0.0;
  double coefficient = 0.0;
  double residual_rms = 0.0;  // rms of log-space residuals
  int sample_count = 0;
};

struct CalibrationSample {
  double x;  // abscissa: dE [eV] for the spread law, E*dE [eV^2] for lifetime
  double y;  // measured delta_r [a0] or delta_t [fs]
};

// Both fits over the same samples: exponent pinned to -1/2 (the coefficient
// is the law constant) and exponent free (the scaling-exponent check).
struct CalibrationResult {
  PowerLawFit fixed;
  PowerLawFit free_fit;
  std::vector<CalibrationSample> samples;
};

// OLS of ln y on ln x. With fixed_exponent only the intercept is fitted.
PowerLawFit fit_power_law(
    const std::vector<std::pair<double, double>>& samples,
    std::optional<double> fixed_exponent = std::nullopt);

// Measures delta_r over a spread sweep at fixed energy and regresses onto
// c_r / sqrt(dE); coefficient in a0 eV^(1/2).
CalibrationResult calibrate_spread_constant(double energy_eV,
                                            const std::vector<double>& dE_list,
                                            const QuadratureSpec& spec = {},
                                            int threads = 0);

// Measures delta_t over (E, dE) pairs and regresses onto c_t / sqrt(E dE);
// coefficient in eV fs.
CalibrationResult calibrate_lifetime_constant(
    const std::vector<std::pair<double, double>>& pairs,
    const QuadratureSpec& spec = {}, int threads = 0);

// Default calibration inputs. The spread sweep runs at 16 eV rather than
// 1 eV: the slow-oscillation Coulomb zone near the origin (x < 1/(2 mu^2))
// widens the envelope by a fraction that grows with dE and shrinks as 1/E,
// bending the log-log line. At 1 eV the bend dominates the wide-spread end
// of any usable grid; at 16 eV the sweep holds the -1/2 slope while the
// widening still lifts the constant toward its quoted value.
double default_spread_energy_eV();
std::vector<double> default_spread_grid_eV();
// Lifetime pairs: E*dE covering two decades with unclipped momentum windows
// (clipped windows realize a larger energy spread than nominal and sit off
// the law), including two pairs at the same E*dE from energies 50x apart as
// a product-only check.
std::vector<std::pair<double, double>> default_lifetime_pairs();

}  // namespace whitpack
