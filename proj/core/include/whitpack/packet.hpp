#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "whitpack/constants.hpp"
#include "whitpack/quadrature.hpp"

namespace whitpack {

struct PacketParams {
  double energy_eV = 0.0;   // mean kinetic energy E
  double spread_eV = 0.0;   // energy spread dE
  double mu = 0.0;          // sqrt(E / 2 E_h), mean dimensionless momentum
  double sigma = 0.0;       // sqrt(dE / 2 E_h), momentum spread
  double kappa_lo = 0.0;    // window edge max(mu - 5 sigma, KAPPA_FLOOR)
  double kappa_hi = 0.0;    // window edge mu + 5 sigma
  bool clipped = false;     // true when the window hit the kappa floor
};

// Momentum-space image of (E, dE). The spread maps through the same square
// root as the mean: sigma = sqrt(dE / 2 E_h). This is what makes
// E(mu + sigma) - E(mu - sigma) ~ dE at wide spreads and reproduces the
// 1/sqrt(dE) spread law; a linearized sigma = dE/(4 E_h mu) fails both
// whenever dE is not << E.
PacketParams map_energy_params(double energy_eV, double spread_eV);

// Free-space Gaussian approximation of the packet dynamics, x units:
// center mu_x = 2 mu omega0 t, width sigma_x = sqrt(1/sigma^2 + 4 sigma^2
// omega0^2 t^2).
struct GaussianDynamics {
  double mu_x;
  double sigma_x;
};
GaussianDynamics gaussian_dynamics(const PacketParams& params, double t_fs);

// Truncation radius for the normalization integral: five envelope widths or
// 50 a0, whichever is larger.
double norm_radius_a0(const PacketParams& params);

struct RadialGrid {
  std::vector<double> r_values;  // a0, strictly increasing, starts at 0
  double r_max = 0.0;            // a0
  int points_per_wavelength = 24;

  // Nonuniform grid whose spacing tracks the local wavenumber
  // k_loc(x) = sqrt(kappa_hi^2 + 1/x); the 1/x term resolves the shortened
  // Coulomb-zone oscillations near the origin.
  static RadialGrid resolve(const PacketParams& params, double r_max_a0,
                            int ppw = 24);
};

// Gauss-Legendre discretization of the momentum window, shared by the packet
// builder and the decay pipeline so both see the same kappa samples.
struct KappaWindow {
  std::vector<double> nodes;    // kappa values
  std::vector<double> weights;  // quadrature weights on [kappa_lo, kappa_hi]
  std::vector<double> gauss;    // exp(-(kappa-mu)^2 / 2 sigma^2) at the nodes
};
KappaWindow make_kappa_window(const PacketParams& params, int points = 257);

// Gauss-Legendre point count sufficient for the kappa integral out to
// x = 2 r_max / a0: the integrand oscillates in kappa at most as fast as
// e^{i kappa x}, so the count follows the phase span (kappa_hi - kappa_lo) *
// x_max, floored at 64 and capped at the 257 default.
int suggested_kappa_points(const PacketParams& params, double r_max_a0);

enum class ModeKind { whittaker, free_sine };

class PacketField;

struct RadialField {
  RadialGrid grid;
  double time_fs = 0.0;
  std::vector<std::complex<double>> amplitudes;  // Psi(r, t), one per grid r
  PacketParams params;
  double norm = 1.0;  // amplitude normalization applied to amplitudes
  // evaluator for off-grid refinement (node bisection); may be null for
  // fields read back from files
  std::shared_ptr<const PacketField> source;
};

// Gaussian-weighted superposition of continuum modes over the kappa window,
// sampled on a fixed radial grid. The mode matrix is computed once; time
// evolution is a pure phase rotation in kappa space, so fields at any t are
// cheap once constructed.
class PacketField : public std::enable_shared_from_this<PacketField> {
 public:
  PacketField(const PacketParams& params, const RadialGrid& grid,
              ModeKind kind = ModeKind::whittaker,
              const QuadratureSpec& spec = {}, int kappa_points = 257,
              int threads = 0);

  // sampled field at time t (amplitudes scaled by the normalization constant
  // if compute_norm() has been called)
  RadialField at_time(double t_fs) const;

  // continuous evaluation at arbitrary x = 2 r/a0 (recomputes modes; slow,
  // meant for root refinement)
  std::complex<double> eval_x(double x, double t_fs) const;

  // normalization constant from |Psi|^2 r^2 dr = 1 over (0, norm_radius);
  // computed on demand on a dedicated internal grid and cached
  double compute_norm(int threads = 0);
  double norm() const { return norm_; }

  const PacketParams& params() const { return params_; }
  const RadialGrid& grid() const { return grid_; }
  ModeKind kind() const { return kind_; }
  const std::vector<double>& kappa_nodes() const { return kappa_; }
  const std::vector<double>& kappa_weights() const { return kweight_; }
  // Gaussian momentum amplitude g(kappa), including quadrature weight
  std::vector<std::complex<double>> mode_coefficients(double t_fs) const;

 private:
  PacketParams params_;
  RadialGrid grid_;
  ModeKind kind_;
  QuadratureSpec spec_;
  std::vector<double> kappa_;    // Gauss-Legendre nodes on the window
  std::vector<double> kweight_;  // matching weights
  std::vector<double> gauss_;    // exp(-(kappa-mu)^2 / 2 sigma^2)
  // mode values, x-major: modes_[i * n_kappa + j] = w_{kappa_j}(x_i)
  std::vector<std::complex<double>> modes_;
  double norm_ = 1.0;
  bool norm_computed_ = false;
};

// One-call pipeline: mode matrix + normalization + sampling at t.
RadialField build_packet(const PacketParams& params, const RadialGrid& grid,
                         double t_fs, const QuadratureSpec& spec = {},
                         int threads = 0);

}  // namespace whitpack
