#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "whitpack/packet.hpp"
#include "whitpack/quadrature.hpp"

namespace whitpack {

struct BoundState {
  int n = 2;
  int l = 1;  // dipole selection from the s-wave continuum fixes l = 1
  int m = 0;
  double energy_eV = 0.0;  // -E_h / (2 n^2)
};

double bound_energy_eV(int n);

// Hydrogen radial function R_{n1}(r), r in a0, normalized to
// integral R^2 r^2 dr = 1.
double bound_radial(int n, double r_a0);

// radius beyond which the e^{-r/n} tail of R_{n1} contributes less than
// 1e-10 to any matrix element used here
double bound_radial_cutoff_a0(int n);

// First-order time kernel T(Delta, t) = (e^{i Delta t} - 1)/(i Delta), with
// the removable singularity T(0, t) = t taken by series for |Delta t| < 1e-6.
// |T|^2 = t^2 sinc^2(Delta t / 2).
std::complex<double> time_kernel(double detuning_per_fs, double t_fs);

// M_n(kappa) = integral r^2 R_{n1}(r) dw_kappa/dr dr, the radial transition
// element between a continuum mode and the (n,1) shell; purely imaginary.
std::complex<double> radial_matrix_element(int n, double kappa,
                                           const QuadratureSpec& spec = {});

struct TransitionKernelSample {
  double kappa = 0.0;
  std::complex<double> matrix_element;  // M_n(kappa)
  double omega_n = 0.0;                 // bound-state frequency, fs^-1
  // photon detuning for emission at frequency omega_k (fs^-1)
  double detuning_at(double omega_k) const {
    return omega_k + omega_n - OMEGA0_FS * kappa * kappa;
  }
};

struct DecayTable {
  PacketParams params;
  std::vector<double> times;                // fs
  std::map<int, std::vector<double>> per_n; // P_n(t) per bound shell
  std::vector<double> total;                // pointwise sum
  int n_max_used = 0;
};

struct TotalDecay {
  double probability = 0.0;
  int n_max = 0;
};

// Emission pipeline for one packet: caches the packet normalization and the
// per-shell transition elements on the packet's kappa nodes, then evaluates
// the time-dependent golden-rule photon-frequency integral per (n, t).
class DecayModel {
 public:
  // kappa_points = 0 sizes the window quadrature from the phase span of
  // the largest bound-state integral (suggested_kappa_points)
  explicit DecayModel(const PacketParams& params,
                      const QuadratureSpec& spec = {}, int kappa_points = 0,
                      int threads = 0);

  // decay probability into a single (n, 1, m) state by time t
  double probability_m(int n, int m, double t_fs) const;
  // all three m channels of the (n, 1) shell
  double probability(int n, double t_fs) const;

  // per-shell curves on a common time mesh, summing shells from n=2 upward
  // until the newest shell adds less than `shell_cutoff` of the running
  // total at the final time
  DecayTable table(const std::vector<double>& times, int n_limit = 12,
                   double shell_cutoff = 1e-3) const;

  // integrand of the photon-frequency integral at fixed (n, t); exposed for
  // resonance-location checks
  double frequency_integrand(int n, double omega_k, double t_fs) const;

  double packet_norm() const { return norm_; }
  const std::vector<TransitionKernelSample>& kernel(int n) const;
  const PacketParams& params() const { return params_; }

 private:
  std::vector<double> frequency_breakpoints(int n, double t_fs) const;

  PacketParams params_;
  QuadratureSpec spec_;
  KappaWindow window_;
  double norm_ = 1.0;
  int threads_ = 0;
  mutable std::mutex kernel_mutex_;
  mutable std::map<int, std::vector<TransitionKernelSample>> kernels_;
};

// One-shot wrappers around DecayModel.
double decay_probability(const PacketParams& params, int n, double t_fs,
                         const QuadratureSpec& spec = {});
TotalDecay total_decay(const PacketParams& params, double t_fs,
                       const QuadratureSpec& spec = {}, int threads = 0);

// Average emission rate P(2 dt)/(2 dt) in Hz, with dt the diffraction
// lifetime computed from the overlap decay.
double average_rate(const PacketParams& params, const QuadratureSpec& spec = {},
                    int threads = 0, double* delta_t_fs_out = nullptr,
                    TotalDecay* decay_out = nullptr);

}  // namespace whitpack
