#pragma once

#include <complex>

#include "whitpack/constants.hpp"
#include "whitpack/quadrature.hpp"

namespace whitpack {

// Gamma(1+iy) * Gamma(1-iy) = pi*y / sinh(pi*y); limit value 1 at y = 0.
double gamma_pair(double y);

struct ModeValue {
  std::complex<double> w;       // mode amplitude at (kappa, x)
  std::complex<double> dw_dx;   // derivative with respect to x
  double error;                 // absolute quadrature error estimate
  int panels;
};

// Continuum (Whittaker) radial mode at t=0 on the dimensionless axis
// x = 2 r / a0. Purely imaginary for all kappa > 0, x >= 0; w(0) = 2 i kappa.
std::complex<double> whittaker_mode(double kappa, double x,
                                    const QuadratureSpec& spec = {});

// Value and x-derivative in a single pass over shared panels.
ModeValue whittaker_mode_full(double kappa, double x,
                              const QuadratureSpec& spec = {});

// d w / d x by analytic differentiation under the integral sign.
std::complex<double> whittaker_mode_derivative(double kappa, double x,
                                               const QuadratureSpec& spec = {});

// w(x, t) = w(x, 0) * exp(-i omega0 kappa^2 t), t in fs.
std::complex<double> whittaker_mode_time(double kappa, double x, double t_fs,
                                         const QuadratureSpec& spec = {});

// Large-x envelope form exp(i kappa x) exp(i ln(x)/(2 kappa)) / x. Only the
// magnitude decay and phase gradient are meaningful; guarded to
// x >= 100 * max(1, 1/kappa).
std::complex<double> asymptotic_mode(double kappa, double x);

// Free-particle l=0 mode 2i sin(kappa x)/x with the same boundary value
// 2i kappa at x=0; reference object for Coulomb-vs-free comparisons.
std::complex<double> free_mode(double kappa, double x);
std::complex<double> free_mode_derivative(double kappa, double x);

}  // namespace whitpack
