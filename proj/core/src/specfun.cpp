#include "whitpack/specfun.hpp"

#include <algorithm>
#include <cmath>

namespace whitpack {

namespace {

constexpr double PI = 3.14159265358979323846;

using cplx = std::complex<double>;

// The mode integral of the defining formula,
//   w(x) = [4 i kappa^2 / (pi csch(pi/2kappa))] * I,
//   I = Int_0^1 e^{2 i kappa x s} (s/(1-s))^{i/(2 kappa)} ds,
// is evaluated on a shifted contour. Substituting s = 1/(1+e^{-u})
// (the double-exponential endpoint map, which turns the endpoint log-phase
// into a linear phase e^{i y u}) and then moving the line of integration to
// u = t + i(pi - beta) gives an absolutely convergent integral whose
// integrand decays like e^{-t}; the exponentially small size of w at small
// kappa is carried by the analytic prefactor e^{y beta}(1 - e^{-2 pi y})
// instead of by cancellation. With v = (t - i beta)/2:
//
//   w = i * (2 kappa^2 / pi) * e^{y beta} (1 - e^{-2 pi y}) * K,
//   K = Int_{t0}^{T} 2 Re[ h(t) ] dt,
//   h(t) = exp(i y t + i kappa x coth v) * (-1/4) / sinh^2 v,
//
// where the t<0 half folds onto the t>0 half by conjugation (this also makes
// Re w vanish identically, matching the purely-imaginary theorem). The
// derivative integrand is h(t) * (i kappa coth v) over the same panels.

double contour_beta(double kappa) { return std::min(PI / 2.0, 6.0 * kappa); }

// Panel layout: panel width tracks the local phase slope
// y + kappa x / (2 |sinh v|^2) so each panel spans at most ~one oscillation.
// Near t = 0 the factor exp(-kappa x sin(beta)/(cosh t - cos(beta))) can be
// so small that the region contributes nothing; it is skipped.
std::vector<double> contour_panels(double kappa, double x, double beta,
                                   double y) {
  const double kx = kappa * x;
  const double sb = std::sin(beta);
  const double cb = std::cos(beta);
  const double sh2 = std::sin(beta / 2.0) * std::sin(beta / 2.0);

  double t0 = 0.0;
  constexpr double kDeadExponent = 42.0;
  if (kx * sb / (1.0 - cb) > kDeadExponent)
    t0 = std::max(0.0, std::acosh(cb + kx * sb / kDeadExponent) - 1.0);
  const double t_end = 48.0 + std::log1p(kx);

  std::vector<double> pts;
  pts.push_back(t0);
  double t = t0;
  while (t < t_end) {
    const double s = std::sinh(t / 2.0);
    const double slope = y + 0.5 * kx / (s * s + sh2);
    const double width = std::clamp(2.0 * PI / slope, 1e-4, 1.0);
    t += width;
    pts.push_back(std::min(t, t_end));
  }
  return pts;
}

ModeValue mode_by_contour(double kappa, double x, const QuadratureSpec& spec) {
  const double y = 0.5 / kappa;
  const double beta = contour_beta(kappa);
  const double kx = kappa * x;

  // combined integrand: real part accumulates K (value), imaginary part K'
  // (derivative), so one error-controlled pass covers both
  auto f = [y, beta, kx, kappa](double t) -> cplx {
    const cplx v(0.5 * t, -0.5 * beta);
    const cplx sv = std::sinh(v);
    const cplx cothv = std::cosh(v) / sv;
    const cplx h =
        std::exp(cplx(0.0, y * t) + cplx(0.0, kx) * cothv) * (-0.25) / (sv * sv);
    const double fw = 2.0 * std::real(h);
    const double fd = 2.0 * std::real(h * cplx(0.0, kappa) * cothv);
    return {fw, fd};
  };

  auto res = integrate_panels(f, contour_panels(kappa, x, beta, y), spec);

  const double pref =
      (2.0 * kappa * kappa / PI) * std::exp(y * beta) * (-std::expm1(-2.0 * PI * y));
  return {cplx(0.0, pref * std::real(res.value)),
          cplx(0.0, pref * std::imag(res.value)), pref * res.error,
          res.panels};
}

// Direct evaluation of the defining s-integral without the endpoint
// transform. Valid only where the endpoint oscillation is mild and the
// prefactor does not overflow; kept as the endpoint_transform = none path.
ModeValue mode_direct(double kappa, double x, const QuadratureSpec& spec) {
  const double y = 0.5 / kappa;
  if (PI * y > 700.0)
    throw DomainError("whittaker_mode: kappa too small for the direct path");
  auto val = integrate_adaptive(
      [y, kappa, x](double s) -> cplx {
        const double phase = 2.0 * kappa * x * s + y * std::log(s / (1.0 - s));
        return std::exp(cplx(0.0, phase));
      },
      0.0, 1.0, spec);
  // derivative under the integral sign: extra factor 2 i kappa s
  auto dval = integrate_adaptive(
      [y, kappa, x](double s) -> cplx {
        const double phase = 2.0 * kappa * x * s + y * std::log(s / (1.0 - s));
        return cplx(0.0, 2.0 * kappa * s) * std::exp(cplx(0.0, phase));
      },
      0.0, 1.0, spec);
  const cplx pref = cplx(0.0, 4.0 * kappa * kappa / PI) * std::sinh(PI * y) *
                    std::exp(cplx(0.0, -kappa * x));
  // d/dx [e^{-i k x} I(x)] = e^{-i k x} (I'(x) - i k I(x))
  return {pref * val.value,
          pref * (dval.value - cplx(0.0, kappa) * val.value),
          std::abs(pref) * (val.error + dval.error), val.panels + dval.panels};
}

void check_mode_domain(double kappa, double x) {
  if (!(kappa >= KAPPA_MIN) || !std::isfinite(kappa))
    throw DomainError("whittaker_mode: kappa below 1e-3 or not finite");
  if (!(x >= 0.0) || !std::isfinite(x))
    throw DomainError("whittaker_mode: x must be finite and >= 0");
}

}  // namespace

double gamma_pair(double y) {
  if (y == 0.0) return 1.0;
  const double p = PI * y;
  if (std::abs(p) > 700.0) return 0.0;  // underflows; exact value < 1e-300
  return p / std::sinh(p);
}

ModeValue whittaker_mode_full(double kappa, double x,
                              const QuadratureSpec& spec) {
  check_mode_domain(kappa, x);
  if (x == 0.0) {
    // closed forms: the endpoint integral reduces by the Beta function to
    // w(0) = 2 i kappa, and the series gives dw/dx(0) = -i kappa
    return {cplx(0.0, 2.0 * kappa), cplx(0.0, -kappa), 0.0, 0};
  }
  if (spec.endpoint_transform == EndpointTransform::none)
    return mode_direct(kappa, x, spec);
  return mode_by_contour(kappa, x, spec);
}

std::complex<double> whittaker_mode(double kappa, double x,
                                    const QuadratureSpec& spec) {
  return whittaker_mode_full(kappa, x, spec).w;
}

std::complex<double> whittaker_mode_derivative(double kappa, double x,
                                               const QuadratureSpec& spec) {
  return whittaker_mode_full(kappa, x, spec).dw_dx;
}

std::complex<double> whittaker_mode_time(double kappa, double x, double t_fs,
                                         const QuadratureSpec& spec) {
  const cplx w0 = whittaker_mode(kappa, x, spec);
  return w0 * std::exp(cplx(0.0, -OMEGA0_FS * kappa * kappa * t_fs));
}

std::complex<double> asymptotic_mode(double kappa, double x) {
  if (!(kappa > 0.0)) throw DomainError("asymptotic_mode: kappa must be > 0");
  const double guard = 100.0 * std::max(1.0, 1.0 / kappa);
  if (!(x >= guard))
    throw DomainError("asymptotic_mode: x below validity guard");
  const double phase = kappa * x + std::log(x) / (2.0 * kappa);
  return std::exp(cplx(0.0, phase)) / x;
}

std::complex<double> free_mode(double kappa, double x) {
  if (!(kappa > 0.0) || !(x >= 0.0))
    throw DomainError("free_mode: kappa must be > 0 and x >= 0");
  if (x == 0.0) return {0.0, 2.0 * kappa};
  return {0.0, 2.0 * std::sin(kappa * x) / x};
}

std::complex<double> free_mode_derivative(double kappa, double x) {
  if (!(kappa > 0.0) || !(x >= 0.0))
    throw DomainError("free_mode_derivative: kappa must be > 0 and x >= 0");
  if (x == 0.0) return {0.0, 0.0};
  return {0.0, 2.0 * (kappa * std::cos(kappa * x) - std::sin(kappa * x) / x) / x};
}

}  // namespace whitpack
