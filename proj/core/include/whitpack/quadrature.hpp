#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "whitpack/errors.hpp"

namespace whitpack {

enum class EndpointTransform { none, double_exponential };

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;
  EndpointTransform endpoint_transform = EndpointTransform::double_exponential;
};

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Legendre nodes/weights by Newton iteration; results cached per n.
const GaussRule& gauss_legendre(int n);

template <typename V>
struct QuadResult {
  V value{};
  double error = 0.0;   // absolute error estimate
  int panels = 0;
};

namespace detail {

// 15-point Kronrod nodes with embedded 7-point Gauss rule (QUADPACK dqk15)
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kGK15WK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kGK15WG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename F>
auto gk15_panel(F&& f, double a, double b, double* err) {
  using V = decltype(f(0.0));
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  V kron{};
  V gauss{};
  double resabs = 0.0;
  for (int j = 0; j < 8; ++j) {
    const double dx = h * kGK15Nodes[j];
    if (j == 7) {
      const V fc = f(c);
      kron += kGK15WK[7] * fc;
      gauss += kGK15WG[3] * fc;
      resabs += kGK15WK[7] * std::abs(fc);
    } else {
      const V f1 = f(c - dx);
      const V f2 = f(c + dx);
      kron += kGK15WK[j] * (f1 + f2);
      resabs += kGK15WK[j] * (std::abs(f1) + std::abs(f2));
      if (j % 2 == 1) gauss += kGK15WG[j / 2] * (f1 + f2);
    }
  }
  kron *= h;
  gauss *= h;
  resabs *= std::abs(h);
  // QUADPACK-style sharpened estimate
  double raw = std::abs(kron - gauss);
  if (resabs > 0.0 && raw > 0.0) {
    const double scaled = std::pow(200.0 * raw / resabs, 1.5);
    raw = (scaled < 1.0) ? resabs * scaled : resabs;
  }
  *err = raw;
  return kron;
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration on [a, b]: repeatedly bisects
// the panel with the largest error estimate. Deterministic for a given
// integrand and spec.
template <typename F>
auto integrate_adaptive(F&& f, double a, double b, const QuadratureSpec& spec)
    -> QuadResult<decltype(f(0.0))> {
  using V = decltype(f(0.0));
  struct Panel {
    double a, b, err;
    V val;
  };
  std::vector<Panel> panels;
  double e0 = 0.0;
  V v0 = detail::gk15_panel(f, a, b, &e0);
  panels.push_back({a, b, e0, v0});

  auto total = [&panels]() {
    V v{};
    double e = 0.0;
    for (const auto& p : panels) {
      v += p.val;
      e += p.err;
    }
    return std::pair<V, double>(v, e);
  };

  for (int it = 0; it < spec.max_subdivisions; ++it) {
    auto [value, err] = total();
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
    if (err <= tol) return {value, err, static_cast<int>(panels.size())};
    std::size_t worst = 0;
    for (std::size_t i = 1; i < panels.size(); ++i)
      if (panels[i].err > panels[worst].err) worst = i;
    const Panel p = panels[worst];
    const double m = 0.5 * (p.a + p.b);
    double e1 = 0.0, e2 = 0.0;
    V l = detail::gk15_panel(f, p.a, m, &e1);
    V r = detail::gk15_panel(f, m, p.b, &e2);
    panels[worst] = {p.a, m, e1, l};
    panels.push_back({m, p.b, e2, r});
  }
  auto [value, err] = total();
  const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
  if (err > tol)
    throw QuadratureNonConvergence(
        "adaptive quadrature exceeded max_subdivisions", err);
  return {value, err, static_cast<int>(panels.size())};
}

// Variant starting from a caller-supplied panelization (used for oscillatory
// integrands where the panel layout follows the local wavelength).
template <typename F>
auto integrate_panels(F&& f, const std::vector<double>& breakpoints,
                      const QuadratureSpec& spec)
    -> QuadResult<decltype(f(0.0))> {
  using V = decltype(f(0.0));
  struct Panel {
    double a, b, err;
    V val;
  };
  std::vector<Panel> panels;
  panels.reserve(breakpoints.size());
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    double e = 0.0;
    V v = detail::gk15_panel(f, breakpoints[i], breakpoints[i + 1], &e);
    panels.push_back({breakpoints[i], breakpoints[i + 1], e, v});
  }
  auto total = [&panels]() {
    V v{};
    double e = 0.0;
    for (const auto& p : panels) {
      v += p.val;
      e += p.err;
    }
    return std::pair<V, double>(v, e);
  };
  for (int it = 0; it < spec.max_subdivisions; ++it) {
    auto [value, err] = total();
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
    if (err <= tol) return {value, err, static_cast<int>(panels.size())};
    std::size_t worst = 0;
    for (std::size_t i = 1; i < panels.size(); ++i)
      if (panels[i].err > panels[worst].err) worst = i;
    const Panel p = panels[worst];
    const double m = 0.5 * (p.a + p.b);
    double e1 = 0.0, e2 = 0.0;
    V l = detail::gk15_panel(f, p.a, m, &e1);
    V r = detail::gk15_panel(f, m, p.b, &e2);
    panels[worst] = {p.a, m, e1, l};
    panels.push_back({m, p.b, e2, r});
  }
  auto [value, err] = total();
  const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
  if (err > tol)
    throw QuadratureNonConvergence(
        "panel quadrature exceeded max_subdivisions", err);
  return {value, err, static_cast<int>(panels.size())};
}

}  // namespace whitpack
