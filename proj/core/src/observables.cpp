#include "whitpack/observables.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "whitpack/errors.hpp"
#include "whitpack/laws.hpp"
#include "whitpack/parallel.hpp"

namespace whitpack {

namespace {

using cplx = std::complex<double>;

// std of |X| for X ~ N(0, s^2); converts a fitted Gaussian scale into the
// spread of the half-line profile it describes
const double HALF_LINE_STD = std::sqrt(1.0 - 2.0 / 3.14159265358979323846);

// peaks with reduced amplitude below this fraction of the tallest one are
// treated as tail/noise and excluded from the envelope fit
constexpr double BODY_FRACTION = 0.01;

// overlap samples below this value are dropped from the log-space fit
// The lifetime fit uses only the Gaussian core of the overlap decay,
// O >= e^-2 (t up to two fitted widths). Late-time overlap of a packet whose
// momentum window is clipped at the kappa floor decays slower than Gaussian,
// and the lifetime is a statement about the core, not the tail.
constexpr double OVERLAP_CORE_FLOOR = 0.13533528323661270;

// a density minimum survives as a node while it is below this fraction of
// the mean of its two flanking maxima
constexpr double NODE_SURVIVAL_FRACTION = 0.10;

struct Peak {
  double pos;
  double value;
};

// vertex of the parabola through three samples; falls back to the middle
// sample when the points are not concave
Peak refine_parabolic(double x1, double y1, double x2, double y2, double x3,
                      double y3) {
  const double d1 = (y2 - y1) / (x2 - x1);
  const double d2 = (y3 - y2) / (x3 - x2);
  const double a2 = (d2 - d1) / (x3 - x1);
  if (a2 == 0.0) return {x2, y2};
  const double xv = 0.5 * (x1 + x2) - d1 / (2.0 * a2);
  if (!(xv > x1) || !(xv < x3)) return {x2, y2};
  const double yv = y1 + d1 * (xv - x1) + a2 * (xv - x1) * (xv - x2);
  return {xv, yv};
}

struct LogFit {
  double slope;
  double intercept;
  double r2;
};

LogFit ols(const std::vector<double>& u, const std::vector<double>& y) {
  const std::size_t n = u.size();
  double su = 0, sy = 0, suu = 0, suy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    su += u[i];
    sy += y[i];
    suu += u[i] * u[i];
    suy += u[i] * y[i];
  }
  const double det = n * suu - su * su;
  if (det <= 0.0) throw RankDeficient("ols: no spread in the abscissa");
  LogFit f;
  f.slope = (n * suy - su * sy) / det;
  f.intercept = (sy - f.slope * su) / n;
  double ss_res = 0, ss_tot = 0;
  const double ym = sy / n;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (f.intercept + f.slope * u[i]);
    ss_res += e * e;
    ss_tot += (y[i] - ym) * (y[i] - ym);
  }
  f.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

}  // namespace

EnvelopeFit extract_envelope(const RadialField& field) {
  if (field.time_fs != 0.0) {
    throw DomainError("extract_envelope: defined on the t=0 field only");
  }
  const std::vector<double>& r = field.grid.r_values;
  const std::vector<cplx>& amp = field.amplitudes;
  if (r.size() < 7) {
    throw DomainError("extract_envelope: grid too small");
  }
  std::vector<Peak> peaks;
  for (std::size_t i = 1; i + 1 < r.size(); ++i) {
    const double pm = std::abs(std::imag(amp[i - 1]));
    const double p0 = std::abs(std::imag(amp[i]));
    const double pp = std::abs(std::imag(amp[i + 1]));
    if (p0 > pm && p0 >= pp && p0 > 0.0) {
      peaks.push_back(
          refine_parabolic(r[i - 1], pm, r[i], p0, r[i + 1], pp));
    }
  }
  if (peaks.size() < 5) {
    throw InsufficientPeaks("extract_envelope: found " +
                                std::to_string(peaks.size()) +
                                " oscillation maxima, need 5",
                            static_cast<int>(peaks.size()));
  }

  // reduced amplitudes q = r p; contiguous body around the tallest q
  std::vector<double> q(peaks.size());
  std::size_t k_top = 0;
  for (std::size_t k = 0; k < peaks.size(); ++k) {
    q[k] = peaks[k].pos * peaks[k].value;
    if (q[k] > q[k_top]) k_top = k;
  }
  const double floor = BODY_FRACTION * q[k_top];
  std::size_t first = k_top, last = k_top;
  while (first > 0 && q[first - 1] >= floor) --first;
  while (last + 1 < q.size() && q[last + 1] >= floor) ++last;
  const std::size_t body = last - first + 1;
  if (body < 5) {
    throw InsufficientPeaks("extract_envelope: envelope body has " +
                                std::to_string(body) +
                                " usable maxima, need 5",
                            static_cast<int>(body));
  }

  std::vector<double> u(body), y(body);
  for (std::size_t k = 0; k < body; ++k) {
    u[k] = peaks[first + k].pos * peaks[first + k].pos;
    y[k] = std::log(q[first + k]);
  }
  const LogFit fit = ols(u, y);
  if (!(fit.slope < 0.0)) {
    throw FitFailure("extract_envelope: amplitude profile is not decaying",
                     fit.r2);
  }

  EnvelopeFit out;
  out.peak_positions.resize(peaks.size());
  out.peak_values.resize(peaks.size());
  for (std::size_t k = 0; k < peaks.size(); ++k) {
    out.peak_positions[k] = peaks[k].pos;
    out.peak_values[k] = peaks[k].value;
  }
  out.body_first = first;
  out.body_last = last;
  out.raw_scale = std::sqrt(-0.5 / fit.slope);
  out.fitted_sigma = HALF_LINE_STD * out.raw_scale;
  out.fit_r2 = fit.r2;
  return out;
}

namespace {

// 5-node Gauss rule on every interval of a wavelength-resolved grid over
// (0, r_max); returns node positions and weights for integrals against
// r^2 dr
void gauss_nodes_r2(const PacketParams& params, double r_max_a0,
                    std::vector<double>& nodes, std::vector<double>& weights) {
  const RadialGrid edges = RadialGrid::resolve(params, r_max_a0, 6);
  const GaussRule& g5 = gauss_legendre(5);
  const std::size_t n_int = edges.r_values.size() - 1;
  nodes.resize(n_int * g5.nodes.size());
  weights.resize(nodes.size());
  for (std::size_t k = 0; k < n_int; ++k) {
    const double a = edges.r_values[k];
    const double b = edges.r_values[k + 1];
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t j = 0; j < g5.nodes.size(); ++j) {
      const double rq = mid + half * g5.nodes[j];
      nodes[k * g5.nodes.size() + j] = rq;
      weights[k * g5.nodes.size() + j] = half * g5.weights[j] * rq * rq;
    }
  }
}

}  // namespace

OverlapSeries overlap_series(const PacketParams& params,
                             const std::vector<double>& times, ModeKind kind,
                             const QuadratureSpec& spec, int threads) {
  if (times.empty() || times[0] != 0.0) {
    throw DomainError("overlap_series: time mesh must start at 0");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw DomainError("overlap_series: times must be strictly increasing");
    }
  }
  // fixed integration range (0, 5 a0): the overlap probes the stationary
  // core of the packet, not its full extent
  std::vector<double> nodes, weights;
  gauss_nodes_r2(params, 5.0, nodes, weights);
  RadialGrid node_grid;
  node_grid.r_values = nodes;
  node_grid.r_max = 5.0;
  node_grid.points_per_wavelength = 6;
  const PacketField field(params, node_grid, kind, spec,
                          suggested_kappa_points(params, node_grid.r_max),
                          threads);

  const RadialField f0 = field.at_time(0.0);
  double denom = 0.0;
  for (std::size_t q = 0; q < nodes.size(); ++q) {
    denom += weights[q] * std::norm(f0.amplitudes[q]);
  }
  if (!(denom > 0.0)) {
    throw DomainError("overlap_series: empty packet on (0, 5 a0)");
  }

  OverlapSeries out;
  out.times = times;
  out.values.assign(times.size(), 0.0);
  out.values[0] = 1.0;
  parallel_for(times.size() - 1, threads,
               [&](std::size_t a, std::size_t b) {
                 for (std::size_t m = a; m < b; ++m) {
                   const RadialField ft = field.at_time(times[m + 1]);
                   cplx z = 0.0;
                   for (std::size_t q = 0; q < nodes.size(); ++q) {
                     z += weights[q] * std::conj(f0.amplitudes[q]) *
                          ft.amplitudes[q];
                   }
                   out.values[m + 1] = std::norm(z) / (denom * denom);
                 }
               });

  // zero-centered Gaussian fit exp(-t^2 / 2 s^2): through-origin regression
  // of -ln O on t^2
  double suu = 0.0, suv = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (out.values[i] < OVERLAP_CORE_FLOOR) continue;
    const double u = times[i] * times[i];
    const double v = -std::log(out.values[i]);
    suu += u * u;
    suv += u * v;
    ++used;
  }
  if (used < 4 || !(suv > 0.0)) {
    throw FitFailure("overlap_series: too few decaying samples to fit", 0.0);
  }
  const double slope = suv / suu;
  double ss_res = 0.0, ss_tot = 0.0, vm = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (out.values[i] < OVERLAP_CORE_FLOOR) continue;
    vm += -std::log(out.values[i]);
  }
  vm /= static_cast<double>(used);
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (out.values[i] < OVERLAP_CORE_FLOOR) continue;
    const double v = -std::log(out.values[i]);
    const double e = v - slope * times[i] * times[i];
    ss_res += e * e;
    ss_tot += (v - vm) * (v - vm);
  }
  out.raw_sigma_t = 1.0 / std::sqrt(2.0 * slope);
  out.fitted_sigma_t = HALF_LINE_STD * out.raw_sigma_t;
  out.fit_r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return out;
}

std::vector<double> overlap_time_mesh(double t_max_fs, int count) {
  if (!(t_max_fs > 0.0) || count < 8) {
    throw DomainError("overlap_time_mesh: invalid span or count");
  }
  const int n_geo = count / 4;
  const int n_lin = count - 1 - n_geo;
  std::vector<double> mesh;
  mesh.reserve(static_cast<std::size_t>(count));
  mesh.push_back(0.0);
  const double t0 = 1e-3 * t_max_fs;
  const double t1 = 0.25 * t_max_fs;
  const double ratio = std::pow(t1 / t0, 1.0 / (n_geo - 1));
  double t = t0;
  for (int i = 0; i < n_geo; ++i, t *= ratio) mesh.push_back(t);
  const double step = (t_max_fs - t1) / n_lin;
  for (int i = 1; i <= n_lin; ++i) mesh.push_back(t1 + i * step);
  return mesh;
}

double diffraction_lifetime(const PacketParams& params,
                            const QuadratureSpec& spec, int threads,
                            OverlapSeries* series_out) {
  double span =
      5.0 * lifetime_law_fs(params.energy_eV, params.spread_eV);
  OverlapSeries series;
  for (int attempt = 0; attempt < 8; ++attempt) {
    series = overlap_series(params, overlap_time_mesh(span),
                            ModeKind::whittaker, spec, threads);
    const double tail =
        *std::min_element(series.values.begin(), series.values.end());
    // enough span once the overlap is well below the fit core
    if (tail < 0.02 || attempt == 7) break;
    span *= 2.0;
  }
  if (series_out) *series_out = series;
  return series.fitted_sigma_t;
}

namespace {

double density_at(const RadialField& f, std::size_t i) {
  const double r = f.grid.r_values[i];
  return r * r * std::norm(f.amplitudes[i]);
}

// local minima of r^2|Psi|^2 that pass the flanking-maxima survival rule;
// used for t>0 fields and for node tracking
struct DensityMinimum {
  double pos;
  double value;
  std::size_t index;
};

std::vector<DensityMinimum> surviving_minima(const RadialField& f) {
  const std::size_t n = f.grid.r_values.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = density_at(f, i);
  std::vector<DensityMinimum> out;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(d[i] < d[i - 1] && d[i] <= d[i + 1])) continue;
    // nearest local maxima on both sides
    double left = -1.0, right = -1.0;
    for (std::size_t k = i; k-- > 1;) {
      if (d[k] > d[k - 1] && d[k] >= d[k + 1]) {
        left = d[k];
        break;
      }
    }
    for (std::size_t k = i + 1; k + 1 < n; ++k) {
      if (d[k] > d[k - 1] && d[k] >= d[k + 1]) {
        right = d[k];
        break;
      }
    }
    if (left < 0.0 || right < 0.0) continue;
    if (d[i] >= NODE_SURVIVAL_FRACTION * 0.5 * (left + right)) continue;
    const Peak p = refine_parabolic(f.grid.r_values[i - 1], d[i - 1],
                                    f.grid.r_values[i], d[i],
                                    f.grid.r_values[i + 1], d[i + 1]);
    out.push_back({p.pos, std::max(p.value, 0.0), i});
  }
  return out;
}

}  // namespace

NodeTrack find_nodes(const RadialField& field) {
  NodeTrack track;
  track.time_fs = field.time_fs;
  const std::vector<double>& r = field.grid.r_values;
  if (r.size() < 3) throw DomainError("find_nodes: grid too small");

  if (field.time_fs == 0.0) {
    // purely imaginary field: nodes are sign changes of Im Psi
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
      const double a = std::imag(field.amplitudes[i]);
      const double b = std::imag(field.amplitudes[i + 1]);
      if (!(a * b < 0.0)) continue;
      double lo = 2.0 * r[i], hi = 2.0 * r[i + 1];  // x units
      if (field.source) {
        double flo = std::imag(field.source->eval_x(lo, 0.0));
        while (hi - lo > 2e-8) {
          const double mid = 0.5 * (lo + hi);
          const double fmid = std::imag(field.source->eval_x(mid, 0.0));
          if ((flo < 0.0) == (fmid < 0.0)) {
            lo = mid;
            flo = fmid;
          } else {
            hi = mid;
          }
        }
      } else {
        // no live evaluator: linear interpolation on the grid samples
        lo = hi = 2.0 * (r[i] - a * (r[i + 1] - r[i]) / (b - a));
      }
      const double x_node = 0.5 * (lo + hi);
      const double r_node = 0.5 * x_node;
      double dens;
      if (field.source) {
        dens = r_node * r_node * std::norm(field.source->eval_x(x_node, 0.0));
      } else {
        dens = 0.0;
      }
      track.node_positions.push_back(r_node);
      track.min_density_at_nodes.push_back(dens);
    }
    return track;
  }

  for (const DensityMinimum& m : surviving_minima(field)) {
    track.node_positions.push_back(m.pos);
    track.min_density_at_nodes.push_back(m.value);
  }
  return track;
}

std::vector<double> node_lifting_curve(const PacketField& field,
                                       std::size_t node_index,
                                       const std::vector<double>& times) {
  const NodeTrack start = find_nodes(field.at_time(0.0));
  if (node_index >= start.node_positions.size()) {
    throw DomainError("node_lifting_curve: node index " +
                      std::to_string(node_index) + " out of range, found " +
                      std::to_string(start.node_positions.size()) + " nodes");
  }
  double pos = start.node_positions[node_index];
  // tracking window: stay within a fraction of the gap to neighboring nodes
  const auto& np = start.node_positions;
  double gap_l = node_index > 0 ? pos - np[node_index - 1] : pos;
  double gap_r = node_index + 1 < np.size() ? np[node_index + 1] - pos : gap_l;
  if (node_index == 0 && np.size() > 1) gap_l = std::min(gap_l, gap_r);
  const double half_window = 0.45 * std::min(gap_l, gap_r);

  std::vector<double> curve;
  curve.reserve(times.size());
  for (double t : times) {
    if (t == 0.0) {
      curve.push_back(start.min_density_at_nodes[node_index]);
      continue;
    }
    const RadialField ft = field.at_time(t);
    const std::vector<DensityMinimum> minima = surviving_minima(ft);
    const DensityMinimum* best = nullptr;
    for (const DensityMinimum& m : minima) {
      if (std::abs(m.pos - pos) > half_window) continue;
      if (!best || std::abs(m.pos - pos) < std::abs(best->pos - pos)) {
        best = &m;
      }
    }
    if (!best) {
      throw NodeLost("node_lifting_curve: minimum merged with neighboring "
                     "structure at t = " +
                         std::to_string(t) + " fs",
                     t, curve);
    }
    curve.push_back(best->value);
    pos = best->pos;
  }
  return curve;
}

}  // namespace whitpack
