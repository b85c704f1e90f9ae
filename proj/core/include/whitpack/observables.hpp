#pragma once

#include <vector>

#include "whitpack/packet.hpp"
#include "whitpack/quadrature.hpp"

namespace whitpack {

// Half-Gaussian envelope fit of the t=0 wavepacket. Peaks are located on
// |Im Psi| (the field is purely imaginary at t=0); the fitted amplitudes are
// the reduced values q = r * |Im Psi| at the refined peak positions, i.e. the
// envelope of the half-line wavefunction u = r Psi whose free-space form is an
// exact Gaussian. Fitting q instead of |Psi| removes the 1/r geometric factor
// that would otherwise skew the scale estimate.
struct EnvelopeFit {
  std::vector<double> peak_positions;  // a0, all detected peaks, increasing
  std::vector<double> peak_values;     // |Im Psi| at the peaks
  std::size_t body_first = 0;  // index range of peaks used in the fit
  std::size_t body_last = 0;   // (inclusive), selected around the tallest q
  double raw_scale = 0.0;      // a0, Gaussian scale s of A exp(-r^2 / 2 s^2)
  double fitted_sigma = 0.0;   // a0, reported spread: std of the half-line
                               // profile, sqrt(1 - 2/pi) * raw_scale
  double fit_r2 = 0.0;         // goodness of the log-space regression
};

EnvelopeFit extract_envelope(const RadialField& field);

// |<Psi(0)|Psi(t)>|^2 over r in (0, 5 a0), normalized to 1 at t=0, with a
// zero-centered Gaussian fit exp(-t^2 / 2 s_t^2) over the decay core
// (overlap >= e^-2; clipped momentum windows produce slower-than-Gaussian
// tails that are not part of the shape-holding timescale). As with the
// spatial envelope, the reported lifetime is the half-line std
// sqrt(1 - 2/pi) * s_t.
struct OverlapSeries {
  std::vector<double> times;   // fs, times[0] = 0
  std::vector<double> values;  // dimensionless, values[0] = 1
  double raw_sigma_t = 0.0;    // fs, fitted Gaussian scale s_t
  double fitted_sigma_t = 0.0; // fs, reported lifetime
  double fit_r2 = 0.0;
};

OverlapSeries overlap_series(const PacketParams& params,
                             const std::vector<double>& times,
                             ModeKind kind = ModeKind::whittaker,
                             const QuadratureSpec& spec = {}, int threads = 0);

// Geometric-then-linear mesh of `count` points from 0 to t_max, used for
// overlap and decay sampling; resolves both the early quadratic regime and
// the tail.
std::vector<double> overlap_time_mesh(double t_max_fs, int count = 64);

// Convenience wrapper: runs overlap_series on an adaptive mesh (initial span
// five predicted lifetimes, doubled until the overlap has decayed well below
// the fit core) and returns the fitted lifetime in fs. The full series is
// available through the optional out parameter.
double diffraction_lifetime(const PacketParams& params,
                            const QuadratureSpec& spec = {}, int threads = 0,
                            OverlapSeries* series_out = nullptr);

struct NodeTrack {
  double time_fs = 0.0;
  std::vector<double> node_positions;        // a0, increasing
  std::vector<double> min_density_at_nodes;  // r^2 |Psi|^2 at the nodes
};

// At t=0 the field is purely imaginary and nodes are sign changes of Im Psi,
// refined by bisection (to 1e-8 a0) when the field carries a live evaluator.
// At t>0 the density minima no longer reach zero; a minimum counts as a
// surviving node while it stays below 10% of the mean of its two flanking
// maxima.
NodeTrack find_nodes(const RadialField& field);

// Tracks the density minimum that starts at t=0 node `node_index` across
// `times`, returning the minimum value of r^2 |Psi|^2 at each time. Throws
// NodeLost (with the partial curve) once the minimum merges with neighboring
// structure per the 10% flanking-maxima rule.
std::vector<double> node_lifting_curve(const PacketField& field,
                                       std::size_t node_index,
                                       const std::vector<double>& times);

}  // namespace whitpack
