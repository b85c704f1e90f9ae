#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace whitpack {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// invalid physical input (negative radius, kappa too small, E <= 0, ...)
struct DomainError : Error {
  using Error::Error;
};

// adaptive quadrature ran out of subdivisions before reaching tolerance
struct QuadratureNonConvergence : Error {
  QuadratureNonConvergence(const std::string& what, double estimate)
      : Error(what), error_estimate(estimate) {}
  double error_estimate;
};

// a least-squares fit did not meet its quality contract
struct FitFailure : Error {
  FitFailure(const std::string& what, double r2_) : Error(what), r2(r2_) {}
  double r2;
};

// envelope extraction found too few oscillation maxima to fit
struct InsufficientPeaks : Error {
  InsufficientPeaks(const std::string& what, int found_)
      : Error(what), found(found_) {}
  int found;
};

// power-law regression with no spread in the abscissa
struct RankDeficient : Error {
  using Error::Error;
};

// a tracked density minimum merged with neighboring structure; carries the
// merge time and the curve accumulated up to that point
struct NodeLost : Error {
  NodeLost(const std::string& what, double merge_time_fs_,
           std::vector<double> partial_curve_)
      : Error(what),
        merge_time_fs(merge_time_fs_),
        partial_curve(std::move(partial_curve_)) {}
  double merge_time_fs;
  std::vector<double> partial_curve;
};

}  // namespace whitpack
