#pragma once

#include <vector>

namespace revolv {

/// sqrt(7)/3: the slope at which the maximal chords of a nearly round body
/// cross |xi| = 3/4.
inline constexpr double kRegimeSlope = 0.881917103688196863;

struct SlopeGridSpec {
  double s_min = 0.0;
  double s_max = 20.0;
  int count = 100;
  /// Half-width of the window around kRegimeSlope that receives
  /// `cluster_count` extra, evenly spaced points. Zero disables clustering.
  double cluster_half_width = 0.05;
  int cluster_count = 11;
  /// Smallest slope of the geometric part when s_min is zero.
  double geometric_floor = 1e-2;
};

/// Sorted grid of exactly `count` slopes: s = 0 when s_min <= 0, the
/// cluster around kRegimeSlope, and geometric spacing filling the rest.
/// Throws DomainError for inconsistent specs.
std::vector<double> make_slope_grid(const SlopeGridSpec& spec);

}  // namespace revolv
