#pragma once

// Central section, maximal section and projection functions of a body of
// revolution, evaluated at the directions
//   u(s) = (-s, 1, 0, ..., 0) / sqrt(1 + s^2),
// whose orthogonal hyperplanes are the H(L) with L of slope s. The axis
// direction u = e1 (s -> infinity) has its own entry point.

#include "revolv/body.hpp"

#include <vector>

namespace revolv {

struct MaxSectionResult {
  /// Maximal (d-1)-volume.
  double volume;
  /// Optimal intercept h*.
  double intercept;
  Chord chord;
  /// \int (f^2 - L^2)^{(d-4)/2} L at h* (zero at an exact maximizer).
  double residual;
  /// \int (f^2 - L^2)^{(d-4)/2} |L| at h*; normalizes `residual`.
  double residual_scale;
};

/// A_K(u(s)): the section through the origin.
double central_section(const BodyOfRevolution& body, double slope);

/// A_K(u(s)) from the radial function:
/// (1/(d-1)) |S^{d-3}| \int_0^pi rho(beta)^{d-1} sin^{d-3}(beta) d beta.
/// Requires d >= 4.
double central_section_via_radial(const BodyOfRevolution& body, double slope);

/// M_K(u(s)): golden-section search over the intercept, then bisection on
/// the first-order condition around the golden-section answer.
MaxSectionResult maximal_section(const BodyOfRevolution& body, double slope);

struct DistributionMaximum {
  double volume;
  /// Level t solving s = 2 t / |{f > t}|.
  double level;
};

/// M_K(u(s)) for d = 4 from the distribution function of the profile.
/// Requires s > 0.
DistributionMaximum m_via_distribution(const BodyOfRevolution& body, double slope);

/// \int_{-x}^{y} (f^2 - L^2)^{(d-4)/2} L d xi for the line (s, h).
double max_condition_residual(const BodyOfRevolution& body, double slope, double intercept);

/// P_K(u(s)) = (d-2) v_{d-2} \int_0^{max f} r^{d-3} w(r) dr, where w(r) is the
/// width, along the section line direction, of the planar slice
/// {(xi, x2) : x2^2 <= f(xi)^2 - r^2}.
double projection(const BodyOfRevolution& body, double slope);

struct AxisFunctionals {
  double central;
  double maximal;
  double projection;
};

/// A, M, P at u = e1, where sections are (d-1)-balls.
AxisFunctionals axis_functionals(const BodyOfRevolution& body);

/// One row of a slope sweep.
struct FunctionalRow {
  double slope;
  double central;
  double maximal;
  double projection;
  double intercept;
  double x;
  double y;
};

/// Evaluates A, M, P at every slope, distributing slopes over worker
/// threads. Rows come back in input order.
std::vector<FunctionalRow> sweep(const BodyOfRevolution& body, const std::vector<double>& slopes);

}  // namespace revolv
