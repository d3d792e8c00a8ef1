#pragma once

// Bodies of revolution K = {x in R^d : x2^2 + ... + xd^2 <= lambda^2 f^2(x1/lambda)}
// and their sections by hyperplanes H(L) = {x2 = s x1 + h}.

#include "revolv/profile.hpp"
#include "revolv/solvers.hpp"

namespace revolv {

class BodyOfRevolution {
 public:
  /// Throws DomainError unless dimension >= 3 and scale > 0.
  BodyOfRevolution(int dimension, Profile profile, double scale = 1.0);

  /// The Euclidean unit ball of the given dimension.
  static BodyOfRevolution ball(int dimension, double scale = 1.0);

  int dimension() const noexcept { return dimension_; }
  const Profile& profile() const noexcept { return profile_; }
  double scale() const noexcept { return scale_; }

  /// Radius of the (d-1)-ball cut by x1 = x (zero outside the support).
  double radius_at(double x) const noexcept;

 private:
  int dimension_;
  Profile profile_;
  double scale_;
};

/// The section line L(xi) = slope * xi + intercept together with the
/// abscissas where it leaves the body's (x1, x2) cross-section.
struct Chord {
  double slope;
  double intercept;
  /// -x in the usual notation.
  double left;
  /// y in the usual notation.
  double right;

  double x() const noexcept { return -left; }
  double y() const noexcept { return right; }
  double line(double xi) const noexcept { return slope * xi + intercept; }
};

/// Throws DomainError when the line misses the interior.
Chord chord_endpoints(const BodyOfRevolution& body, double slope, double intercept);

/// (d-1)-volume of K cut by H(L); zero when the line misses the interior.
double section_volume(const BodyOfRevolution& body, double slope, double intercept);

/// Intercepts h for which the line of the given slope meets the interior.
Bracket intercept_range(const BodyOfRevolution& body, double slope);

/// Direction in the (x1, x2)-plane. Other directions reduce to this plane by
/// rotational symmetry. Need not be normalized.
struct PlaneDirection {
  double axial;
  double transverse;
};

/// Support function h_K(u).
double support(const BodyOfRevolution& body, PlaneDirection u);

/// Radial function rho_K(u); requires the origin in the interior.
double radial(const BodyOfRevolution& body, PlaneDirection u);

}  // namespace revolv
