#pragma once

// Unit-coordinate helpers shared by body.cpp and functionals.cpp. Everything
// here works with the unscaled profile on [-1, 1].

#include "revolv/body.hpp"

#include <optional>
#include <vector>

namespace revolv::detail {

/// The chord of the line s*xi + h through the region |x2| <= f(x1), or
/// nullopt when the line misses the interior.
std::optional<Chord> unit_chord(const Profile& f, double slope, double intercept);

/// Integrates g over [a, b] after the substitution
/// xi = a + (b - a)(1 - cos theta)/2, which removes square-root behaviour at
/// both ends. Knots are given in xi.
double integrate_chord(const ScalarFunction& g, double a, double b,
                       const std::vector<double>& knots);

/// q^{k/2} for q >= 0 (zero otherwise), with integer powers done exactly.
double half_power(double q, int k) noexcept;

/// \int_{-x}^{y} (f^2 - L^2)^{(d-2)/2} d xi.
double unit_section_integral(const Profile& f, int dimension, const Chord& chord);

struct MaxCondition {
  /// \int (f^2 - L^2)^{(d-4)/2} L
  double value;
  /// \int (f^2 - L^2)^{(d-4)/2} |L|
  double scale;
};

MaxCondition unit_max_condition(const Profile& f, int dimension, const Chord& chord);

}  // namespace revolv::detail
