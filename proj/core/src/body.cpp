#include "revolv/body.hpp"

#include "chord.hpp"
#include "revolv/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace revolv {

namespace detail {

std::optional<Chord> unit_chord(const Profile& f, double slope, double intercept) {
  // f - |L| is concave; its positivity set is the chord.
  auto margin = [&](double xi) { return f.value(xi) - std::abs(slope * xi + intercept); };
  const Extremum peak = maximize_unimodal(margin, Bracket(-1.0, 1.0), 1e-13);
  if (!(peak.value > 0.0)) return std::nullopt;

  double left = -1.0;
  double right = 1.0;
  if (margin(-1.0) < 0.0) left = bisect_root(margin, Bracket(-1.0, peak.argument), 0.0);
  if (margin(1.0) < 0.0) right = bisect_root(margin, Bracket(peak.argument, 1.0), 0.0);
  return Chord{slope, intercept, left, right};
}

double integrate_chord(const ScalarFunction& g, double a, double b,
                       const std::vector<double>& knots) {
  if (!(b > a)) return 0.0;
  const double half = 0.5 * (b - a);
  QuadratureSpec spec;
  for (double k : knots) {
    if (k > a && k < b) spec.knots.push_back(std::acos(1.0 - (k - a) / half));
  }
  auto integrand = [&](double theta) {
    const double xi = std::clamp(a + half * (1.0 - std::cos(theta)), a, b);
    return g(xi) * half * std::sin(theta);
  };
  return integrate(integrand, Bracket(0.0, std::numbers::pi), spec);
}

double half_power(double q, int k) noexcept {
  if (!(q > 0.0)) return k == 0 ? 1.0 : 0.0;
  if (k % 2 == 0) {
    double r = 1.0;
    for (int i = 0; i < k / 2; ++i) r *= q;
    return r;
  }
  return std::pow(q, 0.5 * k);
}

double unit_section_integral(const Profile& f, int dimension, const Chord& chord) {
  const int k = dimension - 2;
  auto g = [&](double xi) {
    const double fx = f.value(xi);
    const double l = chord.line(xi);
    return half_power((fx - l) * (fx + l), k);
  };
  return integrate_chord(g, chord.left, chord.right, f.knots());
}

MaxCondition unit_max_condition(const Profile& f, int dimension, const Chord& chord) {
  const int k = dimension - 4;
  auto weight = [&](double xi) {
    const double fx = f.value(xi);
    const double l = chord.line(xi);
    const double q = (fx - l) * (fx + l);
    if (k < 0) return q > 0.0 ? 1.0 / std::sqrt(q) : 0.0;
    return half_power(q, k);
  };
  const auto knots = f.knots();
  const double value = integrate_chord(
      [&](double xi) { return weight(xi) * chord.line(xi); }, chord.left, chord.right, knots);
  const double scale = integrate_chord(
      [&](double xi) { return weight(xi) * std::abs(chord.line(xi)); }, chord.left,
      chord.right, knots);
  return MaxCondition{value, scale};
}

}  // namespace detail

BodyOfRevolution::BodyOfRevolution(int dimension, Profile profile, double scale)
    : dimension_(dimension), profile_(std::move(profile)), scale_(scale) {
  if (dimension < 3) throw DomainError("body of revolution needs dimension >= 3");
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("body of revolution needs a positive finite scale");
  }
}

BodyOfRevolution BodyOfRevolution::ball(int dimension, double scale) {
  return BodyOfRevolution(dimension, Profile::semicircle(), scale);
}

double BodyOfRevolution::radius_at(double x) const noexcept {
  return scale_ * profile_.value(x / scale_);
}

Chord chord_endpoints(const BodyOfRevolution& body, double slope, double intercept) {
  const double lambda = body.scale();
  const auto unit = detail::unit_chord(body.profile(), slope, intercept / lambda);
  if (!unit) {
    std::ostringstream os;
    os << "line with slope " << slope << " and intercept " << intercept
       << " misses the body";
    throw DomainError(os.str());
  }
  return Chord{slope, intercept, lambda * unit->left, lambda * unit->right};
}

double section_volume(const BodyOfRevolution& body, double slope, double intercept) {
  const double lambda = body.scale();
  const int d = body.dimension();
  const auto unit = detail::unit_chord(body.profile(), slope, intercept / lambda);
  if (!unit) return 0.0;
  const double integral = detail::unit_section_integral(body.profile(), d, *unit);
  return std::pow(lambda, d - 1) * unit_ball_volume(d - 2) *
         std::sqrt(1.0 + slope * slope) * integral;
}

Bracket intercept_range(const BodyOfRevolution& body, double slope) {
  const Profile& f = body.profile();
  const Bracket unit(-1.0, 1.0);
  const double upper =
      maximize_unimodal([&](double xi) { return f.value(xi) - slope * xi; }, unit, 1e-13)
          .value;
  const double lower =
      -maximize_unimodal([&](double xi) { return f.value(xi) + slope * xi; }, unit, 1e-13)
           .value;
  return Bracket(body.scale() * lower, body.scale() * upper);
}

namespace {

PlaneDirection normalized(PlaneDirection u) {
  const double n = std::hypot(u.axial, u.transverse);
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("direction must be non-zero");
  return PlaneDirection{u.axial / n, u.transverse / n};
}

}  // namespace

double support(const BodyOfRevolution& body, PlaneDirection u) {
  u = normalized(u);
  const Profile& f = body.profile();
  const double a = u.axial;
  const double b = std::abs(u.transverse);
  const Extremum best = maximize_unimodal(
      [&](double xi) { return xi * a + f.value(xi) * b; }, Bracket(-1.0, 1.0), 1e-13);
  return body.scale() * best.value;
}

double radial(const BodyOfRevolution& body, PlaneDirection u) {
  u = normalized(u);
  const Profile& f = body.profile();
  if (!(f.value(0.0) > 0.0)) {
    throw DomainError("radial function needs the origin in the interior");
  }
  const double a = u.axial;
  const double b = std::abs(u.transverse);
  double reach = std::numeric_limits<double>::infinity();
  if (a != 0.0) reach = 1.0 / std::abs(a);
  if (b != 0.0) reach = std::min(reach, f.max_value() / b);

  auto exit = [&](double t) { return f.value(t * a) - t * b; };
  if (exit(reach) >= 0.0) return body.scale() * reach;
  return body.scale() * bisect_root(exit, Bracket(0.0, reach), 0.0);
}

}  // namespace revolv
