#include "revolv/functionals.hpp"

#include "chord.hpp"
#include "revolv/error.hpp"
#include "revolv/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace revolv {

namespace {

void require_origin_inside(const BodyOfRevolution& body) {
  if (!(body.profile().value(0.0) > 0.0)) {
    throw DomainError("the origin must lie in the interior of the body");
  }
}

double unit_volume_at(const Profile& f, int d, double slope, double intercept) {
  const auto chord = detail::unit_chord(f, slope, intercept);
  if (!chord) return 0.0;
  return detail::unit_section_integral(f, d, *chord);
}

double unit_condition_at(const Profile& f, int d, double slope, double intercept) {
  const auto chord = detail::unit_chord(f, slope, intercept);
  if (!chord) return 0.0;
  return detail::unit_max_condition(f, d, *chord).value;
}

}  // namespace

double central_section(const BodyOfRevolution& body, double slope) {
  require_origin_inside(body);
  return section_volume(body, slope, 0.0);
}

double central_section_via_radial(const BodyOfRevolution& body, double slope) {
  const int d = body.dimension();
  if (d < 4) throw DomainError("central_section_via_radial needs d >= 4");
  require_origin_inside(body);

  const double axial = 1.0 / std::sqrt(1.0 + slope * slope);
  auto integrand = [&](double beta) {
    const double a = std::cos(beta) * axial;
    const double rho = radial(body, PlaneDirection{a, std::sqrt(std::max(0.0, 1.0 - a * a))});
    return std::pow(rho, d - 1) * std::pow(std::sin(beta), d - 3);
  };
  const double integral = integrate(integrand, Bracket(0.0, std::numbers::pi));
  return unit_ball_constants(d - 2).sphere_area * integral / (d - 1);
}

MaxSectionResult maximal_section(const BodyOfRevolution& body, double slope) {
  const Profile& f = body.profile();
  const int d = body.dimension();
  const double lambda = body.scale();

  const Bracket range = intercept_range(BodyOfRevolution(d, f), slope);
  auto volume = [&](double h) { return unit_volume_at(f, d, slope, h); };
  const Extremum coarse = maximize_unimodal(volume, range, 1e-10 * range.width());

  double best_h = coarse.argument;
  double best_v = coarse.value;

  // The volume derivative in h is a negative multiple of the condition
  // integral, so the condition changes sign from - to + across h*.
  if (d >= 4) {
    auto condition = [&](double h) { return unit_condition_at(f, d, slope, h); };
    double w = 1e-8 * range.width();
    for (int i = 0; i < 24; ++i, w *= 4.0) {
      const double lo = std::max(coarse.argument - w, range.lower());
      const double hi = std::min(coarse.argument + w, range.upper());
      if (!(lo < hi)) break;
      if (condition(lo) <= 0.0 && condition(hi) >= 0.0) {
        const double h = bisect_root(condition, Bracket(lo, hi), 0.0);
        const double v = volume(h);
        if (v >= best_v * (1.0 - 1e-13)) {
          best_h = h;
          best_v = v;
        }
        break;
      }
    }
  }

  const auto unit = detail::unit_chord(f, slope, best_h);
  if (!unit) throw NumericalError("maximal_section: optimal line misses the body");
  const auto cond = detail::unit_max_condition(f, d, *unit);

  MaxSectionResult out;
  out.volume = std::pow(lambda, d - 1) * unit_ball_volume(d - 2) *
               std::sqrt(1.0 + slope * slope) * best_v;
  out.intercept = lambda * best_h;
  out.chord = Chord{slope, lambda * best_h, lambda * unit->left, lambda * unit->right};
  out.residual = std::pow(lambda, d - 2) * cond.value;
  out.residual_scale = std::pow(lambda, d - 2) * cond.scale;
  return out;
}

DistributionMaximum m_via_distribution(const BodyOfRevolution& body, double slope) {
  if (body.dimension() != 4) throw DomainError("m_via_distribution needs d = 4");
  if (!(slope > 0.0)) throw DomainError("m_via_distribution needs a positive slope");

  const Profile& f = body.profile();
  const double top = f.max_value();
  auto measure = [&](double t) { return superlevel(f, t).measure; };
  const double t = bisect_root([&](double level) { return 2.0 * level - slope * measure(level); },
                               Bracket(0.0, top), 0.0);

  // tau = top - (top - t) v^2 removes the square-root decay of the measure
  // at the maximum.
  const double span = top - t;
  double tail = 0.0;
  if (span > 0.0) {
    auto integrand = [&](double v) {
      const double tau = top - span * v * v;
      return 2.0 * tau * measure(tau) * 2.0 * span * v;
    };
    tail = integrate(integrand, Bracket(0.0, 1.0));
  }

  const double lambda = body.scale();
  const double unit = std::numbers::pi * std::sqrt(1.0 + slope * slope) *
                      (2.0 / 3.0 * t * t * measure(t) + tail);
  return DistributionMaximum{lambda * lambda * lambda * unit, lambda * t};
}

double max_condition_residual(const BodyOfRevolution& body, double slope, double intercept) {
  const double lambda = body.scale();
  const auto unit = detail::unit_chord(body.profile(), slope, intercept / lambda);
  if (!unit) {
    std::ostringstream os;
    os << "max_condition_residual: line (" << slope << ", " << intercept
       << ") misses the body";
    throw DomainError(os.str());
  }
  return std::pow(lambda, body.dimension() - 2) *
         detail::unit_max_condition(body.profile(), body.dimension(), *unit).value;
}

double projection(const BodyOfRevolution& body, double slope) {
  const Profile& f = body.profile();
  const int d = body.dimension();
  const double top = f.max_value();
  const double along = 1.0 / std::sqrt(1.0 + slope * slope);
  const double across = std::abs(slope) * along;

  auto width = [&](double r) {
    const Superlevel level = superlevel(f, r);
    if (!(level.measure > 0.0)) return 0.0;
    const Bracket window(level.lower, level.upper);
    auto height = [&](double xi) {
      const double fx = f.value(xi);
      return std::sqrt(std::max(0.0, (fx - r) * (fx + r)));
    };
    const double upper =
        maximize_unimodal([&](double xi) { return along * xi + across * height(xi); },
                          window, 1e-12)
            .value;
    const double lower =
        -maximize_unimodal([&](double xi) { return -along * xi + across * height(xi); },
                           window, 1e-12)
             .value;
    return upper - lower;
  };

  // r = top (1 - v^2): the width decays like sqrt(top - r) near the apex.
  QuadratureSpec spec;
  for (double k : f.knots()) {
    const double r = f.value(k);
    if (r > 0.0 && r < top) spec.knots.push_back(std::sqrt(1.0 - r / top));
  }
  auto integrand = [&](double v) {
    const double r = top * (1.0 - v * v);
    return std::pow(r, d - 3) * width(r) * 2.0 * top * v;
  };
  const double integral = integrate(integrand, Bracket(0.0, 1.0), spec);
  return std::pow(body.scale(), d - 1) * unit_ball_constants(d - 2).sphere_area * integral;
}

AxisFunctionals axis_functionals(const BodyOfRevolution& body) {
  const int d = body.dimension();
  const double v = unit_ball_volume(d - 1);
  const double central = v * std::pow(body.scale() * body.profile().value(0.0), d - 1);
  const double widest = v * std::pow(body.scale() * body.profile().max_value(), d - 1);
  return AxisFunctionals{central, widest, widest};
}

std::vector<FunctionalRow> sweep(const BodyOfRevolution& body, const std::vector<double>& slopes) {
  std::vector<FunctionalRow> rows(slopes.size());
  parallel_for(slopes.size(), [&](std::size_t i) {
    const double s = slopes[i];
    const MaxSectionResult m = maximal_section(body, s);
    rows[i] = FunctionalRow{s,
                            central_section(body, s),
                            m.volume,
                            projection(body, s),
                            m.intercept,
                            m.chord.x(),
                            m.chord.y()};
  });
  return rows;
}

}  // namespace revolv
