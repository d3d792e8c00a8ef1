#include "revolv/counterexamples.hpp"

#include "chord.hpp"
#include "revolv/error.hpp"
#include "revolv/parallel.hpp"
#include "revolv/slope_grid.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

namespace revolv {

namespace {

double ipow(double x, int n) noexcept {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

double relative_gap(double a, double b) noexcept {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

std::vector<double> window_knots(const Profile& f) {
  std::vector<double> out;
  for (double k : f.knots()) {
    if (k > -kMomentWindow && k < kMomentWindow) out.push_back(k);
  }
  return out;
}

double integrate_window(const ScalarFunction& g, std::vector<double> knots) {
  QuadratureSpec spec;
  spec.knots = std::move(knots);
  return integrate(g, Bracket(-kMomentWindow, kMomentWindow), spec);
}

}  // namespace

MomentSystem::MomentSystem(int dimension, std::vector<BumpTerm> basis, BumpTerm psi,
                           double eps, double delta)
    : dimension_(dimension), basis_(std::move(basis)), psi_(psi), eps_(eps), delta_(delta) {
  if (dimension < 4 || dimension % 2 != 0) {
    throw DomainError("moment system needs an even dimension >= 4");
  }
  if (!(delta > 0.0 && delta < 0.125)) throw DomainError("moment system needs 0 < delta < 1/8");
  if (!(eps >= 0.0)) throw DomainError("moment system needs eps >= 0");
  const std::size_t expected = static_cast<std::size_t>(p() * (p() - 1) / 2 + 1);
  if (basis_.size() != expected) {
    std::ostringstream os;
    os << "moment system for d = " << dimension << " needs " << expected
       << " basis bumps, got " << basis_.size();
    throw DomainError(os.str());
  }
  std::vector<BumpTerm> sorted = basis_;
  std::sort(sorted.begin(), sorted.end(),
            [](const BumpTerm& a, const BumpTerm& b) { return a.center < b.center; });
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (!(sorted[k].half_width > 0.0) || !sorted[k].supported_in(0.5 - delta, 0.5 + delta)) {
      throw DomainError("moment basis bumps must lie in D");
    }
    if (k > 0 && sorted[k].lower() < sorted[k - 1].upper()) {
      throw DomainError("moment basis bumps must have disjoint supports");
    }
  }
  if (!(psi.half_width > 0.0) || !psi.supported_in(1.0 - delta, 1.0) || !(psi.upper() < 1.0)) {
    throw DomainError("psi must lie in E");
  }
}

MomentSystem MomentSystem::standard(int dimension, double eps, double delta) {
  if (dimension < 4 || dimension % 2 != 0) {
    throw DomainError("moment system needs an even dimension >= 4");
  }
  const int p = (dimension - 2) / 2;
  const int n = p * (p - 1) / 2 + 1;
  const double cell = 2.0 * delta / n;
  std::vector<BumpTerm> basis;
  for (int k = 0; k < n; ++k) {
    basis.push_back(BumpTerm{0.5 - delta + (k + 0.5) * cell, 0.4 * cell, 1.0});
  }
  const BumpTerm psi{1.0 - 0.5 * delta, 0.4 * delta, 1.0};
  return MomentSystem(dimension, std::move(basis), psi, eps, delta);
}

MomentSystem MomentSystem::with_eps(double eps) const {
  return MomentSystem(dimension_, basis_, psi_, eps, delta_);
}

MomentSystem MomentSystem::with_psi_amplitude(double amplitude) const {
  BumpTerm psi = psi_;
  psi.amplitude = amplitude;
  return MomentSystem(dimension_, basis_, psi, eps_, delta_);
}

std::vector<MomentIndex> MomentSystem::indices(IndexSet set) const {
  std::vector<MomentIndex> out;
  const int q = p();
  for (int j = set == IndexSet::Full ? 0 : 1; j <= q; ++j) {
    for (int l = 0; l <= 2 * (q - j); ++l) {
      if (set == IndexSet::Reduced && l % 2 == 0) continue;
      out.push_back({j, l});
    }
  }
  return out;
}

std::vector<BumpTerm> MomentSystem::phi(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != basis_.size()) {
    throw DomainError("coefficient vector length does not match the moment basis");
  }
  std::vector<BumpTerm> out = basis_;
  for (std::size_t k = 0; k < out.size(); ++k) out[k].amplitude *= x(static_cast<Eigen::Index>(k));
  return out;
}

std::pair<Profile, Profile> MomentSystem::profiles(const Eigen::VectorXd& x) const {
  return perturbed_pair_unchecked(phi(x), psi_, eps_);
}

Eigen::VectorXd moment_residuals(const MomentSystem& system, const Eigen::VectorXd& x,
                                 IndexSet set) {
  const auto [plus, minus] = system.profiles(x);
  const auto index = system.indices(set);
  const auto knots = window_knots(plus);
  Eigen::VectorXd out(static_cast<Eigen::Index>(index.size()));
  for (std::size_t i = 0; i < index.size(); ++i) {
    const auto [j, l] = index[i];
    auto g = [&, j = j, l = l](double xi) {
      return (ipow(plus.value(xi), 2 * j) - ipow(minus.value(xi), 2 * j)) * ipow(xi, l);
    };
    out(static_cast<Eigen::Index>(i)) = j == 0 ? 0.0 : integrate_window(g, knots);
  }
  return out;
}

Eigen::MatrixXd moment_jacobian(const MomentSystem& system, const Eigen::VectorXd& x,
                                IndexSet set) {
  const auto [plus, minus] = system.profiles(x);
  const auto index = system.indices(set);
  const auto& basis = system.basis();
  const auto knots = window_knots(plus);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(index.size()),
                      static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < index.size(); ++i) {
    const auto [j, l] = index[i];
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const BumpTerm& b = basis[k];
      double value = 0.0;
      if (j > 0) {
        auto g = [&, j = j, l = l](double xi) {
          const double odd = b(xi) - b(-xi);
          if (odd == 0.0) return 0.0;
          return 2.0 * j * system.eps() *
                 (ipow(plus.value(xi), 2 * j - 1) + ipow(minus.value(xi), 2 * j - 1)) * odd *
                 ipow(xi, l);
        };
        value = integrate_window(g, {b.lower(), b.upper(), -b.upper(), -b.lower()});
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = value;
    }
  }
  (void)knots;
  return out;
}

MomentSolution solve_moments(const MomentSystem& system) {
  const Eigen::Index n = static_cast<Eigen::Index>(system.basis().size());
  const auto reduced = system.indices(IndexSet::Reduced);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);

  if (reduced.empty()) {
    x(0) = 1.0;
  } else if (reduced.size() == 1) {
    // The map is odd, so its values at theta and theta + pi have opposite
    // signs and a root lies on [0, pi].
    auto at = [](double theta) {
      Eigen::VectorXd v(2);
      v << std::cos(theta), std::sin(theta);
      return v;
    };
    auto residual = [&](double theta) { return moment_residuals(system, at(theta))(0); };
    const double theta = bisect_root(residual, Bracket(0.0, std::numbers::pi), 0.0);
    x = at(theta);
  } else {
    const Eigen::MatrixXd linear = moment_jacobian(system, Eigen::VectorXd::Zero(n));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(linear, Eigen::ComputeFullV);
    Eigen::VectorXd seed = svd.matrixV().col(n - 1);
    SphereNewtonOptions options;
    options.tol = 1e-13;
    x = newton_on_sphere([&](const Eigen::VectorXd& v) { return moment_residuals(system, v); },
                         seed, options,
                         [&](const Eigen::VectorXd& v) { return moment_jacobian(system, v); });
  }

  // Fix the sign so the first non-zero coefficient is positive.
  for (Eigen::Index k = 0; k < n; ++k) {
    if (x(k) != 0.0) {
      if (x(k) < 0.0) x = -x;
      break;
    }
  }

  MomentSolution out{x, moment_residuals(system, x, IndexSet::Reduced),
                     moment_residuals(system, x, IndexSet::Full)};
  const double worst = out.reduced_residuals.size() ? out.reduced_residuals.cwiseAbs().maxCoeff() : 0.0;
  if (worst > 1e-12) {
    std::ostringstream os;
    os << "solve_moments: reduced residual " << worst << " exceeds 1e-12";
    throw ConvergenceError(os.str(), {worst});
  }
  const double full = out.full_residuals.size() ? out.full_residuals.cwiseAbs().maxCoeff() : 0.0;
  if (full > 1e-10) {
    std::ostringstream os;
    os << "solve_moments: full moment residual " << full << " exceeds quadrature tolerance";
    throw NumericalError(os.str());
  }
  return out;
}

bool chord_bounds_hold(double slope, double x, double y, double scale) {
  x /= scale;
  y /= scale;
  bool ok = true;
  if (slope <= kRegimeSlope) ok = ok && x > 0.625 && y > 0.625;
  if (slope >= kRegimeSlope) ok = ok && x < 0.875 && y < 0.875;
  return ok;
}

BonnesenPair build_bonnesen_pair(int dimension, const PairConfig& config) {
  if (dimension < 4 || dimension % 2 != 0) {
    throw DomainError("the section-equivalent pair needs an even dimension >= 4");
  }
  const MomentSystem base = MomentSystem::standard(dimension, config.eps0, config.delta);
  const double probes[] = {kRegimeSlope - config.regime_offset,
                           kRegimeSlope + config.regime_offset};

  for (double eps = config.eps0; eps >= config.eps_floor; eps *= 0.5) {
    MomentSystem system = base.with_eps(eps);
    MomentSolution solution = solve_moments(system);
    const double psi_amplitude = config.psi_amplitude > 0.0
                                     ? config.psi_amplitude
                                     : solution.coefficients.cwiseAbs().maxCoeff();
    system = system.with_psi_amplitude(psi_amplitude);

    std::optional<std::pair<Profile, Profile>> profiles;
    try {
      profiles = perturbed_pair(system.phi(solution.coefficients), system.psi(), eps,
                                PairSupports{config.delta});
    } catch (const NumericalError&) {
      continue;
    }

    BodyOfRevolution plus(dimension, profiles->first);
    BodyOfRevolution minus(dimension, profiles->second);
    bool bounded = true;
    for (double s : probes) {
      for (const BodyOfRevolution* body : {&plus, &minus}) {
        const MaxSectionResult m = maximal_section(*body, s);
        bounded = bounded && chord_bounds_hold(s, m.chord.x(), m.chord.y());
      }
    }
    if (!bounded) continue;
    return BonnesenPair{std::move(plus), std::move(minus), std::move(system),
                        std::move(solution), eps};
  }
  std::ostringstream os;
  os << "build_bonnesen_pair: eps fell below " << config.eps_floor
     << " without passing the concavity and chord checks";
  throw NumericalError(os.str());
}

BodyOfRevolution build_klee_body(const KleeConfig& config) {
  return BodyOfRevolution(4, klee_profile(config.shift));
}

std::pair<double, double> essential_difference(const Profile& f1, const Profile& f2) {
  double direct = 0.0;
  double mirror = 0.0;
  for (int i = 0; i < kConcavityGrid; ++i) {
    const double xi = -1.0 + 2.0 * i / (kConcavityGrid - 1);
    const double a = f1.value(xi);
    direct = std::max(direct, std::abs(a - f2.value(xi)));
    mirror = std::max(mirror, std::abs(a - f2.value(-xi)));
  }
  return {direct, mirror};
}

namespace {

ClaimResult at_most(std::string name, double value, double threshold) {
  return ClaimResult{std::move(name), value <= threshold, value, threshold};
}

ClaimResult at_least(std::string name, double value, double threshold) {
  return ClaimResult{std::move(name), value >= threshold, value, threshold, true};
}

// Max gap between the unordered pairs {g1(u), g1(-u)} and {g2(u), g2(-u)}
// over a fan of directions in the upper half plane.
template <class Fn1, class Fn2>
double unordered_pair_gap(const Fn1& g1, const Fn2& g2, int fan) {
  double worst = 0.0;
  for (int i = 0; i < fan; ++i) {
    const double theta = std::numbers::pi * i / (fan - 1);
    const PlaneDirection u{std::cos(theta), std::sin(theta)};
    const PlaneDirection v{-u.axial, -u.transverse};
    double a1 = g1(u), b1 = g1(v), a2 = g2(u), b2 = g2(v);
    if (a1 > b1) std::swap(a1, b1);
    if (a2 > b2) std::swap(a2, b2);
    worst = std::max({worst, std::abs(a1 - a2), std::abs(b1 - b2)});
  }
  return worst;
}

}  // namespace

VerificationReport verify_pair(const BodyOfRevolution& k1, const BodyOfRevolution& k2,
                               const std::vector<double>& grid, const VerifyOptions& options,
                               const MomentSolution* moments) {
  if (k1.dimension() != k2.dimension()) {
    throw DomainError("verify_pair needs bodies of the same dimension");
  }
  const int d = k1.dimension();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  VerificationReport report;
  report.grid = grid;

  bool evaluated = true;
  try {
    report.rows1 = sweep(k1, grid);
    report.rows2 = sweep(k2, grid);
  } catch (const Error& e) {
    evaluated = false;
  }
  report.axis1 = axis_functionals(k1);
  report.axis2 = axis_functionals(k2);

  Discrepancy& gap = report.max_rel_discrepancy;
  gap.central = relative_gap(report.axis1.central, report.axis2.central);
  gap.maximal = relative_gap(report.axis1.maximal, report.axis2.maximal);
  gap.projection = relative_gap(report.axis1.projection, report.axis2.projection);
  report.chord_bounds_pass = evaluated;
  if (evaluated) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const FunctionalRow& r1 = report.rows1[i];
      const FunctionalRow& r2 = report.rows2[i];
      gap.central = std::max(gap.central, relative_gap(r1.central, r2.central));
      gap.maximal = std::max(gap.maximal, relative_gap(r1.maximal, r2.maximal));
      gap.projection = std::max(gap.projection, relative_gap(r1.projection, r2.projection));
      report.chord_bounds_pass = report.chord_bounds_pass &&
                           chord_bounds_hold(r1.slope, r1.x, r1.y, k1.scale()) &&
                           chord_bounds_hold(r2.slope, r2.x, r2.y, k2.scale());
    }
  } else {
    gap = Discrepancy{nan, nan, nan};
  }

  report.concavity_margin1 = concavity_margin(k1.profile());
  report.concavity_margin2 = concavity_margin(k2.profile());

  // Pointwise relations between the radius functions: equal away from
  // D and -D, mirror images on D and -D.
  {
    const double reach = std::max(k1.scale(), k2.scale());
    const double lo = (0.5 - options.delta) * k1.scale();
    const double hi = (0.5 + options.delta) * k1.scale();
    double worst = 0.0;
    for (int i = 0; i < kConcavityGrid; ++i) {
      const double x = reach * (-1.0 + 2.0 * i / (kConcavityGrid - 1));
      const bool in_d = std::abs(x) >= lo && std::abs(x) <= hi;
      const double other = in_d ? k2.radius_at(-x) : k2.radius_at(x);
      worst = std::max(worst, std::abs(k1.radius_at(x) - other));
    }
    report.mirror_identity_residual = worst;
  }

  report.support_pair_gap = unordered_pair_gap(
      [&](PlaneDirection u) { return support(k1, u); },
      [&](PlaneDirection u) { return support(k2, u); }, options.fan_size);
  try {
    report.radial_pair_gap = unordered_pair_gap(
        [&](PlaneDirection u) { return radial(k1, u); },
        [&](PlaneDirection u) { return radial(k2, u); }, options.fan_size);
  } catch (const Error&) {
    report.radial_pair_gap = nan;
  }

  // Equal section volumes for every chord that crosses the whole moment
  // window.
  {
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> slope_dist(0.0, kRegimeSlope);
    std::uniform_real_distribution<double> intercept_dist(-0.5, 0.5);
    const double v = unit_ball_volume(d - 2);
    double worst = 0.0;
    int accepted = 0;
    for (int attempt = 0; attempt < 100000 && accepted < options.section_power_samples; ++attempt) {
      const double s = slope_dist(rng);
      const double h = intercept_dist(rng) * k1.scale();
      const auto c1 = detail::unit_chord(k1.profile(), s, h / k1.scale());
      const auto c2 = detail::unit_chord(k2.profile(), s, h / k2.scale());
      if (!c1 || !c2 || !chord_bounds_hold(0.0, c1->x(), c1->y()) ||
          !chord_bounds_hold(0.0, c2->x(), c2->y())) {
        continue;
      }
      ++accepted;
      const double norm = v * std::sqrt(1.0 + s * s);
      worst = std::max(worst, std::abs(section_volume(k1, s, h) - section_volume(k2, s, h)) / norm);
    }
    report.section_power_residual = accepted == options.section_power_samples ? worst : nan;
  }

  // Each body's maximizing intercept satisfies the other's first-order
  // condition.
  if (evaluated && d >= 4) {
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (grid[i] > kRegimeSlope) continue;
      const double s = grid[i];
      const auto cross = [&](const BodyOfRevolution& body, double h) {
        const auto chord = detail::unit_chord(body.profile(), s, h / body.scale());
        if (!chord) return nan;
        const auto c = detail::unit_max_condition(body.profile(), d, *chord);
        return c.scale > 0.0 ? std::abs(c.value) / c.scale : std::abs(c.value);
      };
      worst = std::max({worst, cross(k2, report.rows1[i].intercept),
                        cross(k1, report.rows2[i].intercept)});
    }
    report.cross_max_residual = worst;
  } else {
    report.cross_max_residual = nan;
  }

  {
    const auto [direct, mirror] = essential_difference(k1.profile(), k2.profile());
    report.linf_direct = k1.scale() == k2.scale() ? k1.scale() * direct : nan;
    report.linf_mirror = k1.scale() == k2.scale() ? k1.scale() * mirror : nan;
  }

  auto& claims = report.claims;
  claims.push_back(at_most("central sections agree", gap.central, options.tol_functional));
  claims.push_back(at_most("maximal sections agree", gap.maximal, options.tol_functional));
  claims.push_back(at_most("projections agree", gap.projection, options.tol_functional));
  claims.push_back(at_most("both profiles concave",
                           std::max(report.concavity_margin1, report.concavity_margin2),
                           options.concavity_tol));
  claims.push_back(ClaimResult{"maximal chords respect the 5/8 and 7/8 bounds",
                               report.chord_bounds_pass, report.chord_bounds_pass ? 1.0 : 0.0, 1.0});
  claims.push_back(at_most("profiles equal off D and mirrored on D", report.mirror_identity_residual,
                           options.mirror_identity_tol));
  claims.push_back(at_most("support function pairs coincide", report.support_pair_gap,
                           options.pair_tol));
  claims.push_back(at_most("radial function pairs coincide", report.radial_pair_gap,
                           options.pair_tol));
  claims.push_back(at_most("window-crossing sections agree", report.section_power_residual,
                           options.section_power_tol));
  claims.push_back(at_most("maximality conditions hold simultaneously",
                           report.cross_max_residual, options.cross_max_tol));
  claims.push_back(at_least("bodies differ", report.linf_direct, options.linf_direct_min));
  claims.push_back(at_least("bodies are not mirror images", report.linf_mirror,
                            options.linf_mirror_min));
  if (moments) {
    const auto& red = moments->reduced_residuals;
    const auto& full = moments->full_residuals;
    report.reduced_moment_residuals.assign(red.data(), red.data() + red.size());
    report.moment_residuals.assign(full.data(), full.data() + full.size());
    claims.push_back(at_most("reduced moment residuals vanish",
                             red.size() ? red.cwiseAbs().maxCoeff() : 0.0,
                             options.reduced_moment_tol));
    claims.push_back(at_most("full moment residuals vanish",
                             full.size() ? full.cwiseAbs().maxCoeff() : 0.0,
                             options.full_moment_tol));
  }
  // NaN comparisons above already fail.
  report.pass = evaluated && std::all_of(claims.begin(), claims.end(),
                                         [](const ClaimResult& c) { return c.pass; });
  return report;
}

KleeReport verify_klee(const BodyOfRevolution& body, const std::vector<double>& grid,
                       const KleeOptions& options) {
  if (body.dimension() != 4) throw DomainError("verify_klee needs d = 4");
  for (double s : grid) {
    if (!(s > 0.0)) throw DomainError("verify_klee needs positive slopes");
  }

  KleeReport report;
  report.grid = grid;
  const std::size_t n = grid.size();
  report.maximal.resize(n);
  report.distribution.resize(n);
  report.levels.resize(n);
  report.level_errors.resize(n);
  const double lambda = body.scale();
  report.target = unit_ball_volume(3) * lambda * lambda * lambda;

  parallel_for(n, [&](std::size_t i) {
    const double s = grid[i];
    const MaxSectionResult m = maximal_section(body, s);
    const DistributionMaximum dist = m_via_distribution(body, s);
    report.maximal[i] = m.volume;
    report.distribution[i] = dist.volume;
    report.levels[i] = dist.level;
    report.level_errors[i] = std::max(std::abs(m.chord.line(m.chord.right) - dist.level),
                                      std::abs(m.chord.line(m.chord.left) + dist.level));
  });
  report.axis_maximal = axis_functionals(body).maximal;

  report.max_rel_deviation = relative_gap(report.axis_maximal, report.target);
  for (std::size_t i = 0; i < n; ++i) {
    report.max_rel_deviation =
        std::max(report.max_rel_deviation, relative_gap(report.maximal[i], report.target));
    report.max_rel_distribution_gap = std::max(
        report.max_rel_distribution_gap, relative_gap(report.maximal[i], report.distribution[i]));
    report.max_level_error = std::max(report.max_level_error, report.level_errors[i]);
  }
  report.asymmetry = lambda * essential_difference(body.profile(), body.profile()).second;
  report.concavity_margin = concavity_margin(body.profile());

  auto& claims = report.claims;
  claims.push_back(at_most("maximal section function is constant", report.max_rel_deviation,
                           options.tol_constant));
  claims.push_back(at_most("distribution formula matches maximal sections",
                           report.max_rel_distribution_gap, options.tol_distribution));
  claims.push_back(at_most("maximal chords join levels -t and t", report.max_level_error,
                           options.tol_level));
  claims.push_back(at_least("body is not a ball", report.asymmetry, options.asymmetry_min));
  claims.push_back(at_most("profile concave", report.concavity_margin, options.concavity_tol));
  report.pass = std::all_of(claims.begin(), claims.end(),
                            [](const ClaimResult& c) { return c.pass; });
  return report;
}

}  // namespace revolv
