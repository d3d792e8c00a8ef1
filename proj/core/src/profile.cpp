#include "revolv/profile.hpp"

#include "revolv/error.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

namespace revolv {

namespace {

// exp(1 - 1/(1 - u^2)) and the derivatives of its exponent.
struct Mollifier {
  double value;
  double d1;  // g'(u)
  double d2;  // g''(u)
};

Mollifier mollifier(double u) noexcept {
  const double q = 1.0 - u * u;
  const double inv = 1.0 / q;
  return Mollifier{std::exp(1.0 - inv), -2.0 * u * inv * inv,
                   -2.0 * inv * inv - 8.0 * u * u * inv * inv * inv};
}

double semicircle_value(double xi) noexcept {
  const double q = (1.0 - xi) * (1.0 + xi);
  return q > 0.0 ? std::sqrt(q) : 0.0;
}

void check_bump(const BumpTerm& b, const char* what) {
  if (!(b.half_width > 0.0) || !std::isfinite(b.center) || !std::isfinite(b.amplitude)) {
    std::ostringstream os;
    os << what << ": bump needs a positive half-width and finite parameters";
    throw DomainError(os.str());
  }
}

}  // namespace

double BumpTerm::operator()(double x) const noexcept {
  const double u = (x - center) / half_width;
  if (!(std::abs(u) < 1.0)) return 0.0;
  return amplitude * mollifier(u).value;
}

double BumpTerm::derivative(double x) const noexcept {
  const double u = (x - center) / half_width;
  if (!(std::abs(u) < 1.0)) return 0.0;
  const Mollifier m = mollifier(u);
  return amplitude / half_width * m.value * m.d1;
}

double BumpTerm::second_derivative(double x) const noexcept {
  const double u = (x - center) / half_width;
  if (!(std::abs(u) < 1.0)) return 0.0;
  const Mollifier m = mollifier(u);
  return amplitude / (half_width * half_width) * m.value * (m.d2 + m.d1 * m.d1);
}

std::pair<double, double> PerturbationTerm::support() const noexcept {
  if (reflected) return {-bump.upper(), -bump.lower()};
  return {bump.lower(), bump.upper()};
}

Profile::Profile(Kind kind, std::vector<PerturbationTerm> terms, BumpTerm shift)
    : kind_(kind), terms_(std::move(terms)), shift_(shift) {
  max_ = maximize_unimodal([this](double xi) { return value(xi); },
                           Bracket(-1.0, 1.0), 1e-12);
}

Profile Profile::semicircle() { return Profile(Kind::TermSum, {}, BumpTerm{0.5, 0.25, 0.0}); }

Profile Profile::term_sum(std::vector<PerturbationTerm> terms) {
  for (const auto& t : terms) {
    check_bump(t.bump, "term_sum");
    if (t.sign != 1 && t.sign != -1) throw DomainError("term_sum: sign must be +1 or -1");
    if (!t.bump.supported_in(-1.0, 1.0) || t.bump.lower() <= -1.0 ||
        t.bump.upper() >= 1.0) {
      throw DomainError("term_sum: bump support must lie inside (-1, 1)");
    }
  }
  return Profile(Kind::TermSum, std::move(terms), BumpTerm{0.5, 0.25, 0.0});
}

Profile Profile::level_branch(const BumpTerm& shift) {
  check_bump(shift, "level_branch");
  if (!(shift.lower() > 0.0 && shift.upper() < 1.0)) {
    throw DomainError("level_branch: shift support must lie inside (0, 1)");
  }
  return Profile(Kind::LevelBranch, {}, shift);
}

double Profile::right_branch(double t) const noexcept {
  return semicircle_value(t) + shift_(t);
}

double Profile::left_branch(double t) const noexcept {
  return -semicircle_value(t) + shift_(t);
}

double Profile::level_of(double xi) const noexcept {
  const double t0 = semicircle_value(xi);
  // Outside the shift support the branches are the semicircle's, and the
  // level of xi is unique.
  if (shift_(t0) == 0.0) return t0;

  auto gap = [this, xi](double t) {
    return std::max(left_branch(t) - xi, xi - right_branch(t));
  };
  double lo = std::max(0.0, shift_.lower());
  double hi = std::min(1.0, shift_.upper());
  double glo = gap(lo);
  double ghi = gap(hi);
  if (glo > 0.0 || ghi < 0.0) {
    lo = 0.0;
    hi = 1.0;
    glo = gap(lo);
    ghi = gap(hi);
  }
  if (glo >= 0.0) return lo;
  if (ghi <= 0.0) return hi;

  std::uintmax_t iterations = 200;
  const auto root = boost::math::tools::toms748_solve(
      gap, lo, hi, glo, ghi,
      boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 1),
      iterations);
  return 0.5 * (root.first + root.second);
}

double Profile::value(double xi) const noexcept {
  if (!(std::abs(xi) < 1.0)) return 0.0;
  if (kind_ == Kind::LevelBranch) return level_of(xi);
  double v = semicircle_value(xi);
  for (const auto& t : terms_) v += t(xi);
  return v;
}

double Profile::operator()(double xi) const {
  if (!(xi >= -1.0 && xi <= 1.0)) {
    std::ostringstream os;
    os << "profile evaluated outside [-1, 1] at " << xi;
    throw DomainError(os.str());
  }
  return value(xi);
}

std::vector<double> Profile::knots() const {
  std::vector<double> out;
  if (kind_ == Kind::LevelBranch) {
    for (double t : {shift_.lower(), shift_.upper()}) {
      const double x = semicircle_value(t);
      out.push_back(-x);
      out.push_back(x);
    }
  } else {
    for (const auto& t : terms_) {
      const auto [lo, hi] = t.support();
      out.push_back(lo);
      out.push_back(hi);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double eval(const Profile& p, double xi) { return p(xi); }

Superlevel superlevel(const Profile& p, double t) {
  if (!(t < p.max_value())) return Superlevel{p.argmax(), p.argmax(), 0.0};
  auto g = [&p, t](double xi) { return p.value(xi) - t; };
  const double peak = p.argmax();
  double lower = -1.0;
  double upper = 1.0;
  if (g(-1.0) < 0.0) lower = bisect_root(g, Bracket(-1.0, peak), 0.0);
  if (g(1.0) < 0.0) upper = bisect_root(g, Bracket(peak, 1.0), 0.0);
  return Superlevel{lower, upper, upper - lower};
}

double concavity_margin(const Profile& p) {
  const double h = 2.0 / (kConcavityGrid - 1);
  std::vector<double> f(kConcavityGrid);
  for (int i = 0; i < kConcavityGrid; ++i) {
    const double xi = i == kConcavityGrid - 1 ? 1.0 : -1.0 + i * h;
    f[i] = p.value(xi);
  }
  // Endpoints use the clamped value; both grid ends are the domain ends.
  f.front() = p.value(-1.0);
  f.back() = p.value(1.0);
  double margin = -std::numeric_limits<double>::infinity();
  for (int i = 1; i + 1 < kConcavityGrid; ++i) {
    margin = std::max(margin, f[i - 1] - 2.0 * f[i] + f[i + 1]);
  }
  return margin;
}

std::pair<Profile, Profile> perturbed_pair_unchecked(const std::vector<BumpTerm>& phi,
                                                     const BumpTerm& psi, double eps) {
  std::vector<PerturbationTerm> plus;
  std::vector<PerturbationTerm> minus;
  for (const auto& b : phi) {
    BumpTerm scaled = b;
    scaled.amplitude *= eps;
    plus.push_back({scaled, +1, false});
    plus.push_back({scaled, -1, true});
    minus.push_back({scaled, -1, false});
    minus.push_back({scaled, +1, true});
  }
  BumpTerm cap = psi;
  cap.amplitude *= eps;
  plus.push_back({cap, +1, false});
  minus.push_back({cap, +1, false});
  return {Profile::term_sum(std::move(plus)), Profile::term_sum(std::move(minus))};
}

std::pair<Profile, Profile> perturbed_pair(const std::vector<BumpTerm>& phi,
                                           const BumpTerm& psi, double eps,
                                           const PairSupports& supports) {
  const double delta = supports.delta;
  if (!(delta > 0.0 && delta < 0.125)) {
    throw DomainError("perturbed_pair: delta must lie in (0, 1/8)");
  }
  if (!(eps >= 0.0)) throw DomainError("perturbed_pair: eps must be non-negative");
  for (const auto& b : phi) {
    check_bump(b, "perturbed_pair");
    if (!b.supported_in(0.5 - delta, 0.5 + delta)) {
      throw DomainError("perturbed_pair: phi support must lie in D");
    }
  }
  check_bump(psi, "perturbed_pair");
  if (!psi.supported_in(1.0 - delta, 1.0) || !(psi.upper() < 1.0)) {
    throw DomainError("perturbed_pair: psi support must lie in E");
  }

  auto pair = perturbed_pair_unchecked(phi, psi, eps);
  constexpr double kTolerance = 1e-9;
  if (concavity_margin(pair.first) > kTolerance ||
      concavity_margin(pair.second) > kTolerance) {
    throw NumericalError("perturbed_pair: perturbation destroys concavity; shrink eps");
  }
  return pair;
}

double branch_condition_ratio(const BumpTerm& shift) {
  constexpr int kSamples = 20001;
  double worst = 0.0;
  for (int i = 1; i + 1 < kSamples; ++i) {
    const double t = shift.lower() + shift.half_width * 2.0 * i / (kSamples - 1);
    const double q = (1.0 - t) * (1.0 + t);
    worst = std::max(worst, std::abs(shift.second_derivative(t)) * q * std::sqrt(q));
  }
  return worst;
}

Profile klee_profile(const BumpTerm& shift) {
  check_bump(shift, "klee_profile");
  if (!(shift.lower() > 0.0 && shift.upper() < 1.0)) {
    throw DomainError("klee_profile: shift support must lie inside (0, 1)");
  }
  const double ratio = branch_condition_ratio(shift);
  if (!(ratio < 1.0)) {
    std::ostringstream os;
    os << "klee_profile: branch condition violated (|shift''| (1 - t^2)^{3/2} reaches "
       << ratio << ")";
    throw DomainError(os.str());
  }
  return Profile::level_branch(shift);
}

Extremum axis_extremes(const Profile& p) {
  return maximize_unimodal([&p](double xi) { return p.value(xi); }, Bracket(-1.0, 1.0),
                           1e-12);
}

Profile reflect(const Profile& p) {
  if (p.kind() == Profile::Kind::LevelBranch) {
    BumpTerm shift = p.shift();
    shift.amplitude = -shift.amplitude;
    return Profile::level_branch(shift);
  }
  std::vector<PerturbationTerm> terms = p.terms();
  for (auto& t : terms) t.reflected = !t.reflected;
  return Profile::term_sum(std::move(terms));
}

}  // namespace revolv
