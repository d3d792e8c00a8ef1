#pragma once

// Concave profile functions f on [-1, 1]. A body of revolution is obtained by
// rotating the graph of f about the x1-axis.
//
// Two representations are supported:
//  * TermSum: the semicircle sqrt(1 - xi^2) plus signed mollifier bumps, each
//    optionally evaluated at -xi.
//  * LevelBranch: a profile equimeasurable with the semicircle, defined by
//    its superlevel intervals {f > t} = (L(t), R(t)) with
//    R(t) = sqrt(1 - t^2) + shift(t) and L(t) = -sqrt(1 - t^2) + shift(t).

#include "revolv/solvers.hpp"

#include <utility>
#include <vector>

namespace revolv {

/// Smooth compactly supported bump amplitude * exp(1 - 1/(1 - u^2)) with
/// u = (x - center) / half_width; it peaks at `amplitude`.
struct BumpTerm {
  double center = 0.0;
  double half_width = 1.0;
  double amplitude = 0.0;

  double lower() const noexcept { return center - half_width; }
  double upper() const noexcept { return center + half_width; }
  bool supported_in(double lo, double hi) const noexcept {
    return lower() >= lo && upper() <= hi;
  }

  double operator()(double x) const noexcept;
  double derivative(double x) const noexcept;
  double second_derivative(double x) const noexcept;

  bool operator==(const BumpTerm&) const = default;
};

/// A bump added to the base with a sign; `reflected` evaluates it at -xi.
struct PerturbationTerm {
  BumpTerm bump;
  int sign = 1;
  bool reflected = false;

  double operator()(double xi) const noexcept {
    return sign * bump(reflected ? -xi : xi);
  }
  /// Support edges in the xi variable.
  std::pair<double, double> support() const noexcept;

  bool operator==(const PerturbationTerm&) const = default;
};

struct Superlevel {
  double lower;
  double upper;
  double measure;
};

class Profile {
 public:
  enum class Kind { TermSum, LevelBranch };

  /// f_o(xi) = sqrt(1 - xi^2).
  static Profile semicircle();
  static Profile term_sum(std::vector<PerturbationTerm> terms);
  /// Level-branch profile without validating the branch condition; use
  /// klee_profile() for a checked construction. The shift support must lie in
  /// (0, 1).
  static Profile level_branch(const BumpTerm& shift);

  Kind kind() const noexcept { return kind_; }
  const std::vector<PerturbationTerm>& terms() const noexcept { return terms_; }
  const BumpTerm& shift() const noexcept { return shift_; }

  /// f(xi); throws DomainError outside [-1, 1].
  double operator()(double xi) const;
  /// f(xi) without the domain check, clamped to 0 outside [-1, 1].
  double value(double xi) const noexcept;

  double max_value() const noexcept { return max_.value; }
  double argmax() const noexcept { return max_.argument; }

  /// Abscissas where f may lose smoothness (bump support edges).
  std::vector<double> knots() const;

  /// Right and left branches R(t), L(t) of a LevelBranch profile.
  double right_branch(double t) const noexcept;
  double left_branch(double t) const noexcept;

  bool operator==(const Profile& other) const {
    return kind_ == other.kind_ && terms_ == other.terms_ && shift_ == other.shift_;
  }

 private:
  Profile(Kind kind, std::vector<PerturbationTerm> terms, BumpTerm shift);
  double level_of(double xi) const noexcept;

  Kind kind_;
  std::vector<PerturbationTerm> terms_;
  BumpTerm shift_;
  Extremum max_{0.0, 1.0};
};

/// Same as Profile::operator().
double eval(const Profile& p, double xi);

/// The superlevel interval {f > t} and its length. For t >= max f the
/// interval is empty and the measure is zero.
Superlevel superlevel(const Profile& p, double t);

/// Number of samples used by concavity scans.
inline constexpr int kConcavityGrid = 4096;

/// Largest second difference f(x-h) - 2 f(x) + f(x+h) over a uniform grid of
/// kConcavityGrid points on [-1, 1]. Non-positive means concave on the grid.
double concavity_margin(const Profile& p);

struct PairSupports {
  /// Half-width of D = [1/2 - delta, 1/2 + delta] and E = [1 - delta, 1].
  double delta = 0.1;
};

/// f_plus = f_o + eps phi(xi) - eps phi(-xi) + eps psi(xi) and
/// f_minus = f_o - eps phi(xi) + eps phi(-xi) + eps psi(xi), where phi is the
/// sum of `phi` bumps (supported in D; amplitudes may be negative) and psi
/// is supported in E. Throws DomainError on support violations and
/// NumericalError when either result fails the concavity scan.
std::pair<Profile, Profile> perturbed_pair(const std::vector<BumpTerm>& phi,
                                           const BumpTerm& psi, double eps,
                                           const PairSupports& supports = {});

/// Builds the pair without the concavity check.
std::pair<Profile, Profile> perturbed_pair_unchecked(const std::vector<BumpTerm>& phi,
                                                     const BumpTerm& psi, double eps);

/// Largest value of |shift''(t)| (1 - t^2)^{3/2} over the shift support;
/// below 1 means R is concave and L convex.
double branch_condition_ratio(const BumpTerm& shift);

/// Level-branch profile equimeasurable with the semicircle. Throws
/// DomainError when the shift support leaves (0, 1) or the branch condition
/// |shift''(t)| < (1 - t^2)^{-3/2} fails.
Profile klee_profile(const BumpTerm& shift);

/// Maximum of the profile and where it is attained.
Extremum axis_extremes(const Profile& p);

/// The profile xi -> f(-xi).
Profile reflect(const Profile& p);

}  // namespace revolv
