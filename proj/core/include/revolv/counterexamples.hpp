#pragma once

// Explicit constructions of
//  * a non-spherical body of revolution in R^4 whose maximal section function
//    is constant, and
//  * pairs K1 = K_{f+}, K2 = K_{f-} in even dimension d whose central section,
//    maximal section and projection functions coincide although the bodies
//    are neither equal nor mirror images,
// together with the checks that certify them.

#include "revolv/body.hpp"
#include "revolv/functionals.hpp"
#include "revolv/profile.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace revolv {

/// Half-width of the symmetric window [-5/8, 5/8] carrying the moments.
inline constexpr double kMomentWindow = 0.625;

struct MomentIndex {
  int j;
  int l;
  bool operator==(const MomentIndex&) const = default;
};

enum class IndexSet {
  /// j = 0..p, l = 0..2(p - j).
  Full,
  /// j = 1..p, odd l <= 2(p - j); the only non-trivial equations.
  Reduced,
};

/// The moment map a_{j,l}(x) = \int_{-5/8}^{5/8} (f+^{2j} - f-^{2j}) xi^l over
/// the perturbation phi_x = sum_k x_k phi_k.
class MomentSystem {
 public:
  /// Throws DomainError unless d is even and >= 4, the basis has
  /// p(p-1)/2 + 1 pairwise disjoint bumps inside D, and psi lies in E.
  MomentSystem(int dimension, std::vector<BumpTerm> basis, BumpTerm psi, double eps,
               double delta = 0.1);

  /// Evenly spaced unit-amplitude bumps filling D (half-width 0.8 delta/n)
  /// and a cap bump centred in E.
  static MomentSystem standard(int dimension, double eps, double delta = 0.1);

  int dimension() const noexcept { return dimension_; }
  int p() const noexcept { return (dimension_ - 2) / 2; }
  double eps() const noexcept { return eps_; }
  double delta() const noexcept { return delta_; }
  const std::vector<BumpTerm>& basis() const noexcept { return basis_; }
  const BumpTerm& psi() const noexcept { return psi_; }

  MomentSystem with_eps(double eps) const;
  MomentSystem with_psi_amplitude(double amplitude) const;

  std::vector<MomentIndex> indices(IndexSet set) const;

  /// sum_k x_k phi_k as a list of bumps.
  std::vector<BumpTerm> phi(const Eigen::VectorXd& x) const;

  /// (f+, f-) for the coefficient vector x, without the concavity check.
  std::pair<Profile, Profile> profiles(const Eigen::VectorXd& x) const;

 private:
  int dimension_;
  std::vector<BumpTerm> basis_;
  BumpTerm psi_;
  double eps_;
  double delta_;
};

Eigen::VectorXd moment_residuals(const MomentSystem& system, const Eigen::VectorXd& x,
                                 IndexSet set = IndexSet::Reduced);

/// d a_{j,l} / d x_k = 2 j eps \int (f+^{2j-1} + f-^{2j-1}) Phi_k xi^l, with
/// Phi_k(xi) = phi_k(xi) - phi_k(-xi).
Eigen::MatrixXd moment_jacobian(const MomentSystem& system, const Eigen::VectorXd& x,
                                IndexSet set = IndexSet::Reduced);

struct MomentSolution {
  /// Unit coefficient vector x.
  Eigen::VectorXd coefficients;
  Eigen::VectorXd reduced_residuals;
  Eigen::VectorXd full_residuals;
};

/// Zero of the reduced moment map on the unit sphere: bisection on a half
/// circle for p = 2, Newton on the sphere seeded by the null vector of the
/// linearized map for p >= 3. Throws ConvergenceError when the reduced
/// residual exceeds 1e-12.
MomentSolution solve_moments(const MomentSystem& system);

struct PairConfig {
  double delta = 0.1;
  double eps0 = 1e-2;
  double eps_floor = 1e-8;
  /// Amplitude of psi before scaling by eps. Non-positive means "largest
  /// |x_j| of the moment solution".
  double psi_amplitude = 0.0;
  /// The chord bounds are checked at kRegimeSlope -/+ this offset.
  double regime_offset = 0.01;
};

struct BonnesenPair {
  BodyOfRevolution plus;
  BodyOfRevolution minus;
  MomentSystem system;
  MomentSolution solution;
  double eps;
};

/// Chord bounds of the maximal sections: x, y > 5/8 for s <= sqrt(7)/3 and
/// x, y < 7/8 for s >= sqrt(7)/3.
bool chord_bounds_hold(double slope, double x, double y, double scale = 1.0);

/// Builds K1 = K_{f+}, K2 = K_{f-} for even d >= 4, halving eps from eps0
/// until both profiles are concave and the chord bounds hold near
/// sqrt(7)/3. Throws DomainError for odd or small d and NumericalError when
/// eps drops below eps_floor.
BonnesenPair build_bonnesen_pair(int dimension, const PairConfig& config = {});

struct KleeConfig {
  BumpTerm shift{0.5, 0.2, 0.002};
};

/// The d = 4 body over klee_profile(config.shift).
BodyOfRevolution build_klee_body(const KleeConfig& config = {});

struct ClaimResult {
  std::string name;
  bool pass;
  /// The measured quantity compared against `threshold`.
  double value;
  double threshold;
  /// True when the claim is value >= threshold rather than value <= threshold.
  bool lower_bound = false;
};

struct VerifyOptions {
  double tol_functional = 1e-6;
  double delta = 0.1;
  double concavity_tol = 1e-9;
  double mirror_identity_tol = 1e-14;
  double pair_tol = 1e-10;
  double section_power_tol = 1e-10;
  double cross_max_tol = 1e-9;
  int section_power_samples = 20;
  int fan_size = 200;
  double linf_direct_min = 1e-4;
  double linf_mirror_min = 1e-6;
  double reduced_moment_tol = 1e-12;
  double full_moment_tol = 1e-10;
  std::uint64_t seed = 20120418;
};

struct Discrepancy {
  double central = 0.0;
  double maximal = 0.0;
  double projection = 0.0;
};

struct VerificationReport {
  std::vector<double> grid;
  std::vector<FunctionalRow> rows1;
  std::vector<FunctionalRow> rows2;
  AxisFunctionals axis1{};
  AxisFunctionals axis2{};
  Discrepancy max_rel_discrepancy;
  double concavity_margin1 = 0.0;
  double concavity_margin2 = 0.0;
  double mirror_identity_residual = 0.0;
  bool chord_bounds_pass = false;
  double support_pair_gap = 0.0;
  double radial_pair_gap = 0.0;
  double section_power_residual = 0.0;
  double cross_max_residual = 0.0;
  double linf_direct = 0.0;
  double linf_mirror = 0.0;
  std::vector<double> reduced_moment_residuals;
  std::vector<double> moment_residuals;
  std::vector<ClaimResult> claims;
  bool pass = false;
};

/// Evaluates every claim about the pair over `grid`. Failures are recorded
/// in the report, never thrown. `moments` adds the moment-residual claim.
VerificationReport verify_pair(const BodyOfRevolution& k1, const BodyOfRevolution& k2,
                               const std::vector<double>& grid,
                               const VerifyOptions& options = {},
                               const MomentSolution* moments = nullptr);

struct KleeOptions {
  double tol_constant = 1e-6;
  double tol_distribution = 1e-7;
  double tol_level = 1e-8;
  double asymmetry_min = 1e-3;
  double concavity_tol = 1e-9;
};

struct KleeReport {
  std::vector<double> grid;
  std::vector<double> maximal;
  std::vector<double> distribution;
  std::vector<double> levels;
  std::vector<double> level_errors;
  double target = 0.0;
  double axis_maximal = 0.0;
  double max_rel_deviation = 0.0;
  double max_rel_distribution_gap = 0.0;
  double max_level_error = 0.0;
  double asymmetry = 0.0;
  double concavity_margin = 0.0;
  std::vector<ClaimResult> claims;
  bool pass = false;
};

/// Checks that M is constant (equal to the unit-ball value), agrees with the
/// distribution-function formula, that the maximal chords hit the levels -t
/// and t, and that the profile is not even. Slopes must be positive.
KleeReport verify_klee(const BodyOfRevolution& body, const std::vector<double>& grid,
                       const KleeOptions& options = {});

/// sup |f1(xi) - f2(xi)| and sup |f1(xi) - f2(-xi)| on the concavity grid.
std::pair<double, double> essential_difference(const Profile& f1, const Profile& f2);

}  // namespace revolv
