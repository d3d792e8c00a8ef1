#pragma once

// Scalar numerical kernels shared by every other module: adaptive
// quadrature, bracketed root finding, golden-section maximization, Newton's
// method constrained to the unit sphere, and unit-ball constants.

#include <Eigen/Core>

#include <functional>
#include <vector>

namespace revolv {

using ScalarFunction = std::function<double(double)>;

/// Closed interval [lower, upper] with lower < upper.
class Bracket {
 public:
  Bracket(double lower, double upper);

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  double width() const noexcept { return upper_ - lower_; }
  double midpoint() const noexcept { return 0.5 * (lower_ + upper_); }
  bool contains(double x) const noexcept { return lower_ <= x && x <= upper_; }

 private:
  double lower_;
  double upper_;
};

struct QuadratureSpec {
  double rel_tol = 1e-11;
  double abs_tol = 1e-13;
  /// Maximum number of bisections applied to any single panel.
  int max_depth = 48;
  /// Abscissas where the integrand may lose smoothness. Knots outside the
  /// open integration interval are ignored; the remaining ones pre-split it.
  std::vector<double> knots;

  void validate() const;
};

/// Globally adaptive 15-point Gauss-Kronrod quadrature (embedded 7-point
/// Gauss error estimate). Returns I with |I - integral| <= max(abs_tol,
/// rel_tol*|I|) by the estimate; throws QuadratureError otherwise.
double integrate(const ScalarFunction& f, const Bracket& interval,
                 const QuadratureSpec& spec = {});

/// Bisection on a sign-changing bracket. Iterates until the bracket is no
/// wider than `tol` (or cannot shrink further in floating point) and returns
/// its midpoint.
double bisect_root(const ScalarFunction& f, const Bracket& bracket,
                   double tol = 1e-12);

struct Extremum {
  double argument;
  double value;
};

/// Golden-section search for the maximum of a unimodal function. The end
/// points are compared against the interior optimum, so monotone functions
/// return the larger end point.
Extremum maximize_unimodal(const ScalarFunction& f, const Bracket& bracket,
                           double tol = 1e-12);

using VectorFunction = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using JacobianFunction = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

struct SphereNewtonOptions {
  double tol = 1e-12;
  int max_iterations = 60;
  /// Forward step for the finite-difference Jacobian when none is supplied.
  double fd_step = 1e-7;
};

/// Newton's method for F(x) = 0 on the unit sphere, F: R^{m+1} -> R^m.
/// Each step solves [J(x); x^T] dx = [-F(x); 0] and renormalizes x + dx.
/// Throws NumericalError for a singular augmented Jacobian and
/// ConvergenceError when the residual does not drop below `tol`.
Eigen::VectorXd newton_on_sphere(const VectorFunction& F, Eigen::VectorXd x0,
                                 const SphereNewtonOptions& options = {},
                                 const JacobianFunction& jacobian = {});

struct BallConstants {
  /// Volume of the unit ball in R^n.
  double volume;
  /// Surface area of the unit sphere S^{n-1} (n * volume; zero for n = 0).
  double sphere_area;
};

BallConstants unit_ball_constants(int n);

/// Shorthand for unit_ball_constants(n).volume.
double unit_ball_volume(int n);

}  // namespace revolv
