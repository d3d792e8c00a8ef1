#include "revolv/solvers.hpp"

#include "revolv/error.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>

namespace revolv {

Bracket::Bracket(double lower, double upper) : lower_(lower), upper_(upper) {
  if (!(lower < upper)) {
    std::ostringstream os;
    os << "bracket requires lower < upper, got [" << lower << ", " << upper
       << "]";
    throw DomainError(os.str());
  }
}

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw DomainError("quadrature tolerances must be positive");
  }
  if (max_depth < 1) throw DomainError("quadrature depth must be at least 1");
}

namespace {

// Kronrod abscissas and weights for the 15-point rule; every other abscissa
// (odd index) is a 7-point Gauss node.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  int depth;
};

struct ByError {
  bool operator()(const Panel& lhs, const Panel& rhs) const {
    return lhs.error < rhs.error;
  }
};

double checked(const ScalarFunction& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "integrand is not finite at " << x;
    throw NumericalError(os.str());
  }
  return v;
}

Panel kronrod_panel(const ScalarFunction& f, double a, double b, int depth) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<double, 7> left{};
  std::array<double, 7> right{};
  const double fc = checked(f, center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  double abs_sum = std::abs(kronrod);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    left[i] = checked(f, center - dx);
    right[i] = checked(f, center + dx);
    const double pair = left[i] + right[i];
    kronrod += kKronrodWeights[i] * pair;
    abs_sum += kKronrodWeights[i] * (std::abs(left[i]) + std::abs(right[i]));
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[7] * std::abs(fc - mean);
  for (int i = 0; i < 7; ++i) {
    asc += kKronrodWeights[i] *
           (std::abs(left[i] - mean) + std::abs(right[i] - mean));
  }

  const double value = kronrod * half;
  const double res_abs = abs_sum * std::abs(half);
  const double res_asc = asc * std::abs(half);
  double error = std::abs((kronrod - gauss) * half);
  if (res_asc != 0.0 && error != 0.0) {
    error = res_asc * std::min(1.0, std::pow(200.0 * error / res_asc, 1.5));
  }
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    error = std::max(50.0 * eps * res_abs, error);
  }
  return Panel{a, b, value, error, depth};
}

}  // namespace

double integrate(const ScalarFunction& f, const Bracket& interval,
                 const QuadratureSpec& spec) {
  spec.validate();

  std::vector<double> cuts{interval.lower()};
  std::vector<double> knots = spec.knots;
  std::sort(knots.begin(), knots.end());
  for (double k : knots) {
    if (!interval.contains(k)) throw DomainError("integrate: knot outside the interval");
    if (k > cuts.back() && k < interval.upper()) cuts.push_back(k);
  }
  cuts.push_back(interval.upper());

  std::priority_queue<Panel, std::vector<Panel>, ByError> active;
  std::vector<Panel> exhausted;
  double total = 0.0;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel p = kronrod_panel(f, cuts[i], cuts[i + 1], 0);
    total += p.value;
    total_error += p.error;
    active.push(p);
  }

  constexpr std::size_t kMaxPanels = 20000;
  auto target = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };

  while (total_error > target() && !active.empty()) {
    Panel worst = active.top();
    active.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (worst.depth >= spec.max_depth || !(mid > worst.a && mid < worst.b) ||
        active.size() + exhausted.size() >= kMaxPanels) {
      exhausted.push_back(worst);
      continue;
    }
    Panel lhs = kronrod_panel(f, worst.a, mid, worst.depth + 1);
    Panel rhs = kronrod_panel(f, mid, worst.b, worst.depth + 1);
    total += lhs.value + rhs.value - worst.value;
    total_error += lhs.error + rhs.error - worst.error;
    active.push(lhs);
    active.push(rhs);
  }

  // Re-sum from scratch so the reported value carries no drift from the
  // incremental updates.
  total = 0.0;
  total_error = 0.0;
  while (!active.empty()) {
    total += active.top().value;
    total_error += active.top().error;
    active.pop();
  }
  for (const Panel& p : exhausted) {
    total += p.value;
    total_error += p.error;
  }
  if (total_error > target()) {
    std::ostringstream os;
    os << "quadrature on [" << interval.lower() << ", " << interval.upper()
       << "] exhausted its subdivision budget: estimate " << total
       << ", error bound " << total_error;
    throw QuadratureError(os.str(), total, total_error);
  }
  return total;
}

double bisect_root(const ScalarFunction& f, const Bracket& bracket, double tol) {
  double lo = bracket.lower();
  double hi = bracket.upper();
  double flo = f(lo);
  double fhi = f(hi);
  if (!std::isfinite(flo) || !std::isfinite(fhi)) {
    throw NumericalError("bisect_root: non-finite value at bracket end");
  }
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) {
    std::ostringstream os;
    os << "bisect_root: no sign change on [" << lo << ", " << hi << "] (f = "
       << flo << ", " << fhi << ")";
    throw DomainError(os.str());
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double fm = f(mid);
    if (!std::isfinite(fm)) throw NumericalError("bisect_root: non-finite value");
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Extremum maximize_unimodal(const ScalarFunction& f, const Bracket& bracket,
                           double tol) {
  constexpr double inv_phi = 0.618033988749894848204586834365638;
  auto eval = [&f](double x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "maximize_unimodal: non-finite value at " << x;
      throw NumericalError(os.str());
    }
    return v;
  };

  double a = bracket.lower();
  double b = bracket.upper();
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      if (!(c > a && c < d)) break;
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      if (!(d < b && d > c)) break;
      fd = eval(d);
    }
  }

  Extremum best = fc >= fd ? Extremum{c, fc} : Extremum{d, fd};
  for (double end : {bracket.lower(), bracket.upper()}) {
    const double v = eval(end);
    if (v > best.value) best = Extremum{end, v};
  }
  return best;
}

Eigen::VectorXd newton_on_sphere(const VectorFunction& F, Eigen::VectorXd x,
                                 const SphereNewtonOptions& options,
                                 const JacobianFunction& jacobian) {
  const Eigen::Index n = x.size();
  if (n < 2) throw DomainError("newton_on_sphere needs at least two unknowns");
  const double norm0 = x.norm();
  if (!(norm0 > 0.0)) throw DomainError("newton_on_sphere: zero start vector");
  x /= norm0;

  auto jacobian_at = [&](const Eigen::VectorXd& at, const Eigen::VectorXd& f0) {
    if (jacobian) return Eigen::MatrixXd(jacobian(at));
    Eigen::MatrixXd J(f0.size(), n);
    for (Eigen::Index k = 0; k < n; ++k) {
      Eigen::VectorXd shifted = at;
      shifted(k) += options.fd_step;
      J.col(k) = (F(shifted) - f0) / options.fd_step;
    }
    return J;
  };

  std::vector<double> history;
  Eigen::VectorXd fx = F(x);
  if (fx.size() != n - 1) {
    throw DomainError("newton_on_sphere: F must map R^{m+1} to R^m");
  }
  double residual = fx.norm();
  history.push_back(residual);

  for (int it = 0; it < options.max_iterations; ++it) {
    if (residual <= options.tol) return x;

    Eigen::MatrixXd augmented(n, n);
    augmented.topRows(n - 1) = jacobian_at(x, fx);
    augmented.row(n - 1) = x.transpose();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs.head(n - 1) = -fx;

    Eigen::FullPivLU<Eigen::MatrixXd> lu(augmented);
    if (!lu.isInvertible()) {
      throw NumericalError("newton_on_sphere: singular augmented Jacobian");
    }
    const Eigen::VectorXd step = lu.solve(rhs);

    // Backtrack when the full step increases the residual.
    double scale = 1.0;
    Eigen::VectorXd candidate;
    Eigen::VectorXd f_candidate;
    double r_candidate = 0.0;
    for (int halving = 0; halving < 12; ++halving) {
      candidate = (x + scale * step).normalized();
      f_candidate = F(candidate);
      r_candidate = f_candidate.norm();
      if (r_candidate < residual) break;
      scale *= 0.5;
    }
    x = candidate;
    fx = f_candidate;
    residual = r_candidate;
    history.push_back(residual);
  }
  if (residual <= options.tol) return x;

  std::ostringstream os;
  os << "newton_on_sphere did not converge in " << options.max_iterations
     << " iterations; last residual " << residual;
  throw ConvergenceError(os.str(), std::move(history));
}

BallConstants unit_ball_constants(int n) {
  if (n < 0) throw DomainError("unit_ball_constants: negative dimension");
  const double half = 0.5 * n;
  const double volume =
      std::exp(half * std::log(std::numbers::pi) - std::lgamma(half + 1.0));
  return BallConstants{volume, n * volume};
}

double unit_ball_volume(int n) { return unit_ball_constants(n).volume; }

}  // namespace revolv
