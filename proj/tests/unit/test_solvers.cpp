#include "revolv/error.hpp"
#include "revolv/solvers.hpp"

#include "../support/oracles.hpp"

#include <doctest.h>
#include <Eigen/LU>

#include <cmath>
#include <numbers>

using namespace revolv;

TEST_CASE("bracket rejects empty intervals") {
  CHECK_THROWS_AS(Bracket(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(Bracket(2.0, 1.0), DomainError);
  const Bracket b(-1.0, 3.0);
  CHECK(b.width() == 4.0);
  CHECK(b.midpoint() == 1.0);
  CHECK(b.contains(3.0));
  CHECK_FALSE(b.contains(3.5));
}

TEST_CASE("integrate: polynomial and semicircle") {
  CHECK(integrate([](double x) { return x * x; }, Bracket(0.0, 1.0)) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(integrate([](double x) { return std::sqrt(std::max(0.0, 1.0 - x * x)); },
                  Bracket(-1.0, 1.0)) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-11));
}

TEST_CASE("integrate: mollifier bump against the midpoint oracle") {
  auto bump = [](double x) {
    const double u = x;
    return std::abs(u) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - u * u)) : 0.0;
  };
  const double reference = oracle::midpoint(bump, -1.0, 1.0);
  // Frozen value, cross-checked with 30-digit quadrature.
  CHECK(reference == doctest::Approx(1.2069003224378762).epsilon(1e-12));
  CHECK(std::abs(integrate(bump, Bracket(-1.0, 1.0)) - reference) <= 1e-10);
}

TEST_CASE("integrate: knots split kinks") {
  auto kink = [](double x) { return std::abs(x - 0.3); };
  QuadratureSpec spec;
  spec.knots = {0.3};
  CHECK(integrate(kink, Bracket(0.0, 1.0), spec) ==
        doctest::Approx(0.045 + 0.245).epsilon(1e-14));
}

TEST_CASE("integrate: reports failure with an estimate") {
  QuadratureSpec spec;
  spec.max_depth = 2;
  spec.rel_tol = 1e-15;
  spec.abs_tol = 1e-300;
  try {
    integrate([](double x) { return 1.0 / std::sqrt(x); }, Bracket(0.0, 1.0), spec);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(e.estimate() > 1.0);
    CHECK(e.error_bound() > 0.0);
  }
}

TEST_CASE("integrate: spec validation") {
  QuadratureSpec spec;
  spec.rel_tol = 0.0;
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, Bracket(0.0, 1.0), spec), DomainError);
  QuadratureSpec outside;
  outside.knots = {2.0};
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, Bracket(0.0, 1.0), outside), DomainError);
}

TEST_CASE("integrate: linearity and additivity on random polynomials") {
  oracle::Gen gen(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = gen.polynomial(gen.integer(0, 8));
    const auto q = gen.polynomial(gen.integer(0, 8));
    const double a = gen.uniform(-3.0, 3.0);
    const double lo = gen.uniform(-2.0, 0.0);
    const double mid = gen.uniform(0.0, 1.0);
    const double hi = gen.uniform(1.0, 3.0);
    auto P = [&](double x) { return oracle::horner(p, x); };
    auto Q = [&](double x) { return oracle::horner(q, x); };
    const double ip = integrate(P, Bracket(lo, hi));
    const double iq = integrate(Q, Bracket(lo, hi));
    const double combo = integrate([&](double x) { return a * P(x) + Q(x); }, Bracket(lo, hi));
    const double scale = std::abs(a * ip) + std::abs(iq) + 1.0;
    CHECK(std::abs(combo - (a * ip + iq)) <= 2e-11 * scale);
    const double split = integrate(P, Bracket(lo, mid)) + integrate(P, Bracket(mid, hi));
    CHECK(std::abs(split - ip) <= 2e-11 * (std::abs(ip) + 1.0));
  }
}

TEST_CASE("bisect_root examples") {
  CHECK(bisect_root([](double x) { return x - 0.3; }, Bracket(0.0, 1.0)) ==
        doctest::Approx(0.3).epsilon(1e-12));
  CHECK(std::abs(bisect_root([](double x) { return x * x - 2.0; }, Bracket(1.0, 2.0)) -
                 std::sqrt(2.0)) <= 1e-12);
  // s = 2t / mu(t) with mu the semicircle distribution function, at s = 1.
  auto level = [](double t) { return 2.0 * t / (2.0 * std::sqrt(1.0 - t * t)) - 1.0; };
  CHECK(std::abs(bisect_root(level, Bracket(0.0, 0.99)) - 1.0 / std::sqrt(2.0)) <= 1e-12);
  CHECK_THROWS_AS(bisect_root([](double x) { return x * x + 1.0; }, Bracket(-1.0, 1.0)),
                  DomainError);
}

TEST_CASE("bisect_root: residual bounded by Lipschitz constant times tolerance") {
  oracle::Gen gen(11);
  for (int trial = 0; trial < 100; ++trial) {
    const double root = gen.uniform(-0.9, 0.9);
    const double k = gen.uniform(0.5, 5.0);
    auto f = [&](double x) { return std::sinh(k * (x - root)); };
    const double tol = 1e-10;
    const double x = bisect_root(f, Bracket(-1.0, 1.0), tol);
    const double lipschitz = k * std::cosh(k * 2.0);
    CHECK(std::abs(f(x)) <= lipschitz * tol);
  }
}

TEST_CASE("maximize_unimodal examples") {
  const Extremum a = maximize_unimodal([](double h) { return -h * h; }, Bracket(-1.0, 1.0));
  CHECK(std::abs(a.argument) <= 1e-6);
  CHECK(a.value == doctest::Approx(0.0));
  const Extremum b =
      maximize_unimodal([](double h) { return -(h - 0.25) * (h - 0.25); }, Bracket(-1.0, 1.0));
  CHECK(b.argument == doctest::Approx(0.25).epsilon(1e-6));
  // Monotone functions peak at the bracket end.
  const Extremum c = maximize_unimodal([](double h) { return h; }, Bracket(-1.0, 2.0));
  CHECK(c.argument == 2.0);
  // Plateau: any point of the flat top is acceptable.
  const Extremum d = maximize_unimodal(
      [](double h) { return std::min(0.0, 1.0 - std::abs(h)); }, Bracket(-3.0, 3.0));
  CHECK(std::abs(d.argument) <= 1.0 + 1e-9);
  CHECK(d.value == 0.0);
}

TEST_CASE("newton_on_sphere examples") {
  Eigen::VectorXd x0(2);
  x0 << 0.6, 0.8;
  auto first = [](const Eigen::VectorXd& x) {
    Eigen::VectorXd r(1);
    r << x(0);
    return r;
  };
  const Eigen::VectorXd a = newton_on_sphere(first, x0);
  CHECK(std::abs(a(0)) <= 1e-12);
  CHECK(std::abs(std::abs(a(1)) - 1.0) <= 1e-12);

  Eigen::VectorXd y0(2);
  y0 << 1.0, 0.0;
  auto diff = [](const Eigen::VectorXd& x) {
    Eigen::VectorXd r(1);
    r << x(0) - x(1);
    return r;
  };
  const Eigen::VectorXd b = newton_on_sphere(diff, y0);
  CHECK(std::abs(std::abs(b(0)) - 1.0 / std::sqrt(2.0)) <= 1e-12);
  CHECK(b(0) == doctest::Approx(b(1)).epsilon(1e-12));
}

TEST_CASE("newton_on_sphere: unit norm and oddness on random odd cubic maps") {
  oracle::Gen gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = gen.integer(2, 4);
    const Eigen::MatrixXd A = Eigen::MatrixXd::Random(n - 1, n);
    const double c = gen.uniform(-0.2, 0.2);
    auto F = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
      return A * x + c * (A * x).cwiseProduct(A * x).cwiseProduct(A * x);
    };
    Eigen::VectorXd x0 = Eigen::VectorXd::Random(n);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    Eigen::VectorXd null = lu.kernel().col(0);
    x0 = null.normalized() + 0.05 * x0;
    const Eigen::VectorXd x = newton_on_sphere(F, x0);
    CHECK(std::abs(x.norm() - 1.0) <= 1e-15);
    CHECK(F(x).norm() <= 1e-12);
    CHECK((F(-x) + F(x)).norm() <= 1e-14);
  }
}

TEST_CASE("newton_on_sphere errors") {
  Eigen::VectorXd x0(2);
  x0 << 1.0, 0.0;
  auto none = [](const Eigen::VectorXd& x) {
    Eigen::VectorXd r(1);
    r << x(0) * x(0) + 1.0;
    return r;
  };
  CHECK_THROWS_AS(newton_on_sphere(none, x0), NumericalError);
  try {
    SphereNewtonOptions opts;
    opts.max_iterations = 3;
    newton_on_sphere(none, x0, opts);
  } catch (const ConvergenceError& e) {
    CHECK(e.last_residual() > 0.0);
  } catch (const NumericalError&) {
    // A singular augmented system is an acceptable way to fail here.
  }
  CHECK_THROWS_AS(newton_on_sphere(none, Eigen::VectorXd::Zero(2)), DomainError);
}

TEST_CASE("unit ball constants") {
  CHECK(unit_ball_volume(0) == doctest::Approx(1.0));
  CHECK(unit_ball_volume(2) == doctest::Approx(std::numbers::pi).epsilon(1e-15));
  CHECK(unit_ball_constants(2).sphere_area == doctest::Approx(2 * std::numbers::pi));
  CHECK(unit_ball_volume(3) == doctest::Approx(4 * std::numbers::pi / 3).epsilon(1e-15));
  CHECK(unit_ball_volume(5) ==
        doctest::Approx(8 * std::numbers::pi * std::numbers::pi / 15).epsilon(1e-15));
  for (int n = 1; n < 40; ++n) {
    const auto c = unit_ball_constants(n);
    CHECK(c.sphere_area == doctest::Approx(n * c.volume).epsilon(1e-14));
  }
  CHECK(std::isfinite(unit_ball_volume(400)));
  CHECK_THROWS_AS(unit_ball_constants(-1), DomainError);
}
