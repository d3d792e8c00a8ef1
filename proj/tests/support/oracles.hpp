#pragma once

// Brute-force reference computations used only by the tests. None of them
// touches the library's quadrature, root finders or optimizers.

#include "revolv/body.hpp"
#include "revolv/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

/// Composite midpoint rule with `panels` equal panels.
inline double midpoint(const std::function<double(double)>& f, double a, double b,
                       long panels = 1000000) {
  const double h = (b - a) / static_cast<double>(panels);
  double sum = 0.0;
  double c = 0.0;  // Kahan compensation
  for (long i = 0; i < panels; ++i) {
    const double y = f(a + (static_cast<double>(i) + 0.5) * h) - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum * h;
}

struct ScanMax {
  double argument;
  double value;
};

/// Largest sample of f over `n` equally spaced points of [a, b].
inline ScanMax grid_max(const std::function<double(double)>& f, double a, double b,
                        int n = 200001) {
  ScanMax best{a, f(a)};
  for (int i = 1; i < n; ++i) {
    const double x = a + (b - a) * i / (n - 1);
    const double v = f(x);
    if (v > best.value) best = {x, v};
  }
  return best;
}

/// Plain interval halving, independent of the library's root finder.
inline double halve(const std::function<double(double)>& f, double lo, double hi,
                    int iterations = 200) {
  double flo = f(lo);
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Root of an odd scalar map on the unit circle by halving theta on [0, pi].
inline double circle_root(const std::function<double(double, double)>& F) {
  return halve([&](double th) { return F(std::cos(th), std::sin(th)); }, 0.0, 3.14159265358979323846);
}

/// Rejection-sampling estimate of the (d-1)-volume of K cut by the
/// hyperplane x2 = s x1 + h. Samples x1 on [x_lo, x_hi] and x3..xd in a box.
inline double mc_section(const revolv::BodyOfRevolution& body, double s, double h, double x_lo,
                         double x_hi, long samples, std::uint64_t seed) {
  const int k = body.dimension() - 2;
  // Box half-width: largest cross radius along the chord from a dense scan,
  // padded so the scan cannot clip the section.
  double r = 0.0;
  for (int i = 0; i <= 20000; ++i) {
    const double x1 = x_lo + (x_hi - x_lo) * i / 20000;
    const double rad = body.radius_at(x1);
    const double x2 = s * x1 + h;
    r = std::max(r, std::sqrt(std::max(0.0, rad * rad - x2 * x2)));
  }
  r *= 1.01;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> along(x_lo, x_hi);
  std::uniform_real_distribution<double> across(-r, r);
  long hits = 0;
  for (long i = 0; i < samples; ++i) {
    const double x1 = along(rng);
    const double x2 = s * x1 + h;
    double q = x2 * x2;
    for (int j = 0; j < k; ++j) {
      const double v = across(rng);
      q += v * v;
    }
    const double rad = body.radius_at(x1);
    if (q <= rad * rad) ++hits;
  }
  const double box = (x_hi - x_lo) * std::pow(2.0 * r, k);
  return std::sqrt(1.0 + s * s) * box * static_cast<double>(hits) / static_cast<double>(samples);
}

/// Does the line through p in direction u meet K? p, u are given by their
/// (x1, x2) components plus the squared norm `rest` of the remaining
/// coordinates. The margin F(x1) - |(x2, rest)| is concave along the line,
/// so a coarse golden-section search with early exit decides.
inline bool line_meets(const revolv::BodyOfRevolution& body, double p1, double p2, double u1,
                       double u2, double rest, double reach) {
  auto margin = [&](double t) {
    const double x1 = p1 + t * u1;
    const double x2 = p2 + t * u2;
    return body.radius_at(x1) - std::sqrt(x2 * x2 + rest);
  };
  const double g = 0.6180339887498949;
  double a = -reach;
  double b = reach;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = margin(c);
  double fd = margin(d);
  while (b - a > 1e-5) {
    if (fc > 0.0 || fd > 0.0) return true;
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = margin(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = margin(d);
    }
  }
  return std::max(fc, fd) > 0.0;
}

/// Monte Carlo estimate of the shadow volume of K on u(s)^perp, with
/// u(s) = (-s, 1, 0, ...) / sqrt(1 + s^2).
inline double mc_shadow(const revolv::BodyOfRevolution& body, double s, long samples,
                        std::uint64_t seed) {
  const int k = body.dimension() - 2;
  const double c = 1.0 / std::sqrt(1.0 + s * s);
  const double lambda = body.scale();
  const double top = lambda * body.profile().max_value() * 1.0000001;
  // Coordinate along e' = (1, s, 0, ...) c is bounded by |x1| c + |x2| |s| c.
  const double a_max = lambda * c + top * std::abs(s) * c;
  const double reach = lambda + top;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> along(-a_max, a_max);
  std::uniform_real_distribution<double> across(-top, top);
  long hits = 0;
  for (long i = 0; i < samples; ++i) {
    const double a = along(rng);
    double rest = 0.0;
    for (int j = 0; j < k; ++j) {
      const double v = across(rng);
      rest += v * v;
    }
    if (rest > top * top) continue;
    if (line_meets(body, a * c, a * s * c, -s * c, c, rest, reach)) ++hits;
  }
  const double box = 2.0 * a_max * std::pow(2.0 * top, k);
  return box * static_cast<double>(hits) / static_cast<double>(samples);
}

/// Small deterministic generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  /// Slope with a log-uniform magnitude in [1e-2, 20], sometimes zero.
  double slope() {
    if (integer(0, 9) == 0) return 0.0;
    return std::exp(uniform(std::log(1e-2), std::log(20.0)));
  }
  std::vector<double> polynomial(int degree) {
    std::vector<double> c(static_cast<std::size_t>(degree + 1));
    for (auto& v : c) v = uniform(-2.0, 2.0);
    return c;
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline double horner(const std::vector<double>& c, double x) {
  double r = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
  return r;
}

inline double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s > 0.0 ? std::abs(a - b) / s : 0.0;
}

}  // namespace oracle
