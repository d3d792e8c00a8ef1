// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include "revolv/counterexamples.hpp"
#include "revolv/functionals.hpp"
#include "revolv/slope_grid.hpp"

#include "support/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

using namespace revolv;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  std::string name;
  double time_limit;  // seconds, <= 0 for none
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::vector<double> log_slopes(int n, double lo, double hi) {
  std::vector<double> s;
  for (int i = 0; i < n; ++i) s.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return s;
}

const BonnesenPair& pair6() {
  static const BonnesenPair pair = build_bonnesen_pair(6);
  return pair;
}

const BodyOfRevolution& klee() {
  static const BodyOfRevolution body = build_klee_body();
  return body;
}

std::vector<std::pair<std::string, BodyOfRevolution>> test_bodies() {
  return {{"ball", BodyOfRevolution::ball(4)},
          {"klee", klee()},
          {"plus", pair6().plus},
          {"minus", pair6().minus}};
}

Outcome ball_sanity() {
  const auto grid = make_slope_grid({});
  double worst = 0.0;
  for (int d : {4, 6}) {
    for (double lambda : {1.0, 2.0}) {
      const BodyOfRevolution ball = BodyOfRevolution::ball(d, lambda);
      const double exact = std::pow(lambda, d - 1) * unit_ball_volume(d - 1);
      for (const auto& row : sweep(ball, grid)) {
        for (double v : {row.central, row.maximal, row.projection})
          worst = std::max(worst, oracle::rel(v, exact));
      }
    }
  }
  return {worst <= 1e-8, fmt("max rel error %.3e <= 1e-8", worst)};
}

std::vector<double> klee_grid() {
  SlopeGridSpec spec;
  spec.s_min = 0.05;
  spec.count = 50;
  return make_slope_grid(spec);
}

Outcome klee_distribution() {
  const KleeReport r = verify_klee(klee(), klee_grid());
  const bool ok = r.max_rel_distribution_gap <= 1e-7 && r.max_level_error <= 1e-8;
  return {ok, fmt("distribution gap %.3e <= 1e-7, level error %.3e <= 1e-8",
                  r.max_rel_distribution_gap, r.max_level_error)};
}

Outcome klee_realization() {
  const KleeReport r = verify_klee(klee(), klee_grid());
  const double target = 4 * std::numbers::pi / 3;
  const double dev = std::max(r.max_rel_deviation, oracle::rel(r.axis_maximal, target));
  const bool ok = r.asymmetry >= 1e-3 && dev <= 1e-6;
  return {ok, fmt("asymmetry %.3e >= 1e-3, max rel deviation of M %.3e <= 1e-6", r.asymmetry, dev)};
}

Outcome pair_realization() {
  const BonnesenPair& pair = pair6();
  const VerificationReport r =
      verify_pair(pair.plus, pair.minus, make_slope_grid({}), {}, &pair.solution);
  std::string failed;
  for (const auto& c : r.claims) {
    if (!c.pass) failed += " [" + c.name + "]";
  }
  std::string detail = fmt("eps %.4e, max rel discrepancy %.3e", pair.eps,
                           std::max({r.max_rel_discrepancy.central, r.max_rel_discrepancy.maximal,
                                     r.max_rel_discrepancy.projection}));
  detail += fmt(", linf direct %.3e, mirror %.3e", r.linf_direct, r.linf_mirror);
  if (!failed.empty()) detail += ", failed:" + failed;
  return {r.pass, detail};
}

Outcome oracle_equivalence() {
  constexpr long kSamples = 1000000;
  oracle::Gen gen(20120418);
  double worst = 0.0;
  std::uint64_t seed = 1;
  for (const auto& [name, body] : test_bodies()) {
    for (int i = 0; i < 5; ++i) {
      const double s = gen.slope();
      const Bracket range = intercept_range(body, s);
      const double h = range.lower() + gen.uniform(0.2, 0.8) * range.width();
      const Chord c = chord_endpoints(body, s, h);
      const double mc = oracle::mc_section(body, s, h, c.left * body.scale(),
                                           c.right * body.scale(), kSamples, seed++);
      worst = std::max(worst, oracle::rel(mc, section_volume(body, s, h)));
    }
    for (int i = 0; i < 3; ++i) {
      const double s = gen.slope();
      const double mc = oracle::mc_shadow(body, s, kSamples, seed++);
      worst = std::max(worst, oracle::rel(mc, projection(body, s)));
    }
  }
  return {worst <= 0.01, fmt("max rel gap %.3e <= 1e-2", worst)};
}

Outcome invariant_suite() {
  oracle::Gen gen(7);
  int failures = 0;
  double worst_residual = 0.0;
  auto expect = [&](bool ok) {
    if (!ok) ++failures;
  };
  for (const auto& [name, body] : test_bodies()) {
    const int d = body.dimension();
    const BodyOfRevolution big(d, body.profile(), 2.0);
    const BodyOfRevolution mirror(d, reflect(body.profile()));
    const double factor = std::pow(2.0, d - 1);
    for (int i = 0; i < 8; ++i) {
      const double s = gen.slope();
      const double a = central_section(body, s);
      const MaxSectionResult m = maximal_section(body, s);
      const double p = projection(body, s);
      expect(a <= m.volume * (1 + 1e-9) && m.volume <= p * (1 + 1e-9));
      expect(oracle::rel(central_section(big, s), factor * a) <= 1e-9);
      expect(oracle::rel(maximal_section(big, s).volume, factor * m.volume) <= 1e-9);
      expect(oracle::rel(projection(big, s), factor * p) <= 1e-9);
      const MaxSectionResult r = maximal_section(mirror, -s);
      expect(oracle::rel(r.volume, m.volume) <= 1e-9);
      expect(oracle::rel(central_section(mirror, -s), a) <= 1e-9);
      expect(oracle::rel(projection(mirror, -s), p) <= 1e-9);
      const double res = std::abs(max_condition_residual(body, s, m.intercept)) / m.residual_scale;
      worst_residual = std::max(worst_residual, res);
    }
    for (const auto& row : sweep(body, make_slope_grid({}))) {
      const double res = std::abs(max_condition_residual(body, row.slope, row.intercept)) /
                         maximal_section(body, row.slope).residual_scale;
      worst_residual = std::max(worst_residual, res);
    }
  }
  expect(worst_residual <= 1e-8);

  for (int d : {6, 8}) {
    const MomentSystem sys = MomentSystem::standard(d, 1e-3);
    const auto full = sys.indices(IndexSet::Full);
    for (int trial = 0; trial < 4; ++trial) {
      Eigen::VectorXd x(static_cast<Eigen::Index>(sys.basis().size()));
      for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = gen.uniform(-1.0, 1.0);
      x.normalize();
      const Eigen::VectorXd r = moment_residuals(sys, x, IndexSet::Full);
      const Eigen::VectorXd rm = moment_residuals(sys, -x, IndexSet::Full);
      for (std::size_t i = 0; i < full.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        if (full[i].l % 2 == 0) expect(std::abs(r(k)) <= 1e-12);
        expect(std::abs(r(k) + rm(k)) <= 1e-14);
      }
    }
  }
  std::string detail = std::to_string(failures) + " failed checks";
  detail += fmt(", max normalized residual at h* %.3e <= 1e-8", worst_residual);
  return {failures == 0, detail};
}

Outcome cross_formula() {
  double worst = 0.0;
  const std::vector<BodyOfRevolution> bodies{BodyOfRevolution::ball(4), klee(),
                                             BodyOfRevolution::ball(6), pair6().plus,
                                             pair6().minus};
  for (const auto& body : bodies) {
    for (double s : log_slopes(50, 0.01, 20.0)) {
      worst = std::max(worst, oracle::rel(central_section(body, s),
                                          central_section_via_radial(body, s)));
    }
  }
  return {worst <= 1e-8, fmt("max rel gap %.3e <= 1e-8", worst)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"ball sanity", 10.0, ball_sanity},
      {"distribution formula on the klee body", 30.0, klee_distribution},
      {"constant maximal sections of a non-ball (d = 4)", 30.0, klee_realization},
      {"section-equivalent distinct pair (d = 6)", 120.0, pair_realization},
      {"Monte Carlo oracle equivalence", 60.0, oracle_equivalence},
      {"invariant suite", 0.0, invariant_suite},
      {"central section cross-formula", 0.0, cross_formula},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0.0 && secs > c.time_limit) {
      o.pass = false;
      o.detail += fmt(", runtime %.1f s exceeds %.0f s", secs, c.time_limit);
    }
    std::printf("%s %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.name.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
