#include "revolv/error.hpp"
#include "revolv/parallel.hpp"
#include "revolv/slope_grid.hpp"

#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <stdexcept>

using namespace revolv;

TEST_CASE("default report grid") {
  const auto grid = make_slope_grid({});
  REQUIRE(grid.size() == 100);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 20.0);
  CHECK(std::is_sorted(grid.begin(), grid.end()));
  CHECK(std::adjacent_find(grid.begin(), grid.end()) == grid.end());
  const auto near = std::count_if(grid.begin(), grid.end(), [](double s) {
    return std::abs(s - kRegimeSlope) <= 0.05 + 1e-15;
  });
  CHECK(near >= 11);
  CHECK(std::count(grid.begin(), grid.end(), kRegimeSlope) == 1);
}

TEST_CASE("grid options") {
  SlopeGridSpec positive;
  positive.s_min = 0.05;
  positive.count = 50;
  const auto g = make_slope_grid(positive);
  CHECK(g.size() == 50);
  CHECK(g.front() == doctest::Approx(0.05));
  CHECK(g.back() == 20.0);

  SlopeGridSpec plain;
  plain.count = 5;
  plain.cluster_count = 0;
  CHECK(make_slope_grid(plain).size() == 5);

  SlopeGridSpec tiny;
  tiny.count = 5;
  CHECK_THROWS_AS(make_slope_grid(tiny), DomainError);
  SlopeGridSpec reversed;
  reversed.s_min = 5.0;
  reversed.s_max = 1.0;
  CHECK_THROWS_AS(make_slope_grid(reversed), DomainError);
}

TEST_CASE("parallel_for visits every index once") {
  std::vector<std::atomic<int>> seen(1000);
  parallel_for(seen.size(), [&](std::size_t i) { seen[i].fetch_add(1); });
  CHECK(std::all_of(seen.begin(), seen.end(), [](const auto& v) { return v.load() == 1; }));
  parallel_for(0, [](std::size_t) { FAIL("no calls expected"); });
}

TEST_CASE("parallel_for rethrows") {
  CHECK_THROWS_AS(parallel_for(50,
                               [](std::size_t i) {
                                 if (i == 17) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("worker count honours the thread cap") {
  ::setenv("REVOLV_THREADS", "1", 1);
  CHECK(worker_count() == 1);
  ::setenv("REVOLV_THREADS", "junk", 1);
  CHECK(worker_count() >= 1);
  ::unsetenv("REVOLV_THREADS");
  CHECK(worker_count() >= 1);
}
