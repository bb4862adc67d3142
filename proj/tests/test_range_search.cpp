#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "arccensus/range_search.hpp"
#include "support.hpp"

using namespace arccensus;

namespace {

std::size_t scan_wedge(const std::vector<Point>& pts, const Wedge& w) {
  std::size_t c = 0;
  for (const auto& p : pts) c += in_wedge(w, p);
  return c;
}

Wedge random_wedge(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double lo = u(rng) * kTwoPi;
  return Wedge{{u(rng) * 10 - 5, u(rng) * 10 - 5}, lo, lo + 0.05 + u(rng) * (kPi - 0.1)};
}

}  // namespace

TEST_CASE("interval tree") {
  CHECK(IntervalTree(std::vector<std::pair<double, double>>{}).stab_count(0.3) == 0);
  IntervalTree t({{0, 2}, {1, 3}});
  CHECK(t.stab_count(1.5) == 2);
  CHECK(t.stab_count(2.5) == 1);
  CHECK(t.stab_count(4) == 0);
  CHECK(t.stab_count(2) == 2);  // closed intervals

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  std::vector<std::pair<double, double>> iv;
  for (int i = 0; i < 10000; ++i) {
    double a = u(rng), b = u(rng);
    iv.push_back({std::min(a, b), std::max(a, b)});
  }
  IntervalTree tree(iv);
  auto shuffled = iv;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  IntervalTree tree2(shuffled);
  for (int q = 0; q < 1000; ++q) {
    double x = u(rng);
    std::size_t expect = 0;
    for (auto [a, b] : iv) expect += a <= x && x <= b;
    CHECK(tree.stab_count(x) == expect);
    CHECK(tree2.stab_count(x) == expect);
  }
}

TEST_CASE("wedge counter examples") {
  CHECK(WedgeCounter(std::vector<Point>{}).count(Wedge{{0, 0}, 0.1, 1.0}) == 0);
  std::vector<Point> axes{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (auto strategy : {WedgeStrategy::brute, WedgeStrategy::partition}) {
    WedgeCounter wc(axes, strategy);
    CHECK(wc.count(Wedge{{0, 0}, test::deg(5), test::deg(85)}) == 0);
    CHECK(wc.count(Wedge{{0, 0}, test::deg(-5), test::deg(95)}) == 2);
  }
}

TEST_CASE("wedge counter matches a linear scan") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<Point> pts;
  for (int i = 0; i < 10000; ++i) pts.push_back({u(rng), u(rng)});
  WedgeCounter fast(pts, WedgeStrategy::partition);
  WedgeCounter slow(pts, WedgeStrategy::brute);
  for (int q = 0; q < 1000; ++q) {
    Wedge w = random_wedge(rng);
    std::size_t expect = scan_wedge(pts, w);
    CHECK(fast.count(w) == expect);
    CHECK(slow.count(w) == expect);
  }
}

TEST_CASE("stabbed wedge counter") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<std::pair<double, double>> iv;
  std::vector<Point> pts;
  for (int i = 0; i < 2000; ++i) {
    double a = u(rng), b = u(rng);
    iv.push_back({std::min(a, b), std::max(a, b)});
    pts.push_back({u(rng) - 5, u(rng) - 5});
  }
  StabbedWedgeCounter sw(iv, pts);
  for (int q = 0; q < 300; ++q) {
    double x = u(rng);
    Wedge w = random_wedge(rng);
    std::size_t expect = 0;
    for (std::size_t i = 0; i < iv.size(); ++i) {
      expect += iv[i].first <= x && x <= iv[i].second && in_wedge(w, pts[i]);
    }
    CHECK(sw.count(x, w) == expect);
  }
}

TEST_CASE("points in disks") {
  Box bounds{-1, -1, 1, 1};
  CHECK(count_points_in_disks({{0.3, 0.3}}, {{0.3, 0.3}}, 2.0, DiskStrategy::brute, bounds) == 1);
  CHECK(count_points_in_disks({{0, 0}}, {{5, 0}, {0, -5}}, 2.0, DiskStrategy::cutting, bounds) == 0);
  CHECK_THROWS_AS(count_points_in_disks_brute({{0, 0}}, {{2, 0}}, 2.0), BoundaryCase);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_real_distribution<double> in(0.0, 0.7071067811865476);
    std::uniform_real_distribution<double> far(-2.5, 3.5);
    std::vector<Point> pts, centers;
    int n = trial == 0 ? 1000 : 150;
    for (int i = 0; i < n; ++i) pts.push_back({in(rng), in(rng)});
    for (int i = 0; i < n; ++i) centers.push_back({far(rng), far(rng)});
    Box cell{0, 0, 0.7071067811865476, 0.7071067811865476};
    std::size_t expect = 0;
    for (const auto& p : pts) {
      for (const auto& c : centers) expect += dist(p, c) < 2.0;
    }
    CHECK(count_points_in_disks_brute(pts, centers, 2.0) == expect);
    CHECK(count_points_in_disks(pts, centers, 2.0, DiskStrategy::cutting, cell) == expect);
    CHECK(count_points_in_disks(pts, centers, 2.0, DiskStrategy::automatic, cell) == expect);
  }
}
