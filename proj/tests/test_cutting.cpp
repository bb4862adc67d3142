#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "arccensus/general_arc.hpp"
#include "support.hpp"

using namespace arccensus;

namespace {

std::vector<GeneralArc> arc_items(const std::vector<UnitArc>& arcs) {
  std::vector<GeneralArc> items;
  for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
    for (auto& g : split_unit_arc(arcs[i], i)) items.push_back(g);
  }
  return items;
}

void check_contract(const HierarchicalCutting& hc) {
  const double n = static_cast<double>(hc.item_count);
  for (std::size_t i = 0; i < hc.levels.size(); ++i) {
    for (int c : hc.levels[i]) {
      CHECK(static_cast<double>(hc.crossing[c].size()) <= n / std::pow(2.0, static_cast<double>(i)) + 1e-9);
      CHECK(hc.cells[c].children.size() <= static_cast<std::size_t>(hc.c_child));
    }
  }
}

}  // namespace

TEST_CASE("single segment, r = 1") {
  std::vector<GeneralArc> items{make_segment({0.1, 0.2}, {0.9, 0.6}, 0)};
  auto hc = build_hierarchical_cutting(items, 1.0, box_region({0, 0, 1, 1}));
  CHECK(hc.depth() == 0);
  CHECK(hc.cells.size() == 1);
  CHECK(hc.crossing[0] == std::vector<int>{0});
}

TEST_CASE("parallel segments, r = n") {
  std::vector<GeneralArc> items;
  const int n = 16;
  for (int i = 0; i < n; ++i) {
    double y = (i + 0.5) / n;
    items.push_back(make_segment({0.0, y}, {1.0, y + 0.01}, i));
  }
  auto hc = build_hierarchical_cutting(items, n, box_region({-0.1, -0.1, 1.1, 1.1}));
  for (int leaf : hc.leaves()) CHECK(hc.crossing[leaf].size() <= 1);
  check_contract(hc);
}

TEST_CASE("random unit arcs, r = 10") {
  auto arcs = test::instance(1000, 12.0, 4);
  auto items = arc_items(arcs);
  auto hc = build_hierarchical_cutting(items, 10.0, box_region({-1.5, -1.5, 13.5, 13.5}));
  CHECK(hc.depth() == cutting_depth(10.0, 2));
  check_contract(hc);

  SUBCASE("crossing lists are exact") {
    for (std::size_t c = 0; c < hc.cells.size(); c += 7) {
      std::vector<int> expect;
      const auto& parent_h = hc.cells[c].parent < 0 ? std::vector<int>{} : hc.crossing[hc.cells[c].parent];
      if (hc.cells[c].parent < 0) continue;
      for (int i : parent_h) {
        if (crosses_interior(items[i], hc.cells[c])) expect.push_back(i);
      }
      CHECK(hc.crossing[c] == expect);
    }
  }
  SUBCASE("locate_path matches a linear scan") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1.0, 13.0);
    int located = 0;
    for (int q = 0; q < 1000; ++q) {
      Point p{u(rng), u(rng)};
      std::vector<int> path;
      try {
        path = hc.locate_path(p);
      } catch (const OnBoundary&) {
        continue;
      }
      ++located;
      REQUIRE(path.size() == static_cast<std::size_t>(hc.depth() + 1));
      for (std::size_t i = 1; i < path.size(); ++i) CHECK(hc.cells[path[i]].parent == path[i - 1]);
      int hits = 0;
      int found = -1;
      for (int leaf : hc.leaves()) {
        if (hc.cells[leaf].classify(p) == Side::inside) {
          ++hits;
          found = leaf;
        }
      }
      CHECK(hits == 1);
      CHECK(found == path.back());
    }
    CHECK(located > 950);
  }
  SUBCASE("children tile their parent") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t c = 0; c < hc.cells.size(); c += 13) {
      const auto& parent = hc.cells[c];
      if (parent.children.empty()) continue;
      for (int t = 0; t < 100; ++t) {
        double x = parent.left_x + u(rng) * (parent.right_x - parent.left_x);
        double lo = parent.bottom.y_at(x);
        double hi = parent.top.y_at(x);
        Point p{x, lo + u(rng) * (hi - lo)};
        if (parent.classify(p) != Side::inside) continue;
        int inside = 0;
        int boundary = 0;
        for (int ch : parent.children) {
          Side s = hc.cells[ch].classify(p);
          inside += s == Side::inside;
          boundary += s == Side::boundary;
        }
        CHECK((inside == 1 || (inside == 0 && boundary > 0)));
      }
    }
  }
}

TEST_CASE("total size is stable across seeds") {
  auto arcs = test::instance(600, 10.0, 6);
  auto items = arc_items(arcs);
  std::vector<double> totals;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    CuttingOptions opt;
    opt.seed = seed;
    auto hc = build_hierarchical_cutting(items, 8.0, box_region({-1.5, -1.5, 11.5, 11.5}), opt);
    check_contract(hc);
    totals.push_back(hc.c_total);
  }
  double mean = 0.0;
  for (double t : totals) mean += t / totals.size();
  for (double t : totals) CHECK(std::abs(t - mean) <= 0.1 * mean);
}

TEST_CASE("dump format") {
  std::vector<GeneralArc> items{make_segment({0.1, 0.2}, {0.9, 0.6}, 0)};
  auto hc = build_hierarchical_cutting(items, 1.0, box_region({0, 0, 1, 1}));
  std::ostringstream os;
  hc.dump(os);
  CHECK(os.str().rfind("0 0 -1 0 1 ", 0) == 0);
}

TEST_CASE("bad parameter") {
  CHECK_THROWS_AS(build_hierarchical_cutting({}, 0.5, box_region({0, 0, 1, 1})), std::invalid_argument);
}

TEST_CASE("clip_arc splits a circle at the cell boundary") {
  PseudoTrapezoid cell = box_region({0, 0, 1, 1});
  auto pieces = clip_arc(test::full_circle(0, {0.5, -0.5}), cell);
  REQUIRE(pieces.size() == 1);
  CHECK_FALSE(pieces[0].original_end[0]);
  CHECK_FALSE(pieces[0].original_end[1]);
  auto inner = clip_arc(test::arc_deg(1, {0.5, -0.5}, 80, 100), cell);
  REQUIRE(inner.size() == 1);
  CHECK(inner[0].original_end[0]);
  CHECK(inner[0].original_end[1]);
}
