#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "arccensus/counter.hpp"
#include "arccensus/grid_cover.hpp"
#include "support.hpp"

using namespace arccensus;

namespace {

CounterConfig forced(double r = 4.0) {
  CounterConfig c;
  c.fallback_threshold = 2;
  c.r_override = r;
  return c;
}

std::uint64_t pairwise(const std::vector<ArcPiece>& a, const std::vector<ArcPiece>& b) {
  std::uint64_t c = 0;
  for (const auto& x : a) {
    for (const auto& y : b) c += static_cast<std::uint64_t>(intersection_count(x.arc, y.arc));
  }
  return c;
}

Box lattice_box(int ix, int iy) { return cell_box(CellKey{ix, iy}); }

Point random_in(const Box& b, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.02, 0.98);
  return {b.x_lo + u(rng) * (b.x_hi - b.x_lo), b.y_lo + u(rng) * (b.y_hi - b.y_lo)};
}

// Long pieces inside C of full circles centred in `home`, and short pieces
// inside C of arcs centred in `other`.
struct Scene {
  ArcGroup longs;
  ArcGroup shorts;
  PseudoTrapezoid tau;
};

Scene make_scene(std::mt19937_64& rng, int n_long, int n_short, CellKey home, CellKey other) {
  const Box c = lattice_box(0, 0);
  Scene s{{{}, lattice_box(home.ix, home.iy)}, {{}, lattice_box(other.ix, other.iy)}, box_region(c)};
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int id = 0;
  while (static_cast<int>(s.longs.pieces.size()) < n_long) {
    auto pieces = clip_arc(test::full_circle(id++, random_in(s.longs.center_cell, rng), Color::red), s.tau);
    for (auto& p : pieces) s.longs.pieces.push_back(p);
  }
  while (static_cast<int>(s.shorts.pieces.size()) < n_short) {
    double t = u(rng) * kTwoPi;
    UnitArc a = make_arc(id++, random_in(s.shorts.center_cell, rng), t, t + 0.05 + u(rng) * 2.5, Color::blue);
    for (auto& p : clip_arc(a, s.tau)) {
      if (p.original_end[0] || p.original_end[1]) s.shorts.pieces.push_back(p);
    }
  }
  return s;
}

bool general(const Scene& s) {
  std::vector<UnitArc> arcs;
  std::map<int, bool> seen;
  for (const auto* g : {&s.longs, &s.shorts}) {
    for (const auto& p : g->pieces) {
      if (!seen[p.arc.id]) arcs.push_back(p.arc);
      seen[p.arc.id] = true;
    }
  }
  try {
    for (const auto& a : s.longs.pieces) {
      for (const auto& b : s.shorts.pieces) intersection_count(a.arc, b.arc);
    }
  } catch (const GeometryError&) {
    return false;
  }
  return check_general_position(arcs, 1e-6).empty();
}

}  // namespace

TEST_CASE("count_all examples") {
  CHECK(count_all({}).total == 0);
  CHECK(count_all({test::full_circle(0, {0, 0})}).total == 0);
  std::vector<UnitArc> tri{test::full_circle(0, {0.05, 0.05}), test::full_circle(1, {1.05, 0.05}),
                           test::full_circle(2, {0.55, 0.05 + std::sqrt(3.0) / 2.0})};
  CHECK(brute_count(tri) == 6);
  CHECK(count_all(tri).total == 6);
  CHECK(count_all(tri, forced()).total == 6);
  auto arcs = test::instance(200, 6.0, 1);
  CHECK(count_all(arcs).total == brute_count(arcs));
}

TEST_CASE("count_all matches the oracle with structured sub-counters") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    auto arcs = test::instance(120, 3.0 + static_cast<double>(seed % 3), seed);
    CountReport r = count_all(arcs, forced(seed % 2 ? 4.0 : 8.0));
    CHECK(r.total == brute_count(arcs));
    CHECK(r.total == r.by_type.total());
    CHECK(r.diagnostics.structured_calls > 0);
    const TypeCounts& t = r.by_type;
    CHECK(t.t3 + t.t4 >= t.t311 + t.t3121 + t.t3122 + 2 * t.t32);
    CHECK(t.t1 == t.t111 + 2 * t.t112);
  }
}

TEST_CASE("threads do not change the report") {
  auto arcs = test::instance(400, 8.0, 21);
  CounterConfig one = forced();
  CounterConfig four = forced();
  four.threads = 4;
  CountReport a = count_all(arcs, one);
  CountReport b = count_all(arcs, four);
  CHECK(a.total == b.total);
  CHECK(a.by_type.t1 == b.by_type.t1);
  CHECK(a.by_type.t3 == b.by_type.t3);
  CHECK(a.diagnostics.main_cutting_cells == b.diagnostics.main_cutting_cells);
}

TEST_CASE("degenerate input is rejected with the pair") {
  std::vector<UnitArc> arcs{test::full_circle(0, {0, 0}), test::full_circle(1, {2, 0})};
  try {
    count_all(arcs);
    FAIL("accepted tangent circles");
  } catch (const DegenerateInput& e) {
    CHECK(e.first_id == 0);
    CHECK(e.second_id == 1);
  }
}

TEST_CASE("count_between and count_within edge cases") {
  CounterConfig cfg;
  Diagnostics diag;
  PairContext ctx{lattice_box(0, 0), &cfg, &diag, 0};
  ArcGroup empty{{}, lattice_box(0, 0)};
  ArcGroup one{{}, lattice_box(0, 0)};
  one.pieces = clip_arc(test::full_circle(0, {0.3, 0.3}), box_region(lattice_box(0, 0)));
  CHECK(count_between(empty, one, ctx).total() == 0);
  CHECK(count_within(one, ctx).total() == 0);
}

TEST_CASE("type (3) sub-counts") {
  std::mt19937_64 rng(17);
  const CellKey homes[] = {{0, -1}, {1, 0}, {0, 1}, {-1, 0}, {1, -1}, {-2, 1}};
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    CellKey home = homes[trial % 6];
    CellKey other = homes[(trial / 6 + 1) % 6];
    Scene s = make_scene(rng, 30, 40, home, other);
    if (!general(s)) continue;
    ++checked;
    CounterConfig cfg;
    cfg.fallback_threshold = trial % 2 ? 2 : 8;
    Diagnostics diag;
    PairContext ctx{lattice_box(0, 0), &cfg, &diag, 0};
    Type3Counts c = count_type3(s.longs, s.shorts, s.tau, ctx);
    CHECK(c.k2 >= c.k3w);
    CHECK(c.points() == pairwise(s.longs.pieces, s.shorts.pieces));
    CounterConfig grouped = cfg;
    grouped.group_override = 3;
    PairContext gctx{lattice_box(0, 0), &grouped, &diag, 0};
    CHECK(count_type3(s.longs, s.shorts, s.tau, gctx).points() == c.points());
  }
  CHECK(checked >= 40);
}

TEST_CASE("type (1.1) pairs") {
  std::mt19937_64 rng(23);
  const CellKey homes[] = {{0, -1}, {1, 0}, {0, 1}, {-1, 0}, {-1, -1}, {1, 1}};
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Scene a = make_scene(rng, 40, 0, homes[trial % 6], {0, 0});
    Scene b = make_scene(rng, 40, 0, homes[(trial + 1 + trial / 6) % 6], {0, 0});
    for (auto& p : b.longs.pieces) p.arc.id += 100000;
    bool ok = true;
    try {
      pairwise(a.longs.pieces, b.longs.pieces);
    } catch (const GeometryError&) {
      ok = false;
    }
    if (!ok) continue;
    ++checked;
    CounterConfig cfg;
    cfg.fallback_threshold = trial % 2 ? 2 : 16;
    Diagnostics diag;
    PairContext ctx{lattice_box(0, 0), &cfg, &diag, 0};
    std::uint64_t expect = pairwise(a.longs.pieces, b.longs.pieces);
    Type11Counts c = count_11_pairs(a.longs, b.longs, a.tau, ctx);
    CHECK(c.points() == expect);
    std::uint64_t once = 0;
    for (const auto& x : a.longs.pieces) {
      for (const auto& y : b.longs.pieces) once += intersection_count(x.arc, y.arc) == 1;
    }
    CHECK(count_once_by_chord_order(a.longs.pieces, b.longs.pieces, a.tau) == once);
  }
  CHECK(checked >= 40);
}

TEST_CASE("small-K variant") {
  SUBCASE("far apart arcs") {
    std::vector<UnitArc> arcs;
    for (int i = 0; i < 20; ++i) arcs.push_back(test::arc_deg(i, {5.0 * i, 0.0}, 0, 300));
    CountReport r = count_small_k(arcs);
    CHECK(r.total == 0);
    CHECK(r.diagnostics.small_k_rounds == 1);
  }
  SUBCASE("matches count_all") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      auto arcs = test::instance(150, 4.0 + static_cast<double>(seed), seed);
      CounterConfig cfg;
      cfg.fallback_threshold = 4;
      CountReport r = count_small_k(arcs, cfg);
      CHECK(r.total == count_all(arcs, cfg).total);
      CHECK(r.diagnostics.small_k_guess >= r.total);
    }
  }
}

TEST_CASE("bichromatic modes") {
  std::vector<UnitArc> reds{test::arc_deg(0, {0, 0}, -80, 80, Color::red),
                            test::arc_deg(1, {0.3, 3}, 0, 200, Color::red)};
  CHECK(count_bichromatic(reds, {}, BichromaticMode::direct).total == 0);
  CHECK(count_bichromatic(reds, {}, BichromaticMode::identity).total == 0);
  std::vector<UnitArc> blues{test::arc_deg(2, {1.8, 0}, 100, 260, Color::blue)};
  CHECK(count_bichromatic({reds[0]}, blues, BichromaticMode::direct).total == 2);
  CHECK(count_bichromatic({reds[0]}, blues, BichromaticMode::identity).total == 2);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto arcs = test::instance(150, 4.0, seed);
    auto r = test::of_color(arcs, Color::red);
    auto b = test::of_color(arcs, Color::blue);
    std::uint64_t expect = brute_count_bichromatic(r, b);
    CounterConfig cfg = forced();
    CHECK(count_bichromatic(r, b, BichromaticMode::direct, cfg).total == expect);
    CHECK(count_bichromatic(r, b, BichromaticMode::identity, cfg).total == expect);
  }
}

TEST_CASE("type (1) attribution is unique") {
  auto arcs = test::instance(150, 3.0, 4);
  CounterHooks hooks;
  std::map<std::tuple<int, int, long long, long long>, int> counted;
  hooks.on_type1 = [&](int, int, const std::vector<ArcPiece>& a, const std::vector<ArcPiece>& b,
                       std::uint64_t points) {
    std::uint64_t seen = 0;
    for (const auto& x : a) {
      for (const auto& y : b) {
        for (const auto& p : arc_arc_intersections(x.arc, y.arc)) {
          auto key = std::make_tuple(std::min(x.arc.id, y.arc.id), std::max(x.arc.id, y.arc.id),
                                     std::llround(p.x * 1e7), std::llround(p.y * 1e7));
          ++counted[key];
          ++seen;
        }
      }
    }
    CHECK(seen == points);
  };
  CounterConfig cfg = forced();
  cfg.hooks = &hooks;
  count_all(arcs, cfg);
  CHECK_FALSE(counted.empty());
  for (const auto& [k, v] : counted) CHECK(v == 1);
}
