#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "arccensus/coupled.hpp"
#include "arccensus/grid_cover.hpp"
#include "support.hpp"

using namespace arccensus;
using test::arc_deg;
using test::deg;

namespace {

// Unit arc with endpoints (1, 0) and (0, 0).
UnitArc unit_chord_arc() { return arc_deg(1, {0.5, -std::sqrt(3.0) / 2.0}, 60, 120); }

}  // namespace

TEST_CASE("make_arc normalizes angles") {
  UnitArc a = make_arc(0, {0, 0}, -kPi / 2, kPi / 2);
  CHECK(a.theta_start == doctest::Approx(3 * kPi / 2));
  CHECK(a.span() == doctest::Approx(kPi));
  CHECK(make_arc(0, {0, 0}, 1.0, 1.0 + kTwoPi).is_full());
  CHECK_THROWS_AS(make_arc(0, {0, 0}, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_arc(0, {NAN, 0}, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("arc_arc_intersections examples") {
  SUBCASE("upper semicircles meet once") {
    auto pts = arc_arc_intersections(arc_deg(0, {0, 0}, 0, 180), arc_deg(1, {1, 0}, 0, 180));
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].x == doctest::Approx(0.5));
    CHECK(pts[0].y == doctest::Approx(std::sqrt(3.0) / 2.0));
  }
  SUBCASE("far circles") {
    CHECK(arc_arc_intersections(arc_deg(0, {0, 0}, 0, 360), arc_deg(1, {3, 0}, 0, 360)).empty());
  }
  SUBCASE("two points") {
    UnitArc a = arc_deg(0, {0, 0}, -80, 80);
    UnitArc b = arc_deg(1, {1.8, 0}, 100, 260);
    auto pts = arc_arc_intersections(a, b);
    REQUIRE(pts.size() == 2);
    for (const auto& p : pts) {
      CHECK(p.x == doctest::Approx(0.9));
      CHECK(std::abs(p.y) == doctest::Approx(0.43589).epsilon(1e-4));
    }
    CHECK(test::sampled_crossings(a, b.center) == 2);
  }
  SUBCASE("degenerate pairs") {
    CHECK_THROWS_AS(arc_arc_intersections(arc_deg(0, {0, 0}, 0, 90), arc_deg(1, {0, 0}, 180, 270)),
                    DegenerateInput);
    try {
      arc_arc_intersections(arc_deg(4, {0, 0}, 0, 90), arc_deg(9, {2, 0}, 90, 270));
      FAIL("tangent circles accepted");
    } catch (const DegenerateInput& e) {
      CHECK(e.first_id == 4);
      CHECK(e.second_id == 9);
    }
  }
}

TEST_CASE("arc_arc_intersections is symmetric and matches sampling") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  for (int t = 0; t < 400; ++t) {
    double t0 = u(rng) * kTwoPi;
    double t1 = u(rng) * kTwoPi;
    UnitArc a = make_arc(0, {0, 0}, t0, t0 + 0.2 + u(rng) * 5.0);
    UnitArc b = make_arc(1, {u(rng) * 3 - 1.5, u(rng) * 3 - 1.5}, t1, t1 + 0.2 + u(rng) * 5.0);
    try {
      auto ab = arc_arc_intersections(a, b);
      auto ba = arc_arc_intersections(b, a);
      REQUIRE(ab.size() == ba.size());
      for (const auto& p : ab) {
        bool found = false;
        for (const auto& q : ba) found = found || dist(p, q) < 1e-12;
        CHECK(found);
      }
      ++checked;
    } catch (const GeometryError&) {
    }
  }
  CHECK(checked > 390);
}

TEST_CASE("lune predicates") {
  UnitArc s = unit_chord_arc();
  CHECK(dist(s.endpoint(0), {1, 0}) < 1e-12);
  CHECK(dist(s.endpoint(1), {0, 0}) < 1e-12);
  CHECK(in_lune({1.6, 0}, s));
  CHECK_FALSE(in_lune({0.5, 0}, s));
  CHECK_FALSE(in_lune({3, 0}, s));
  CHECK(in_lune_prime({3, 0}, s));
  CHECK_FALSE(in_lune_prime({1.6, 0}, s));
  CHECK_FALSE(in_lune_prime({0.5, 0.2}, s));
  CHECK_THROWS_AS(in_lune({2, 0}, s), BoundaryCase);
  CHECK_THROWS_AS(in_lune_prime({-1, 0}, s), BoundaryCase);
}

TEST_CASE("wedges") {
  UnitArc s = arc_deg(0, {0, 0}, 30, 90);
  Wedge w = wedge_of(s);
  CHECK(w.apex.x == 0.0);
  CHECK(w.ray_lo == doctest::Approx(deg(30)));
  CHECK(w.ray_hi == doctest::Approx(deg(90)));
  CHECK(in_wedge(w, 5.0 * unit_vector(deg(60))));
  CHECK_FALSE(in_wedge(w, {1, 0}));
  CHECK_THROWS_AS(wedge_of(arc_deg(0, {0, 0}, 0, 180)), SpanTooLarge);
  for (int i = 0; i <= 256; ++i) {
    if (i == 0 || i == 256) continue;  // the ends lie on the rays
    CHECK(in_wedge(w, s.point_at(s.theta_start + s.span() * i / 256.0)));
  }
}

TEST_CASE("observation predicates") {
  UnitArc s = arc_deg(0, {0, 0}, -80, 80);
  CHECK(obs60_twice_with_circle(s, {1.8, 0}));
  CHECK(test::sampled_crossings(s, {1.8, 0}) == 2);
  CHECK_FALSE(obs60_twice_with_circle(s, {3, 0}));
  CHECK_FALSE(obs60_twice_with_circle(s, {0.1, 0}));

  UnitArc b = arc_deg(1, {1.8, 0}, 100, 260);
  CHECK(obs70_five_conditions(s, b));
  CHECK_FALSE(obs70_five_conditions(arc_deg(2, {0, 0}, 5, 175), arc_deg(3, {1, 0}, 5, 175)));
  CHECK_FALSE(obs70_five_conditions(s, arc_deg(4, {3, 0}, 100, 260)));
}

TEST_CASE("coupled arc data") {
  const Box counting{0, 0, kCellSide, kCellSide};
  const PseudoTrapezoid tau = box_region(counting);

  SUBCASE("single component") {
    Point c{0.35, -0.75};
    auto pieces = clip_arc(test::full_circle(0, c), tau);
    REQUIRE(pieces.size() == 1);
    auto d = coupled_arc_data(pieces[0].arc, Box{0, -kCellSide, kCellSide, 0}, counting, tau);
    CHECK_FALSE(d.is_partial);
  }
  SUBCASE("centre below, left piece") {
    Point c{0.35, -0.25};
    auto pieces = clip_arc(test::full_circle(0, c), tau);
    REQUIRE(pieces.size() == 2);
    const UnitArc& left =
        pieces[0].arc.point_at(pieces[0].arc.theta_start).x < 0.35 ? pieces[0].arc : pieces[1].arc;
    auto d = coupled_arc_data(left, Box{0, -kCellSide, kCellSide, 0}, counting, tau);
    CHECK(d.is_partial);
    CHECK(d.side == CoupledSide::left_of);
    Point right_end = left.endpoint(0).x > left.endpoint(1).x ? left.endpoint(0) : left.endpoint(1);
    CHECK(dist(d.z, right_end) < 1e-12);
  }
  SUBCASE("centre right, lower piece") {
    Point c{kCellSide + 0.25, 0.35};
    auto pieces = clip_arc(test::full_circle(0, c), tau);
    REQUIRE(pieces.size() == 2);
    const UnitArc& lower =
        pieces[0].arc.point_at(pieces[0].arc.theta_start).y < 0.35 ? pieces[0].arc : pieces[1].arc;
    auto d = coupled_arc_data(lower, Box{kCellSide, 0, 2 * kCellSide, kCellSide}, counting, tau);
    CHECK(d.is_partial);
    CHECK(d.side == CoupledSide::below);
    Point upper_end = lower.endpoint(0).y > lower.endpoint(1).y ? lower.endpoint(0) : lower.endpoint(1);
    CHECK(dist(d.z, upper_end) < 1e-12);
  }
}

TEST_CASE("eps override") {
  double old = eps();
  set_eps(1e-6);
  CHECK(eps() == 1e-6);
  CHECK_THROWS_AS(set_eps(0.0), std::invalid_argument);
  set_eps(old);
}
