#include <algorithm>
#include <cmath>

#include "counter_internal.hpp"

namespace arccensus {

namespace {

using detail::canonical_pair_count;

// Position of a boundary point along the cell boundary, counter-clockwise
// from the lower-left corner: bottom, right wall, top, left wall.
double perimeter_position(const PseudoTrapezoid& s, Point p) {
  double x = std::clamp(p.x, s.left_x, s.right_x);
  double d_left = std::abs(p.x - s.left_x);
  double d_right = std::abs(p.x - s.right_x);
  double d_bottom = std::abs(p.y - s.bottom.y_at(x));
  double d_top = std::abs(p.y - s.top.y_at(x));
  double best = std::min({d_left, d_right, d_bottom, d_top});
  if (best == d_bottom) return 0.0 + (x - s.left_x);
  if (best == d_right) return 10.0 + (p.y - s.bottom.y_at(s.right_x));
  if (best == d_top) return 20.0 + (s.right_x - x);
  return 30.0 + (s.top.y_at(s.left_x) - p.y);
}

struct Chord {
  double a;
  double b;
};

Chord chord_of(const PseudoTrapezoid& s, const UnitArc& arc) {
  double u = perimeter_position(s, arc.endpoint(0));
  double v = perimeter_position(s, arc.endpoint(1));
  return {std::min(u, v), std::max(u, v)};
}

class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : t_(n + 1, 0) {}
  void add(std::size_t i) {
    for (++i; i < t_.size(); i += i & (~i + 1)) ++t_[i];
  }
  std::uint64_t prefix(std::size_t i) const {  // sum over [0, i)
    std::uint64_t s = 0;
    for (; i > 0; i -= i & (~i + 1)) s += t_[i];
    return s;
  }

 private:
  std::vector<std::uint64_t> t_;
};

std::uint64_t count_twice_pairs(const ArcGroup& outer, const ArcGroup& query, const PairContext& ctx);

}  // namespace

std::uint64_t count_once_by_chord_order(const std::vector<ArcPiece>& first,
                                        const std::vector<ArcPiece>& second,
                                        const PseudoTrapezoid& sigma) {
  std::vector<Chord> xs, ys;
  for (const auto& p : first) xs.push_back(chord_of(sigma, p.arc));
  for (const auto& p : second) ys.push_back(chord_of(sigma, p.arc));
  {
    std::vector<std::pair<double, bool>> all;
    for (const auto& x : xs) all.insert(all.end(), {{x.a, false}, {x.b, false}});
    for (const auto& y : ys) all.insert(all.end(), {{y.a, true}, {y.b, true}});
    std::sort(all.begin(), all.end());
    for (std::size_t i = 1; i < all.size(); ++i) {
      if (all[i].second != all[i - 1].second && all[i].first - all[i - 1].first < 1e-9) {
        throw BoundaryCase("two arc ends meet on a cell boundary");
      }
    }
  }
  // Two chords cross an odd number of times exactly when their ends
  // interleave; for x this is (ends of y inside x) - 2 (y nested in x).
  std::vector<double> ends;
  for (const auto& y : ys) {
    ends.push_back(y.a);
    ends.push_back(y.b);
  }
  std::sort(ends.begin(), ends.end());
  std::uint64_t inside = 0;
  for (const auto& x : xs) {
    auto lo = std::upper_bound(ends.begin(), ends.end(), x.a);
    auto hi = std::lower_bound(ends.begin(), ends.end(), x.b);
    if (hi > lo) inside += static_cast<std::uint64_t>(hi - lo);
  }
  // Nested pairs: a_x < a_y and b_y < b_x, by sweeping a in decreasing order.
  std::vector<double> ybs;
  for (const auto& y : ys) ybs.push_back(y.b);
  std::sort(ybs.begin(), ybs.end());
  std::vector<Chord> ys_sorted = ys, xs_sorted = xs;
  auto by_a_desc = [](const Chord& u, const Chord& v) { return u.a > v.a; };
  std::sort(ys_sorted.begin(), ys_sorted.end(), by_a_desc);
  std::sort(xs_sorted.begin(), xs_sorted.end(), by_a_desc);
  Fenwick fw(ybs.size());
  std::size_t j = 0;
  std::uint64_t nested = 0;
  for (const auto& x : xs_sorted) {
    while (j < ys_sorted.size() && ys_sorted[j].a > x.a) {
      auto pos = std::lower_bound(ybs.begin(), ybs.end(), ys_sorted[j].b) - ybs.begin();
      fw.add(static_cast<std::size_t>(pos));
      ++j;
    }
    auto bound = std::lower_bound(ybs.begin(), ybs.end(), x.b) - ybs.begin();
    nested += fw.prefix(static_cast<std::size_t>(bound));
  }
  return inside - 2 * nested;
}

Type11Counts count_11_pairs(const ArcGroup& first, const ArcGroup& second, const PseudoTrapezoid& sigma,
                            const PairContext& ctx) {
  Type11Counts out;
  if (first.pieces.empty() || second.pieces.empty()) return out;
  if (ctx.config->chord_order_once) {
    out.once = count_once_by_chord_order(first.pieces, second.pieces, sigma);
  } else {
    for (const auto& a : first.pieces) {
      for (const auto& b : second.pieces) out.once += intersection_count(a.arc, b.arc) == 1;
    }
  }
  out.twice = count_twice_pairs(first, second, ctx);
  return out;
}

namespace {

// Pairs among (outer, query) whose query arc s_r satisfies the second half
// of the five conditions: c_b in w(s_r), the ends of s_r outside D(c_b), and
// the circles meet.
std::uint64_t count_second_half(const std::vector<int>& outer_ids, const std::vector<int>& query_ids,
                                const ArcGroup& outer, const ArcGroup& query, double outer_m,
                                const PairContext& ctx, std::uint64_t seed) {
  auto direct = [&](int oi, int qi) {
    return obs60_twice_with_circle(query.pieces[qi].arc, outer.pieces[oi].arc.center);
  };
  std::uint64_t total = 0;
  if (detail::use_pairwise(outer_ids.size() + query_ids.size(), ctx)) {
    for (int qi : query_ids) {
      for (int oi : outer_ids) total += direct(oi, qi);
    }
    return total;
  }
  // Regions A'(s_r) inside the outer centres' cell, queried by outer centres.
  std::vector<ArcPiece> regions;
  for (int qi : query_ids) regions.push_back(query.pieces[qi]);
  double r = std::max(1.0, static_cast<double>(regions.size()) / std::log2(outer_m + 2.0));
  RegionIndex index = detail::make_interesting_region_index(regions, outer.center_cell, r, seed);
  std::vector<Point> points;
  for (int oi : outer_ids) points.push_back(outer.pieces[oi].arc.center);
  return canonical_pair_count(
      index, points,
      [&](int, const std::vector<int>& regs, const std::vector<int>& pts) {
        std::vector<Point> centers, disks;
        for (int k : pts) centers.push_back(points[k]);
        for (int k : regs) disks.push_back(regions[k].arc.center);
        return static_cast<std::uint64_t>(
            count_points_in_disks(centers, disks, 2.0, ctx.config->disk, outer.center_cell));
      },
      [&](int k, int p) { return direct(outer_ids[p], query_ids[k]); }, ctx);
}

std::uint64_t count_twice_pairs(const ArcGroup& outer, const ArcGroup& query, const PairContext& ctx) {
  const auto& B = outer.pieces;
  const auto& R = query.pieces;
  auto direct = [&](int o, int q) { return obs70_five_conditions(B[o].arc, R[q].arc); };
  std::uint64_t total = 0;
  if (detail::use_pairwise(B.size() + R.size(), ctx)) {
    for (int q = 0; q < static_cast<int>(R.size()); ++q) {
      for (int o = 0; o < static_cast<int>(B.size()); ++o) total += direct(o, q);
    }
    return total;
  }
  double n = static_cast<double>(B.size() + R.size());
  double m = static_cast<double>(B.size());
  double r = std::ceil(std::cbrt(n * n / (m * std::pow(std::log2(m + 2.0), 2.0))));
  std::uint64_t seed = detail::mix_seed(ctx.config->seed, B.size() * 977 + R.size());
  // Outer regions A'(s_b) inside the query centres' cell.
  RegionIndex index = detail::make_interesting_region_index(B, query.center_cell, r, seed);
  std::vector<Point> q;
  for (const auto& p : R) q.push_back(p.arc.center);
  return canonical_pair_count(
      index, q,
      [&](int cell, const std::vector<int>& regions, const std::vector<int>& queries) {
        return count_second_half(regions, queries, outer, query, m, ctx,
                                 detail::mix_seed(seed, static_cast<std::uint64_t>(cell)));
      },
      direct, ctx);
}

}  // namespace

}  // namespace arccensus
