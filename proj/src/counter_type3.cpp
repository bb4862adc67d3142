#include <algorithm>
#include <cmath>

#include "counter_internal.hpp"

namespace arccensus {

namespace {

using detail::canonical_pair_count;
using detail::log_scaled;

struct PartialLong {
  UnitArc arc;
  CoupledArcData data;
};

bool free_end_on_own_side(const PartialLong& r, Point free_end) {
  double kz = key_of(r.data.axis, r.data.z);
  double ke = key_of(r.data.axis, free_end);
  return r.data.before ? ke < kz : ke > kz;
}

// End of s outside D(q); callers guarantee exactly one such end.
Point end_outside_disk(const UnitArc& s, Point q) {
  Point e0 = s.endpoint(0);
  return dist(e0, q) > 1.0 ? e0 : s.endpoint(1);
}

bool straddles(const PartialLong& r, const UnitArc& s) {
  double kz = key_of(r.data.axis, r.data.z);
  double k0 = key_of(r.data.axis, s.endpoint(0));
  double k1 = key_of(r.data.axis, s.endpoint(1));
  return std::min(k0, k1) < kz && kz < std::max(k0, k1);
}

bool blue_center_in_wedge(const UnitArc& s_r, Point c_b) {
  Side w = wedge_side(wedge_of(s_r), c_b);
  if (w == Side::boundary) throw BoundaryCase("centre on a wedge ray");
  return w == Side::inside;
}

RegionIndex lune_index(const std::vector<ArcPiece>& blues, const Box& root, double r, std::uint64_t seed,
                       bool prime) {
  std::vector<GeneralArc> items;
  for (int i = 0; i < static_cast<int>(blues.size()); ++i) detail::append_endpoint_circles(blues[i].arc, i, items);
  RegionIndex::Membership contains;
  if (prime) {
    contains = [&blues](int o, Point p) { return in_lune_prime(p, blues[o].arc); };
  } else {
    contains = [&blues](int o, Point p) { return in_lune(p, blues[o].arc); };
  }
  return RegionIndex(std::move(items), static_cast<int>(blues.size()), contains, root, r, seed);
}

std::uint64_t count_311(const std::vector<UnitArc>& full, const std::vector<ArcPiece>& blues,
                        const Box& center_cell, const PairContext& ctx, std::uint64_t seed) {
  if (full.empty() || blues.empty()) return 0;
  std::uint64_t total = 0;
  if (detail::use_pairwise(full.size() + blues.size(), ctx)) {
    for (const auto& r : full) {
      for (const auto& b : blues) total += in_lune(r.center, b.arc);
    }
    return total;
  }
  double m = static_cast<double>(blues.size());
  RegionIndex index = lune_index(blues, center_cell, log_scaled(m), seed, false);
  std::vector<Point> q;
  for (const auto& r : full) q.push_back(r.center);
  return canonical_pair_count(
      index, q,
      [](int, const std::vector<int>& regions, const std::vector<int>& queries) {
        return static_cast<std::uint64_t>(regions.size()) * queries.size();
      },
      [&](int o, int i) { return in_lune(full[i].center, blues[o].arc); }, ctx);
}

std::uint64_t count_3121(const std::vector<PartialLong>& partial, const std::vector<ArcPiece>& blues,
                         const Box& center_cell, const PairContext& ctx, std::uint64_t seed) {
  if (partial.empty() || blues.empty()) return 0;
  auto direct = [&](int o, int i) {
    const UnitArc& s_b = blues[o].arc;
    const PartialLong& r = partial[i];
    return in_lune(r.arc.center, s_b) && free_end_on_own_side(r, end_outside_disk(s_b, r.arc.center));
  };
  std::uint64_t total = 0;
  if (detail::use_pairwise(partial.size() + blues.size(), ctx)) {
    for (int i = 0; i < static_cast<int>(partial.size()); ++i) {
      for (int o = 0; o < static_cast<int>(blues.size()); ++o) total += direct(o, i);
    }
    return total;
  }
  double m = static_cast<double>(blues.size());
  double r = std::max(1.0, m / std::pow(std::log2(m + 2.0), 2.0));
  RegionIndex index = lune_index(blues, center_cell, r, seed, false);
  std::vector<Point> q;
  for (const auto& p : partial) q.push_back(p.arc.center);
  const KeyAxis axis = partial.front().data.axis;
  auto per_cell = [&](int cell, const std::vector<int>& regions, const std::vector<int>& queries) {
    // Every disk centred in the cell contains the same end of s_b.
    const PseudoTrapezoid& sigma = index.cutting().cells[cell];
    std::vector<double> keys;
    keys.reserve(regions.size());
    std::vector<Point> probes = detail::probe_points(sigma);
    for (int o : regions) {
      const UnitArc& s_b = blues[o].arc;
      Point chosen = s_b.endpoint(0);
      for (const Point& p : probes) {
        double d0 = dist(s_b.endpoint(0), p) - 1.0;
        double d1 = dist(s_b.endpoint(1), p) - 1.0;
        if (std::abs(d0) < eps() || std::abs(d1) < eps()) continue;
        chosen = d0 > 0.0 ? s_b.endpoint(0) : s_b.endpoint(1);
        break;
      }
      keys.push_back(key_of(axis, chosen));
    }
    std::sort(keys.begin(), keys.end());
    std::uint64_t c = 0;
    for (int i : queries) {
      double kz = key_of(axis, partial[i].data.z);
      if (partial[i].data.before) {
        c += static_cast<std::uint64_t>(std::lower_bound(keys.begin(), keys.end(), kz) - keys.begin());
      } else {
        c += static_cast<std::uint64_t>(keys.end() - std::upper_bound(keys.begin(), keys.end(), kz));
      }
    }
    return c;
  };
  return canonical_pair_count(index, q, per_cell, direct, ctx);
}

struct K3 {
  std::uint64_t k3 = 0;
  std::uint64_t k3w = 0;
};

K3 count_3122(const std::vector<PartialLong>& partial, const std::vector<ArcPiece>& blues,
              const Box& center_cell, const PairContext& ctx, std::uint64_t seed) {
  K3 out;
  if (partial.empty() || blues.empty()) return out;
  auto k3_direct = [&](int o, int i) {
    return in_lune_prime(partial[i].arc.center, blues[o].arc) && straddles(partial[i], blues[o].arc);
  };
  auto k3w_direct = [&](int o, int i) {
    return k3_direct(o, i) && blue_center_in_wedge(partial[i].arc, blues[o].arc.center);
  };
  if (detail::use_pairwise(partial.size() + blues.size(), ctx)) {
    for (int i = 0; i < static_cast<int>(partial.size()); ++i) {
      for (int o = 0; o < static_cast<int>(blues.size()); ++o) {
        if (!k3_direct(o, i)) continue;
        ++out.k3;
        out.k3w += blue_center_in_wedge(partial[i].arc, blues[o].arc.center);
      }
    }
    return out;
  }
  double m = static_cast<double>(blues.size());
  double r = std::max(1.0, m / std::pow(std::log2(m + 2.0), 2.0));
  RegionIndex index = lune_index(blues, center_cell, r, seed, true);
  std::vector<Point> q;
  for (const auto& p : partial) q.push_back(p.arc.center);
  const KeyAxis axis = partial.front().data.axis;
  auto intervals_of = [&](const std::vector<int>& regions) {
    std::vector<std::pair<double, double>> iv;
    iv.reserve(regions.size());
    for (int o : regions) {
      double k0 = key_of(axis, blues[o].arc.endpoint(0));
      double k1 = key_of(axis, blues[o].arc.endpoint(1));
      iv.emplace_back(std::min(k0, k1), std::max(k0, k1));
    }
    return iv;
  };
  out.k3 = canonical_pair_count(
      index, q,
      [&](int, const std::vector<int>& regions, const std::vector<int>& queries) {
        IntervalTree tree(intervals_of(regions));
        std::uint64_t c = 0;
        for (int i : queries) c += tree.stab_count(key_of(axis, partial[i].data.z));
        return c;
      },
      k3_direct, ctx);
  out.k3w = canonical_pair_count(
      index, q,
      [&](int, const std::vector<int>& regions, const std::vector<int>& queries) {
        std::vector<Point> centers;
        for (int o : regions) centers.push_back(blues[o].arc.center);
        StabbedWedgeCounter counter(intervals_of(regions), centers);
        std::uint64_t c = 0;
        for (int i : queries) c += counter.count(key_of(axis, partial[i].data.z), wedge_of(partial[i].arc));
        return c;
      },
      k3w_direct, ctx);
  return out;
}

// Pairs (s_b, s_r) with |c_r - c_b| < 2 and c_b in w(s_r).
std::uint64_t count_disk_wedge_pairs(const std::vector<int>& blue_ids, const std::vector<int>& red_ids,
                                     const std::vector<ArcPiece>& blues, const std::vector<UnitArc>& reds,
                                     const Box& center_cell, double outer_m, const PairContext& ctx,
                                     std::uint64_t seed) {
  auto direct = [&](int bo, int ri) {
    const UnitArc& s_r = reds[ri];
    Point c_b = blues[bo].arc.center;
    double d = dist(s_r.center, c_b);
    if (std::abs(d - 2.0) < eps()) throw BoundaryCase("centres at distance 2");
    return d < 2.0 && blue_center_in_wedge(s_r, c_b);
  };
  std::uint64_t total = 0;
  if (detail::use_pairwise(blue_ids.size() + red_ids.size(), ctx)) {
    for (int ri : red_ids) {
      for (int bo : blue_ids) total += direct(bo, ri);
    }
    return total;
  }
  std::vector<GeneralArc> items;
  for (int k = 0; k < static_cast<int>(blue_ids.size()); ++k) {
    for (auto& g : split_circle_arc(blues[blue_ids[k]].arc.center, 2.0, 0.0, kTwoPi, k)) items.push_back(g);
  }
  auto contains = [&](int k, Point p) {
    double d = dist(p, blues[blue_ids[k]].arc.center);
    if (std::abs(d - 2.0) < eps()) throw BoundaryCase("point on a radius-2 circle");
    return d < 2.0;
  };
  double m_sigma = static_cast<double>(blue_ids.size());
  double r = std::max(1.0, m_sigma / std::log2(outer_m + 2.0));
  RegionIndex index(std::move(items), static_cast<int>(blue_ids.size()), contains, center_cell, r, seed);
  std::vector<Point> q;
  for (int ri : red_ids) q.push_back(reds[ri].center);
  return canonical_pair_count(
      index, q,
      [&](int, const std::vector<int>& regions, const std::vector<int>& queries) {
        std::vector<Point> centers;
        for (int k : regions) centers.push_back(blues[blue_ids[k]].arc.center);
        WedgeCounter wc(std::move(centers), ctx.config->wedge);
        std::uint64_t c = 0;
        for (int i : queries) c += wc.count(wedge_of(reds[red_ids[i]]));
        return c;
      },
      [&](int k, int i) { return direct(blue_ids[k], red_ids[i]); }, ctx);
}

std::uint64_t count_k2(const std::vector<UnitArc>& reds, const std::vector<ArcPiece>& blues,
                       const Box& center_cell, const PairContext& ctx, std::uint64_t seed) {
  if (reds.empty() || blues.empty()) return 0;
  std::uint64_t total = 0;
  auto direct = [&](int o, int i) { return four_conditions(blues[o].arc, reds[i]); };
  if (detail::use_pairwise(reds.size() + blues.size(), ctx)) {
    for (int i = 0; i < static_cast<int>(reds.size()); ++i) {
      for (int o = 0; o < static_cast<int>(blues.size()); ++o) total += direct(o, i);
    }
    return total;
  }
  double m = static_cast<double>(blues.size());
  RegionIndex index = detail::make_interesting_region_index(blues, center_cell, m, seed);
  std::vector<Point> q;
  for (const auto& r : reds) q.push_back(r.center);
  return canonical_pair_count(
      index, q,
      [&](int cell, const std::vector<int>& regions, const std::vector<int>& queries) {
        return count_disk_wedge_pairs(regions, queries, blues, reds, center_cell, m, ctx,
                                      detail::mix_seed(seed, static_cast<std::uint64_t>(cell)));
      },
      direct, ctx);
}

}  // namespace

Type3Counts count_type3(const ArcGroup& longs, const ArcGroup& shorts, const PseudoTrapezoid& tau,
                        const PairContext& ctx) {
  Type3Counts out;
  if (longs.pieces.empty() || shorts.pieces.empty()) return out;
  std::vector<UnitArc> full;
  std::vector<UnitArc> all_long;
  std::vector<PartialLong> partial;
  std::vector<ArcPiece> irregular;
  for (const auto& p : longs.pieces) {
    CoupledArcData d = coupled_arc_data(p.arc, longs.center_cell, ctx.cell, tau);
    if (d.irregular) {
      irregular.push_back(p);
      continue;
    }
    all_long.push_back(p.arc);
    if (d.is_partial) partial.push_back({p.arc, d});
    else full.push_back(p.arc);
  }
  if (!irregular.empty()) {
    ctx.diagnostics->irregular_arcs += irregular.size();
    out.irregular_points = detail::pairwise_intersections(irregular, shorts.pieces);
  }

  const std::size_t m = shorts.pieces.size();
  const double n = static_cast<double>(m + longs.pieces.size());
  std::size_t groups = 1;
  if (ctx.config->group_override > 0) {
    groups = static_cast<std::size_t>(ctx.config->group_override);
  } else if (m >= 2 && static_cast<double>(m) >= std::sqrt(n) * std::log2(static_cast<double>(m))) {
    double size = std::sqrt(n) * std::log2(static_cast<double>(m) + 2.0);
    groups = static_cast<std::size_t>(std::ceil(static_cast<double>(m) / size));
  }
  groups = std::clamp<std::size_t>(groups, 1, m);
  const Box& cell = longs.center_cell;
  std::uint64_t seed = detail::mix_seed(ctx.config->seed, m * 131 + longs.pieces.size());
  for (std::size_t g = 0; g < groups; ++g) {
    std::vector<ArcPiece> part(shorts.pieces.begin() + static_cast<std::ptrdiff_t>(g * m / groups),
                               shorts.pieces.begin() + static_cast<std::ptrdiff_t>((g + 1) * m / groups));
    std::uint64_t s = detail::mix_seed(seed, g);
    out.t311 += count_311(full, part, cell, ctx, s);
    out.t3121 += count_3121(partial, part, cell, ctx, s + 1);
    K3 k = count_3122(partial, part, cell, ctx, s + 2);
    out.k3 += k.k3;
    out.k3w += k.k3w;
    out.k2 += count_k2(all_long, part, cell, ctx, s + 3);
  }
  ctx.diagnostics->k3_wedge_pairs += out.k3w;
  if (out.k2 < out.k3w) throw InvariantViolation("four-condition pairs fewer than wedge-filtered (3.1.2.2) pairs");
  return out;
}

}  // namespace arccensus
