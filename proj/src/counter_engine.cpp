#include "counter_internal.hpp"

namespace arccensus::detail {

bool in_interesting_region(Point p, const UnitArc& s) {
  Side w = wedge_side(wedge_of(s), p);
  if (w == Side::boundary) throw BoundaryCase("point on a wedge ray");
  return w == Side::inside && in_lune_prime(p, s);
}

RegionIndex make_interesting_region_index(const std::vector<ArcPiece>& arcs, const Box& root, double r,
                                          std::uint64_t seed) {
  std::vector<GeneralArc> items;
  for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
    append_endpoint_circles(arcs[i].arc, i, items);
    append_wedge_rays(arcs[i].arc, i, items);
  }
  auto contains = [&arcs](int o, Point p) { return in_interesting_region(p, arcs[o].arc); };
  return RegionIndex(std::move(items), static_cast<int>(arcs.size()), contains, root, r, seed);
}

std::vector<Point> probe_points(const PseudoTrapezoid& cell) {
  std::vector<Point> out;
  const double fractions[] = {0.5, 0.3, 0.7, 0.15, 0.85};
  for (double fx : fractions) {
    for (double fy : fractions) {
      double x = cell.left_x + fx * (cell.right_x - cell.left_x);
      double lo = cell.bottom.y_at(x);
      double hi = cell.top.y_at(x);
      out.push_back({x, lo + fy * (hi - lo)});
    }
  }
  return out;
}

std::uint64_t canonical_pair_count(const RegionIndex& index, const std::vector<Point>& queries,
                                   const PairCount& pair_count, const DirectTest& direct,
                                   const PairContext& ctx) {
  record_index(index, ctx);
  const auto& hc = index.cutting();
  std::vector<std::vector<int>> passing(hc.cells.size());
  std::uint64_t total = 0;
  std::vector<int> path;
  for (int q = 0; q < static_cast<int>(queries.size()); ++q) {
    if (!index.locate(queries[q], path)) {
      ++ctx.diagnostics->unlocated_queries;
      for (int o = 0; o < index.region_count(); ++o) total += direct(o, q);
      continue;
    }
    for (int c : path) passing[c].push_back(q);
    for (int o : index.crossing_owners(path.back())) total += direct(o, q);
  }
  for (std::size_t c = 0; c < hc.cells.size(); ++c) {
    const auto& regions = index.canonical(static_cast<int>(c));
    if (regions.empty() || passing[c].empty()) continue;
    total += pair_count(static_cast<int>(c), regions, passing[c]);
  }
  return total;
}

}  // namespace arccensus::detail
