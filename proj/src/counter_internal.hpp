#pragma once

#include <cstdint>
#include <functional>

#include "arccensus/counter.hpp"
#include "arccensus/region_index.hpp"

namespace arccensus::detail {

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

inline bool use_pairwise(std::size_t n, const PairContext& ctx) {
  bool small = n < static_cast<std::size_t>(ctx.config->fallback_threshold);
  if (small) ++ctx.diagnostics->pairwise_fallbacks;
  else ++ctx.diagnostics->structured_calls;
  return small;
}

inline void record_index(const RegionIndex& index, const PairContext& ctx) {
  ctx.diagnostics->index_builds += 1;
  ctx.diagnostics->index_cells += index.cutting().cells.size();
  ctx.diagnostics->resample_rounds += static_cast<std::uint64_t>(index.cutting().resample_rounds);
  if (index.degraded()) ctx.diagnostics->degraded_builds += 1;
}

// r = max(1, m / log2(m + 2)).
inline double log_scaled(double m) { return std::max(1.0, m / std::log2(m + 2.0)); }

// Curves bounding lune(s) and lune'(s): the two unit circles around its ends.
void append_endpoint_circles(const UnitArc& s, int owner, std::vector<GeneralArc>& items);
// The two rays of w(s), long enough to leave any nearby grid cell.
void append_wedge_rays(const UnitArc& s, int owner, std::vector<GeneralArc>& items);

// Index over the regions w(s) ∩ lune'(s) ∩ root for every arc s.
RegionIndex make_interesting_region_index(const std::vector<ArcPiece>& arcs, const Box& root, double r,
                                          std::uint64_t seed);
bool in_interesting_region(Point p, const UnitArc& s);

using PairCount = std::function<std::uint64_t(int cell, const std::vector<int>& regions,
                                              const std::vector<int>& queries)>;
using DirectTest = std::function<bool(int region, int query)>;

// Sums pair_count over every cell whose canonical set and set of passing
// queries are both non-empty, then adds direct tests for regions crossing
// each query's leaf. Queries that cannot be located are tested directly
// against every region.
std::uint64_t canonical_pair_count(const RegionIndex& index, const std::vector<Point>& queries,
                                   const PairCount& pair_count, const DirectTest& direct,
                                   const PairContext& ctx);

// Interior points of a cell, best first.
std::vector<Point> probe_points(const PseudoTrapezoid& cell);

std::uint64_t pairwise_intersections(const std::vector<ArcPiece>& a, const std::vector<ArcPiece>& b);

enum class PairMode { all, bichromatic };

// Grid stage plus per-cell counting over arbitrary sub-arcs.
CountReport run_pipeline(const std::vector<ArcPiece>& input, const CounterConfig& cfg, PairMode mode);
std::vector<ArcPiece> as_pieces(const std::vector<UnitArc>& arcs);

}  // namespace arccensus::detail
