#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "arccensus/cutting.hpp"

namespace arccensus {

// Decomposes a family of regions over a hierarchical cutting of their
// boundary curves. For every cell it keeps the canonical set: regions that
// contain the cell but not its parent. The regions containing a point q are
// then the disjoint union of the canonical sets along q's path plus those
// leaf-crossing regions that contain q.
class RegionIndex {
 public:
  using Membership = std::function<bool(int region, Point p)>;

  // items[i].owner_id names the region the curve bounds. Together the items
  // of a region must contain its whole boundary inside root. r is capped at
  // an eighth of the item count; a failed cutting build degrades to r = 1.
  RegionIndex(std::vector<GeneralArc> items, int region_count, Membership contains, const Box& root,
              double r, std::uint64_t seed);

  const HierarchicalCutting& cutting() const { return cutting_; }
  const std::vector<int>& canonical(int cell) const { return canonical_[cell]; }
  // Regions with a boundary curve crossing the cell, without repeats.
  const std::vector<int>& crossing_owners(int cell) const { return owners_[cell]; }
  // Fills path with cell ids root to leaf. Returns false when q lies on a
  // cell boundary or outside the root; callers then test every region.
  bool locate(Point q, std::vector<int>& path) const;
  bool degraded() const { return degraded_; }
  int region_count() const { return region_count_; }

 private:
  // 1 inside, 0 outside, -1 when every probe lands on the region boundary
  // (sliver cells); undecided regions are kept as crossing owners.
  int contains_cell(int region, const PseudoTrapezoid& cell) const;

  std::vector<GeneralArc> items_;
  int region_count_ = 0;
  Membership contains_;
  HierarchicalCutting cutting_;
  std::vector<std::vector<int>> canonical_;
  std::vector<std::vector<int>> owners_;
  bool degraded_ = false;
};

}  // namespace arccensus
