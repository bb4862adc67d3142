#pragma once

#include <compare>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "arccensus/cutting.hpp"

namespace arccensus {

// Lattice cell side: a cell has diameter exactly 1.
inline constexpr double kCellSide = 0.70710678118654752440;

struct CellKey {
  std::int64_t ix = 0;
  std::int64_t iy = 0;
  auto operator<=>(const CellKey&) const = default;
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(k.ix) * 0x9e3779b97f4a7c15ULL;
    h ^= static_cast<std::uint64_t>(k.iy) + 0x632be59bd9b4e019ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

// Cell of p. A point on a shared side goes to the lexicographically smaller cell.
CellKey cell_of(Point p);
Box cell_box(CellKey k);

class GridCover {
 public:
  // Every cell within L-infinity distance 2 of an occupied cell, sorted.
  std::vector<CellKey> cells;
  // Occupied cells, sorted, with the indices of the arcs centred in each.
  std::vector<CellKey> occupied;
  std::unordered_map<CellKey, std::vector<int>, CellKeyHash> members;

  bool is_occupied(CellKey k) const { return members.count(k) != 0; }
  bool covers(CellKey k) const;
  // N(C): occupied cells whose offsets from k are at most 2 in both axes.
  std::vector<CellKey> neighborhood(CellKey k) const;
  const std::vector<int>& arcs_centered_in(CellKey k) const;

 private:
  std::unordered_map<CellKey, int, CellKeyHash> cover_index_;
  friend GridCover build_grid_cover(const std::vector<UnitArc>& arcs);
};

GridCover build_grid_cover(const std::vector<UnitArc>& arcs);

// Cells whose closed boxes meet the arc in a sub-arc of positive length.
std::vector<CellKey> cells_intersecting_arc(const UnitArc& arc);
std::vector<CellKey> cells_intersecting_arc(const GridCover& cover, const UnitArc& arc);

}  // namespace arccensus
