#include "arccensus/grid_cover.hpp"

#include <algorithm>
#include <stdexcept>

namespace arccensus {

namespace {

std::int64_t lattice_index(double v) {
  double q = v / kCellSide;
  double f = std::floor(q);
  auto i = static_cast<std::int64_t>(f);
  if (f == q && static_cast<double>(i) * kCellSide == v) --i;
  return i;
}

const std::vector<int> kNoArcs;

}  // namespace

CellKey cell_of(Point p) { return {lattice_index(p.x), lattice_index(p.y)}; }

Box cell_box(CellKey k) {
  return {static_cast<double>(k.ix) * kCellSide, static_cast<double>(k.iy) * kCellSide,
          static_cast<double>(k.ix + 1) * kCellSide, static_cast<double>(k.iy + 1) * kCellSide};
}

bool GridCover::covers(CellKey k) const { return cover_index_.count(k) != 0; }

std::vector<CellKey> GridCover::neighborhood(CellKey k) const {
  std::vector<CellKey> out;
  for (std::int64_t dx = -2; dx <= 2; ++dx) {
    for (std::int64_t dy = -2; dy <= 2; ++dy) {
      CellKey n{k.ix + dx, k.iy + dy};
      if (is_occupied(n)) out.push_back(n);
    }
  }
  return out;
}

const std::vector<int>& GridCover::arcs_centered_in(CellKey k) const {
  auto it = members.find(k);
  return it == members.end() ? kNoArcs : it->second;
}

GridCover build_grid_cover(const std::vector<UnitArc>& arcs) {
  GridCover g;
  for (int i = 0; i < static_cast<int>(arcs.size()); ++i) g.members[cell_of(arcs[i].center)].push_back(i);
  for (const auto& [k, v] : g.members) g.occupied.push_back(k);
  std::sort(g.occupied.begin(), g.occupied.end());
  for (const CellKey& k : g.occupied) {
    for (std::int64_t dx = -2; dx <= 2; ++dx) {
      for (std::int64_t dy = -2; dy <= 2; ++dy) {
        CellKey n{k.ix + dx, k.iy + dy};
        if (g.cover_index_.emplace(n, 0).second) g.cells.push_back(n);
      }
    }
  }
  std::sort(g.cells.begin(), g.cells.end());
  for (int i = 0; i < static_cast<int>(g.cells.size()); ++i) g.cover_index_[g.cells[i]] = i;
  return g;
}

std::vector<CellKey> cells_intersecting_arc(const UnitArc& arc) {
  CellKey lo = cell_of(arc.center - Point{1.0, 1.0});
  CellKey hi = cell_of(arc.center + Point{1.0, 1.0});
  std::vector<CellKey> out;
  for (std::int64_t ix = lo.ix; ix <= hi.ix + 1; ++ix) {
    for (std::int64_t iy = lo.iy; iy <= hi.iy + 1; ++iy) {
      CellKey k{ix, iy};
      Box b = cell_box(k);
      // Skip boxes that cannot meet the unit circle at all.
      double nx = std::clamp(arc.center.x, b.x_lo, b.x_hi);
      double ny = std::clamp(arc.center.y, b.y_lo, b.y_hi);
      if (dist({nx, ny}, arc.center) > 1.0) continue;
      double fx = std::max(std::abs(arc.center.x - b.x_lo), std::abs(arc.center.x - b.x_hi));
      double fy = std::max(std::abs(arc.center.y - b.y_lo), std::abs(arc.center.y - b.y_hi));
      if (fx * fx + fy * fy < 1.0) continue;
      if (!clip_arc(arc, box_region(b)).empty()) out.push_back(k);
    }
  }
  if (out.size() > 16) throw InvariantViolation("an arc meets more than 16 grid cells");
  return out;
}

std::vector<CellKey> cells_intersecting_arc(const GridCover& cover, const UnitArc& arc) {
  std::vector<CellKey> out = cells_intersecting_arc(arc);
  for (const CellKey& k : out) {
    if (!cover.covers(k)) throw InvariantViolation("arc leaves the grid cover");
  }
  return out;
}

}  // namespace arccensus
