#include "arccensus/region_index.hpp"

#include <algorithm>
#include <stdexcept>

namespace arccensus {

RegionIndex::RegionIndex(std::vector<GeneralArc> items, int region_count, Membership contains,
                         const Box& root, double r, std::uint64_t seed)
    : items_(std::move(items)), region_count_(region_count), contains_(std::move(contains)) {
  double cap = std::max(1.0, static_cast<double>(items_.size()) / 8.0);
  r = std::clamp(r, 1.0, cap);
  CuttingOptions opt;
  opt.seed = seed;
  PseudoTrapezoid region = box_region(root);
  try {
    cutting_ = build_hierarchical_cutting(items_, r, region, opt);
  } catch (const BuildFailure&) {
    degraded_ = true;
    cutting_ = build_hierarchical_cutting(items_, 1.0, region, opt);
  }

  const std::size_t cells = cutting_.cells.size();
  canonical_.assign(cells, {});
  owners_.assign(cells, {});
  std::vector<int> stamp(region_count_, -1);
  for (std::size_t c = 0; c < cells; ++c) {
    for (int item : cutting_.crossing[c]) {
      int o = items_[item].owner_id;
      if (stamp[o] != static_cast<int>(c)) {
        stamp[o] = static_cast<int>(c);
        owners_[c].push_back(o);
      }
    }
    std::sort(owners_[c].begin(), owners_[c].end());
  }

  // Root: regions with no boundary inside the root either contain it or miss it.
  const int root_id = cutting_.levels[0][0];
  {
    std::vector<char> crossing(region_count_, 0);
    for (int o : owners_[root_id]) crossing[o] = 1;
    for (int o = 0; o < region_count_; ++o) {
      if (crossing[o]) continue;
      int in = contains_cell(o, cutting_.cells[root_id]);
      if (in == 1) canonical_[root_id].push_back(o);
      if (in < 0) owners_[root_id].push_back(o);
    }
    std::sort(owners_[root_id].begin(), owners_[root_id].end());
  }
  for (std::size_t c = 0; c < cells; ++c) {
    const PseudoTrapezoid& cell = cutting_.cells[c];
    if (cell.parent < 0) continue;
    std::vector<int>& mine = owners_[c];
    std::vector<int> undecided;
    for (int o : owners_[cell.parent]) {
      if (std::binary_search(mine.begin(), mine.end(), o)) continue;
      int in = contains_cell(o, cell);
      if (in == 1) canonical_[c].push_back(o);
      if (in < 0) undecided.push_back(o);
    }
    if (!undecided.empty()) {
      mine.insert(mine.end(), undecided.begin(), undecided.end());
      std::sort(mine.begin(), mine.end());
    }
  }
}

int RegionIndex::contains_cell(int region, const PseudoTrapezoid& cell) const {
  // The region boundary misses the cell interior, so any interior point decides.
  const double fractions[] = {0.5, 0.3, 0.7, 0.15, 0.85};
  for (double fx : fractions) {
    for (double fy : fractions) {
      double x = cell.left_x + fx * (cell.right_x - cell.left_x);
      double lo = cell.bottom.y_at(x);
      double hi = cell.top.y_at(x);
      Point p{x, lo + fy * (hi - lo)};
      try {
        return contains_(region, p) ? 1 : 0;
      } catch (const BoundaryCase&) {
      }
    }
  }
  return -1;
}

bool RegionIndex::locate(Point q, std::vector<int>& path) const {
  try {
    path = cutting_.locate_path(q);
    return true;
  } catch (const OnBoundary&) {
    return false;
  } catch (const std::out_of_range&) {
    return false;
  }
}

}  // namespace arccensus
