#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "arccensus/general_arc.hpp"

namespace arccensus {

struct Box {
  double x_lo = 0.0;
  double y_lo = 0.0;
  double x_hi = 0.0;
  double y_hi = 0.0;
  bool contains(Point p) const {
    return p.x >= x_lo && p.x <= x_hi && p.y >= y_lo && p.y <= y_hi;
  }
};

// A cell with vertical left and right sides and x-monotone top and bottom
// curves defined over [left_x, right_x].
struct PseudoTrapezoid {
  double left_x = 0.0;
  double right_x = 0.0;
  GeneralArc top;
  GeneralArc bottom;
  int level = 0;
  int parent = -1;
  int index = 0;  // position within its level
  std::vector<int> children;

  Side classify(Point p) const;
  // A point well inside the cell, used for whole-cell membership tests.
  Point sample_point() const;
  double top_at(double x) const { return top.y_at(x); }
  double bottom_at(double x) const { return bottom.y_at(x); }
};

PseudoTrapezoid box_region(const Box& b);

struct BuildFailure : GeometryError {
  using GeometryError::GeometryError;
};

struct OnBoundary : GeometryError {
  using GeometryError::GeometryError;
};

struct AngleInterval {
  double lo = 0.0;
  double hi = 0.0;
};

// Open x-intervals over which curve g runs through the interior of cell.
std::vector<std::pair<double, double>> clip_curve(const GeneralArc& g, const PseudoTrapezoid& cell);
bool crosses_interior(const GeneralArc& g, const PseudoTrapezoid& cell);

// Angular intervals of the circle (c, radius) inside cell, sorted, each with
// lo in [0, 2*pi) and lo < hi < lo + 2*pi. A circle entirely inside yields
// [0, 2*pi].
std::vector<AngleInterval> clip_circle(Point c, double radius, const PseudoTrapezoid& cell);

// A sub-arc of an input arc. original_end[k] tells whether that end is an end
// of the input arc rather than a cut against a cell boundary.
struct ArcPiece {
  UnitArc arc;
  bool original_end[2] = {true, true};
};

// Sub-arcs of arc (or of an existing piece) inside cell, by increasing angle.
std::vector<ArcPiece> clip_arc(const ArcPiece& piece, const PseudoTrapezoid& cell);
std::vector<ArcPiece> clip_arc(const UnitArc& arc, const PseudoTrapezoid& cell);

struct CuttingOptions {
  int rho = 2;
  std::uint64_t seed = 0x5eed;
  int max_rounds = 64;
  int base_sample = 4;
  // Valid samples drawn per refinement; the one with the fewest crossings is kept.
  int candidates = 2;
};

class HierarchicalCutting {
 public:
  std::vector<PseudoTrapezoid> cells;           // every level, indexed by cell id
  std::vector<std::vector<int>> crossing;       // H per cell id, item indices
  std::vector<std::vector<int>> levels;         // cell ids per level
  int item_count = 0;
  double r = 1.0;
  int rho = 2;
  // Build statistics.
  int c_child = 0;        // largest number of children of any cell
  double c_total = 0.0;   // total crossing-list size divided by item_count * r
  double c_size = 0.0;    // max over levels of |level| / rho^(2i)
  int resample_rounds = 0;

  int depth() const { return static_cast<int>(levels.size()) - 1; }
  const PseudoTrapezoid& root() const { return cells[levels[0][0]]; }
  const std::vector<int>& leaves() const { return levels.back(); }
  // Cell ids from the root to the leaf containing p. Throws OnBoundary when
  // p is within eps of a boundary and std::out_of_range outside the root.
  std::vector<int> locate_path(Point p) const;
  void dump(std::ostream& os) const;
};

HierarchicalCutting build_hierarchical_cutting(const std::vector<GeneralArc>& items, double r,
                                               const PseudoTrapezoid& region,
                                               const CuttingOptions& options = {});

// Number of levels below the root for parameter r.
int cutting_depth(double r, int rho);

}  // namespace arccensus
