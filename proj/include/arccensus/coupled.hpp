#pragma once

#include "arccensus/cutting.hpp"

namespace arccensus {

// Where the centres of the arcs sit relative to the counting cell decides the
// axis used to order points along the arcs: x when the centre cell lies above
// or below the counting cell, y when it lies to the left or right.
enum class KeyAxis { x, y };

KeyAxis separation_axis(const Box& center_cell, const Box& counting_cell);
inline double key_of(KeyAxis axis, Point p) { return axis == KeyAxis::x ? p.x : p.y; }

enum class CoupledSide { left_of, right_of, below, above };

struct CoupledArcData {
  bool is_partial = false;
  // More than two components of the circle inside the cell.
  bool irregular = false;
  UnitArc coupled;
  // End of s_r facing the coupled arc.
  Point z;
  KeyAxis axis = KeyAxis::x;
  // s_r precedes its coupled arc along the key axis.
  bool before = false;
  CoupledSide side = CoupledSide::left_of;
};

// s_r must be a component of its circle inside tau (a long sub-arc).
CoupledArcData coupled_arc_data(const UnitArc& s_r, const Box& center_cell, const Box& counting_cell,
                                const PseudoTrapezoid& tau);

}  // namespace arccensus
