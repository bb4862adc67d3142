#pragma once

#include <string>
#include <vector>

#include "arccensus/geometry.hpp"

namespace arccensus {

enum class FlagKind { co_centered, tangent, endpoint_near_arc, intersection_near_grid_line };

const char* flag_name(FlagKind k);

struct GeneralPositionFlag {
  FlagKind kind;
  int first_id;
  int second_id;
};

// Pairs of arcs that violate general position by less than margin.
std::vector<GeneralPositionFlag> check_general_position(const std::vector<UnitArc>& arcs,
                                                        double margin = 1e-6);

// Throws DegenerateInput naming the first flagged pair.
void require_general_position(const std::vector<UnitArc>& arcs, double margin = 1e-6);

}  // namespace arccensus
