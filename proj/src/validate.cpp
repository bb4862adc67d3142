#include "arccensus/validate.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

#include "arccensus/grid_cover.hpp"

namespace arccensus {

const char* flag_name(FlagKind k) {
  switch (k) {
    case FlagKind::co_centered: return "co-centred circles";
    case FlagKind::tangent: return "tangent circles";
    case FlagKind::endpoint_near_arc: return "arc endpoint on another arc";
    case FlagKind::intersection_near_grid_line: return "intersection point on a grid line";
  }
  return "unknown";
}

namespace {

bool angle_within(const UnitArc& a, double theta) {
  if (a.is_full()) return true;
  return normalize_angle(theta - a.theta_start) <= a.span();
}

double distance_to_arc(Point p, const UnitArc& a) {
  Point v = p - a.center;
  if (angle_within(a, angle_of(v))) return std::abs(norm(v) - 1.0);
  return std::min(dist(p, a.endpoint(0)), dist(p, a.endpoint(1)));
}

double distance_to_grid_line(double v) {
  double q = v / kCellSide;
  return std::abs(q - std::round(q)) * kCellSide;
}

std::int64_t bucket(double v) { return static_cast<std::int64_t>(std::floor(v / 2.0)); }

}  // namespace

std::vector<GeneralPositionFlag> check_general_position(const std::vector<UnitArc>& arcs, double margin) {
  std::vector<GeneralPositionFlag> flags;
  std::unordered_map<CellKey, std::vector<int>, CellKeyHash> grid;
  for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
    grid[{bucket(arcs[i].center.x), bucket(arcs[i].center.y)}].push_back(i);
  }
  for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
    const UnitArc& a = arcs[i];
    std::int64_t bx = bucket(a.center.x), by = bucket(a.center.y);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = grid.find({bx + dx, by + dy});
        if (it == grid.end()) continue;
        for (int j : it->second) {
          if (j <= i) continue;
          const UnitArc& b = arcs[j];
          double d = dist(a.center, b.center);
          if (d > 2.0 + margin) continue;
          if (d < margin) {
            flags.push_back({FlagKind::co_centered, a.id, b.id});
            continue;
          }
          if (std::abs(d - 2.0) < margin) {
            flags.push_back({FlagKind::tangent, a.id, b.id});
            continue;
          }
          bool endpoint_flag = false;
          for (int e = 0; e < 2 && !endpoint_flag; ++e) {
            if (!a.is_full() && distance_to_arc(a.endpoint(e), b) < margin) endpoint_flag = true;
            if (!b.is_full() && distance_to_arc(b.endpoint(e), a) < margin) endpoint_flag = true;
          }
          if (endpoint_flag) {
            flags.push_back({FlagKind::endpoint_near_arc, a.id, b.id});
            continue;
          }
          if (d >= 2.0) continue;
          Point mid = a.center + 0.5 * (b.center - a.center);
          double h = std::sqrt(std::max(0.0, 1.0 - 0.25 * d * d));
          Point n{-(b.center.y - a.center.y) / d, (b.center.x - a.center.x) / d};
          for (double s : {1.0, -1.0}) {
            Point p = mid + (s * h) * n;
            if (!angle_within(a, angle_of(p - a.center)) || !angle_within(b, angle_of(p - b.center))) continue;
            if (distance_to_grid_line(p.x) < margin || distance_to_grid_line(p.y) < margin) {
              flags.push_back({FlagKind::intersection_near_grid_line, a.id, b.id});
              break;
            }
          }
        }
      }
    }
  }
  return flags;
}

void require_general_position(const std::vector<UnitArc>& arcs, double margin) {
  auto flags = check_general_position(arcs, margin);
  if (!flags.empty()) {
    throw DegenerateInput(flags.front().first_id, flags.front().second_id, flag_name(flags.front().kind));
  }
}

}  // namespace arccensus
