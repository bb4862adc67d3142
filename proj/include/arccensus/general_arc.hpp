#pragma once

#include <string>
#include <vector>

#include "arccensus/geometry.hpp"

namespace arccensus {

// An x-monotone boundary curve: a piece of a circle lying in its upper or
// lower half, or a non-vertical line segment. Every piece is described by
// its x-range, which is how the cutting code clips and orders them.
struct GeneralArc {
  enum class Kind { unit_circle_arc, radius2_circle_arc, segment };

  Kind kind = Kind::segment;
  int owner_id = -1;
  // circle pieces
  Point center;
  double radius = 1.0;
  bool upper = true;
  // segments: p0.x < p1.x
  Point p0;
  Point p1;
  double x_lo = 0.0;
  double x_hi = 0.0;

  bool is_circle() const { return kind != Kind::segment; }
  double y_at(double x) const;
  Point at(double x) const { return {x, y_at(x)}; }
  // p.y minus the curve height at p.x; positive above the curve.
  double vertical_offset(Point p) const { return p.y - y_at(p.x); }
  // Copy that never meets the original: the concentric circle of radius
  // radius + delta, or the segment shifted up by delta.
  GeneralArc offset(double delta) const;
  GeneralArc clipped(double lo, double hi) const;
  std::string describe() const;
};

GeneralArc make_segment(Point a, Point b, int owner = -1);
GeneralArc horizontal_segment(double x_lo, double x_hi, double y, int owner = -1);

// Splits the counter-clockwise circle arc [t0, t1] into x-monotone pieces.
// Sub-pieces shorter than 1e-12 radians are dropped.
std::vector<GeneralArc> split_circle_arc(Point center, double radius, double t0, double t1,
                                         int owner = -1);
std::vector<GeneralArc> split_unit_arc(const UnitArc& a, int owner);

// Appends the x-coordinates where the two curves meet, restricted to the
// common x-range.
void intersection_xs(const GeneralArc& a, const GeneralArc& b, std::vector<double>& out);

// Angles on the circle (c, radius) where it meets curve g.
void circle_curve_angles(Point c, double radius, const GeneralArc& g, std::vector<double>& out);

}  // namespace arccensus
