#include "arccensus/general_arc.hpp"

#include <algorithm>
#include <cstdio>

namespace arccensus {

namespace {

constexpr double kRangeSlack = 1e-12;

bool within(double x, const GeneralArc& g) {
  return x >= g.x_lo - kRangeSlack && x <= g.x_hi + kRangeSlack;
}

// A point of the full circle belongs to the piece when its x is in range and
// it lies on the right half.
bool circle_point_on_piece(const GeneralArc& g, Point p) {
  if (!within(p.x, g)) return false;
  double dy = p.y - g.center.y;
  const double slack = 1e-9 * g.radius;
  return g.upper ? dy >= -slack : dy <= slack;
}

bool segment_point_on_piece(const GeneralArc& g, Point p) { return within(p.x, g); }

bool on_piece(const GeneralArc& g, Point p) {
  return g.is_circle() ? circle_point_on_piece(g, p) : segment_point_on_piece(g, p);
}

// Full-circle intersections for circles (c1, r1) and (c2, r2).
int circle_circle(Point c1, double r1, Point c2, double r2, Point out[2]) {
  Point d = c2 - c1;
  double len = norm(d);
  if (len < 1e-15 || len > r1 + r2 || len < std::abs(r1 - r2)) return 0;
  double a = (r1 * r1 - r2 * r2 + len * len) / (2.0 * len);
  double h2 = r1 * r1 - a * a;
  if (h2 < 0.0) h2 = 0.0;
  double h = std::sqrt(h2);
  Point u{d.x / len, d.y / len};
  Point base = c1 + a * u;
  Point n{-u.y, u.x};
  out[0] = base + h * n;
  out[1] = base - h * n;
  return h == 0.0 ? 1 : 2;
}

// Intersections of the circle (c, r) with the line through p0 and p1.
int circle_line(Point c, double r, Point p0, Point p1, Point out[2]) {
  Point d = p1 - p0;
  double len = norm(d);
  if (len < 1e-15) return 0;
  Point u{d.x / len, d.y / len};
  Point w = p0 - c;
  double b = dot(w, u);
  double cc = dot(w, w) - r * r;
  double disc = b * b - cc;
  if (disc < 0.0) return 0;
  double s = std::sqrt(disc);
  out[0] = p0 + (-b + s) * u;
  out[1] = p0 + (-b - s) * u;
  return s == 0.0 ? 1 : 2;
}

}  // namespace

double GeneralArc::y_at(double x) const {
  if (is_circle()) {
    double dx = x - center.x;
    double h = std::sqrt(std::max(0.0, radius * radius - dx * dx));
    return upper ? center.y + h : center.y - h;
  }
  double t = (x - p0.x) / (p1.x - p0.x);
  return p0.y + t * (p1.y - p0.y);
}

GeneralArc GeneralArc::offset(double delta) const {
  GeneralArc g = *this;
  if (is_circle()) {
    double scale = (radius + delta) / radius;
    g.radius = radius + delta;
    g.x_lo = center.x + (x_lo - center.x) * scale;
    g.x_hi = center.x + (x_hi - center.x) * scale;
    return g;
  }
  // A vertical shift keeps the segment parallel and its x-range unchanged.
  g.p0.y += delta;
  g.p1.y += delta;
  return g;
}

GeneralArc GeneralArc::clipped(double lo, double hi) const {
  GeneralArc g = *this;
  g.x_lo = std::max(x_lo, lo);
  g.x_hi = std::min(x_hi, hi);
  return g;
}

std::string GeneralArc::describe() const {
  char buf[160];
  if (is_circle()) {
    std::snprintf(buf, sizeof buf, "%s(%.9g,%.9g;r=%g;%s;[%.9g,%.9g])",
                  kind == Kind::unit_circle_arc ? "arc" : "arc2", center.x, center.y, radius,
                  upper ? "up" : "down", x_lo, x_hi);
  } else {
    std::snprintf(buf, sizeof buf, "seg(%.9g,%.9g;%.9g,%.9g)", p0.x, p0.y, p1.x, p1.y);
  }
  return buf;
}

GeneralArc make_segment(Point a, Point b, int owner) {
  if (a.x > b.x) std::swap(a, b);
  GeneralArc g;
  g.kind = GeneralArc::Kind::segment;
  g.owner_id = owner;
  g.p0 = a;
  g.p1 = b;
  g.x_lo = a.x;
  g.x_hi = b.x;
  return g;
}

GeneralArc horizontal_segment(double x_lo, double x_hi, double y, int owner) {
  return make_segment({x_lo, y}, {x_hi, y}, owner);
}

std::vector<GeneralArc> split_circle_arc(Point center, double radius, double t0, double t1,
                                         int owner) {
  std::vector<GeneralArc> out;
  double k = std::floor(t0 / kPi);
  double a = t0;
  while (a < t1 - 1e-12) {
    double next = (k + 1.0) * kPi;
    double b = std::min(next, t1);
    if (b - a > 1e-12) {
      GeneralArc g;
      g.kind = radius == 1.0 ? GeneralArc::Kind::unit_circle_arc
                             : GeneralArc::Kind::radius2_circle_arc;
      g.owner_id = owner;
      g.center = center;
      g.radius = radius;
      long long kk = static_cast<long long>(k);
      g.upper = (kk % 2 + 2) % 2 == 0;
      double xa = center.x + radius * std::cos(a);
      double xb = center.x + radius * std::cos(b);
      // Exact extreme x at the half boundaries avoids cos rounding.
      if (a == k * kPi) xa = center.x + (g.upper ? radius : -radius);
      if (b == next) xb = center.x + (g.upper ? -radius : radius);
      g.x_lo = std::min(xa, xb);
      g.x_hi = std::max(xa, xb);
      out.push_back(g);
    }
    a = b;
    k += 1.0;
  }
  return out;
}

std::vector<GeneralArc> split_unit_arc(const UnitArc& a, int owner) {
  return split_circle_arc(a.center, 1.0, a.theta_start, a.theta_end, owner);
}

void intersection_xs(const GeneralArc& a, const GeneralArc& b, std::vector<double>& out) {
  double lo = std::max(a.x_lo, b.x_lo);
  double hi = std::min(a.x_hi, b.x_hi);
  if (lo > hi + kRangeSlack) return;
  Point pts[2];
  int n = 0;
  if (a.is_circle() && b.is_circle()) {
    n = circle_circle(a.center, a.radius, b.center, b.radius, pts);
  } else if (a.is_circle()) {
    n = circle_line(a.center, a.radius, b.p0, b.p1, pts);
  } else if (b.is_circle()) {
    n = circle_line(b.center, b.radius, a.p0, a.p1, pts);
  } else {
    Point d1 = a.p1 - a.p0;
    Point d2 = b.p1 - b.p0;
    double den = cross(d1, d2);
    if (std::abs(den) > 1e-300) {
      double t = cross(b.p0 - a.p0, d2) / den;
      pts[0] = a.p0 + t * d1;
      n = 1;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (on_piece(a, pts[i]) && on_piece(b, pts[i])) out.push_back(pts[i].x);
  }
}

void circle_curve_angles(Point c, double radius, const GeneralArc& g, std::vector<double>& out) {
  Point pts[2];
  int n = g.is_circle() ? circle_circle(c, radius, g.center, g.radius, pts)
                        : circle_line(c, radius, g.p0, g.p1, pts);
  for (int i = 0; i < n; ++i) {
    if (on_piece(g, pts[i])) out.push_back(angle_of(pts[i] - c));
  }
}

}  // namespace arccensus
