#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace arccensus {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Global tolerance. Defaults to 1e-9 and honours ARC_CENSUS_EPS on first use.
double eps();
void set_eps(double value);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double dist(Point a, Point b) { return norm(a - b); }
inline Point unit_vector(double theta) { return {std::cos(theta), std::sin(theta)}; }

// Maps any angle into [0, 2*pi).
double normalize_angle(double theta);
// Direction of v in [0, 2*pi).
double angle_of(Point v);

enum class Color { none, red, blue };

char color_char(Color c);

// A unit-radius circular arc traversed counter-clockwise from theta_start to
// theta_end. theta_start lies in [0, 2*pi) and theta_end in
// (theta_start, theta_start + 2*pi]; a span of exactly 2*pi is a full circle.
struct UnitArc {
  int id = 0;
  Point center;
  double theta_start = 0.0;
  double theta_end = kTwoPi;
  Color color = Color::none;

  double span() const { return theta_end - theta_start; }
  bool is_full() const { return span() >= kTwoPi; }
  Point point_at(double theta) const { return center + unit_vector(theta); }
  Point endpoint(int which) const { return point_at(which == 0 ? theta_start : theta_end); }
};

// Builds a normalized arc. Throws std::invalid_argument when the span is not
// in (0, 2*pi] or a coordinate is not finite.
UnitArc make_arc(int id, Point center, double theta_start, double theta_end,
                 Color color = Color::none);

enum class Side { inside, outside, boundary };

// Classifies an angle against the arc's angular range with tolerance eps().
Side angle_side(const UnitArc& arc, double theta);

// Errors -------------------------------------------------------------------

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Coincident or tangent circles, or any input that violates general position.
struct DegenerateInput : GeometryError {
  DegenerateInput(int a, int b, const std::string& why);
  int first_id;
  int second_id;
  std::string reason;
};

// A predicate was evaluated within eps() of its decision boundary.
struct BoundaryCase : GeometryError {
  using GeometryError::GeometryError;
};

// A wedge was requested for an arc spanning pi or more.
struct SpanTooLarge : GeometryError {
  using GeometryError::GeometryError;
};

// Geometric invariant that the counting scheme relies on did not hold.
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

// Predicates ---------------------------------------------------------------

// Intersection points of two unit arcs. Throws DegenerateInput for coincident
// or tangent circles and BoundaryCase when a candidate sits on an arc end.
std::vector<Point> arc_arc_intersections(const UnitArc& a, const UnitArc& b);

// Number of intersection points, skipping the work when centres are far apart.
int intersection_count(const UnitArc& a, const UnitArc& b);

// p lies in D(e0) xor D(e1) for the endpoints e0, e1 of s.
bool in_lune(Point p, const UnitArc& s);
// p lies outside both D(e0) and D(e1).
bool in_lune_prime(Point p, const UnitArc& s);

struct Wedge {
  Point apex;
  double ray_lo = 0.0;  // direction of the first bounding ray
  double ray_hi = 0.0;  // ray_lo < ray_hi < ray_lo + pi
};

// The wedge spanned by the rays from the centre through both endpoints.
Wedge wedge_of(const UnitArc& s);
// Closed wedge membership.
bool in_wedge(const Wedge& w, Point p);
Side wedge_side(const Wedge& w, Point p);

// s meets the unit circle centred at q exactly twice.
bool obs60_twice_with_circle(const UnitArc& s, Point q);
// s_b and s_r meet twice; both arcs must span less than pi.
bool obs70_five_conditions(const UnitArc& s_b, const UnitArc& s_r);
// The four conditions used by the type (3.2) count: the five-condition test
// without the endpoint condition on s_r.
bool four_conditions(const UnitArc& s_b, const UnitArc& s_r);

}  // namespace arccensus
