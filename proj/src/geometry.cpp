#include "arccensus/geometry.hpp"

#include <atomic>
#include <cstdlib>
#include <sstream>

namespace arccensus {

namespace {

double initial_eps() {
  if (const char* env = std::getenv("ARC_CENSUS_EPS")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0.0 && std::isfinite(v)) return v;
  }
  return 1e-9;
}

std::atomic<double>& eps_storage() {
  static std::atomic<double> value{initial_eps()};
  return value;
}

std::string describe_pair(int a, int b, const std::string& why) {
  std::ostringstream os;
  os << "degenerate input: arcs " << a << " and " << b << ": " << why;
  return os.str();
}

}  // namespace

double eps() { return eps_storage().load(std::memory_order_relaxed); }

void set_eps(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) throw std::invalid_argument("eps must be positive");
  eps_storage().store(value, std::memory_order_relaxed);
}

double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t -= kTwoPi;
  return t;
}

double angle_of(Point v) { return normalize_angle(std::atan2(v.y, v.x)); }

char color_char(Color c) {
  switch (c) {
    case Color::red: return 'r';
    case Color::blue: return 'b';
    default: return '-';
  }
}

UnitArc make_arc(int id, Point center, double theta_start, double theta_end, Color color) {
  if (!std::isfinite(center.x) || !std::isfinite(center.y) || !std::isfinite(theta_start) ||
      !std::isfinite(theta_end)) {
    throw std::invalid_argument("arc coordinates must be finite");
  }
  double span = theta_end - theta_start;
  if (!(span > 0.0) || span > kTwoPi + 1e-12) {
    throw std::invalid_argument("arc span must lie in (0, 2*pi]");
  }
  UnitArc a;
  a.id = id;
  a.center = center;
  a.theta_start = normalize_angle(theta_start);
  a.theta_end = a.theta_start + std::min(span, kTwoPi);
  a.color = color;
  return a;
}

Side angle_side(const UnitArc& arc, double theta) {
  if (arc.is_full()) return Side::inside;
  double rel = normalize_angle(theta - arc.theta_start);
  double span = arc.span();
  const double tol = eps();
  if (rel <= tol || rel >= kTwoPi - tol || std::abs(rel - span) <= tol) return Side::boundary;
  return rel < span ? Side::inside : Side::outside;
}

DegenerateInput::DegenerateInput(int a, int b, const std::string& why)
    : GeometryError(describe_pair(a, b, why)), first_id(a), second_id(b), reason(why) {}

std::vector<Point> arc_arc_intersections(const UnitArc& a, const UnitArc& b) {
  std::vector<Point> out;
  Point d = b.center - a.center;
  double len = norm(d);
  const double tol = eps();
  if (len < tol) throw DegenerateInput(a.id, b.id, "coincident centres");
  if (std::abs(len - 2.0) < tol) throw DegenerateInput(a.id, b.id, "tangent circles");
  if (len > 2.0) return out;
  Point mid = a.center + 0.5 * d;
  double h = std::sqrt(std::max(0.0, 1.0 - 0.25 * len * len));
  Point n{-d.y / len, d.x / len};
  for (double sgn : {1.0, -1.0}) {
    Point p = mid + (sgn * h) * n;
    Side sa = angle_side(a, angle_of(p - a.center));
    if (sa == Side::outside) continue;
    Side sb = angle_side(b, angle_of(p - b.center));
    if (sb == Side::outside) continue;
    if (sa == Side::boundary || sb == Side::boundary) {
      throw BoundaryCase("intersection point at an arc endpoint");
    }
    out.push_back(p);
  }
  return out;
}

int intersection_count(const UnitArc& a, const UnitArc& b) {
  double dx = b.center.x - a.center.x;
  double dy = b.center.y - a.center.y;
  if (dx * dx + dy * dy > 4.0 + 1e-6) return 0;
  return static_cast<int>(arc_arc_intersections(a, b).size());
}

namespace {

// Signed offset of |p - q| from 1 with boundary rejection.
bool strictly_inside_unit_disk(Point q, Point p) {
  double d = dist(p, q) - 1.0;
  if (std::abs(d) < eps()) throw BoundaryCase("point on a unit circle");
  return d < 0.0;
}

}  // namespace

bool in_lune(Point p, const UnitArc& s) {
  bool a = strictly_inside_unit_disk(s.endpoint(0), p);
  bool b = strictly_inside_unit_disk(s.endpoint(1), p);
  return a != b;
}

bool in_lune_prime(Point p, const UnitArc& s) {
  return !strictly_inside_unit_disk(s.endpoint(0), p) &&
         !strictly_inside_unit_disk(s.endpoint(1), p);
}

Wedge wedge_of(const UnitArc& s) {
  if (s.span() >= kPi) throw SpanTooLarge("wedge requested for an arc spanning pi or more");
  return Wedge{s.center, s.theta_start, s.theta_end};
}

Side wedge_side(const Wedge& w, Point p) {
  Point v = p - w.apex;
  double len = norm(v);
  const double tol = eps();
  if (len < tol) return Side::boundary;
  double c1 = cross(unit_vector(w.ray_lo), v);
  double c2 = cross(v, unit_vector(w.ray_hi));
  if (std::abs(c1) <= tol * len || std::abs(c2) <= tol * len) {
    // Only the rays themselves are ambiguous, not their opposite extensions.
    bool near_lo = std::abs(c1) <= tol * len && dot(unit_vector(w.ray_lo), v) > 0.0;
    bool near_hi = std::abs(c2) <= tol * len && dot(unit_vector(w.ray_hi), v) > 0.0;
    if (near_lo || near_hi) return Side::boundary;
  }
  return (c1 >= 0.0 && c2 >= 0.0) ? Side::inside : Side::outside;
}

bool in_wedge(const Wedge& w, Point p) {
  Point v = p - w.apex;
  return cross(unit_vector(w.ray_lo), v) >= 0.0 && cross(v, unit_vector(w.ray_hi)) >= 0.0;
}

bool obs60_twice_with_circle(const UnitArc& s, Point q) {
  double d = dist(s.center, q);
  const double tol = eps();
  if (d < tol || std::abs(d - 2.0) < tol) throw BoundaryCase("circle distance at a decision boundary");
  if (d > 2.0) return false;
  Side ws = wedge_side(wedge_of(s), q);
  if (ws == Side::boundary) throw BoundaryCase("point on a wedge ray");
  if (ws == Side::outside) return false;
  return !strictly_inside_unit_disk(q, s.endpoint(0)) && !strictly_inside_unit_disk(q, s.endpoint(1));
}

bool obs70_five_conditions(const UnitArc& s_b, const UnitArc& s_r) {
  return obs60_twice_with_circle(s_b, s_r.center) && obs60_twice_with_circle(s_r, s_b.center);
}

bool four_conditions(const UnitArc& s_b, const UnitArc& s_r) {
  if (!obs60_twice_with_circle(s_b, s_r.center)) return false;
  Side ws = wedge_side(wedge_of(s_r), s_b.center);
  if (ws == Side::boundary) throw BoundaryCase("point on a wedge ray");
  return ws == Side::inside;
}

}  // namespace arccensus
