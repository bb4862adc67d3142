#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "arccensus/cutting.hpp"
#include "arccensus/geometry.hpp"
#include "arccensus/testkit.hpp"

namespace test {

using namespace arccensus;

inline double deg(double d) { return d * kPi / 180.0; }

inline UnitArc arc_deg(int id, Point c, double a0, double a1, Color col = Color::none) {
  return make_arc(id, c, deg(a0), deg(a1), col);
}

inline UnitArc full_circle(int id, Point c, Color col = Color::none) { return make_arc(id, c, 0.0, kTwoPi, col); }

// Number of times the unit circle about q crosses s, from sign changes of
// |x - q| - 1 at dense samples along s.
inline int sampled_crossings(const UnitArc& s, Point q, int samples = 20000) {
  int crossings = 0;
  double prev = dist(s.point_at(s.theta_start), q) - 1.0;
  for (int i = 1; i <= samples; ++i) {
    double t = s.theta_start + s.span() * i / samples;
    double cur = dist(s.point_at(t), q) - 1.0;
    if ((prev < 0.0) != (cur < 0.0)) ++crossings;
    prev = cur;
  }
  return crossings;
}

inline std::vector<UnitArc> instance(int n, double box, std::uint64_t seed, double span_min = 0.1,
                                     double span_max = kTwoPi) {
  InstanceSpec spec;
  spec.n = n;
  spec.box = box;
  spec.seed = seed;
  spec.span_min = span_min;
  spec.span_max = span_max;
  return gen_instance(spec).arcs;
}

inline std::vector<UnitArc> of_color(const std::vector<UnitArc>& arcs, Color c) {
  std::vector<UnitArc> out;
  for (const auto& a : arcs) {
    if (a.color == c) out.push_back(a);
  }
  return out;
}

}  // namespace test
