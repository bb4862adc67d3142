#include "arccensus/coupled.hpp"

namespace arccensus {

KeyAxis separation_axis(const Box& center_cell, const Box& counting_cell) {
  bool below = center_cell.y_hi <= counting_cell.y_lo + 1e-12;
  bool above = center_cell.y_lo >= counting_cell.y_hi - 1e-12;
  return (below || above) ? KeyAxis::x : KeyAxis::y;
}

CoupledArcData coupled_arc_data(const UnitArc& s_r, const Box& center_cell, const Box& counting_cell,
                                const PseudoTrapezoid& tau) {
  CoupledArcData out;
  out.axis = separation_axis(center_cell, counting_cell);
  std::vector<AngleInterval> comps = clip_circle(s_r.center, 1.0, tau);
  if (comps.size() > 2) {
    out.irregular = true;
    return out;
  }
  double mid = normalize_angle(0.5 * (s_r.theta_start + s_r.theta_end));
  int own = -1;
  for (int i = 0; i < static_cast<int>(comps.size()); ++i) {
    double rel = normalize_angle(mid - comps[i].lo);
    if (rel < comps[i].hi - comps[i].lo) own = i;
  }
  if (own < 0) {
    out.irregular = true;
    return out;
  }
  if (comps.size() == 1) return out;
  const AngleInterval& other = comps[1 - own];
  out.is_partial = true;
  out.coupled = s_r;
  out.coupled.theta_start = other.lo;
  out.coupled.theta_end = other.hi;
  Point m_own = s_r.point_at(mid);
  Point m_other = s_r.point_at(0.5 * (other.lo + other.hi));
  out.before = key_of(out.axis, m_own) < key_of(out.axis, m_other);
  Point e0 = s_r.endpoint(0);
  Point e1 = s_r.endpoint(1);
  bool e0_larger = key_of(out.axis, e0) > key_of(out.axis, e1);
  if (out.before) {
    out.z = e0_larger ? e0 : e1;
  } else {
    out.z = e0_larger ? e1 : e0;
  }
  if (out.axis == KeyAxis::x) {
    out.side = out.before ? CoupledSide::left_of : CoupledSide::right_of;
  } else {
    out.side = out.before ? CoupledSide::below : CoupledSide::above;
  }
  return out;
}

}  // namespace arccensus
