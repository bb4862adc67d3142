#include "arccensus/cutting.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <random>
#include <stdexcept>

namespace arccensus {

namespace {

constexpr double kMinWidth = 1e-12;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Boundary copies sit this far from the item they come from. The distance
// differs per item, level and round and stays far above eps().
double boundary_offset(int item, int level, int round, std::uint64_t seed) {
  std::uint64_t h = splitmix(seed ^ splitmix(static_cast<std::uint64_t>(item) * 1315423911ULL +
                                             static_cast<std::uint64_t>(level) * 2654435761ULL +
                                             static_cast<std::uint64_t>(round) * 97531ULL));
  double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  return 1e-5 * (1.0 + u);
}

bool strictly_inside(const PseudoTrapezoid& cell, Point p) {
  return p.x > cell.left_x && p.x < cell.right_x && cell.bottom.vertical_offset(p) > 0.0 &&
         cell.top.vertical_offset(p) < 0.0;
}

void sort_unique(std::vector<double>& xs) {
  std::sort(xs.begin(), xs.end());
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    if (out.empty() || x - out.back() > kMinWidth) out.push_back(x);
  }
  xs.swap(out);
}

}  // namespace

Side PseudoTrapezoid::classify(Point p) const {
  const double tol = eps();
  if (p.x < left_x - tol || p.x > right_x + tol) return Side::outside;
  Point q{std::clamp(p.x, left_x, right_x), p.y};
  double ob = bottom.vertical_offset(q);
  double ot = top.vertical_offset(q);
  if (ob < -tol || ot > tol) return Side::outside;
  if (p.x <= left_x + tol || p.x >= right_x - tol || ob <= tol || ot >= -tol) return Side::boundary;
  return Side::inside;
}

Point PseudoTrapezoid::sample_point() const {
  double xm = 0.5 * (left_x + right_x);
  return {xm, 0.5 * (top.y_at(xm) + bottom.y_at(xm))};
}

PseudoTrapezoid box_region(const Box& b) {
  PseudoTrapezoid t;
  t.left_x = b.x_lo;
  t.right_x = b.x_hi;
  t.top = horizontal_segment(b.x_lo, b.x_hi, b.y_hi);
  t.bottom = horizontal_segment(b.x_lo, b.x_hi, b.y_lo);
  return t;
}

std::vector<std::pair<double, double>> clip_curve(const GeneralArc& g, const PseudoTrapezoid& cell) {
  std::vector<std::pair<double, double>> out;
  double lo = std::max(g.x_lo, cell.left_x);
  double hi = std::min(g.x_hi, cell.right_x);
  if (hi - lo <= kMinWidth) return out;
  std::vector<double> xs{lo, hi};
  intersection_xs(g, cell.top, xs);
  intersection_xs(g, cell.bottom, xs);
  for (double& x : xs) x = std::clamp(x, lo, hi);
  sort_unique(xs);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    double a = xs[i];
    double b = xs[i + 1];
    if (!strictly_inside(cell, g.at(0.5 * (a + b)))) continue;
    if (!out.empty() && out.back().second == a) {
      out.back().second = b;
    } else {
      out.emplace_back(a, b);
    }
  }
  return out;
}

bool crosses_interior(const GeneralArc& g, const PseudoTrapezoid& cell) {
  if (g.x_hi <= cell.left_x || g.x_lo >= cell.right_x) return false;
  return !clip_curve(g, cell).empty();
}

std::vector<AngleInterval> clip_circle(Point c, double radius, const PseudoTrapezoid& cell) {
  std::vector<double> angles;
  for (double wall : {cell.left_x, cell.right_x}) {
    double u = (wall - c.x) / radius;
    if (u >= -1.0 && u <= 1.0) {
      double a = std::acos(u);
      angles.push_back(normalize_angle(a));
      angles.push_back(normalize_angle(-a));
    }
  }
  circle_curve_angles(c, radius, cell.top, angles);
  circle_curve_angles(c, radius, cell.bottom, angles);
  std::vector<AngleInterval> out;
  auto inside_at = [&](double t) { return strictly_inside(cell, c + radius * unit_vector(t)); };
  if (angles.empty()) {
    if (inside_at(0.0)) out.push_back({0.0, kTwoPi});
    return out;
  }
  sort_unique(angles);
  std::size_t m = angles.size();
  for (std::size_t i = 0; i < m; ++i) {
    double a = angles[i];
    double b = i + 1 < m ? angles[i + 1] : angles[0] + kTwoPi;
    if (b - a <= kMinWidth) continue;
    if (!inside_at(0.5 * (a + b))) continue;
    if (!out.empty() && out.back().hi == a) {
      out.back().hi = b;
    } else {
      out.push_back({a, b});
    }
  }
  if (out.size() >= 2 && out.back().hi == angles[0] + kTwoPi && out.front().lo == angles[0]) {
    out.back().hi = out.front().hi + kTwoPi;
    out.erase(out.begin());
  }
  if (out.size() == 1 && out[0].hi - out[0].lo >= kTwoPi) out[0] = {0.0, kTwoPi};
  for (auto& iv : out) {
    if (iv.lo >= kTwoPi) {
      iv.lo -= kTwoPi;
      iv.hi -= kTwoPi;
    }
  }
  std::sort(out.begin(), out.end(), [](const AngleInterval& x, const AngleInterval& y) { return x.lo < y.lo; });
  return out;
}

int cutting_depth(double r, int rho) {
  int k = 0;
  double p = 1.0;
  while (p < r) {
    p *= rho;
    ++k;
  }
  return k;
}

namespace {

struct Decomposition {
  std::vector<PseudoTrapezoid> cells;
};

// Vertical decomposition of the given boundary curves inside parent. Slab
// cells sharing the same bounding pair in consecutive slabs are merged, which
// yields exactly the cells cut out by walls through endpoints and crossings.
Decomposition decompose(const PseudoTrapezoid& parent, const std::vector<GeneralArc>& copies) {
  std::vector<GeneralArc> curves;
  for (const auto& g : copies) {
    for (auto [a, b] : clip_curve(g, parent)) curves.push_back(g.clipped(a, b));
  }
  std::vector<double> events{parent.left_x, parent.right_x};
  for (std::size_t i = 0; i < curves.size(); ++i) {
    events.push_back(curves[i].x_lo);
    events.push_back(curves[i].x_hi);
    for (std::size_t j = i + 1; j < curves.size(); ++j) intersection_xs(curves[i], curves[j], events);
  }
  for (double& x : events) x = std::clamp(x, parent.left_x, parent.right_x);
  sort_unique(events);

  const int kBottom = -1;
  const int kTop = -2;
  Decomposition out;
  std::map<std::pair<int, int>, int> open;  // (bottom id, top id) -> cell index
  std::vector<int> order;
  for (std::size_t j = 0; j + 1 < events.size(); ++j) {
    double a = events[j];
    double b = events[j + 1];
    double xm = 0.5 * (a + b);
    order.clear();
    for (int c = 0; c < static_cast<int>(curves.size()); ++c) {
      if (curves[c].x_lo <= a + kMinWidth && curves[c].x_hi >= b - kMinWidth) order.push_back(c);
    }
    std::sort(order.begin(), order.end(),
              [&](int u, int v) { return curves[u].y_at(xm) < curves[v].y_at(xm); });
    std::map<std::pair<int, int>, int> next;
    int below = kBottom;
    for (std::size_t t = 0; t <= order.size(); ++t) {
      int above = t < order.size() ? order[t] : kTop;
      auto key = std::make_pair(below, above);
      auto it = open.find(key);
      int idx;
      if (it != open.end()) {
        idx = it->second;
        out.cells[idx].right_x = b;
      } else {
        PseudoTrapezoid cell;
        cell.left_x = a;
        cell.right_x = b;
        cell.bottom = below == kBottom ? parent.bottom : curves[below];
        cell.top = above == kTop ? parent.top : curves[above];
        idx = static_cast<int>(out.cells.size());
        out.cells.push_back(cell);
      }
      next[key] = idx;
      below = above;
    }
    open.swap(next);
  }
  return out;
}

}  // namespace

HierarchicalCutting build_hierarchical_cutting(const std::vector<GeneralArc>& items, double r,
                                               const PseudoTrapezoid& region,
                                               const CuttingOptions& options) {
  if (r < 1.0) throw std::invalid_argument("cutting parameter r must be at least 1");
  HierarchicalCutting hc;
  hc.item_count = static_cast<int>(items.size());
  hc.r = r;
  hc.rho = options.rho;
  const int k = cutting_depth(r, options.rho);
  std::mt19937_64 rng(options.seed);

  PseudoTrapezoid root = region;
  root.level = 0;
  root.parent = -1;
  root.index = 0;
  root.children.clear();
  hc.cells.push_back(root);
  hc.crossing.emplace_back();
  for (int i = 0; i < hc.item_count; ++i) {
    if (crosses_interior(items[i], root)) hc.crossing[0].push_back(i);
  }
  hc.levels.push_back({0});

  const double n = static_cast<double>(items.size());
  double target = n;
  for (int level = 1; level <= k; ++level) {
    target /= options.rho;
    std::vector<int> current;
    for (int parent_id : hc.levels[level - 1]) {
      const std::vector<int> H = hc.crossing[parent_id];
      std::vector<PseudoTrapezoid> kids;
      std::vector<std::vector<int>> kid_h;
      if (H.empty()) {
        kids.push_back(hc.cells[parent_id]);
        kid_h.push_back(H);
      } else {
        std::size_t s = std::min<std::size_t>(H.size(), static_cast<std::size_t>(options.base_sample));
        bool ok = false;
        int accepted = 0;
        std::size_t best_size = 0;
        std::vector<PseudoTrapezoid> trial;
        std::vector<std::vector<int>> trial_h;
        for (int round = 0; round < options.max_rounds && accepted < options.candidates; ++round) {
          std::vector<int> pool = H;
          if (s < pool.size()) {
            for (std::size_t t = 0; t < s; ++t) {
              std::uniform_int_distribution<std::size_t> pick(t, pool.size() - 1);
              std::swap(pool[t], pool[pick(rng)]);
            }
            pool.resize(s);
          }
          std::vector<GeneralArc> copies;
          copies.reserve(pool.size());
          for (int idx : pool) {
            copies.push_back(items[idx].offset(boundary_offset(idx, level, round, options.seed)));
          }
          try {
            trial = decompose(hc.cells[parent_id], copies).cells;
          } catch (const GeometryError&) {
            ++hc.resample_rounds;
            continue;
          }
          trial_h.assign(trial.size(), {});
          bool fits = true;
          std::size_t size = 0;
          for (std::size_t c = 0; c < trial.size() && fits; ++c) {
            for (int idx : H) {
              if (crosses_interior(items[idx], trial[c])) trial_h[c].push_back(idx);
            }
            size += trial_h[c].size();
            if (static_cast<double>(trial_h[c].size()) > target) fits = false;
          }
          if (fits) {
            if (!ok || size < best_size) {
              kids = std::move(trial);
              kid_h = std::move(trial_h);
              best_size = size;
            }
            ok = true;
            ++accepted;
            continue;
          }
          ++hc.resample_rounds;
          if ((round + 1) % 8 == 0) s = std::min(H.size(), s + 1);
        }
        if (!ok) throw BuildFailure("cutting level could not meet its crossing bound");
      }
      for (std::size_t c = 0; c < kids.size(); ++c) {
        int id = static_cast<int>(hc.cells.size());
        PseudoTrapezoid cell = kids[c];
        cell.level = level;
        cell.parent = parent_id;
        cell.index = static_cast<int>(current.size());
        cell.children.clear();
        hc.cells.push_back(cell);
        hc.crossing.push_back(std::move(kid_h[c]));
        hc.cells[parent_id].children.push_back(id);
        current.push_back(id);
      }
      hc.c_child = std::max<int>(hc.c_child, static_cast<int>(kids.size()));
    }
    hc.levels.push_back(std::move(current));
  }

  std::size_t total = 0;
  for (const auto& h : hc.crossing) total += h.size();
  hc.c_total = n > 0 ? static_cast<double>(total) / (n * r) : 0.0;
  double scale = 1.0;
  for (const auto& lv : hc.levels) {
    hc.c_size = std::max(hc.c_size, static_cast<double>(lv.size()) / scale);
    scale *= static_cast<double>(options.rho) * options.rho;
  }
  return hc;
}

std::vector<int> HierarchicalCutting::locate_path(Point p) const {
  std::vector<int> path;
  int cur = levels[0][0];
  Side s = cells[cur].classify(p);
  if (s == Side::outside) throw std::out_of_range("point outside the cutting region");
  if (s == Side::boundary) throw OnBoundary("point on the root boundary");
  path.push_back(cur);
  while (!cells[cur].children.empty()) {
    int found = -1;
    for (int c : cells[cur].children) {
      const PseudoTrapezoid& cell = cells[c];
      if (p.x < cell.left_x - eps() || p.x > cell.right_x + eps()) continue;
      Side cs = cell.classify(p);
      if (cs == Side::boundary) throw OnBoundary("point on a cell boundary");
      if (cs == Side::inside) {
        found = c;
        break;
      }
    }
    if (found < 0) throw OnBoundary("point fell between child cells");
    cur = found;
    path.push_back(cur);
  }
  return path;
}

void HierarchicalCutting::dump(std::ostream& os) const {
  for (std::size_t id = 0; id < cells.size(); ++id) {
    const PseudoTrapezoid& c = cells[id];
    os << c.level << ' ' << c.index << ' ' << c.parent << ' ' << c.left_x << ' ' << c.right_x << ' '
       << c.top.describe() << ' ' << c.bottom.describe() << ' ' << crossing[id].size() << '\n';
  }
}

}  // namespace arccensus

namespace arccensus {

std::vector<ArcPiece> clip_arc(const ArcPiece& piece, const PseudoTrapezoid& cell) {
  std::vector<ArcPiece> out;
  const UnitArc& a = piece.arc;
  std::vector<AngleInterval> ivs = clip_circle(a.center, 1.0, cell);
  if (a.is_full()) {
    for (const auto& iv : ivs) {
      ArcPiece p;
      p.arc = a;
      p.arc.theta_start = iv.lo;
      p.arc.theta_end = iv.hi;
      p.original_end[0] = p.original_end[1] = false;
      out.push_back(p);
    }
    return out;
  }
  const double s = a.theta_start;
  const double e = a.theta_end;
  for (const auto& iv : ivs) {
    for (double shift : {-kTwoPi, 0.0, kTwoPi}) {
      double lo = std::max(iv.lo + shift, s);
      double hi = std::min(iv.hi + shift, e);
      if (hi - lo <= 1e-12) continue;
      ArcPiece p;
      p.arc = a;
      double base = lo >= kTwoPi ? kTwoPi : 0.0;
      p.arc.theta_start = lo - base;
      p.arc.theta_end = hi - base;
      p.original_end[0] = lo == s && piece.original_end[0];
      p.original_end[1] = hi == e && piece.original_end[1];
      out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end(), [&](const ArcPiece& x, const ArcPiece& y) {
    return normalize_angle(x.arc.theta_start - s) < normalize_angle(y.arc.theta_start - s);
  });
  return out;
}

std::vector<ArcPiece> clip_arc(const UnitArc& arc, const PseudoTrapezoid& cell) {
  ArcPiece whole;
  whole.arc = arc;
  whole.original_end[0] = whole.original_end[1] = !arc.is_full();
  return clip_arc(whole, cell);
}

}  // namespace arccensus
