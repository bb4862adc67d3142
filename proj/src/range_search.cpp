#include "arccensus/range_search.hpp"

#include <algorithm>

#include "arccensus/region_index.hpp"

namespace arccensus {

IntervalTree::IntervalTree(const std::vector<std::pair<double, double>>& intervals) {
  lo_.reserve(intervals.size());
  hi_.reserve(intervals.size());
  for (auto [a, b] : intervals) {
    lo_.push_back(std::min(a, b));
    hi_.push_back(std::max(a, b));
  }
  std::sort(lo_.begin(), lo_.end());
  std::sort(hi_.begin(), hi_.end());
}

std::size_t IntervalTree::stab_count(double x) const {
  // Intervals starting at or before x minus those already finished before x.
  auto started = std::upper_bound(lo_.begin(), lo_.end(), x) - lo_.begin();
  auto finished = std::lower_bound(hi_.begin(), hi_.end(), x) - hi_.begin();
  return static_cast<std::size_t>(started - finished);
}

namespace {

constexpr int kLeafSize = 8;

bool in_closed_wedge(Point apex, Point d_lo, Point d_hi, Point p) {
  Point v = p - apex;
  return cross(d_lo, v) >= 0.0 && cross(v, d_hi) >= 0.0;
}

}  // namespace

WedgeCounter::WedgeCounter(std::vector<Point> points, WedgeStrategy strategy)
    : points_(std::move(points)), strategy_(strategy) {
  if (strategy_ == WedgeStrategy::partition && points_.size() > static_cast<std::size_t>(kLeafSize)) {
    nodes_.reserve(2 * points_.size() / kLeafSize + 2);
    build(0, static_cast<int>(points_.size()));
  } else {
    strategy_ = WedgeStrategy::brute;
  }
}

int WedgeCounter::build(int begin, int end) {
  Node n{};
  n.begin = begin;
  n.end = end;
  n.x_lo = n.y_lo = std::numeric_limits<double>::infinity();
  n.x_hi = n.y_hi = -std::numeric_limits<double>::infinity();
  for (int i = begin; i < end; ++i) {
    n.x_lo = std::min(n.x_lo, points_[i].x);
    n.x_hi = std::max(n.x_hi, points_[i].x);
    n.y_lo = std::min(n.y_lo, points_[i].y);
    n.y_hi = std::max(n.y_hi, points_[i].y);
  }
  int id = static_cast<int>(nodes_.size());
  nodes_.push_back(n);
  if (end - begin > kLeafSize) {
    int mid = begin + (end - begin) / 2;
    bool by_x = (n.x_hi - n.x_lo) >= (n.y_hi - n.y_lo);
    std::nth_element(points_.begin() + begin, points_.begin() + mid, points_.begin() + end,
                     [by_x](const Point& a, const Point& b) { return by_x ? a.x < b.x : a.y < b.y; });
    int l = build(begin, mid);
    int r = build(mid, end);
    nodes_[id].left = l;
    nodes_[id].right = r;
  }
  return id;
}

std::size_t WedgeCounter::count_node(int node, Point apex, Point d_lo, Point d_hi) const {
  const Node& n = nodes_[node];
  const Point corners[4] = {{n.x_lo, n.y_lo}, {n.x_hi, n.y_lo}, {n.x_lo, n.y_hi}, {n.x_hi, n.y_hi}};
  int in_lo = 0, in_hi = 0;
  for (const Point& c : corners) {
    Point v = c - apex;
    if (cross(d_lo, v) >= 0.0) ++in_lo;
    if (cross(v, d_hi) >= 0.0) ++in_hi;
  }
  if (in_lo == 0 || in_hi == 0) return 0;
  if (in_lo == 4 && in_hi == 4) return static_cast<std::size_t>(n.end - n.begin);
  if (n.left < 0) {
    std::size_t c = 0;
    for (int i = n.begin; i < n.end; ++i) c += in_closed_wedge(apex, d_lo, d_hi, points_[i]);
    return c;
  }
  return count_node(n.left, apex, d_lo, d_hi) + count_node(n.right, apex, d_lo, d_hi);
}

std::size_t WedgeCounter::count(const Wedge& w) const {
  Point d_lo = unit_vector(w.ray_lo);
  Point d_hi = unit_vector(w.ray_hi);
  if (strategy_ == WedgeStrategy::brute || nodes_.empty()) {
    std::size_t c = 0;
    for (const Point& p : points_) c += in_closed_wedge(w.apex, d_lo, d_hi, p);
    return c;
  }
  return count_node(0, w.apex, d_lo, d_hi);
}

StabbedWedgeCounter::StabbedWedgeCounter(const std::vector<std::pair<double, double>>& intervals,
                                         const std::vector<Point>& points) {
  count_ = intervals.size();
  for (auto [a, b] : intervals) {
    coords_.push_back(a);
    coords_.push_back(b);
  }
  std::sort(coords_.begin(), coords_.end());
  coords_.erase(std::unique(coords_.begin(), coords_.end()), coords_.end());
  if (coords_.empty()) return;
  // Slot 2i is the coordinate itself, slot 2i+1 the open gap after it.
  slots_ = 2 * static_cast<int>(coords_.size()) - 1;
  pending_.assign(4 * static_cast<std::size_t>(slots_), {});
  auto index_of = [&](double v) {
    return static_cast<int>(std::lower_bound(coords_.begin(), coords_.end(), v) - coords_.begin());
  };
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    double a = std::min(intervals[i].first, intervals[i].second);
    double b = std::max(intervals[i].first, intervals[i].second);
    int lo = 2 * index_of(a);
    int hi = 2 * index_of(b);
    // Iterative insertion into the canonical nodes of [lo, hi].
    struct Frame { int node, l, r; };
    std::vector<Frame> stack{{1, 0, slots_ - 1}};
    while (!stack.empty()) {
      Frame f = stack.back();
      stack.pop_back();
      if (hi < f.l || f.r < lo) continue;
      if (lo <= f.l && f.r <= hi) {
        pending_[f.node].push_back(points[i]);
        continue;
      }
      int m = (f.l + f.r) / 2;
      stack.push_back({2 * f.node, f.l, m});
      stack.push_back({2 * f.node + 1, m + 1, f.r});
    }
  }
  nodes_.resize(pending_.size());
  for (std::size_t n = 0; n < pending_.size(); ++n) {
    if (!pending_[n].empty()) {
      WedgeStrategy s = pending_[n].size() > 32 ? WedgeStrategy::partition : WedgeStrategy::brute;
      nodes_[n] = WedgeCounter(std::move(pending_[n]), s);
    }
  }
  pending_.clear();
}

int StabbedWedgeCounter::slot_of(double x) const {
  auto it = std::lower_bound(coords_.begin(), coords_.end(), x);
  int i = static_cast<int>(it - coords_.begin());
  if (it != coords_.end() && *it == x) return 2 * i;
  if (i == 0 || it == coords_.end()) return -1;
  return 2 * (i - 1) + 1;
}

std::size_t StabbedWedgeCounter::count(double x, const Wedge& w) const {
  if (slots_ == 0) return 0;
  int s = slot_of(x);
  if (s < 0) return 0;
  std::size_t total = 0;
  int node = 1, l = 0, r = slots_ - 1;
  while (true) {
    if (nodes_[node].size() > 0) total += nodes_[node].count(w);
    if (l == r) break;
    int m = (l + r) / 2;
    if (s <= m) {
      node = 2 * node;
      r = m;
    } else {
      node = 2 * node + 1;
      l = m + 1;
    }
  }
  return total;
}

std::size_t count_points_in_disks_brute(const std::vector<Point>& points,
                                        const std::vector<Point>& centers, double radius) {
  std::size_t c = 0;
  const double tol = eps();
  for (const Point& p : points) {
    for (const Point& q : centers) {
      double d = dist(p, q);
      if (std::abs(d - radius) < tol) throw BoundaryCase("point on a disk boundary");
      c += d < radius;
    }
  }
  return c;
}

std::size_t count_points_in_disks(const std::vector<Point>& points, const std::vector<Point>& centers,
                                  double radius, DiskStrategy strategy, const Box& bounds) {
  if (strategy == DiskStrategy::automatic) {
    strategy = points.size() * centers.size() > 4096 ? DiskStrategy::cutting : DiskStrategy::brute;
  }
  if (strategy == DiskStrategy::brute || centers.empty() || points.empty()) {
    return count_points_in_disks_brute(points, centers, radius);
  }
  std::vector<GeneralArc> items;
  for (int i = 0; i < static_cast<int>(centers.size()); ++i) {
    for (auto& g : split_circle_arc(centers[i], radius, 0.0, kTwoPi, i)) items.push_back(g);
  }
  const double tol = eps();
  auto contains = [&](int owner, Point p) {
    double d = dist(p, centers[owner]);
    if (std::abs(d - radius) < tol) throw BoundaryCase("point on a disk boundary");
    return d < radius;
  };
  double m = static_cast<double>(centers.size());
  double r = std::max(1.0, m / std::log2(m + 2.0));
  RegionIndex index(std::move(items), static_cast<int>(centers.size()), contains, bounds, r, 0xd15c);
  std::vector<std::size_t> per_cell(index.cutting().cells.size());
  for (std::size_t c = 0; c < per_cell.size(); ++c) per_cell[c] = index.canonical(static_cast<int>(c)).size();
  std::size_t total = 0;
  std::vector<int> path;
  for (const Point& p : points) {
    if (!index.locate(p, path)) {
      for (int o = 0; o < static_cast<int>(centers.size()); ++o) total += contains(o, p);
      continue;
    }
    for (int c : path) total += per_cell[c];
    for (int o : index.crossing_owners(path.back())) total += contains(o, p);
  }
  return total;
}

}  // namespace arccensus
