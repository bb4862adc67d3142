#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "arccensus/cutting.hpp"
#include "arccensus/geometry.hpp"

namespace arccensus {

// Counts closed intervals [lo, hi] containing a query value.
class IntervalTree {
 public:
  IntervalTree() = default;
  explicit IntervalTree(const std::vector<std::pair<double, double>>& intervals);
  std::size_t stab_count(double x) const;
  std::size_t size() const { return lo_.size(); }

 private:
  std::vector<double> lo_;
  std::vector<double> hi_;
};

enum class WedgeStrategy { brute, partition };

// Counts points inside closed wedges of angle less than pi.
class WedgeCounter {
 public:
  WedgeCounter() = default;
  explicit WedgeCounter(std::vector<Point> points, WedgeStrategy strategy = WedgeStrategy::partition);
  std::size_t count(const Wedge& w) const;
  std::size_t size() const { return points_.size(); }
  WedgeStrategy strategy() const { return strategy_; }

 private:
  struct Node {
    double x_lo, y_lo, x_hi, y_hi;
    int begin, end;
    int left = -1, right = -1;
  };
  int build(int begin, int end);
  std::size_t count_node(int node, Point apex, Point d_lo, Point d_hi) const;

  std::vector<Point> points_;
  std::vector<Node> nodes_;
  WedgeStrategy strategy_ = WedgeStrategy::brute;
};

// Each interval carries a point. Counts intervals that contain x and whose
// point lies in a wedge.
class StabbedWedgeCounter {
 public:
  StabbedWedgeCounter() = default;
  StabbedWedgeCounter(const std::vector<std::pair<double, double>>& intervals,
                      const std::vector<Point>& points);
  std::size_t count(double x, const Wedge& w) const;
  std::size_t size() const { return count_; }

 private:
  int slot_of(double x) const;
  std::vector<double> coords_;
  std::vector<std::vector<Point>> pending_;
  std::vector<WedgeCounter> nodes_;
  int slots_ = 0;
  std::size_t count_ = 0;
};

enum class DiskStrategy { brute, cutting, automatic };

// Number of pairs (p, c) with |p - c| < radius. The cutting strategy needs the
// points to lie in bounds.
std::size_t count_points_in_disks(const std::vector<Point>& points, const std::vector<Point>& centers,
                                  double radius, DiskStrategy strategy, const Box& bounds);
std::size_t count_points_in_disks_brute(const std::vector<Point>& points,
                                        const std::vector<Point>& centers, double radius);

}  // namespace arccensus
