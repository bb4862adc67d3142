#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "arccensus/coupled.hpp"
#include "arccensus/cutting.hpp"
#include "arccensus/grid_cover.hpp"
#include "arccensus/range_search.hpp"

namespace arccensus {

// Intersection points by type, with multiplicity. The (3.x) and (1.x)
// sub-counts cover both the long-red and the long-blue orientation; t32 and
// t112 count pairs, each worth two points.
struct TypeCounts {
  std::uint64_t t2 = 0;
  std::uint64_t t3 = 0;
  std::uint64_t t4 = 0;
  std::uint64_t t1 = 0;
  std::uint64_t t311 = 0;
  std::uint64_t t3121 = 0;
  std::uint64_t t3122 = 0;
  std::uint64_t t32 = 0;
  std::uint64_t t111 = 0;
  std::uint64_t t112 = 0;

  std::uint64_t total() const { return t1 + t2 + t3 + t4; }
  TypeCounts& operator+=(const TypeCounts& o);
};

struct Diagnostics {
  std::uint64_t cover_cells = 0;
  std::uint64_t cell_pairs = 0;
  std::uint64_t main_cuttings = 0;
  std::uint64_t main_cutting_cells = 0;
  int max_depth = 0;
  std::uint64_t index_builds = 0;
  std::uint64_t index_cells = 0;
  std::uint64_t resample_rounds = 0;
  std::uint64_t degraded_builds = 0;
  std::uint64_t unlocated_queries = 0;
  std::uint64_t irregular_arcs = 0;
  std::uint64_t pairwise_fallbacks = 0;
  // Cell pairs recounted pairwise after a predicate hit a cell boundary.
  std::uint64_t boundary_fallbacks = 0;
  std::uint64_t structured_calls = 0;
  std::uint64_t k3_wedge_pairs = 0;
  std::uint64_t small_k_rounds = 0;
  std::uint64_t small_k_guess = 0;
  double seconds = 0.0;

  Diagnostics& operator+=(const Diagnostics& o);
};

struct CountReport {
  std::uint64_t total = 0;
  TypeCounts by_type;
  Diagnostics diagnostics;
};

// Instrumentation for attribution checks. Called only in single-threaded runs.
struct CounterHooks {
  // A type (1) sub-count inside one hierarchy cell: pieces of the two groups
  // clipped to that cell and the number of points counted between them.
  std::function<void(int context, int cell, const std::vector<ArcPiece>& first,
                     const std::vector<ArcPiece>& second, std::uint64_t points)>
      on_type1;
  // Long pieces of both colours inside a leaf cell.
  std::function<void(int context, int cell, const std::vector<ArcPiece>& long_red,
                     const std::vector<ArcPiece>& long_blue)>
      on_leaf;
};

struct CounterConfig {
  // Sub-counters with fewer input arcs than this use a pairwise scan.
  int fallback_threshold = 64;
  // Positive values replace the cutting parameter of every cell pair.
  double r_override = 0.0;
  // Positive values force this many blue groups in the type (3) count.
  int group_override = 0;
  int threads = 1;
  std::uint64_t seed = 1;
  bool validate = true;
  double margin = 1e-6;
  bool chord_order_once = true;
  WedgeStrategy wedge = WedgeStrategy::partition;
  DiskStrategy disk = DiskStrategy::automatic;
  CounterHooks* hooks = nullptr;
};

// Number of intersection points, with multiplicity, among all arcs.
CountReport count_all(const std::vector<UnitArc>& arcs, const CounterConfig& config = {});

// Same count via a cutting sized by a doubling guess K' on the answer.
CountReport count_small_k(const std::vector<UnitArc>& arcs, const CounterConfig& config = {});

enum class BichromaticMode { direct, identity };

// Red-blue intersection points only.
CountReport count_bichromatic(const std::vector<UnitArc>& red, const std::vector<UnitArc>& blue,
                              BichromaticMode mode, const CounterConfig& config = {});

// Building blocks --------------------------------------------------------

// A group of sub-arcs whose centres share one grid cell.
struct ArcGroup {
  std::vector<ArcPiece> pieces;
  Box center_cell;
};

struct PairContext {
  Box cell;  // the counting cell C
  const CounterConfig* config = nullptr;
  Diagnostics* diagnostics = nullptr;
  int context_id = 0;
};

// Points inside the counting cell between two groups with distinct arcs.
TypeCounts count_between(const ArcGroup& red, const ArcGroup& blue, const PairContext& ctx);
// Points inside the counting cell among one group, skipping same-arc pairs.
TypeCounts count_within(const ArcGroup& group, const PairContext& ctx);

// Top-level cutting parameter for a cell pair with n sub-arcs.
double pipeline_cutting_parameter(std::size_t n);

struct Type3Counts {
  std::uint64_t t311 = 0;
  std::uint64_t t3121 = 0;
  std::uint64_t k3 = 0;   // type (3.1.2.2) points
  std::uint64_t k3w = 0;  // those pairs whose blue centre is in w(s_r)
  std::uint64_t k2 = 0;   // pairs meeting the four conditions
  std::uint64_t irregular_points = 0;
  std::uint64_t twice_pairs() const { return k2 - k3w; }
  std::uint64_t points() const { return t311 + t3121 + k3 + 2 * twice_pairs() + irregular_points; }
};

// Long sub-arcs `longs` (centres in longs.center_cell) against sub-arcs
// `shorts` lying in tau; the counting cell is C.
Type3Counts count_type3(const ArcGroup& longs, const ArcGroup& shorts, const PseudoTrapezoid& tau,
                        const PairContext& ctx);

// Points between two families of long sub-arcs of cell sigma.
struct Type11Counts {
  std::uint64_t once = 0;
  std::uint64_t twice = 0;
  std::uint64_t points() const { return once + 2 * twice; }
};
Type11Counts count_11_pairs(const ArcGroup& first, const ArcGroup& second, const PseudoTrapezoid& sigma,
                            const PairContext& ctx);

// Pairs of long sub-arcs of sigma meeting exactly once, by the order of their
// ends along the cell boundary.
std::uint64_t count_once_by_chord_order(const std::vector<ArcPiece>& first,
                                        const std::vector<ArcPiece>& second,
                                        const PseudoTrapezoid& sigma);

}  // namespace arccensus
