#include <algorithm>
#include <chrono>
#include <cmath>

#include "arccensus/validate.hpp"
#include "counter_internal.hpp"

namespace arccensus {

CountReport count_small_k(const std::vector<UnitArc>& arcs, const CounterConfig& config) {
  auto start = std::chrono::steady_clock::now();
  if (config.validate) require_general_position(arcs, config.margin);
  CounterConfig inner = config;
  inner.validate = false;
  CountReport report;
  const double n = static_cast<double>(arcs.size());
  if (arcs.empty()) return report;

  std::vector<GeneralArc> items;
  Box bounds{arcs[0].center.x, arcs[0].center.y, arcs[0].center.x, arcs[0].center.y};
  for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
    for (auto& g : split_unit_arc(arcs[i], i)) items.push_back(g);
    bounds.x_lo = std::min(bounds.x_lo, arcs[i].center.x - 1.0);
    bounds.y_lo = std::min(bounds.y_lo, arcs[i].center.y - 1.0);
    bounds.x_hi = std::max(bounds.x_hi, arcs[i].center.x + 1.0);
    bounds.y_hi = std::max(bounds.y_hi, arcs[i].center.y + 1.0);
  }
  // Uneven margins keep the region's sides off the grid lines.
  bounds.x_lo -= 0.0137;
  bounds.y_lo -= 0.0113;
  bounds.x_hi += 0.0151;
  bounds.y_hi += 0.0127;
  const PseudoTrapezoid region = box_region(bounds);

  double guess = std::max(1.0, n);
  for (int round = 0;; ++round) {
    ++report.diagnostics.small_k_rounds;
    double r = n * n / (n + guess);
    r = std::clamp(r, 1.0, std::max(1.0, static_cast<double>(items.size()) / 8.0));
    CuttingOptions opt;
    opt.seed = detail::mix_seed(config.seed, static_cast<std::uint64_t>(round));
    HierarchicalCutting hc;
    try {
      hc = build_hierarchical_cutting(items, r, region, opt);
    } catch (const BuildFailure&) {
      ++report.diagnostics.degraded_builds;
      guess *= 2.0;
      continue;
    }
    report.diagnostics.resample_rounds += static_cast<std::uint64_t>(hc.resample_rounds);
    report.diagnostics.main_cutting_cells += hc.cells.size();

    // Work proxy: pairs of arcs sharing a leaf. A low guess shows up as
    // crowded leaves; the guess doubles and the round restarts.
    std::vector<std::vector<int>> owners(hc.leaves().size());
    double work = 0.0;
    for (std::size_t l = 0; l < hc.leaves().size(); ++l) {
      std::vector<int>& o = owners[l];
      for (int item : hc.crossing[hc.leaves()[l]]) o.push_back(items[item].owner_id);
      std::sort(o.begin(), o.end());
      o.erase(std::unique(o.begin(), o.end()), o.end());
      work += static_cast<double>(o.size()) * static_cast<double>(o.size());
    }
    const double budget = 16.0 * (n + guess) * std::log2(n + 2.0);
    if (work > budget) {
      guess *= 2.0;
      continue;
    }
    CountReport total;
    bool ambiguous = false;
    for (std::size_t l = 0; l < hc.leaves().size() && !ambiguous; ++l) {
      const PseudoTrapezoid& leaf = hc.cells[hc.leaves()[l]];
      std::vector<ArcPiece> pieces;
      for (int i : owners[l]) {
        // Cut ends inside the grid cells act as arc endpoints for the leaf count.
        for (auto& p : clip_arc(arcs[i], leaf)) {
          p.original_end[0] = p.original_end[1] = !p.arc.is_full();
          pieces.push_back(p);
        }
      }
      if (pieces.size() < 2) continue;
      CountReport part;
      try {
        part = detail::run_pipeline(pieces, inner, detail::PairMode::all);
      } catch (const BoundaryCase&) {
        // An intersection point sits on a leaf boundary; cut again.
        ambiguous = true;
        break;
      }
      total.by_type += part.by_type;
      total.diagnostics += part.diagnostics;
    }
    if (ambiguous) {
      if (++report.diagnostics.boundary_fallbacks > 8) {
        Diagnostics extra = report.diagnostics;
        report = count_all(arcs, inner);
        report.diagnostics += extra;
        break;
      }
      continue;
    }
    std::uint64_t k = total.by_type.total();
    if (static_cast<double>(k) > guess) {
      guess *= 2.0;
      continue;
    }
    std::uint64_t rounds = report.diagnostics.small_k_rounds;
    Diagnostics extra = report.diagnostics;
    report = total;
    report.total = k;
    extra.small_k_rounds = 0;
    report.diagnostics += extra;
    report.diagnostics.small_k_rounds = rounds;
    report.diagnostics.small_k_guess = static_cast<std::uint64_t>(guess);
    break;
  }
  report.diagnostics.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

CountReport count_bichromatic(const std::vector<UnitArc>& red, const std::vector<UnitArc>& blue,
                              BichromaticMode mode, const CounterConfig& config) {
  std::vector<UnitArc> all;
  all.reserve(red.size() + blue.size());
  for (auto a : red) {
    a.color = Color::red;
    all.push_back(a);
  }
  for (auto a : blue) {
    a.color = Color::blue;
    all.push_back(a);
  }
  if (config.validate) require_general_position(all, config.margin);
  CounterConfig inner = config;
  inner.validate = false;
  if (mode == BichromaticMode::direct) {
    return detail::run_pipeline(detail::as_pieces(all), inner, detail::PairMode::bichromatic);
  }
  CountReport both = count_all(all, inner);
  CountReport r = count_all(red, inner);
  CountReport b = count_all(blue, inner);
  CountReport out;
  out.total = both.total - r.total - b.total;
  out.diagnostics = both.diagnostics;
  out.diagnostics += r.diagnostics;
  out.diagnostics += b.diagnostics;
  // Type breakdowns do not subtract across runs, so identity mode reports the total only.
  out.by_type = TypeCounts{};
  return out;
}

}  // namespace arccensus
