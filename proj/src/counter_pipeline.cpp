#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <thread>
#include <unordered_map>

#include "arccensus/validate.hpp"
#include "counter_internal.hpp"

namespace arccensus {

TypeCounts& TypeCounts::operator+=(const TypeCounts& o) {
  t2 += o.t2;
  t3 += o.t3;
  t4 += o.t4;
  t1 += o.t1;
  t311 += o.t311;
  t3121 += o.t3121;
  t3122 += o.t3122;
  t32 += o.t32;
  t111 += o.t111;
  t112 += o.t112;
  return *this;
}

Diagnostics& Diagnostics::operator+=(const Diagnostics& o) {
  cover_cells += o.cover_cells;
  cell_pairs += o.cell_pairs;
  main_cuttings += o.main_cuttings;
  main_cutting_cells += o.main_cutting_cells;
  max_depth = std::max(max_depth, o.max_depth);
  index_builds += o.index_builds;
  index_cells += o.index_cells;
  resample_rounds += o.resample_rounds;
  degraded_builds += o.degraded_builds;
  unlocated_queries += o.unlocated_queries;
  irregular_arcs += o.irregular_arcs;
  pairwise_fallbacks += o.pairwise_fallbacks;
  boundary_fallbacks += o.boundary_fallbacks;
  structured_calls += o.structured_calls;
  k3_wedge_pairs += o.k3_wedge_pairs;
  small_k_rounds += o.small_k_rounds;
  small_k_guess = std::max(small_k_guess, o.small_k_guess);
  seconds += o.seconds;
  return *this;
}

namespace detail {

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void append_endpoint_circles(const UnitArc& s, int owner, std::vector<GeneralArc>& items) {
  for (int e = 0; e < 2; ++e) {
    for (auto& g : split_circle_arc(s.endpoint(e), 1.0, 0.0, kTwoPi, owner)) items.push_back(g);
  }
}

void append_wedge_rays(const UnitArc& s, int owner, std::vector<GeneralArc>& items) {
  for (double t : {s.theta_start, s.theta_end}) {
    items.push_back(make_segment(s.center, s.center + 8.0 * unit_vector(t), owner));
  }
}

std::uint64_t pairwise_intersections(const std::vector<ArcPiece>& a, const std::vector<ArcPiece>& b) {
  std::uint64_t c = 0;
  for (const auto& x : a) {
    for (const auto& y : b) c += static_cast<std::uint64_t>(intersection_count(x.arc, y.arc));
  }
  return c;
}

}  // namespace detail

double pipeline_cutting_parameter(std::size_t n) {
  double nn = static_cast<double>(n);
  double r = std::cbrt(nn) / std::pow(std::log2(nn + 2.0), 2.0 / 3.0);
  return std::max(1.0, std::round(r));
}

namespace {

std::atomic<int> g_context_counter{0};

double mid_angle(const UnitArc& a) { return 0.5 * (a.theta_start + a.theta_end); }

// One sub-arc inside a hierarchy cell.
struct CellPiece {
  ArcPiece sub;
  int piece;  // index into the pair's piece list
};

}  // namespace

TypeCounts count_between(const ArcGroup& red, const ArcGroup& blue, const PairContext& ctx) {
  TypeCounts out;
  if (red.pieces.empty() || blue.pieces.empty()) return out;
  const CounterConfig& cfg = *ctx.config;
  Diagnostics& diag = *ctx.diagnostics;
  const int context = g_context_counter.fetch_add(1, std::memory_order_relaxed);

  // All sub-arcs of the pair: reds first, then blues.
  std::vector<const ArcPiece*> pieces;
  for (const auto& p : red.pieces) pieces.push_back(&p);
  for (const auto& p : blue.pieces) pieces.push_back(&p);
  const int n_red = static_cast<int>(red.pieces.size());
  const int n = static_cast<int>(pieces.size());
  auto is_red = [&](int i) { return i < n_red; };

  PseudoTrapezoid cbox = box_region(ctx.cell);

  // Extending arcs: the component of each circle inside C holding the piece.
  std::vector<GeneralArc> items;
  std::vector<std::vector<int>> ext_pieces;
  {
    std::map<std::pair<int, int>, int> ext_of;  // (arc id, component) -> extension
    std::unordered_map<int, std::vector<AngleInterval>> comps_of;
    for (int i = 0; i < n; ++i) {
      const UnitArc& a = pieces[i]->arc;
      auto it = comps_of.find(a.id);
      if (it == comps_of.end()) it = comps_of.emplace(a.id, clip_circle(a.center, 1.0, cbox)).first;
      const auto& comps = it->second;
      double mid = normalize_angle(mid_angle(a));
      int comp = -1;
      for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
        if (normalize_angle(mid - comps[c].lo) < comps[c].hi - comps[c].lo) comp = c;
      }
      if (comp < 0) throw InvariantViolation("sub-arc outside every component of its circle in C");
      auto [e, fresh] = ext_of.emplace(std::make_pair(a.id, comp), static_cast<int>(ext_pieces.size()));
      if (fresh) {
        ext_pieces.emplace_back();
        for (auto& g : split_circle_arc(a.center, 1.0, comps[comp].lo, comps[comp].hi, e->second)) {
          items.push_back(g);
        }
      }
      ext_pieces[e->second].push_back(i);
    }
  }

  double r = cfg.r_override > 0.0 ? cfg.r_override : pipeline_cutting_parameter(static_cast<std::size_t>(n));
  r = std::clamp(r, 1.0, std::max(1.0, static_cast<double>(items.size()) / 8.0));
  HierarchicalCutting hc;
  bool trivial = r <= 1.0;
  if (!trivial) {
    CuttingOptions opt;
    opt.seed = detail::mix_seed(cfg.seed, static_cast<std::uint64_t>(n) * 7919u + items.size());
    try {
      hc = build_hierarchical_cutting(items, r, cbox, opt);
    } catch (const BuildFailure&) {
      ++diag.degraded_builds;
      trivial = true;
    }
  }
  if (trivial) {
    hc = HierarchicalCutting{};
    PseudoTrapezoid root = cbox;
    hc.cells.push_back(root);
    hc.crossing.emplace_back();
    hc.levels.push_back({0});
    hc.item_count = static_cast<int>(items.size());
  }
  ++diag.main_cuttings;
  diag.main_cutting_cells += hc.cells.size();
  diag.resample_rounds += static_cast<std::uint64_t>(hc.resample_rounds);
  diag.max_depth = std::max(diag.max_depth, hc.depth());

  std::vector<std::vector<int>> long_sets(hc.cells.size());
  std::vector<CellPiece> here;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);

  for (int level = 0; level <= hc.depth(); ++level) {
    for (int cell_id : hc.levels[level]) {
      const PseudoTrapezoid& sigma = hc.cells[cell_id];
      const bool is_leaf = sigma.children.empty();
      here.clear();
      std::vector<int> touched;
      if (level == 0) {
        for (int i = 0; i < n; ++i) {
          here.push_back({*pieces[i], i});
          touched.push_back(i);
        }
      } else {
        for (int item : hc.crossing[cell_id]) {
          for (int i : ext_pieces[items[item].owner_id]) {
            if (seen[i]) continue;
            seen[i] = 1;
            touched.push_back(i);
            for (auto& sub : clip_arc(*pieces[i], sigma)) here.push_back({sub, i});
          }
        }
        for (int i : touched) seen[i] = 0;
      }

      // A piece is short in sigma when one of its input ends lies in sigma.
      std::vector<char> short_piece(static_cast<std::size_t>(n), 0);
      std::vector<char> present(static_cast<std::size_t>(n), 0);
      for (const auto& cp : here) {
        present[cp.piece] = 1;
        if (cp.sub.original_end[0] || cp.sub.original_end[1]) short_piece[cp.piece] = 1;
      }
      std::vector<int>& longs = long_sets[cell_id];
      for (int i : touched) {
        if (present[i] && !short_piece[i]) longs.push_back(i);
      }
      std::sort(longs.begin(), longs.end());
      const std::vector<int>* parent_longs = sigma.parent >= 0 ? &long_sets[sigma.parent] : nullptr;
      auto long_in_parent = [&](int i) {
        return parent_longs && std::binary_search(parent_longs->begin(), parent_longs->end(), i);
      };

      ArcGroup red_ll{{}, red.center_cell}, red_sl{{}, red.center_cell};
      ArcGroup blue_ll{{}, blue.center_cell}, blue_sl{{}, blue.center_cell};
      ArcGroup red_short{{}, red.center_cell}, blue_short{{}, blue.center_cell};
      for (const auto& cp : here) {
        bool red_piece = is_red(cp.piece);
        if (short_piece[cp.piece]) {
          (red_piece ? red_short : blue_short).pieces.push_back(cp.sub);
        } else if (long_in_parent(cp.piece)) {
          (red_piece ? red_ll : blue_ll).pieces.push_back(cp.sub);
        } else {
          (red_piece ? red_sl : blue_sl).pieces.push_back(cp.sub);
        }
      }

      // Type (1): at least one of the two long sub-arcs is short-long here.
      auto type1 = [&](const ArcGroup& first, const ArcGroup& second) {
        if (first.pieces.empty() || second.pieces.empty()) return;
        Type11Counts c = count_11_pairs(first, second, sigma, ctx);
        out.t111 += c.once;
        out.t112 += c.twice;
        out.t1 += c.points();
        if (cfg.hooks && cfg.hooks->on_type1) {
          cfg.hooks->on_type1(context, cell_id, first.pieces, second.pieces, c.points());
        }
      };
      type1(red_ll, blue_sl);
      type1(blue_ll, red_sl);
      type1(blue_sl, red_sl);

      if (!is_leaf) continue;
      if (cfg.hooks && cfg.hooks->on_leaf) {
        std::vector<ArcPiece> lr = red_ll.pieces, lb = blue_ll.pieces;
        lr.insert(lr.end(), red_sl.pieces.begin(), red_sl.pieces.end());
        lb.insert(lb.end(), blue_sl.pieces.begin(), blue_sl.pieces.end());
        cfg.hooks->on_leaf(context, cell_id, lr, lb);
      }
      out.t2 += detail::pairwise_intersections(red_short.pieces, blue_short.pieces);

      ArcGroup red_long{red_ll.pieces, red.center_cell};
      red_long.pieces.insert(red_long.pieces.end(), red_sl.pieces.begin(), red_sl.pieces.end());
      ArcGroup blue_long{blue_ll.pieces, blue.center_cell};
      blue_long.pieces.insert(blue_long.pieces.end(), blue_sl.pieces.begin(), blue_sl.pieces.end());
      if (!red_long.pieces.empty() && !blue_short.pieces.empty()) {
        Type3Counts c = count_type3(red_long, blue_short, sigma, ctx);
        out.t3 += c.points();
        out.t311 += c.t311;
        out.t3121 += c.t3121;
        out.t3122 += c.k3;
        out.t32 += c.twice_pairs();
      }
      if (!blue_long.pieces.empty() && !red_short.pieces.empty()) {
        Type3Counts c = count_type3(blue_long, red_short, sigma, ctx);
        out.t4 += c.points();
        out.t311 += c.t311;
        out.t3121 += c.t3121;
        out.t3122 += c.k3;
        out.t32 += c.twice_pairs();
      }
    }
  }
  return out;
}

TypeCounts count_within(const ArcGroup& group, const PairContext& ctx) {
  std::vector<int> ids;
  for (const auto& p : group.pieces) ids.push_back(p.arc.id);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() < 2) return {};
  // Balanced split by arc id keeps sub-arcs of one circle together.
  int pivot = ids[ids.size() / 2];
  ArcGroup low{{}, group.center_cell}, high{{}, group.center_cell};
  for (const auto& p : group.pieces) (p.arc.id < pivot ? low : high).pieces.push_back(p);
  TypeCounts out = count_between(low, high, ctx);
  out += count_within(low, ctx);
  out += count_within(high, ctx);
  return out;
}

namespace detail {

struct Entry {
  CellKey source;
  ArcPiece piece;
};

struct CellWork {
  CellKey cell;
  std::vector<Entry> entries;
};

std::vector<CellWork> distribute(const std::vector<ArcPiece>& input, Diagnostics& diag) {
  std::vector<UnitArc> arcs;
  arcs.reserve(input.size());
  for (const ArcPiece& p : input) arcs.push_back(p.arc);
  GridCover cover = build_grid_cover(arcs);
  diag.cover_cells = cover.cells.size();
  std::unordered_map<CellKey, std::vector<Entry>, CellKeyHash> buckets;
  for (const ArcPiece& p : input) {
    CellKey src = cell_of(p.arc.center);
    for (const CellKey& k : cells_intersecting_arc(cover, p.arc)) {
      for (auto& sub : clip_arc(p, box_region(cell_box(k)))) buckets[k].push_back({src, sub});
    }
  }
  std::vector<CellWork> work;
  work.reserve(buckets.size());
  for (auto& [k, v] : buckets) work.push_back({k, std::move(v)});
  std::sort(work.begin(), work.end(), [](const CellWork& a, const CellWork& b) { return a.cell < b.cell; });
  for (auto& w : work) {
    std::stable_sort(w.entries.begin(), w.entries.end(), [](const Entry& a, const Entry& b) {
      if (a.source != b.source) return a.source < b.source;
      return a.piece.arc.id < b.piece.arc.id;
    });
  }
  return work;
}

struct CellResult {
  TypeCounts counts;
  Diagnostics diag;
};

CellResult process_cell(const CellWork& w, const CounterConfig& cfg, PairMode mode) {
  CellResult res;
  PairContext ctx;
  ctx.cell = cell_box(w.cell);
  ctx.config = &cfg;
  ctx.diagnostics = &res.diag;
  std::vector<ArcGroup> groups;
  std::vector<CellKey> keys;
  for (const auto& e : w.entries) {
    if (keys.empty() || keys.back() != e.source) {
      keys.push_back(e.source);
      groups.push_back({{}, cell_box(e.source)});
    }
    groups.back().pieces.push_back(e.piece);
  }
  // A predicate that cannot decide near a cutting boundary aborts the pair;
  // the pair is then counted pairwise on its sub-arcs in C, whose cut ends
  // lie on grid lines where general position holds.
  auto between = [&](const ArcGroup& a, const ArcGroup& b) {
    Diagnostics saved = res.diag;
    try {
      res.counts += count_between(a, b, ctx);
    } catch (const BoundaryCase&) {
      res.diag = saved;
      ++res.diag.boundary_fallbacks;
      res.counts.t2 += pairwise_intersections(a.pieces, b.pieces);
    }
  };
  auto within = [&](const ArcGroup& g) {
    Diagnostics saved = res.diag;
    try {
      res.counts += count_within(g, ctx);
    } catch (const BoundaryCase&) {
      res.diag = saved;
      ++res.diag.boundary_fallbacks;
      for (std::size_t i = 0; i < g.pieces.size(); ++i) {
        for (std::size_t j = i + 1; j < g.pieces.size(); ++j) {
          if (g.pieces[i].arc.id == g.pieces[j].arc.id) continue;
          res.counts.t2 += static_cast<std::uint64_t>(intersection_count(g.pieces[i].arc, g.pieces[j].arc));
        }
      }
    }
  };
  if (mode == PairMode::all) {
    for (std::size_t i = 0; i < groups.size(); ++i) {
      ++res.diag.cell_pairs;
      within(groups[i]);
      for (std::size_t j = i + 1; j < groups.size(); ++j) {
        ++res.diag.cell_pairs;
        between(groups[i], groups[j]);
      }
    }
  } else {
    std::vector<ArcGroup> reds, blues;
    for (const auto& g : groups) {
      ArcGroup r{{}, g.center_cell}, b{{}, g.center_cell};
      for (const auto& p : g.pieces) {
        if (p.arc.color == Color::red) r.pieces.push_back(p);
        else if (p.arc.color == Color::blue) b.pieces.push_back(p);
      }
      reds.push_back(std::move(r));
      blues.push_back(std::move(b));
    }
    for (std::size_t i = 0; i < groups.size(); ++i) {
      for (std::size_t j = 0; j < groups.size(); ++j) {
        if (reds[i].pieces.empty() || blues[j].pieces.empty()) continue;
        ++res.diag.cell_pairs;
        between(reds[i], blues[j]);
      }
    }
  }
  return res;
}

CountReport run_pipeline(const std::vector<ArcPiece>& input, const CounterConfig& cfg, PairMode mode) {
  auto start = std::chrono::steady_clock::now();
  CountReport report;
  std::vector<CellWork> work = distribute(input, report.diagnostics);
  std::vector<CellResult> results(work.size());
  int threads = std::max(1, cfg.threads);
  if (cfg.hooks) threads = 1;
  if (threads == 1 || work.size() < 2) {
    for (std::size_t i = 0; i < work.size(); ++i) results[i] = process_cell(work[i], cfg, mode);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i; (i = next.fetch_add(1)) < work.size();) {
            results[i] = process_cell(work[i], cfg, mode);
          }
        } catch (...) {
          errors[static_cast<std::size_t>(t)] = std::current_exception();
          next.store(work.size());
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  // Reduction in cell order keeps reports identical for any thread count.
  for (const auto& r : results) {
    report.by_type += r.counts;
    report.diagnostics += r.diag;
  }
  report.total = report.by_type.total();
  report.diagnostics.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<ArcPiece> as_pieces(const std::vector<UnitArc>& arcs) {
  std::vector<ArcPiece> out;
  out.reserve(arcs.size());
  for (const auto& a : arcs) {
    ArcPiece p;
    p.arc = a;
    p.original_end[0] = p.original_end[1] = !a.is_full();
    out.push_back(p);
  }
  return out;
}

}  // namespace detail

CountReport count_all(const std::vector<UnitArc>& arcs, const CounterConfig& config) {
  if (config.validate) require_general_position(arcs, config.margin);
  return detail::run_pipeline(detail::as_pieces(arcs), config, detail::PairMode::all);
}

}  // namespace arccensus
