#include <sstream>

#include "arccensus/arc_io.hpp"
#include "json.hpp"

namespace arccensus {

namespace {

nlohmann::ordered_json to_json(const CountReport& r) {
  const TypeCounts& t = r.by_type;
  const Diagnostics& d = r.diagnostics;
  nlohmann::ordered_json j;
  j["total"] = r.total;
  j["by_type"] = {{"t1", t.t1},       {"t2", t.t2},       {"t3", t.t3},     {"t4", t.t4},
                  {"t111", t.t111},   {"t112", t.t112},   {"t311", t.t311}, {"t3121", t.t3121},
                  {"t3122", t.t3122}, {"t32", t.t32}};
  j["diagnostics"] = {{"cover_cells", d.cover_cells},
                      {"cell_pairs", d.cell_pairs},
                      {"main_cuttings", d.main_cuttings},
                      {"main_cutting_cells", d.main_cutting_cells},
                      {"max_depth", d.max_depth},
                      {"index_builds", d.index_builds},
                      {"index_cells", d.index_cells},
                      {"resample_rounds", d.resample_rounds},
                      {"degraded_builds", d.degraded_builds},
                      {"unlocated_queries", d.unlocated_queries},
                      {"irregular_arcs", d.irregular_arcs},
                      {"pairwise_fallbacks", d.pairwise_fallbacks},
                      {"boundary_fallbacks", d.boundary_fallbacks},
                      {"structured_calls", d.structured_calls},
                      {"k3_wedge_pairs", d.k3_wedge_pairs},
                      {"small_k_rounds", d.small_k_rounds},
                      {"small_k_guess", d.small_k_guess},
                      {"seconds", d.seconds}};
  return j;
}

}  // namespace

std::string report_json(const CountReport& r) { return to_json(r).dump(2); }

std::string report_text(const CountReport& r) {
  std::ostringstream os;
  auto j = to_json(r);
  os << "total " << r.total << "\nby_type\n";
  for (auto& [k, v] : j["by_type"].items()) os << "  " << k << ' ' << v << '\n';
  os << "diagnostics\n";
  for (auto& [k, v] : j["diagnostics"].items()) os << "  " << k << ' ' << v << '\n';
  return os.str();
}

}  // namespace arccensus
