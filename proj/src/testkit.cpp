#include "arccensus/testkit.hpp"

#include <random>

namespace arccensus {

namespace {

std::uint64_t pair_points(const UnitArc& a, const UnitArc& b) {
  try {
    return arc_arc_intersections(a, b).size();
  } catch (const BoundaryCase&) {
    throw DegenerateInput(a.id, b.id, "arc endpoint on another arc");
  }
}

}  // namespace

std::uint64_t brute_count(const std::vector<UnitArc>& arcs) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    for (std::size_t j = i + 1; j < arcs.size(); ++j) total += pair_points(arcs[i], arcs[j]);
  }
  return total;
}

std::uint64_t brute_count_bichromatic(const std::vector<UnitArc>& red, const std::vector<UnitArc>& blue) {
  std::uint64_t total = 0;
  for (const auto& r : red) {
    for (const auto& b : blue) total += pair_points(r, b);
  }
  return total;
}

GeneratedInstance gen_instance(const InstanceSpec& spec) {
  if (spec.n < 0 || !(spec.box >= 0.0) || !(spec.span_min > 0.0) || spec.span_max > kTwoPi ||
      spec.span_min > spec.span_max) {
    throw std::invalid_argument("invalid instance specification");
  }
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> coord(0.0, spec.box);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::uniform_real_distribution<double> span(spec.span_min, spec.span_max);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&](int id) {
    Point c{coord(rng), coord(rng)};
    double t = angle(rng);
    double s = span(rng);
    Color col = unit(rng) < spec.red_fraction ? Color::red : Color::blue;
    return make_arc(id, c, t, t + s, col);
  };
  GeneratedInstance out;
  for (int i = 0; i < spec.n; ++i) out.arcs.push_back(draw(i));
  constexpr int kMaxResamples = 10000;
  while (true) {
    auto flags = check_general_position(out.arcs, spec.margin);
    if (flags.empty()) break;
    std::vector<int> redo;
    for (const auto& f : flags) redo.push_back(std::max(f.first_id, f.second_id));
    std::sort(redo.begin(), redo.end());
    redo.erase(std::unique(redo.begin(), redo.end()), redo.end());
    for (int id : redo) {
      if (++out.resamples > kMaxResamples) throw GenerationFailure("instance generation exceeded 10^4 resamples");
      out.arcs[id] = draw(id);
    }
  }
  return out;
}

}  // namespace arccensus
