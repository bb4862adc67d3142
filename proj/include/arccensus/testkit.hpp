#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "arccensus/geometry.hpp"
#include "arccensus/validate.hpp"

namespace arccensus {

// Reference count: every pair of arcs, intersected directly.
std::uint64_t brute_count(const std::vector<UnitArc>& arcs);
std::uint64_t brute_count_bichromatic(const std::vector<UnitArc>& red, const std::vector<UnitArc>& blue);

struct InstanceSpec {
  int n = 100;
  double box = 10.0;  // centres uniform in [0, box]^2
  double span_min = 0.1;
  double span_max = kTwoPi;
  double red_fraction = 0.5;
  std::uint64_t seed = 0;
  double margin = 1e-6;
};

struct GenerationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GeneratedInstance {
  std::vector<UnitArc> arcs;
  int resamples = 0;
};

// Random arcs in general position. Arcs in flagged pairs are redrawn until
// the instance passes; more than 10^4 redraws raise GenerationFailure.
GeneratedInstance gen_instance(const InstanceSpec& spec);

}  // namespace arccensus
