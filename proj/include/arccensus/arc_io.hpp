#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "arccensus/counter.hpp"

namespace arccensus {

struct ParseError : std::runtime_error {
  ParseError(int line, const std::string& what);
  int line;
};

// One arc per line: "cx cy theta_start theta_end [r|b]", angles in radians.
// '#' starts a comment; blank lines are skipped. Arcs get ids 0, 1, ... in
// file order.
std::vector<UnitArc> read_arcs(std::istream& in);
void write_arcs(std::ostream& out, const std::vector<UnitArc>& arcs);

std::string report_json(const CountReport& r);
std::string report_text(const CountReport& r);

}  // namespace arccensus
