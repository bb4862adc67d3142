#include "arccensus/arc_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace arccensus {

ParseError::ParseError(int l, const std::string& what)
    : std::runtime_error("line " + std::to_string(l) + ": " + what), line(l) {}

std::vector<UnitArc> read_arcs(std::istream& in) {
  std::vector<UnitArc> arcs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 4 && tok.size() != 5) throw ParseError(lineno, "expected 4 or 5 fields");
    double v[4];
    for (int i = 0; i < 4; ++i) {
      std::size_t used = 0;
      try {
        v[i] = std::stod(tok[i], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok[i].size()) throw ParseError(lineno, "bad number '" + tok[i] + "'");
    }
    Color c = Color::none;
    if (tok.size() == 5) {
      if (tok[4] == "r") c = Color::red;
      else if (tok[4] == "b") c = Color::blue;
      else throw ParseError(lineno, "colour must be r or b");
    }
    try {
      arcs.push_back(make_arc(static_cast<int>(arcs.size()), {v[0], v[1]}, v[2], v[3], c));
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
  }
  return arcs;
}

void write_arcs(std::ostream& out, const std::vector<UnitArc>& arcs) {
  char buf[160];
  for (const auto& a : arcs) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g", a.center.x, a.center.y, a.theta_start,
                  a.theta_end);
    out << buf;
    if (a.color != Color::none) out << ' ' << color_char(a.color);
    out << '\n';
  }
}

}  // namespace arccensus
