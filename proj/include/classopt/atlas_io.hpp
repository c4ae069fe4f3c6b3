#pragma once

// Delimited-text serialization of atlases and root-ordering reports.
// Numbers carry 12 significant digits with '.' as the decimal separator.

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "classopt/regions.hpp"

namespace classopt {

inline std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

inline void write_atlas_cells(std::ostream& os, const Atlas& atlas) {
  os << "p,W,optimal_m,L_label,profitable,profit\n";
  for (const RegionCell& c : atlas.cells) {
    os << format_number(c.p) << ',' << format_number(c.w) << ','
       << c.optimal_m << ',';
    if (c.l_label) os << *c.l_label;
    os << ',' << (c.profitable ? 1 : 0) << ',' << format_number(c.profit)
       << '\n';
  }
}

inline void write_atlas_curves(std::ostream& os, const Atlas& atlas) {
  os << "curve,k,p,W\n";
  for (const Atlas::CurveSample& s : atlas.curves)
    os << s.curve << ',' << s.k << ',' << format_number(s.p) << ','
       << format_number(s.w) << '\n';
}

/// Re-parses a cells table written by write_atlas_cells.
inline std::vector<RegionCell> parse_atlas_cells(std::istream& is) {
  std::vector<RegionCell> cells;
  std::string line;
  if (!std::getline(is, line)) return cells;  // header
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    while (fields.size() < 6) fields.emplace_back();
    RegionCell c;
    c.p = std::stod(fields[0]);
    c.w = std::stod(fields[1]);
    c.optimal_m = std::stoi(fields[2]);
    if (!fields[3].empty()) c.l_label = std::stoi(fields[3]);
    c.profitable = fields[4] == "1";
    c.profit = std::stod(fields[5]);
    cells.push_back(c);
  }
  return cells;
}

/// Equality at serialized precision: integer fields exact, floating fields
/// equal after both are rendered with 12 significant digits.
inline bool cells_equivalent(const RegionCell& a, const RegionCell& b) {
  return format_number(a.p) == format_number(b.p) &&
         format_number(a.w) == format_number(b.w) &&
         a.optimal_m == b.optimal_m && a.l_label == b.l_label &&
         a.profitable == b.profitable &&
         format_number(a.profit) == format_number(b.profit);
}

inline void write_root_order_report(std::ostream& os,
                                    const RootOrderScan& scan) {
  os << "Z,i,j,p_ij,margin,status\n";
  for (const RootOrderLine& line : scan.lines)
    os << line.z << ',' << line.i << ',' << line.j << ','
       << format_number(line.p) << ',' << format_number(line.margin) << ','
       << (line.violation ? "violation" : "ok") << '\n';
}

}  // namespace classopt
