#pragma once

// Text formats for families and surjections.
//
// Family file: optional "ground:" header (comma-separated atoms), then one
// minimal member per line as comma-separated atom names. Without a header the
// ground set is the union of the atoms mentioned. Atom order is canonicalized
// lexicographically so that bitmask encodings do not depend on file layout.
//
// Map file: one "source_atom -> target_atom" line per source atom.

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "synwb/errors.hpp"
#include "synwb/family.hpp"

namespace synwb {

namespace detail {

inline std::string strip(std::string s) {
  const auto hash = s.find('#');
  if (hash != std::string::npos) s.erase(hash);
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = strip(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

[[noreturn]] inline void parse_fail(const std::string& where, int line, const std::string& msg) {
  fail(errc::parse_error, where + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace detail

inline Family parse_family(std::istream& in, const std::string& where = "<family>") {
  std::vector<std::pair<int, std::vector<std::string>>> member_lines;
  std::vector<std::string> ground_atoms;
  bool have_ground = false;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = detail::strip(raw);
    if (line.empty()) continue;
    if (line.rfind("ground:", 0) == 0) {
      if (have_ground) detail::parse_fail(where, lineno, "duplicate ground header");
      ground_atoms = detail::split_list(line.substr(7), ',');
      if (ground_atoms.empty()) detail::parse_fail(where, lineno, "empty ground set");
      have_ground = true;
      continue;
    }
    auto atoms = detail::split_list(line, ',');
    if (atoms.empty()) detail::parse_fail(where, lineno, "empty minimal member");
    member_lines.emplace_back(lineno, std::move(atoms));
  }
  if (member_lines.empty())
    detail::parse_fail(where, lineno == 0 ? 1 : lineno, "family file lists no minimal members");

  if (!have_ground) {
    for (const auto& [_, atoms] : member_lines)
      for (const auto& a : atoms) ground_atoms.push_back(a);
  }
  std::sort(ground_atoms.begin(), ground_atoms.end());
  ground_atoms.erase(std::unique(ground_atoms.begin(), ground_atoms.end()), ground_atoms.end());
  GroundSet ground(ground_atoms);

  std::vector<Subset> generators;
  for (const auto& [line, atoms] : member_lines) {
    Subset mask = 0;
    for (const auto& a : atoms) {
      const auto idx = ground.index_of(a);
      if (!idx) detail::parse_fail(where, line, "atom '" + a + "' not in the ground set");
      mask |= Subset{1} << *idx;
    }
    generators.push_back(mask);
  }
  return Family::from_minimals(ground, generators);
}

/// Canonical file image: lexicographically sorted ground, minimals in mask order.
inline std::string format_family(const Family& family) {
  std::vector<std::string> sorted = family.ground().atoms();
  std::sort(sorted.begin(), sorted.end());
  GroundSet canonical(sorted);
  std::vector<std::size_t> reindex(family.ground().size());
  for (std::size_t i = 0; i < family.ground().size(); ++i)
    reindex[i] = *canonical.index_of(family.ground().atom(i));

  std::vector<Subset> minimals;
  for (Subset m : family.minimals()) {
    Subset out = 0;
    for (std::size_t i = 0; i < family.ground().size(); ++i)
      if (m & (Subset{1} << i)) out |= Subset{1} << reindex[i];
    minimals.push_back(out);
  }
  std::sort(minimals.begin(), minimals.end());

  std::ostringstream out;
  out << "ground: ";
  for (std::size_t i = 0; i < canonical.size(); ++i) out << (i ? "," : "") << canonical.atom(i);
  out << "\n";
  for (Subset m : minimals) out << canonical.format_subset(m) << "\n";
  return out.str();
}

inline SurjectionMap parse_map(std::istream& in, const std::string& where = "<map>") {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = detail::strip(raw);
    if (line.empty()) continue;
    const auto arrow = line.find("->");
    if (arrow == std::string::npos) detail::parse_fail(where, lineno, "expected 'atom -> atom'");
    const std::string lhs = detail::strip(line.substr(0, arrow));
    const std::string rhs = detail::strip(line.substr(arrow + 2));
    if (lhs.empty() || rhs.empty()) detail::parse_fail(where, lineno, "expected 'atom -> atom'");
    for (const auto& p : pairs)
      if (p.first == lhs)
        detail::parse_fail(where, lineno, "source atom '" + lhs + "' assigned twice");
    pairs.emplace_back(lhs, rhs);
  }
  if (pairs.empty()) detail::parse_fail(where, 1, "map file lists no assignments");

  std::vector<std::string> src, tgt;
  for (const auto& p : pairs) {
    src.push_back(p.first);
    tgt.push_back(p.second);
  }
  std::sort(src.begin(), src.end());
  std::sort(tgt.begin(), tgt.end());
  tgt.erase(std::unique(tgt.begin(), tgt.end()), tgt.end());
  GroundSet source(src), target(tgt);

  std::vector<std::size_t> table(source.size());
  for (const auto& p : pairs) table[*source.index_of(p.first)] = *target.index_of(p.second);
  return SurjectionMap(std::move(source), std::move(target), std::move(table));
}

inline std::string format_map(const SurjectionMap& map) {
  std::ostringstream out;
  for (std::size_t i = 0; i < map.source().size(); ++i)
    out << map.source().atom(i) << " -> " << map.target().atom(map.apply(i)) << "\n";
  return out.str();
}

}  // namespace synwb
