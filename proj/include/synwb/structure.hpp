#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "synwb/errors.hpp"

namespace synwb {

struct Relation {
  std::string name;
  int arity = 1;

  bool operator==(const Relation&) const = default;
};

class RelationalSignature {
 public:
  RelationalSignature() = default;

  explicit RelationalSignature(std::vector<Relation> relations)
      : relations_(std::move(relations)) {
    for (std::size_t i = 0; i < relations_.size(); ++i) {
      require(relations_[i].arity >= 1, errc::precondition,
              "relation '" + relations_[i].name + "' needs positive arity");
      for (std::size_t j = i + 1; j < relations_.size(); ++j)
        require(relations_[i].name != relations_[j].name, errc::precondition,
                "duplicate relation name '" + relations_[i].name + "'");
    }
  }

  std::size_t size() const { return relations_.size(); }
  const Relation& relation(std::size_t r) const { return relations_[r]; }
  const std::vector<Relation>& relations() const { return relations_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t r = 0; r < relations_.size(); ++r)
      if (relations_[r].name == name) return r;
    return std::nullopt;
  }

  bool operator==(const RelationalSignature&) const = default;

 private:
  std::vector<Relation> relations_;
};

/// Default universe cap; SYNWB_MAX_UNIVERSE in the environment overrides it.
inline std::size_t max_universe() {
  if (const char* env = std::getenv("SYNWB_MAX_UNIVERSE")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  return 24;
}

/// A finite relational structure: an ordered universe of named points plus,
/// for every relation, the sorted list of index tuples on which it holds.
/// Equality is literal (signature, universe, tables), not isomorphism.
class FinStructure {
 public:
  using Tuple = std::vector<std::uint8_t>;

  FinStructure(RelationalSignature signature, std::vector<std::string> universe,
               std::vector<std::vector<Tuple>> tables)
      : signature_(std::move(signature)),
        universe_(std::move(universe)),
        tables_(std::move(tables)) {
    require(universe_.size() <= max_universe(), errc::universe_cap,
            "universe larger than the cap of " + std::to_string(max_universe()) +
                " points (set SYNWB_MAX_UNIVERSE to override)");
    for (std::size_t i = 0; i < universe_.size(); ++i)
      for (std::size_t j = i + 1; j < universe_.size(); ++j)
        require(universe_[i] != universe_[j], errc::precondition,
                "duplicate point '" + universe_[i] + "'");
    require(tables_.size() == signature_.size(), errc::precondition,
            "one table per relation expected");
    for (std::size_t r = 0; r < tables_.size(); ++r) {
      for (const Tuple& t : tables_[r]) {
        require(t.size() == static_cast<std::size_t>(signature_.relation(r).arity),
                errc::precondition, "tuple arity mismatch in '" + signature_.relation(r).name + "'");
        for (auto idx : t)
          require(idx < universe_.size(), errc::precondition,
                  "tuple point out of range in '" + signature_.relation(r).name + "'");
      }
      std::sort(tables_[r].begin(), tables_[r].end());
      tables_[r].erase(std::unique(tables_[r].begin(), tables_[r].end()), tables_[r].end());
    }
  }

  const RelationalSignature& signature() const { return signature_; }
  std::size_t size() const { return universe_.size(); }
  const std::string& point(std::size_t i) const { return universe_[i]; }
  const std::vector<std::string>& universe() const { return universe_; }
  const std::vector<Tuple>& table(std::size_t r) const { return tables_[r]; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < universe_.size(); ++i)
      if (universe_[i] == name) return i;
    return std::nullopt;
  }

  bool holds(std::size_t r, const Tuple& tuple) const {
    return std::binary_search(tables_[r].begin(), tables_[r].end(), tuple);
  }

  bool operator==(const FinStructure&) const = default;

 private:
  RelationalSignature signature_;
  std::vector<std::string> universe_;
  std::vector<std::vector<Tuple>> tables_;
};

// --------------------------------------------------------------------------
// Structure files:
//   signature: lt/2, adj/2
//   universe: 1 2 3
//   rel lt: (1,2) (1,3) (2,3)

inline FinStructure parse_structure(std::istream& in, const std::string& where = "<structure>") {
  std::vector<Relation> relations;
  std::vector<std::string> universe;
  std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> rel_lines;
  bool have_signature = false, have_universe = false;

  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream probe(line);
    std::string head;
    if (!(probe >> head)) continue;

    if (head == "signature:") {
      std::string rest;
      std::getline(probe, rest);
      have_signature = true;
      std::istringstream items(rest);
      std::string item;
      while (std::getline(items, item, ',')) {
        const auto slash = item.find('/');
        if (slash == std::string::npos) {
          // allow a bare "signature:" line for the empty signature
          std::istringstream ws(item);
          std::string tok;
          if (!(ws >> tok)) continue;
          fail(errc::parse_error, where + ":" + std::to_string(lineno) + ": expected name/arity");
        }
        std::istringstream name_in(item.substr(0, slash));
        std::string name;
        name_in >> name;
        const int arity = std::atoi(item.substr(slash + 1).c_str());
        require(!name.empty() && arity >= 1, errc::parse_error,
                where + ":" + std::to_string(lineno) + ": expected name/arity");
        relations.push_back({name, arity});
      }
    } else if (head == "universe:") {
      std::string point;
      while (probe >> point) universe.push_back(point);
      have_universe = true;
    } else if (head == "rel") {
      std::string name;
      probe >> name;
      require(!name.empty() && name.back() == ':', errc::parse_error,
              where + ":" + std::to_string(lineno) + ": expected 'rel name:'");
      name.pop_back();
      std::vector<std::vector<std::string>> tuples;
      std::string tok;
      while (probe >> tok) {
        require(tok.front() == '(' && tok.back() == ')', errc::parse_error,
                where + ":" + std::to_string(lineno) + ": expected (a,b,...)");
        std::vector<std::string> tuple;
        std::istringstream parts(tok.substr(1, tok.size() - 2));
        std::string part;
        while (std::getline(parts, part, ',')) tuple.push_back(part);
        tuples.push_back(std::move(tuple));
      }
      rel_lines.emplace_back(name, std::move(tuples));
    } else {
      fail(errc::parse_error,
           where + ":" + std::to_string(lineno) + ": unrecognized line '" + head + "'");
    }
  }
  require(have_signature, errc::parse_error, where + ": missing 'signature:' line");
  require(have_universe, errc::parse_error, where + ": missing 'universe:' line");

  RelationalSignature signature(relations);
  FinStructure skeleton(signature, universe, std::vector<std::vector<FinStructure::Tuple>>(
                                                 signature.size()));
  std::vector<std::vector<FinStructure::Tuple>> tables(signature.size());
  for (const auto& [name, tuples] : rel_lines) {
    const auto r = signature.index_of(name);
    require(r.has_value(), errc::parse_error, where + ": relation '" + name + "' not declared");
    for (const auto& tuple : tuples) {
      FinStructure::Tuple t;
      for (const auto& point : tuple) {
        const auto idx = skeleton.index_of(point);
        require(idx.has_value(), errc::parse_error,
                where + ": point '" + point + "' not in the universe");
        t.push_back(static_cast<std::uint8_t>(*idx));
      }
      tables[*r].push_back(std::move(t));
    }
  }
  return FinStructure(std::move(signature), skeleton.universe(), std::move(tables));
}

inline std::string format_structure(const FinStructure& s) {
  std::ostringstream out;
  out << "signature:";
  for (std::size_t r = 0; r < s.signature().size(); ++r)
    out << (r ? ", " : " ") << s.signature().relation(r).name << "/"
        << s.signature().relation(r).arity;
  out << "\n";
  out << "universe:";
  for (const auto& p : s.universe()) out << " " << p;
  out << "\n";
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    out << "rel " << s.signature().relation(r).name << ":";
    for (const auto& t : s.table(r)) {
      out << " (";
      for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << s.point(t[i]);
      out << ")";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace synwb
