#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "synwb/errors.hpp"

namespace synwb {

/// Subsets of a ground set, encoded as bitmasks against the atom order.
using Subset = std::uint32_t;

inline int subset_size(Subset a) { return std::popcount(a); }
inline bool subset_leq(Subset a, Subset b) { return (a & ~b) == 0; }

/// A small ordered set of named atoms. The atom order fixes the bitmask
/// encoding of subsets, so it is part of the value.
class GroundSet {
 public:
  static constexpr std::size_t kMaxAtoms = 16;

  explicit GroundSet(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
    require(!atoms_.empty(), errc::empty_list, "ground set needs at least one atom");
    require(atoms_.size() <= kMaxAtoms, errc::ground_too_large,
            "ground set larger than " + std::to_string(kMaxAtoms) + " atoms");
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      for (std::size_t j = i + 1; j < atoms_.size(); ++j)
        require(atoms_[i] != atoms_[j], errc::precondition, "duplicate atom '" + atoms_[i] + "'");
  }

  /// Atoms named "1".."n".
  static GroundSet numbered(std::size_t n) {
    std::vector<std::string> atoms;
    for (std::size_t i = 1; i <= n; ++i) atoms.push_back(std::to_string(i));
    return GroundSet(std::move(atoms));
  }

  std::size_t size() const { return atoms_.size(); }
  const std::string& atom(std::size_t i) const { return atoms_[i]; }
  const std::vector<std::string>& atoms() const { return atoms_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (atoms_[i] == name) return i;
    return std::nullopt;
  }

  Subset full_mask() const { return static_cast<Subset>((1u << atoms_.size()) - 1); }

  std::string format_subset(Subset a) const {
    std::string out;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (!(a & (Subset{1} << i))) continue;
      if (!out.empty()) out += ",";
      out += atoms_[i];
    }
    return out.empty() ? "{}" : out;
  }

  bool operator==(const GroundSet&) const = default;

 private:
  std::vector<std::string> atoms_;
};

/// Upward closed, non-trivial collection of subsets of a ground set, stored
/// by the antichain of its minimal members. The whole ground set is always a
/// member and the empty set never is.
class Family {
 public:
  static Family from_minimals(GroundSet ground, std::vector<Subset> generators) {
    require(!generators.empty(), errc::empty_list, "no generators given");
    const Subset full = ground.full_mask();
    for (Subset g : generators) {
      require(g != 0, errc::empty_generator, "the empty set cannot generate a family");
      require(subset_leq(g, full), errc::precondition, "generator outside the ground set");
    }
    return Family(std::move(ground), reduce_antichain(std::move(generators)));
  }

  const GroundSet& ground() const { return ground_; }
  const std::vector<Subset>& minimals() const { return minimals_; }

  bool member(Subset a) const {
    require(subset_leq(a, ground_.full_mask()), errc::precondition, "subset outside the ground set");
    for (Subset m : minimals_)
      if (subset_leq(m, a)) return true;
    return false;
  }

  /// Collection containment: every member of *this is a member of other.
  bool subfamily_of(const Family& other) const {
    require(ground_ == other.ground_, errc::ground_mismatch, "families on different ground sets");
    return std::all_of(minimals_.begin(), minimals_.end(),
                       [&](Subset m) { return other.member(m); });
  }

  bool operator==(const Family&) const = default;

  /// Sorts ascending and drops supersets; the result is the canonical antichain.
  static std::vector<Subset> reduce_antichain(std::vector<Subset> sets) {
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    std::vector<Subset> out;
    for (Subset a : sets) {
      bool dominated = false;
      for (Subset b : sets) {
        if (b != a && subset_leq(b, a)) {
          dominated = true;
          break;
        }
      }
      if (!dominated) out.push_back(a);
    }
    return out;
  }

 private:
  Family(GroundSet ground, std::vector<Subset> minimals)
      : ground_(std::move(ground)), minimals_(std::move(minimals)) {}

  GroundSet ground_;
  std::vector<Subset> minimals_;
};

inline Family family_from_minimals(const GroundSet& ground, const std::vector<Subset>& sets) {
  return Family::from_minimals(ground, sets);
}

inline bool is_member(const Family& family, Subset a) { return family.member(a); }

/// A filter on a finite ground set is the up-closure of a single base set.
class SFilter {
 public:
  SFilter(GroundSet ground, Subset base) : ground_(std::move(ground)), base_(base) {
    require(base_ != 0, errc::empty_generator, "filter base must be non-empty");
    require(subset_leq(base_, ground_.full_mask()), errc::precondition,
            "filter base outside the ground set");
  }

  const GroundSet& ground() const { return ground_; }
  Subset base() const { return base_; }
  bool contains(Subset a) const { return subset_leq(base_, a); }

  bool operator==(const SFilter&) const = default;

 private:
  GroundSet ground_;
  Subset base_;
};

/// Total surjection between two ground sets, given as an index table.
class SurjectionMap {
 public:
  SurjectionMap(GroundSet source, GroundSet target, std::vector<std::size_t> table)
      : source_(std::move(source)), target_(std::move(target)), table_(std::move(table)) {
    require(table_.size() == source_.size(), errc::precondition, "assignment must be total");
    fibers_.assign(target_.size(), 0);
    for (std::size_t i = 0; i < table_.size(); ++i) {
      require(table_[i] < target_.size(), errc::precondition, "assignment target out of range");
      fibers_[table_[i]] |= Subset{1} << i;
    }
    for (std::size_t j = 0; j < target_.size(); ++j)
      require(fibers_[j] != 0, errc::precondition,
              "assignment not surjective: '" + target_.atom(j) + "' is never hit");
  }

  static SurjectionMap identity(const GroundSet& g) {
    std::vector<std::size_t> table(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) table[i] = i;
    return SurjectionMap(g, g, std::move(table));
  }

  const GroundSet& source() const { return source_; }
  const GroundSet& target() const { return target_; }
  std::size_t apply(std::size_t source_index) const { return table_[source_index]; }

  Subset image(Subset a) const {
    Subset out = 0;
    for (std::size_t i = 0; i < table_.size(); ++i)
      if (a & (Subset{1} << i)) out |= Subset{1} << table_[i];
    return out;
  }

  Subset preimage(Subset b) const {
    Subset out = 0;
    for (std::size_t j = 0; j < fibers_.size(); ++j)
      if (b & (Subset{1} << j)) out |= fibers_[j];
    return out;
  }

  /// Union of the fibers meeting a.
  Subset saturate(Subset a) const { return preimage(image(a)); }

  bool operator==(const SurjectionMap&) const = default;

 private:
  GroundSet source_;
  GroundSet target_;
  std::vector<std::size_t> table_;
  std::vector<Subset> fibers_;
};

namespace detail {

/// Builds a family from a membership predicate over all subsets of the ground
/// set, extracting the minimal members. The predicate must be upward closed.
template <class Pred>
Family family_from_predicate(const GroundSet& ground, Pred&& member) {
  const Subset full = ground.full_mask();
  std::vector<Subset> minimals;
  for (Subset a = 1; a <= full; ++a) {
    if (!member(a)) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < ground.size() && minimal; ++i) {
      const Subset without = a & ~(Subset{1} << i);
      if (without != a && without != 0 && member(without)) minimal = false;
    }
    // a one-element member is minimal unless the predicate accepts the empty set,
    // which family validity rules out
    if (minimal) minimals.push_back(a);
  }
  return Family::from_minimals(ground, minimals);
}

}  // namespace detail

/// f(S) = {B : f^{-1}(B) in S}.
inline Family pushforward_family(const SurjectionMap& map, const Family& family) {
  require(map.source() == family.ground(), errc::ground_mismatch,
          "map source differs from the family's ground set");
  return detail::family_from_predicate(
      map.target(), [&](Subset b) { return family.member(map.preimage(b)); });
}

/// The maximal filters contained in the family: on a finite ground set these
/// are exactly the up-closures of the minimal members.
inline std::vector<SFilter> enumerate_s_ultrafilters(const Family& family) {
  std::vector<SFilter> out;
  out.reserve(family.minimals().size());
  for (Subset m : family.minimals()) out.emplace_back(family.ground(), m);
  return out;
}

inline SFilter pushforward_filter(const SurjectionMap& map, const SFilter& filter) {
  require(map.source() == filter.ground(), errc::ground_mismatch,
          "map source differs from the filter's ground set");
  return SFilter(map.target(), map.image(filter.base()));
}

/// Strong: whenever A is a non-member, so is the saturation of A.
inline bool is_strong(const SurjectionMap& map, const Family& family) {
  require(map.source() == family.ground(), errc::ground_mismatch,
          "map source differs from the family's ground set");
  const Subset full = family.ground().full_mask();
  for (Subset a = 0; a <= full; ++a) {
    if (a != 0 && family.member(a)) continue;
    const Subset sat = map.saturate(a);
    if (sat != 0 && family.member(sat)) return false;
  }
  return true;
}

/// Regular: the pushforward of every ultrafilter on the family is an
/// ultrafilter on the pushforward family.
inline bool is_regular(const SurjectionMap& map, const Family& family) {
  const Family image = pushforward_family(map, family);
  const auto& image_minimals = image.minimals();
  for (Subset m : family.minimals()) {
    const Subset pushed = map.image(m);
    if (!std::binary_search(image_minimals.begin(), image_minimals.end(), pushed)) return false;
  }
  return true;
}

/// Least family on the source pushing forward to `target`:
/// {A : the preimage of some member of target is contained in A}.
inline Family phi_min(const SurjectionMap& map, const Family& target) {
  require(map.target() == target.ground(), errc::ground_mismatch,
          "map target differs from the family's ground set");
  std::vector<Subset> generators;
  generators.reserve(target.minimals().size());
  for (Subset b : target.minimals()) generators.push_back(map.preimage(b));
  return Family::from_minimals(map.source(), generators);
}

/// Greatest family on the source pushing forward to `target`: {A : image(A) in target}.
/// The map is always strong for the result.
inline Family phi_max(const SurjectionMap& map, const Family& target) {
  require(map.target() == target.ground(), errc::ground_mismatch,
          "map target differs from the family's ground set");
  return detail::family_from_predicate(
      map.source(), [&](Subset a) { return target.member(map.image(a)); });
}

/// Conservativity of `outer` over `inner` (inner must be a subfamily).
///
/// For p an ultrafilter on `outer` with base M, the trace collection
/// {A : M subset A} ∩ inner is upward closed; it is an ultrafilter on `inner`
/// exactly when one of its maximal filters is generated by an ultrafilter
/// base of `inner`, which happens iff some minimal member of `inner`
/// contains M. Traces are never empty here since the full set belongs to
/// every family, but the guard is kept as a checked error.
inline bool is_conservative(const Family& inner, const Family& outer) {
  require(inner.ground() == outer.ground(), errc::ground_mismatch,
          "families on different ground sets");
  require(inner.subfamily_of(outer), errc::not_a_subfamily,
          "first family is not contained in the second");
  for (Subset base : outer.minimals()) {
    require(!inner.minimals().empty(), errc::no_trace, "ultrafilter leaves no trace");
    bool traced = false;
    for (Subset k : inner.minimals()) {
      if (subset_leq(base, k)) {
        traced = true;
        break;
      }
    }
    if (!traced) return false;
  }
  return true;
}

struct DisjointnessResult {
  bool disjoint = true;
  // bases of a meeting pair of distinct ultrafilters, when not disjoint
  Subset first = 0;
  Subset second = 0;
};

/// Whether all pairs of distinct ultrafilters on the family contain disjoint
/// members; for principal ultrafilters this is pairwise disjointness of bases.
inline DisjointnessResult has_disjointness(const Family& family) {
  const auto& mins = family.minimals();
  for (std::size_t i = 0; i < mins.size(); ++i)
    for (std::size_t j = i + 1; j < mins.size(); ++j)
      if (mins[i] & mins[j]) return {false, mins[i], mins[j]};
  return {};
}

// ---------------------------------------------------------------------------
// Exhaustive search harness. Regularity has no known closed characterization;
// these walkers enumerate every family / surjection at desk scale so the
// question can be explored empirically.

template <class Fn>
void for_each_family(const GroundSet& ground, Fn&& fn) {
  const Subset full = ground.full_mask();
  std::vector<Subset> chain;
  // depth-first over antichains of non-empty subsets, in ascending mask order
  auto walk = [&](auto&& self, Subset next) -> void {
    for (Subset a = next; a <= full; ++a) {
      bool comparable = false;
      for (Subset b : chain) {
        if (subset_leq(b, a) || subset_leq(a, b)) {
          comparable = true;
          break;
        }
      }
      if (comparable) continue;
      chain.push_back(a);
      fn(Family::from_minimals(ground, chain));
      self(self, a + 1);
      chain.pop_back();
    }
  };
  walk(walk, 1);
}

inline std::vector<Family> enumerate_families(const GroundSet& ground) {
  std::vector<Family> out;
  for_each_family(ground, [&](const Family& f) { out.push_back(f); });
  return out;
}

template <class Fn>
void for_each_surjection(const GroundSet& source, const GroundSet& target, Fn&& fn) {
  const std::size_t n = source.size(), k = target.size();
  if (k > n) return;
  std::vector<std::size_t> table(n, 0);
  while (true) {
    std::vector<bool> hit(k, false);
    for (auto v : table) hit[v] = true;
    if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }))
      fn(SurjectionMap(source, target, table));
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++table[i] < k) break;
      table[i] = 0;
    }
    if (i == n) break;
  }
}

inline std::vector<SurjectionMap> enumerate_surjections(const GroundSet& source,
                                                        const GroundSet& target) {
  std::vector<SurjectionMap> out;
  for_each_surjection(source, target, [&](const SurjectionMap& m) { out.push_back(m); });
  return out;
}

}  // namespace synwb
