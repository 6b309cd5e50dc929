#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "synwb/errors.hpp"
#include "synwb/structure.hpp"

namespace synwb {

/// An embedding as the tuple of target indices the source universe maps to,
/// in source universe order. Embeddings are injective and both preserve and
/// reflect every relation.
using Embedding = std::vector<std::uint8_t>;

/// x after f: (x . f)[i] = x[f[i]]. This is the dual-map action of f on x.
inline Embedding dual_apply(const Embedding& f, const Embedding& x) {
  Embedding out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    require(f[i] < x.size(), errc::level_mismatch, "composition levels do not match");
    out[i] = x[f[i]];
  }
  return out;
}

namespace detail {

// Checks every tuple of already-assigned source points that involves `last`:
// relations must hold on the image exactly when they hold on the source.
inline bool extension_ok(const FinStructure& a, const FinStructure& b,
                         const std::vector<std::uint8_t>& partial, std::size_t assigned,
                         std::size_t last) {
  FinStructure::Tuple src, img;
  for (std::size_t r = 0; r < a.signature().size(); ++r) {
    const auto arity = static_cast<std::size_t>(a.signature().relation(r).arity);
    src.assign(arity, 0);
    img.assign(arity, 0);
    // walk all arity-tuples over assigned indices containing `last`
    auto walk = [&](auto&& self, std::size_t pos, bool seen_last) -> bool {
      if (pos == arity) {
        if (!seen_last) return true;
        return a.holds(r, src) == b.holds(r, img);
      }
      for (std::size_t i = 0; i < assigned; ++i) {
        src[pos] = static_cast<std::uint8_t>(i);
        img[pos] = partial[i];
        if (!self(self, pos + 1, seen_last || i == last)) return false;
      }
      return true;
    };
    if (!walk(walk, 0, false)) return false;
  }
  return true;
}

}  // namespace detail

/// All embeddings of one structure into another, in lexicographic order of
/// the image tuple. The order is frozen: level-set bit indices depend on it.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(std::size_t source_size, std::size_t target_size, std::vector<Embedding> maps)
      : source_size_(source_size), target_size_(target_size), maps_(std::move(maps)) {}

  std::size_t size() const { return maps_.size(); }
  std::size_t source_size() const { return source_size_; }
  std::size_t target_size() const { return target_size_; }
  const Embedding& at(std::size_t i) const { return maps_[i]; }
  const std::vector<Embedding>& maps() const { return maps_; }

  std::size_t index_of(const Embedding& e) const {
    const auto it = std::lower_bound(maps_.begin(), maps_.end(), e);
    require(it != maps_.end() && *it == e, errc::not_found, "embedding not in the table");
    return static_cast<std::size_t>(it - maps_.begin());
  }

  bool contains(const Embedding& e) const {
    return std::binary_search(maps_.begin(), maps_.end(), e);
  }

 private:
  std::size_t source_size_ = 0;
  std::size_t target_size_ = 0;
  std::vector<Embedding> maps_;
};

inline EmbeddingTable enumerate_embeddings(const FinStructure& a, const FinStructure& b) {
  require(a.signature() == b.signature(), errc::signature_mismatch,
          "structures over different signatures");
  require(a.size() <= b.size(), errc::precondition, "source larger than target");

  std::vector<Embedding> maps;
  std::vector<std::uint8_t> partial(a.size());
  std::vector<bool> used(b.size(), false);
  auto extend = [&](auto&& self, std::size_t k) -> void {
    if (k == a.size()) {
      maps.push_back(partial);
      return;
    }
    for (std::size_t t = 0; t < b.size(); ++t) {
      if (used[t]) continue;
      partial[k] = static_cast<std::uint8_t>(t);
      if (detail::extension_ok(a, b, partial, k + 1, k)) {
        used[t] = true;
        self(self, k + 1);
        used[t] = false;
      }
    }
  };
  extend(extend, 0);
  return EmbeddingTable(a.size(), b.size(), std::move(maps));
}

}  // namespace synwb
