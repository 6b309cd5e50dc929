#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "synwb/embedding.hpp"
#include "synwb/errors.hpp"
#include "synwb/structure.hpp"

namespace synwb {

/// A chain A_1 c A_2 c ... c A_N of finite structures over one signature,
/// each an induced substructure of the next.
class Exhaustion {
 public:
  explicit Exhaustion(std::vector<FinStructure> chain, std::string class_name = "")
      : chain_(std::move(chain)), class_name_(std::move(class_name)) {
    require(!chain_.empty(), errc::precondition, "exhaustion needs at least one level");
    for (std::size_t k = 0; k + 1 < chain_.size(); ++k) {
      const FinStructure& lo = chain_[k];
      const FinStructure& hi = chain_[k + 1];
      require(lo.signature() == hi.signature(), errc::signature_mismatch,
              "levels over different signatures");
      require(lo.size() < hi.size(), errc::precondition, "universes must grow strictly");
      Embedding incl(lo.size());
      for (std::size_t i = 0; i < lo.size(); ++i) {
        const auto idx = hi.index_of(lo.point(i));
        require(idx.has_value(), errc::precondition,
                "point '" + lo.point(i) + "' missing from the next level");
        incl[i] = static_cast<std::uint8_t>(*idx);
      }
      check_induced(lo, hi, incl);
    }
  }

  int depth() const { return static_cast<int>(chain_.size()); }
  const std::string& class_name() const { return class_name_; }

  const FinStructure& level(int n) const {
    require(n >= 1 && n <= depth(), errc::level_out_of_range,
            "level " + std::to_string(n) + " outside 1.." + std::to_string(depth()));
    return chain_[static_cast<std::size_t>(n - 1)];
  }

  /// The inclusion embedding of level m into level n, as an index map.
  Embedding inclusion(int m, int n) const {
    const FinStructure& lo = level(m);
    const FinStructure& hi = level(n);
    Embedding out(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i)
      out[i] = static_cast<std::uint8_t>(*hi.index_of(lo.point(i)));
    return out;
  }

 private:
  static void check_induced(const FinStructure& lo, const FinStructure& hi, const Embedding& incl) {
    FinStructure::Tuple src, img;
    for (std::size_t r = 0; r < lo.signature().size(); ++r) {
      const auto arity = static_cast<std::size_t>(lo.signature().relation(r).arity);
      src.assign(arity, 0);
      img.assign(arity, 0);
      auto walk = [&](auto&& self, std::size_t pos) -> bool {
        if (pos == arity) return lo.holds(r, src) == hi.holds(r, img);
        for (std::size_t i = 0; i < lo.size(); ++i) {
          src[pos] = static_cast<std::uint8_t>(i);
          img[pos] = incl[i];
          if (!self(self, pos + 1)) return false;
        }
        return true;
      };
      require(walk(walk, 0), errc::precondition,
              "relation '" + lo.signature().relation(r).name + "' does not restrict exactly");
    }
  }

  std::vector<FinStructure> chain_;
  std::string class_name_;
};

// --------------------------------------------------------------------------
// Built-in exhaustions.

/// Pure sets: empty signature, level n has points "1".."n".
inline Exhaustion pure_sets(int depth) {
  std::vector<FinStructure> chain;
  for (int n = 1; n <= depth; ++n) {
    std::vector<std::string> universe;
    for (int i = 1; i <= n; ++i) universe.push_back(std::to_string(i));
    chain.emplace_back(RelationalSignature{}, std::move(universe),
                       std::vector<std::vector<FinStructure::Tuple>>{});
  }
  return Exhaustion(std::move(chain), "sets");
}

namespace detail {

/// Chain position of point k in the linear-order exhaustion, as an exact
/// fraction. The first four points sit at 1 < 2 < 3 < 4; later points cycle
/// through the five cuts (below 1, between consecutive integers, above 4),
/// moving deeper into each cut every round. Every cut of every finite level
/// therefore eventually receives points, which is what lets embeddings be
/// absorbed back onto inclusions at a finite level.
inline std::pair<long long, long long> linear_value(int k) {
  if (k <= 4) return {k, 1};
  const int j = k - 5;
  const int cut = j % 5;
  const int round = j / 5;
  if (cut == 4) return {5 + round, 1};
  return {static_cast<long long>(cut) * (round + 2) + 1, round + 2};
}

inline bool linear_less(int a, int b) {
  const auto [p, q] = linear_value(a);
  const auto [r, s] = linear_value(b);
  return p * s < r * q;
}

}  // namespace detail

/// Linear orders: level n is an n-chain on points "1".."n" with the dyadic
/// cut-filling order above.
inline Exhaustion linear_orders(int depth) {
  RelationalSignature sig({{"lt", 2}});
  std::vector<FinStructure> chain;
  for (int n = 1; n <= depth; ++n) {
    std::vector<std::string> universe;
    for (int i = 1; i <= n; ++i) universe.push_back(std::to_string(i));
    std::vector<FinStructure::Tuple> lt;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (i != j && detail::linear_less(i, j))
          lt.push_back({static_cast<std::uint8_t>(i - 1), static_cast<std::uint8_t>(j - 1)});
    chain.emplace_back(sig, std::move(universe),
                       std::vector<std::vector<FinStructure::Tuple>>{std::move(lt)});
  }
  return Exhaustion(std::move(chain), "linear");
}

/// Graphs: vertices "0".."n-1", with i < j adjacent iff bit i of j is set.
/// A concrete deterministic presentation of a random-graph prefix; its levels
/// do not satisfy the extension property exactly, so horizon-bounded
/// operations on it may report HorizonExhausted.
inline Exhaustion bit_graph(int depth) {
  RelationalSignature sig({{"adj", 2}});
  std::vector<FinStructure> chain;
  for (int n = 1; n <= depth; ++n) {
    std::vector<std::string> universe;
    for (int i = 0; i < n; ++i) universe.push_back(std::to_string(i));
    std::vector<FinStructure::Tuple> adj;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if ((j >> i) & 1) {
          adj.push_back({static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j)});
          adj.push_back({static_cast<std::uint8_t>(j), static_cast<std::uint8_t>(i)});
        }
    chain.emplace_back(sig, std::move(universe),
                       std::vector<std::vector<FinStructure::Tuple>>{std::move(adj)});
  }
  return Exhaustion(std::move(chain), "bitgraph");
}

inline Exhaustion built_in_exhaustion(const std::string& name, int depth) {
  if (name == "sets") return pure_sets(depth);
  if (name == "linear") return linear_orders(depth);
  if (name == "bitgraph") return bit_graph(depth);
  fail(errc::not_found, "unknown built-in class '" + name + "'");
}

// --------------------------------------------------------------------------

/// An exhaustion together with memoized embedding tables and composition
/// tables. All queries are const; caches are guarded by a mutex so concurrent
/// readers are safe.
class Workspace {
 public:
  explicit Workspace(Exhaustion exhaustion) : exhaustion_(std::move(exhaustion)) {}

  Workspace(Workspace&& other) noexcept
      : exhaustion_(std::move(other.exhaustion_)),
        tables_(std::move(other.tables_)),
        comps_(std::move(other.comps_)) {}

  const Exhaustion& exhaustion() const { return exhaustion_; }
  int depth() const { return exhaustion_.depth(); }
  const std::string& class_name() const { return exhaustion_.class_name(); }
  const FinStructure& level(int n) const { return exhaustion_.level(n); }

  /// Emb(A_m, A_n) in canonical order.
  const EmbeddingTable& table(int m, int n) const {
    require(m >= 1 && m <= n && n <= depth(), errc::level_out_of_range,
            "embedding table levels out of range");
    std::scoped_lock lock(mu_);
    auto it = tables_.find({m, n});
    if (it == tables_.end())
      it = tables_.emplace(std::make_pair(m, n),
                           enumerate_embeddings(exhaustion_.level(m), exhaustion_.level(n)))
               .first;
    return it->second;
  }

  /// comp(m,n,N)[x][e] = index in Emb(A_m,A_N) of table(n,N)[x] . table(m,n)[e].
  const std::vector<std::vector<std::uint32_t>>& comp(int m, int n, int N) const {
    require(m >= 1 && m <= n && n <= N && N <= depth(), errc::level_out_of_range,
            "composition levels out of range");
    {
      std::scoped_lock lock(mu_);
      auto it = comps_.find({m, n, N});
      if (it != comps_.end()) return it->second;
    }
    const EmbeddingTable& outer = table(n, N);
    const EmbeddingTable& inner = table(m, n);
    const EmbeddingTable& flat = table(m, N);
    std::vector<std::vector<std::uint32_t>> rows(outer.size());
    for (std::size_t x = 0; x < outer.size(); ++x) {
      rows[x].resize(inner.size());
      for (std::size_t e = 0; e < inner.size(); ++e)
        rows[x][e] = static_cast<std::uint32_t>(flat.index_of(dual_apply(inner.at(e), outer.at(x))));
    }
    std::scoped_lock lock(mu_);
    return comps_.emplace(std::make_tuple(m, n, N), std::move(rows)).first->second;
  }

  Embedding inclusion(int m, int n) const { return exhaustion_.inclusion(m, n); }

  std::size_t inclusion_index(int m, int n) const { return table(m, n).index_of(inclusion(m, n)); }

 private:
  Exhaustion exhaustion_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, EmbeddingTable> tables_;
  mutable std::map<std::tuple<int, int, int>, std::vector<std::vector<std::uint32_t>>> comps_;
};

// --------------------------------------------------------------------------
// Amalgamation-style solvers.

struct Absorption {
  int level = 0;   // N with h . f equal to the inclusion of A_m in A_N
  Embedding h;     // element of Emb(A_n, A_N)
};

/// Searches for the least N with some h in Emb(A_n, A_N) satisfying
/// h . f = i^N_m. A miss within the exhaustion means the chain is too short
/// to absorb f, not that no such level exists.
inline Absorption solve_absorption(const Workspace& ws, const Embedding& f, int m, int n) {
  require(ws.table(m, n).contains(f), errc::precondition,
          "f is not an embedding between the given levels");
  for (int N = n; N <= ws.depth(); ++N) {
    const Embedding target = ws.inclusion(m, N);
    for (const Embedding& h : ws.table(n, N).maps())
      if (dual_apply(f, h) == target) return {N, h};
  }
  fail(errc::horizon_exhausted,
       "no absorbing level within the exhaustion (depth " + std::to_string(ws.depth()) + ")");
}

struct DualSurjectivity {
  bool surjective = true;
  std::optional<std::size_t> unhit;  // canonical index in Emb(A_m, A_N) of a missed embedding
};

/// Whether every y in Emb(A_m, A_N) factors as x . f with x in Emb(A_n, A_N).
/// A failure signals the horizon N is too small for this f.
inline DualSurjectivity check_dual_surjective(const Workspace& ws, const Embedding& f, int m,
                                              int n, int N) {
  require(ws.table(m, n).contains(f), errc::precondition,
          "f is not an embedding between the given levels");
  const std::size_t f_idx = ws.table(m, n).index_of(f);
  const auto& comp = ws.comp(m, n, N);
  std::vector<bool> hit(ws.table(m, N).size(), false);
  for (std::size_t x = 0; x < comp.size(); ++x) hit[comp[x][f_idx]] = true;
  for (std::size_t y = 0; y < hit.size(); ++y)
    if (!hit[y]) return {false, y};
  return {};
}

}  // namespace synwb
