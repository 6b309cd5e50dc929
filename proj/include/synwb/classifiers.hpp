#pragma once

// Horizon-bounded classifiers for subsets of Emb(A_m, A_N).
//
// Every verdict is relative to its stated parameters: a witness is genuine
// evidence at its level, while a refutation is exhaustive only over
// embeddings landing inside A_N. All searches walk the canonical embedding
// order and return the first witness found.

#include <optional>
#include <string>
#include <vector>

#include "synwb/errors.hpp"
#include "synwb/exhaustion.hpp"
#include "synwb/levelset.hpp"

namespace synwb {

namespace detail {

/// Whether the level-n block of x (all x . e for e in Emb(A_m, A_n)) lies in T.
inline bool block_inside(const Workspace& ws, const LevelSet& t, int n, std::size_t x) {
  const auto& comp = ws.comp(t.level(), n, t.horizon());
  for (std::uint32_t idx : comp[x])
    if (!t.test(idx)) return false;
  return true;
}

/// Whether the level-n block of x meets S.
inline bool block_meets(const Workspace& ws, const LevelSet& s, int n, std::size_t x) {
  const auto& comp = ws.comp(s.level(), n, s.horizon());
  for (std::uint32_t idx : comp[x])
    if (s.test(idx)) return true;
  return false;
}

inline void check_level_range(const LevelSet& s, int n) {
  require(n >= s.level() && n <= s.horizon(), errc::level_out_of_range,
          "level " + std::to_string(n) + " outside [" + std::to_string(s.level()) + ", " +
              std::to_string(s.horizon()) + "]");
}

}  // namespace detail

/// First x in Emb(A_n, A_N) whose whole level-n block lies in T, or nullopt
/// after exhausting Emb(A_n, A_N).
inline std::optional<std::size_t> is_thick_at(const Workspace& ws, const LevelSet& t, int n) {
  check_level_set(ws, t);
  detail::check_level_range(t, n);
  const std::size_t blocks = ws.table(n, t.horizon()).size();
  for (std::size_t x = 0; x < blocks; ++x)
    if (detail::block_inside(ws, t, n, x)) return x;
  return std::nullopt;
}

struct ThickLevel {
  int level = 0;
  std::optional<std::size_t> witness;  // nullopt: refuted exhaustively at this level
};

struct ThickVerdict {
  int base_level = 0;
  int horizon = 0;
  int n_max = 0;
  std::vector<ThickLevel> levels;  // base_level upward, stopping at the first refutation

  bool certified() const {
    return !levels.empty() && levels.back().level == n_max && levels.back().witness.has_value();
  }

  std::optional<int> refuted_at() const {
    if (levels.empty() || levels.back().witness.has_value()) return std::nullopt;
    return levels.back().level;
  }

  std::optional<std::size_t> witness_at(int n) const {
    for (const auto& l : levels)
      if (l.level == n) return l.witness;
    return std::nullopt;
  }
};

/// Witnesses per level through n_max; stops at the first level that refutes.
/// A witness at level n restricts to witnesses at all lower levels, so the
/// first refutation settles every higher level as well.
inline ThickVerdict is_thick_up_to(const Workspace& ws, const LevelSet& t, int n_max) {
  check_level_set(ws, t);
  detail::check_level_range(t, n_max);
  ThickVerdict v{t.level(), t.horizon(), n_max, {}};
  for (int n = t.level(); n <= n_max; ++n) {
    const auto w = is_thick_at(ws, t, n);
    v.levels.push_back({n, w});
    if (!w) break;
  }
  return v;
}

struct SyndeticVerdict {
  int base_level = 0;
  int horizon = 0;
  int n_max = 0;
  std::optional<int> certified_at;  // least n whose every block meets the set
  ThickVerdict complement;          // thickness evidence for the complement

  bool certified() const { return certified_at.has_value(); }

  /// A block avoiding the set at the deepest uncertified level, when any.
  std::optional<std::size_t> failing_block() const {
    std::optional<std::size_t> out;
    for (const auto& l : complement.levels)
      if (l.witness) out = l.witness;
    return out;
  }
};

/// Least n <= n_max at which every x in Emb(A_n, A_N) meets S on its block;
/// refutation means the complement is thick through n_max.
inline SyndeticVerdict is_syndetic_up_to(const Workspace& ws, const LevelSet& s, int n_max) {
  check_level_set(ws, s);
  detail::check_level_range(s, n_max);
  SyndeticVerdict v{s.level(), s.horizon(), n_max, std::nullopt, {}};
  v.complement = is_thick_up_to(ws, s.complement(), n_max);
  v.certified_at = v.complement.refuted_at();
  return v;
}

// --------------------------------------------------------------------------
// Piecewise syndetic certificates.

/// Certifies P as syndetic at `inner_level` inside the block of `block`:
/// for every x in Emb(A_inner, A_block_level), P meets block . x . Emb(A_m, A_inner).
struct PwsCertificate {
  int base_level = 0;
  int horizon = 0;
  int inner_level = 0;
  int block_level = 0;
  std::size_t block = 0;  // canonical index in Emb(A_block_level, A_N)
};

inline bool validate_pws_certificate(const Workspace& ws, const LevelSet& p,
                                     const PwsCertificate& cert) {
  check_level_set(ws, p);
  if (cert.base_level != p.level() || cert.horizon != p.horizon()) return false;
  if (cert.inner_level < p.level() || cert.inner_level > cert.block_level ||
      cert.block_level > p.horizon())
    return false;
  if (cert.block >= ws.table(cert.block_level, p.horizon()).size()) return false;
  const auto& inner_blocks = ws.comp(cert.inner_level, cert.block_level, p.horizon());
  for (std::uint32_t y : inner_blocks[cert.block])
    if (!detail::block_meets(ws, p, cert.inner_level, y)) return false;
  return true;
}

struct PwsResult {
  int base_level = 0;
  int horizon = 0;
  int inner_max = 0;
  int block_level = 0;
  std::optional<PwsCertificate> certificate;
  // refutation: exhaustive over all blocks at block_level for all inner
  // levels up to inner_max

  bool certified() const { return certificate.has_value(); }
};

/// Searches inner levels m..inner_max (stronger certificates first) and all
/// blocks at block_level in canonical order.
inline PwsResult is_pws(const Workspace& ws, const LevelSet& p, int inner_max, int block_level) {
  check_level_set(ws, p);
  detail::check_level_range(p, inner_max);
  require(block_level >= inner_max && block_level <= p.horizon(), errc::level_out_of_range,
          "block level must lie between the inner level and the horizon");
  PwsResult r{p.level(), p.horizon(), inner_max, block_level, std::nullopt};
  const std::size_t blocks = ws.table(block_level, p.horizon()).size();
  for (int inner = p.level(); inner <= inner_max; ++inner) {
    for (std::size_t z = 0; z < blocks; ++z) {
      PwsCertificate cert{p.level(), p.horizon(), inner, block_level, z};
      if (validate_pws_certificate(ws, p, cert)) {
        r.certificate = cert;
        return r;
      }
    }
  }
  return r;
}

/// Whether P destroys T at level n: T is thick-certified there but T\P is not.
inline bool destroys(const Workspace& ws, const LevelSet& p, const LevelSet& t, int n) {
  check_level_set(ws, p);
  require(p.level() == t.level() && p.horizon() == t.horizon(), errc::level_mismatch,
          "sets live at different levels or horizons");
  require(is_thick_at(ws, t, n).has_value(), errc::precondition,
          "T is not thick-certified at level " + std::to_string(n));
  return !is_thick_at(ws, t.minus(p), n).has_value();
}

// --------------------------------------------------------------------------
// Decomposition of a certified piecewise syndetic set as S n T.

struct Decomposition {
  LevelSet syndetic_part;
  LevelSet thick_part;
  int n_max = 0;
  int block_level = 0;
  ThickVerdict thick_verdict;          // for thick_part, through n_max
  SyndeticVerdict syndetic_verdict;    // for syndetic_part, certifies by construction
};

namespace detail {

inline bool decomposition_fits(const Workspace& ws, const LevelSet& p, const LevelSet& t,
                               int n_max) {
  if (!p.subset_of(t)) return false;
  if (!is_thick_up_to(ws, t, n_max).certified()) return false;
  return !is_thick_at(ws, t.minus(p), n_max).has_value();
}

}  // namespace detail

/// Finds thick T containing P with T\P thickness-refuted at n_max, and sets
/// S = P u (complement of T); then P = S n T exactly. Candidates are tried in
/// order: P itself, P joined with a certificate block, then exhaustive
/// search when the level population is small.
inline Decomposition decompose(const Workspace& ws, const LevelSet& p, int n_max,
                               int block_level) {
  check_level_set(ws, p);
  detail::check_level_range(p, n_max);
  const PwsResult pws = is_pws(ws, p, n_max, block_level);
  require(pws.certified(), errc::precondition,
          "P carries no certificate at these parameters; decompose needs one");

  std::optional<LevelSet> found;

  if (detail::decomposition_fits(ws, p, p, n_max)) found = p;

  if (!found) {
    // blocks from every certificate at these parameters, canonical order
    const std::size_t blocks = ws.table(block_level, p.horizon()).size();
    for (int inner = p.level(); inner <= n_max && !found; ++inner) {
      for (std::size_t z = 0; z < blocks && !found; ++z) {
        PwsCertificate cert{p.level(), p.horizon(), inner, block_level, z};
        if (!validate_pws_certificate(ws, p, cert)) continue;
        LevelSet t = p;
        const auto& comp = ws.comp(p.level(), block_level, p.horizon());
        for (std::uint32_t idx : comp[z]) t.set(idx);
        if (detail::decomposition_fits(ws, p, t, n_max)) found = t;
      }
    }
  }

  if (!found && p.population() <= 20) {
    const std::size_t free_bits = p.population() - p.count();
    std::vector<std::size_t> free_idx;
    for (std::size_t i = 0; i < p.population(); ++i)
      if (!p.test(i)) free_idx.push_back(i);
    for (std::uint32_t add = 0; add < (std::uint32_t{1} << free_bits) && !found; ++add) {
      LevelSet t = p;
      for (std::size_t b = 0; b < free_idx.size(); ++b)
        if (add & (std::uint32_t{1} << b)) t.set(free_idx[b]);
      if (detail::decomposition_fits(ws, p, t, n_max)) found = t;
    }
  }

  require(found.has_value(), errc::not_found,
          "no witnessing thick set within these horizon parameters");

  const LevelSet& t = *found;
  LevelSet s = p | t.complement();
  Decomposition d{s, t, n_max, block_level, is_thick_up_to(ws, t, n_max),
                  is_syndetic_up_to(ws, s, n_max)};
  require((s & t) == p, errc::precondition, "decomposition is not exact");
  return d;
}

// --------------------------------------------------------------------------
// Partition splitting of certified sets.

struct SplitResult {
  int index = 0;  // 1 or 2
  PwsCertificate certificate;
};

/// Given a certificate for P1 u P2, certifies one part. Either the original
/// block already works for P1, or some inner block of it misses P1 entirely
/// and therefore certifies P2 at a (possibly) smaller block level.
inline SplitResult split_pws(const Workspace& ws, const LevelSet& p1, const LevelSet& p2,
                             const PwsCertificate& cert) {
  check_level_set(ws, p1);
  check_level_set(ws, p2);
  const LevelSet both = p1 | p2;
  require(validate_pws_certificate(ws, both, cert), errc::precondition,
          "certificate does not validate for the union");

  if (validate_pws_certificate(ws, p1, cert)) return {1, cert};

  const int n = cert.inner_level;
  const auto& inner_blocks = ws.comp(n, cert.block_level, both.horizon());
  for (std::uint32_t y : inner_blocks[cert.block]) {
    if (detail::block_meets(ws, p1, n, y)) continue;
    PwsCertificate descended{both.level(), both.horizon(), n, n, y};
    if (validate_pws_certificate(ws, p2, descended)) return {2, descended};
  }
  fail(errc::descent_exhausted,
       "neither part certifies inside the block; the block level is too small");
}

// --------------------------------------------------------------------------
// Thick carving.

/// A thick set inside T \ W, assembled from a level-`inner` block that avoids
/// W inside one of T's witness blocks. Preconditions: T thick-certified at
/// block_level, W refuted at (inner, block_level).
inline LevelSet carve_thick(const Workspace& ws, const LevelSet& t, const LevelSet& w, int inner,
                            int block_level) {
  check_level_set(ws, t);
  check_level_set(ws, w);
  require(t.level() == w.level() && t.horizon() == w.horizon(), errc::level_mismatch,
          "sets live at different levels or horizons");
  require(is_thick_at(ws, t, block_level).has_value(), errc::precondition,
          "T is not thick-certified at the block level");
  require(!is_pws(ws, w, inner, block_level).certified(), errc::precondition,
          "W is not refuted at these parameters");

  const std::size_t blocks = ws.table(block_level, t.horizon()).size();
  const auto& inner_blocks = ws.comp(inner, block_level, t.horizon());
  for (std::size_t x = 0; x < blocks; ++x) {
    if (!detail::block_inside(ws, t, block_level, x)) continue;
    // the refutation guarantees some inner block of x misses W
    for (std::uint32_t y : inner_blocks[x]) {
      if (detail::block_meets(ws, w, inner, y)) continue;
      LevelSet u = LevelSet(t.level(), t.horizon(), Bits(t.population()));
      const auto& comp = ws.comp(t.level(), inner, t.horizon());
      for (std::uint32_t idx : comp[y]) u.set(idx);
      return u;
    }
  }
  fail(errc::not_found, "refutation data insufficient at this horizon");
}

// --------------------------------------------------------------------------
// Thickness along a dual map.

struct WitnessTransfer {
  int level = 0;           // level of the converted witness
  std::size_t source = 0;  // witness it was converted from
  std::size_t converted = 0;
  int via_level = 0;  // level the source witness lives at
  bool valid = false;
};

struct ThicknessTransfer {
  ThickVerdict base;    // T at its own level
  ThickVerdict lifted;  // f(T) one level up
  std::vector<WitnessTransfer> to_lifted;
  std::vector<WitnessTransfer> to_base;
  bool consistent = true;
};

namespace detail {

/// Least l in [lo, N] such that every h in Emb(A_m, A_k), included into A_l,
/// factors as x . f for some x in Emb(A_n, A_l).
inline std::optional<int> translation_level(const Workspace& ws, std::size_t f_idx, int m, int n,
                                            int k, int lo, int N) {
  for (int l = lo; l <= N; ++l) {
    const auto& lift = ws.comp(m, n, l);
    std::vector<bool> hit(ws.table(m, l).size(), false);
    for (std::size_t x = 0; x < lift.size(); ++x) hit[lift[x][f_idx]] = true;
    const auto& incl = ws.comp(m, k, l);
    const std::size_t incl_idx = ws.inclusion_index(k, l);
    bool all = true;
    for (std::uint32_t target : incl[incl_idx])
      if (!hit[target]) {
        all = false;
        break;
      }
    if (all) return l;
  }
  return std::nullopt;
}

}  // namespace detail

/// Verdicts for T and for f(T) through n_max, with witnesses converted across
/// the map in both directions. A T-witness at level k >= n is reused verbatim
/// for f(T); an f(T)-witness is pulled back to a T-witness at level k through
/// the least level at which f's dual map covers Emb(A_m, A_k).
inline ThicknessTransfer pushforward_thickness(const Workspace& ws, const Embedding& f, int m,
                                               int n, const LevelSet& t, int n_max) {
  check_level_set(ws, t);
  require(t.level() == m, errc::level_mismatch, "set lives at a different level than f's source");
  require(n_max >= n, errc::level_out_of_range, "n_max below f's target level");
  const int N = t.horizon();
  const std::size_t f_idx = ws.table(m, n).index_of(f);

  ThicknessTransfer out;
  const LevelSet lifted = lift_set(ws, f, m, n, t);
  out.base = is_thick_up_to(ws, t, n_max);
  out.lifted = is_thick_up_to(ws, lifted, n_max);

  // easy direction: a T-witness block at level k >= n is an f(T)-witness block
  for (int k = n; k <= n_max; ++k) {
    const auto w = out.base.witness_at(k);
    if (!w) continue;
    bool valid = detail::block_inside(ws, lifted, k, *w);
    out.to_lifted.push_back({k, *w, *w, k, valid});
    out.consistent = out.consistent && valid && out.lifted.witness_at(k).has_value();
  }

  // translated direction: pull an f(T)-witness down to a T-witness at k
  for (int k = m; k <= n_max; ++k) {
    const auto l = detail::translation_level(ws, f_idx, m, n, k, std::max(k, n), N);
    if (!l) fail(errc::horizon_exhausted, "translation level for level " + std::to_string(k) +
                                              " exceeds the horizon");
    const auto w = is_thick_at(ws, lifted, *l);
    if (!w) continue;
    const std::size_t pulled = ws.comp(k, *l, N)[*w][ws.inclusion_index(k, *l)];
    const bool valid = detail::block_inside(ws, t, k, pulled);
    out.to_base.push_back({k, *w, pulled, *l, valid});
    out.consistent = out.consistent && valid && out.base.witness_at(k).has_value();
  }
  return out;
}

}  // namespace synwb
