#pragma once

// Exact thick / syndetic / piecewise syndetic decisions on the integers for
// ultimately periodic sets, plus the minimal-shift uniformization.
//
// Convention: translating by g on the right is rendered additively as
// subtraction, so the union searched by the uniformization is
// U_i (P - g_i), and its final translate comes back as T + g_1. One
// convention, used everywhere.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "synwb/errors.hpp"

namespace synwb {

/// Ultimately periodic subset of the integers: a periodic pattern of residues
/// plus a finite set of toggled exceptions. Canonical form has the minimal
/// period and a parity-reduced patch, so equal sets compare equal.
class UPSet {
 public:
  static constexpr int kMaxPeriod = 64;

  UPSet(int period, std::uint64_t pattern, std::vector<long long> patch = {})
      : period_(period), pattern_(pattern), patch_(std::move(patch)) {
    require(period_ >= 1, errc::precondition, "period must be positive");
    require(period_ <= kMaxPeriod, errc::precondition,
            "period larger than " + std::to_string(kMaxPeriod));
    pattern_ &= mask(period_);
    canonicalize();
  }

  static UPSet integers() { return UPSet(1, 1); }
  static UPSet nothing() { return UPSet(1, 0); }

  int period() const { return period_; }
  std::uint64_t pattern() const { return pattern_; }
  const std::vector<long long>& patch() const { return patch_; }

  bool pattern_bit(long long x) const {
    const int r = static_cast<int>(((x % period_) + period_) % period_);
    return (pattern_ >> r) & 1;
  }

  bool contains(long long x) const {
    return pattern_bit(x) ^ std::binary_search(patch_.begin(), patch_.end(), x);
  }

  bool pattern_full() const { return pattern_ == mask(period_); }
  bool pattern_empty() const { return pattern_ == 0; }

  UPSet complement() const { return UPSet(period_, ~pattern_ & mask(period_), patch_); }

  /// P + g = {x : x - g in P}.
  UPSet shift(long long g) const {
    std::uint64_t pattern = 0;
    for (int r = 0; r < period_; ++r)
      if (pattern_bit(r - g)) pattern |= std::uint64_t{1} << r;
    std::vector<long long> patch;
    patch.reserve(patch_.size());
    for (long long x : patch_) patch.push_back(x + g);
    return UPSet(period_, pattern, std::move(patch));
  }

  friend UPSet combine(const UPSet& a, const UPSet& b, bool (*op)(bool, bool)) {
    const long long p = std::lcm<long long>(a.period_, b.period_);
    require(p <= kMaxPeriod, errc::precondition, "combined period exceeds the cap");
    std::uint64_t pattern = 0;
    for (long long r = 0; r < p; ++r)
      if (op(a.pattern_bit(r), b.pattern_bit(r))) pattern |= std::uint64_t{1} << r;
    std::vector<long long> candidates = a.patch_;
    candidates.insert(candidates.end(), b.patch_.begin(), b.patch_.end());
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::vector<long long> patch;
    for (long long x : candidates) {
      const bool actual = op(a.contains(x), b.contains(x));
      const bool periodic = (pattern >> (((x % p) + p) % p)) & 1;
      if (actual != periodic) patch.push_back(x);
    }
    return UPSet(static_cast<int>(p), pattern, std::move(patch));
  }

  friend UPSet operator|(const UPSet& a, const UPSet& b) {
    return combine(a, b, [](bool x, bool y) { return x || y; });
  }

  friend UPSet operator&(const UPSet& a, const UPSet& b) {
    return combine(a, b, [](bool x, bool y) { return x && y; });
  }

  bool operator==(const UPSet&) const = default;

 private:
  static std::uint64_t mask(int p) {
    return p == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << p) - 1;
  }

  void canonicalize() {
    std::sort(patch_.begin(), patch_.end());
    // toggling a point twice cancels
    std::vector<long long> reduced;
    for (std::size_t i = 0; i < patch_.size();) {
      std::size_t j = i;
      while (j < patch_.size() && patch_[j] == patch_[i]) ++j;
      if ((j - i) % 2 == 1) reduced.push_back(patch_[i]);
      i = j;
    }
    patch_ = std::move(reduced);
    for (int d = 1; d < period_; ++d) {
      if (period_ % d != 0) continue;
      bool periodic = true;
      for (int r = 0; r < period_ && periodic; ++r)
        periodic = ((pattern_ >> r) & 1) == ((pattern_ >> (r % d)) & 1);
      if (periodic) {
        period_ = d;
        pattern_ &= mask(d);
        return;
      }
    }
  }

  int period_;
  std::uint64_t pattern_;
  std::vector<long long> patch_;
};

struct UPVerdicts {
  bool thick = false;
  bool syndetic = false;
  bool pws = false;
};

/// Exact classification. A finite patch never changes any verdict: thickness
/// needs arbitrarily long runs, which only the periodic part can supply, and
/// dually for the other two.
inline UPVerdicts classify_up(const UPSet& a) {
  return {a.pattern_full(), !a.pattern_empty(), !a.pattern_empty()};
}

// --------------------------------------------------------------------------
// Window truncations.

/// Explicit membership on the symmetric window [-W, W].
class WindowSet {
 public:
  explicit WindowSet(long long bound) : bound_(bound), bits_(2 * bound + 1, false) {
    require(bound_ >= 1, errc::precondition, "window bound must be at least 1");
  }

  static WindowSet from(const UPSet& u, long long bound) {
    WindowSet w(bound);
    for (long long x = -bound; x <= bound; ++x) w.set(x, u.contains(x));
    return w;
  }

  long long bound() const { return bound_; }
  bool contains(long long x) const { return bits_[static_cast<std::size_t>(x + bound_)]; }
  void set(long long x, bool value = true) { bits_[static_cast<std::size_t>(x + bound_)] = value; }

  WindowSet complement() const {
    WindowSet w(bound_);
    for (long long x = -bound_; x <= bound_; ++x) w.set(x, !contains(x));
    return w;
  }

  std::string dump01() const {
    std::string out;
    out.reserve(bits_.size());
    for (bool b : bits_) out.push_back(b ? '1' : '0');
    return out;
  }

 private:
  long long bound_;
  std::vector<bool> bits_;
};

/// Whether the window holds a run of run_length consecutive members. Both the
/// direct run scan and the shifted-intersection reading of the finite
/// intersection property are evaluated and must agree.
inline bool window_thick(const WindowSet& a, long long run_length) {
  require(run_length >= 1 && run_length <= 2 * a.bound(), errc::window_too_small,
          "run length must fit inside the window");
  bool by_runs = false;
  long long run = 0;
  for (long long x = -a.bound(); x <= a.bound(); ++x) {
    run = a.contains(x) ? run + 1 : 0;
    if (run >= run_length) {
      by_runs = true;
      break;
    }
  }
  bool by_fip = false;
  for (long long x = -a.bound(); x + run_length - 1 <= a.bound() && !by_fip; ++x) {
    bool all = true;
    for (long long g = 0; g < run_length && all; ++g) all = a.contains(x + g);
    by_fip = all;
  }
  require(by_runs == by_fip, errc::precondition, "run scan and intersection scan disagree");
  return by_runs;
}

// --------------------------------------------------------------------------
// Uniformization.

struct PsiResult {
  int k = 0;                      // minimal number of shifts
  std::vector<long long> shifts;  // the lexicographically least witnessing tuple
  UPSet thick_union;              // union of P - g over the shifts
  UPSet psi;                      // thick_union + first shift

  PsiResult() : thick_union(UPSet::nothing()), psi(UPSet::nothing()) {}
};

/// Minimal k and lexicographically least residue tuple g_1 < ... < g_k with
/// U_i (P - g_i) thick; unions of shifted patterns depend only on residues,
/// so the search ranges over 0..period-1.
inline PsiResult psi(const UPSet& p) {
  require(classify_up(p).pws, errc::not_pws, "set is not piecewise syndetic");
  const int period = p.period();
  std::vector<UPSet> shifted;
  for (int g = 0; g < period; ++g) shifted.push_back(p.shift(-g));

  for (int k = 1; k <= period; ++k) {
    std::vector<int> tuple(k);
    for (int i = 0; i < k; ++i) tuple[i] = i;
    while (true) {
      UPSet u = shifted[tuple[0]];
      for (int i = 1; i < k; ++i) u = u | shifted[tuple[i]];
      if (classify_up(u).thick) {
        PsiResult r;
        r.k = k;
        for (int g : tuple) r.shifts.push_back(g);
        r.thick_union = u;
        r.psi = u.shift(tuple[0]);
        return r;
      }
      // next k-combination of 0..period-1 in lexicographic order
      int i = k - 1;
      while (i >= 0 && tuple[i] == period - k + i) --i;
      if (i < 0) break;
      ++tuple[i];
      for (int j = i + 1; j < k; ++j) tuple[j] = tuple[j - 1] + 1;
    }
  }
  fail(errc::not_pws, "no shift union is thick");  // unreachable for pws input
}

struct UPDecomposition {
  UPSet syndetic_part;
  UPSet thick_part;
  PsiResult via;

  UPDecomposition() : syndetic_part(UPSet::nothing()), thick_part(UPSet::nothing()) {}
};

/// P = S n T with T thick and S syndetic, from the minimal shift search.
/// T is translated so the first shift is 0, which keeps P inside T.
inline UPDecomposition decompose_up(const UPSet& p) {
  UPDecomposition d;
  d.via = psi(p);
  d.thick_part = d.via.thick_union.shift(d.via.shifts[0]);
  d.syndetic_part = d.thick_part.complement() | p;
  require(classify_up(d.thick_part).thick, errc::precondition, "thick part is not thick");
  require(classify_up(d.syndetic_part).syndetic, errc::precondition,
          "syndetic part is not syndetic");
  require((d.syndetic_part & d.thick_part) == p, errc::precondition,
          "decomposition is not exact");
  return d;
}

// --------------------------------------------------------------------------
// Literal syntax: period=3 pattern=110 patch=7,-2

inline UPSet parse_upset(const std::vector<std::string>& tokens) {
  int period = 0;
  std::string pattern_text;
  std::vector<long long> patch;
  for (const auto& tok : tokens) {
    const auto eq = tok.find('=');
    require(eq != std::string::npos, errc::parse_error, "expected key=value, got '" + tok + "'");
    const std::string key = tok.substr(0, eq);
    const std::string value = tok.substr(eq + 1);
    if (key == "period") {
      period = std::atoi(value.c_str());
      require(period >= 1, errc::parse_error, "period must be a positive integer");
    } else if (key == "pattern") {
      pattern_text = value;
    } else if (key == "patch") {
      std::istringstream items(value);
      std::string item;
      while (std::getline(items, item, ',')) {
        if (item.empty()) continue;
        try {
          std::size_t pos = 0;
          const std::string digits = item.front() == '+' ? item.substr(1) : item;
          const long long v = std::stoll(digits, &pos);
          require(pos == digits.size(), errc::parse_error, "bad patch entry '" + item + "'");
          patch.push_back(v);
        } catch (const Error&) {
          throw;
        } catch (const std::exception&) {
          fail(errc::parse_error, "bad patch entry '" + item + "'");
        }
      }
    } else {
      fail(errc::parse_error, "unknown key '" + key + "'");
    }
  }
  require(period >= 1, errc::parse_error, "missing period=");
  require(!pattern_text.empty(), errc::parse_error, "missing pattern=");
  require(pattern_text.size() == static_cast<std::size_t>(period), errc::parse_error,
          "pattern length must equal the period");
  std::uint64_t pattern = 0;
  for (int r = 0; r < period; ++r) {
    const char c = pattern_text[static_cast<std::size_t>(r)];
    require(c == '0' || c == '1', errc::parse_error, "pattern must be a 0/1 string");
    if (c == '1') pattern |= std::uint64_t{1} << r;
  }
  return UPSet(period, pattern, std::move(patch));
}

inline std::string format_upset(const UPSet& u) {
  std::ostringstream out;
  out << "period=" << u.period() << " pattern=";
  for (int r = 0; r < u.period(); ++r) out << (((u.pattern() >> r) & 1) ? '1' : '0');
  if (!u.patch().empty()) {
    out << " patch=";
    for (std::size_t i = 0; i < u.patch().size(); ++i) out << (i ? "," : "") << u.patch()[i];
  }
  return out.str();
}

}  // namespace synwb
