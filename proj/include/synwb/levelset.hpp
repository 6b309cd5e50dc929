#pragma once

#include <istream>
#include <sstream>
#include <string>

#include "synwb/bits.hpp"
#include "synwb/errors.hpp"
#include "synwb/exhaustion.hpp"

namespace synwb {

/// A subset of Emb(A_m, A_N), as a bitset over the canonical embedding
/// enumeration at that level and horizon.
class LevelSet {
 public:
  LevelSet(int level, int horizon, Bits bits)
      : level_(level), horizon_(horizon), bits_(std::move(bits)) {
    require(level_ >= 1 && level_ <= horizon_, errc::level_out_of_range,
            "level set needs 1 <= level <= horizon");
  }

  static LevelSet empty(const Workspace& ws, int level, int horizon = 0) {
    if (horizon == 0) horizon = ws.depth();
    return LevelSet(level, horizon, Bits(ws.table(level, horizon).size()));
  }

  static LevelSet full(const Workspace& ws, int level, int horizon = 0) {
    if (horizon == 0) horizon = ws.depth();
    return LevelSet(level, horizon, Bits(ws.table(level, horizon).size(), true));
  }

  int level() const { return level_; }
  int horizon() const { return horizon_; }
  const Bits& bits() const { return bits_; }
  Bits& bits() { return bits_; }

  std::size_t population() const { return bits_.size(); }
  std::size_t count() const { return bits_.count(); }
  bool test(std::size_t i) const { return bits_.test(i); }
  void set(std::size_t i, bool value = true) { bits_.set(i, value); }

  LevelSet complement() const { return LevelSet(level_, horizon_, ~bits_); }

  LevelSet operator|(const LevelSet& o) const { return combined(o, bits_ | check(o).bits_); }
  LevelSet operator&(const LevelSet& o) const { return combined(o, bits_ & check(o).bits_); }
  LevelSet minus(const LevelSet& o) const { return combined(o, bits_.minus(check(o).bits_)); }

  bool subset_of(const LevelSet& o) const { return bits_.subset_of(check(o).bits_); }

  bool operator==(const LevelSet&) const = default;

 private:
  const LevelSet& check(const LevelSet& o) const {
    require(level_ == o.level_ && horizon_ == o.horizon_, errc::level_mismatch,
            "level sets live at different levels or horizons");
    return o;
  }
  LevelSet combined(const LevelSet& o, Bits bits) const {
    check(o);
    return LevelSet(level_, horizon_, std::move(bits));
  }

  int level_;
  int horizon_;
  Bits bits_;
};

/// Validates that a level set indexes the workspace's embedding enumeration.
inline void check_level_set(const Workspace& ws, const LevelSet& s) {
  require(s.horizon() <= ws.depth(), errc::level_out_of_range,
          "level set horizon exceeds the exhaustion depth");
  require(s.population() == ws.table(s.level(), s.horizon()).size(), errc::level_mismatch,
          "level set width does not match the embedding enumeration");
}

/// f(S) = {x : x . f in S}, lifting a level-m set to level n along f.
inline LevelSet lift_set(const Workspace& ws, const Embedding& f, int m, int n,
                         const LevelSet& s) {
  check_level_set(ws, s);
  require(s.level() == m, errc::level_mismatch, "set lives at a different level than f's source");
  const int N = s.horizon();
  require(n <= N, errc::level_out_of_range, "target level beyond the horizon");
  const std::size_t f_idx = ws.table(m, n).index_of(f);
  const auto& comp = ws.comp(m, n, N);
  Bits out(ws.table(n, N).size());
  for (std::size_t x = 0; x < out.size(); ++x)
    if (s.test(comp[x][f_idx])) out.set(x);
  return LevelSet(n, N, std::move(out));
}

// --------------------------------------------------------------------------
// Level-set files:
//   level 1, horizon 4, class linear
//   6
// The second line is the bitset in hex, bit i = canonical embedding index i.

struct LevelSetSpec {
  int level = 1;
  int horizon = 1;
  std::string class_name;
  std::string hex;

  LevelSet realize(const Workspace& ws) const {
    require(horizon <= ws.depth(), errc::level_out_of_range,
            "level set horizon exceeds the exhaustion depth");
    const std::size_t width = ws.table(level, horizon).size();
    return LevelSet(level, horizon, Bits::from_hex(width, hex));
  }
};

inline LevelSetSpec parse_level_set(std::istream& in, const std::string& where = "<levelset>") {
  LevelSetSpec spec;
  std::string header;
  require(static_cast<bool>(std::getline(in, header)), errc::parse_error, where + ":1: empty file");
  {
    std::istringstream h(header);
    std::string kw_level, kw_horizon, kw_class;
    char comma1 = 0, comma2 = 0;
    h >> kw_level >> spec.level >> comma1 >> kw_horizon >> spec.horizon >> comma2 >> kw_class >>
        spec.class_name;
    require(!h.fail() && kw_level == "level" && comma1 == ',' && kw_horizon == "horizon" &&
                comma2 == ',' && kw_class == "class",
            errc::parse_error, where + ":1: expected 'level m, horizon N, class <name>'");
  }
  require(static_cast<bool>(std::getline(in, spec.hex)), errc::parse_error,
          where + ":2: missing hex bitset");
  while (!spec.hex.empty() && (spec.hex.back() == '\r' || spec.hex.back() == ' '))
    spec.hex.pop_back();
  return spec;
}

inline std::string format_level_set(const LevelSet& s, const std::string& class_name) {
  std::ostringstream out;
  out << "level " << s.level() << ", horizon " << s.horizon() << ", class " << class_name << "\n";
  out << s.bits().to_hex() << "\n";
  return out.str();
}

}  // namespace synwb
