#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "synwb/errors.hpp"

namespace synwb {

/// Fixed-width dynamic bitset. Bit i corresponds to index i of whatever
/// canonical enumeration the caller indexes against.
class Bits {
 public:
  Bits() = default;

  explicit Bits(std::size_t size, bool value = false)
      : words_((size + 63) / 64, value ? ~std::uint64_t{0} : 0), size_(size) {
    mask_tail();
  }

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }

  void set(std::size_t i, bool value = true) {
    const std::uint64_t bit = std::uint64_t{1} << (i % 64);
    if (value)
      words_[i / 64] |= bit;
    else
      words_[i / 64] &= ~bit;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }

  bool none() const { return !any(); }

  Bits operator~() const {
    Bits r = *this;
    for (auto& w : r.words_) w = ~w;
    r.mask_tail();
    return r;
  }

  Bits& operator&=(const Bits& o) {
    check_size(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }

  Bits& operator|=(const Bits& o) {
    check_size(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  Bits& operator^=(const Bits& o) {
    check_size(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }

  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend Bits operator^(Bits a, const Bits& b) { return a ^= b; }

  /// Set difference: bits of *this that are not in o.
  Bits minus(const Bits& o) const { return *this & ~o; }

  bool subset_of(const Bits& o) const {
    check_size(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  bool intersects(const Bits& o) const {
    check_size(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  bool operator==(const Bits& o) const = default;

  std::optional<std::size_t> first_set() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
    return std::nullopt;
  }

  template <class Fn>
  void for_each_set(Fn&& fn) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        fn(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  /// Hex image, most significant nibble first; nibble t holds bits 4t..4t+3.
  std::string to_hex() const {
    const std::size_t nibbles = size_ == 0 ? 1 : (size_ + 3) / 4;
    std::string out;
    bool started = false;
    for (std::size_t t = nibbles; t-- > 0;) {
      unsigned v = 0;
      for (unsigned b = 0; b < 4; ++b) {
        const std::size_t i = 4 * t + b;
        if (i < size_ && test(i)) v |= 1u << b;
      }
      if (v != 0) started = true;
      if (started) out.push_back("0123456789ABCDEF"[v]);
    }
    if (out.empty()) out = "0";
    return out;
  }

  static Bits from_hex(std::size_t size, std::string_view hex) {
    Bits r(size);
    std::size_t t = 0;  // nibble index, least significant last in the string
    for (auto it = hex.rbegin(); it != hex.rend(); ++it, ++t) {
      const char c = *it;
      unsigned v = 0;
      if (c >= '0' && c <= '9')
        v = static_cast<unsigned>(c - '0');
      else if (c >= 'a' && c <= 'f')
        v = static_cast<unsigned>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F')
        v = static_cast<unsigned>(c - 'A' + 10);
      else
        fail(errc::parse_error, "bad hex digit '" + std::string(1, c) + "'");
      for (unsigned b = 0; b < 4; ++b) {
        if (!(v & (1u << b))) continue;
        const std::size_t i = 4 * t + b;
        require(i < size, errc::parse_error, "hex bitset wider than declared size");
        r.set(i);
      }
    }
    return r;
  }

 private:
  void mask_tail() {
    if (size_ % 64 != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }

  void check_size(const Bits& o) const {
    require(size_ == o.size_, errc::level_mismatch, "bitset width mismatch");
  }

  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

}  // namespace synwb
