#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace dnp {

// Bitset over a board's candidate segment indices.
class SegmentMask {
 public:
  SegmentMask() = default;
  explicit SegmentMask(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const { return bits_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  SegmentMask& operator|=(const SegmentMask& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }
  SegmentMask& operator&=(const SegmentMask& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
    return *this;
  }
  SegmentMask& subtract(const SegmentMask& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~o.words_[w];
    return *this;
  }
  // Every index not set.
  SegmentMask complement() const {
    SegmentMask m(bits_);
    for (std::size_t w = 0; w < words_.size(); ++w) m.words_[w] = ~words_[w];
    if (bits_ % 64 != 0) m.words_.back() &= (std::uint64_t{1} << (bits_ % 64)) - 1;
    return m;
  }
  friend SegmentMask operator|(SegmentMask l, const SegmentMask& r) { return l |= r; }
  friend SegmentMask operator&(SegmentMask l, const SegmentMask& r) { return l &= r; }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool intersects(const SegmentMask& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & o.words_[w]) return true;
    return false;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  // Calls f(index) for each set bit in ascending order.
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word) {
        const int b = std::countr_zero(word);
        f(w * 64 + static_cast<std::size_t>(b));
        word &= word - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (auto w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xbf58476d1ce4e5b9ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 31));
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const SegmentMask&, const SegmentMask&) = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

struct SegmentMaskHash {
  std::size_t operator()(const SegmentMask& m) const { return m.hash(); }
};

}  // namespace dnp
