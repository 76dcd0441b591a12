#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace hurwitz {

using element_id = std::uint32_t;

// Fixed-universe bit set over element ids 0..n-1.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  std::size_t universe() const noexcept { return universe_; }

  bool contains(element_id x) const noexcept {
    return (words_[x >> 6] >> (x & 63)) & 1u;
  }
  // Returns true when x was not present before.
  bool insert(element_id x) noexcept {
    auto& w = words_[x >> 6];
    std::uint64_t bit = std::uint64_t{1} << (x & 63);
    bool fresh = (w & bit) == 0;
    w |= bit;
    return fresh;
  }
  void erase(element_id x) noexcept {
    words_[x >> 6] &= ~(std::uint64_t{1} << (x & 63));
  }

  std::size_t size() const noexcept {
    std::size_t s = 0;
    for (auto w : words_) s += static_cast<std::size_t>(std::popcount(w));
    return s;
  }
  bool empty() const noexcept {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  bool is_subset_of(const ElementSet& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }
  bool intersects(const ElementSet& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & other.words_[i]) return true;
    return false;
  }
  ElementSet operator&(const ElementSet& other) const {
    ElementSet r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= other.words_[i];
    return r;
  }
  ElementSet operator|(const ElementSet& other) const {
    ElementSet r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] |= other.words_[i];
    return r;
  }

  std::vector<element_id> elements() const {
    std::vector<element_id> out;
    out.reserve(size());
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        int b = std::countr_zero(w);
        out.push_back(static_cast<element_id>(i * 64 + static_cast<std::size_t>(b)));
        w &= w - 1;
      }
    }
    return out;
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  bool operator==(const ElementSet& other) const = default;

  // Lexicographic comparison of the ascending element lists.
  friend std::strong_ordering lex_compare(const ElementSet& a, const ElementSet& b) {
    auto ea = a.elements();
    auto eb = b.elements();
    return std::lexicographical_compare_three_way(ea.begin(), ea.end(), eb.begin(),
                                                  eb.end());
  }

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace hurwitz
