#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hurwitz/error.hpp"
#include "hurwitz/group.hpp"
#include "hurwitz/setup.hpp"
#include "hurwitz/subgroup.hpp"

namespace hurwitz {

struct NielsenTuple {
  std::vector<element_id> entries;

  NielsenTuple() = default;
  explicit NielsenTuple(std::vector<element_id> e) : entries(std::move(e)) {}
  NielsenTuple(std::initializer_list<element_id> e) : entries(e) {}

  std::size_t size() const noexcept { return entries.size(); }
  bool empty() const noexcept { return entries.empty(); }
  element_id operator[](std::size_t i) const { return entries[i]; }
  element_id& operator[](std::size_t i) { return entries[i]; }

  bool operator==(const NielsenTuple&) const = default;
  auto operator<=>(const NielsenTuple&) const = default;
};

struct Multidiscriminant {
  std::vector<std::int64_t> counts;

  bool operator==(const Multidiscriminant&) const = default;
  auto operator<=>(const Multidiscriminant&) const = default;
  std::int64_t total() const {
    std::int64_t s = 0;
    for (auto c : counts) s += c;
    return s;
  }
  std::int64_t min() const {
    return counts.empty() ? 0 : *std::min_element(counts.begin(), counts.end());
  }
};

// sigma_index with index 1-based; inverse selects sigma_index^-1.
struct BraidLetter {
  std::size_t index = 1;
  bool inverse = false;
  bool operator==(const BraidLetter&) const = default;
};
using BraidWord = std::vector<BraidLetter>;

inline std::string format_word(const BraidWord& w) {
  std::string s;
  for (const auto& l : w) {
    if (!s.empty()) s += ' ';
    s += "s" + std::to_string(l.index) + (l.inverse ? "'" : "");
  }
  return s.empty() ? "1" : s;
}

// In-place move on 0-based position p (touching p and p+1).
inline void braid_in_place(const FiniteGroup& g, std::vector<element_id>& e, std::size_t p,
                           bool inverse) {
  element_id x = e[p], y = e[p + 1];
  if (!inverse) {
    e[p] = g.conj(x, y);
    e[p + 1] = x;
  } else {
    e[p] = y;
    e[p + 1] = g.mul(g.mul(g.inv(y), x), y);
  }
}

inline NielsenTuple apply_braid(const FiniteGroup& g, const NielsenTuple& t, std::size_t i,
                                bool inverse = false) {
  if (i < 1 || i + 1 > t.size())
    throw PreconditionError("braid index " + std::to_string(i) + " out of range for a " +
                            std::to_string(t.size()) + "-tuple");
  NielsenTuple r = t;
  braid_in_place(g, r.entries, i - 1, inverse);
  return r;
}

inline NielsenTuple apply_word(const FiniteGroup& g, const NielsenTuple& t, const BraidWord& w) {
  NielsenTuple r = t;
  for (const auto& l : w) {
    if (l.index < 1 || l.index + 1 > r.size())
      throw PreconditionError("braid word letter out of range");
    braid_in_place(g, r.entries, l.index - 1, l.inverse);
  }
  return r;
}

inline element_id product(const FiniteGroup& g, std::span<const element_id> e) {
  element_id p = g.identity();
  for (auto x : e) p = g.mul(p, x);
  return p;
}
inline element_id product(const FiniteGroup& g, const NielsenTuple& t) {
  return product(g, std::span<const element_id>(t.entries));
}

inline Subgroup generated_subgroup(const FiniteGroup& g, const NielsenTuple& t) {
  std::vector<element_id> gens = t.entries;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return subgroup_closure(g, std::span<const element_id>(gens));
}

inline bool generates(const FiniteGroup& g, const NielsenTuple& t) {
  return generated_subgroup(g, t).order() == g.order();
}

inline Multidiscriminant multidiscriminant(const NielsenTuple& t, const ClassSetup& s) {
  Multidiscriminant m{std::vector<std::int64_t>(s.num_dstar(), 0)};
  for (auto x : t.entries) {
    std::size_t k = s.dstar_index(x);
    if (k == SIZE_MAX)
      throw PreconditionError("tuple entry " + s.group().label(x) + " lies outside c");
    ++m.counts[k];
  }
  return m;
}

// Image in G^ab of prod over Dstar of gamma^psi(gamma); negative exponents allowed.
inline AbelianElement abelianized_product(std::span<const std::int64_t> psi, const ClassSetup& s) {
  if (psi.size() != s.num_dstar())
    throw PreconditionError("vector length does not match the number of classes in c");
  const auto& ab = s.abelian();
  AbelianElement r = ab.zero();
  for (std::size_t i = 0; i < psi.size(); ++i)
    r = ab.add(r, ab.scale(ab.project(s.dstar_elements(i).front()), psi[i]));
  return r;
}
inline AbelianElement abelianized_product(const Multidiscriminant& psi, const ClassSetup& s) {
  return abelianized_product(std::span<const std::int64_t>(psi.counts), s);
}

inline NielsenTuple concatenate(const NielsenTuple& a, const NielsenTuple& b) {
  NielsenTuple r = a;
  r.entries.insert(r.entries.end(), b.entries.begin(), b.entries.end());
  return r;
}

inline std::string format_tuple(const FiniteGroup& g, const NielsenTuple& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ',';
    s += g.label(t[i]);
  }
  return s;
}

inline NielsenTuple parse_tuple(const FiniteGroup& g, std::string_view text) {
  NielsenTuple t;
  if (trim(text).empty()) return t;
  for (const auto& part : split_top_level(text)) t.entries.push_back(g.parse_element(part));
  return t;
}

// Shortest positive word in `gens` (by position) whose product is target, by
// breadth-first search over the group. Positions refer to the span given.
inline std::optional<std::vector<std::size_t>> word_for_element(
    const FiniteGroup& g, std::span<const element_id> gens, element_id target) {
  const std::size_t n = g.order();
  std::vector<std::size_t> via(n, SIZE_MAX), parent(n, SIZE_MAX);
  std::vector<bool> seen(n, false);
  std::vector<element_id> queue{g.identity()};
  seen[g.identity()] = true;
  for (std::size_t head = 0; head < queue.size() && !seen[target]; ++head) {
    for (std::size_t j = 0; j < gens.size(); ++j) {
      element_id y = g.mul(queue[head], gens[j]);
      if (!seen[y]) {
        seen[y] = true;
        via[y] = j;
        parent[y] = queue[head];
        queue.push_back(y);
      }
    }
  }
  if (!seen[target]) return std::nullopt;
  std::vector<std::size_t> word;
  for (element_id x = target; x != g.identity(); x = static_cast<element_id>(parent[x]))
    word.push_back(via[x]);
  std::reverse(word.begin(), word.end());
  return word;
}

// Records elementary moves applied to a working tuple. Positions are 0-based.
class MoveRecorder {
 public:
  MoveRecorder(const FiniteGroup& g, NielsenTuple t) : g_(g), t_(std::move(t)) {}

  const NielsenTuple& tuple() const noexcept { return t_; }
  const BraidWord& word() const noexcept { return w_; }

  void move(std::size_t p, bool inverse) {
    braid_in_place(g_, t_.entries, p, inverse);
    w_.push_back({p + 1, inverse});
  }

  // (g1..gn) -> (g2..gn, g1) when the product is 1.
  void rotate() {
    for (std::size_t p = 0; p + 1 < t_.size(); ++p) move(p, true);
  }
  void rotate_back() {
    for (std::size_t p = t_.size() - 1; p-- > 0;) move(p, false);
  }

  // Whole tuple conjugated by its current entry j (product must be 1).
  void conjugate_by_entry(std::size_t j) {
    for (std::size_t r = 0; r < j; ++r) rotate();
    for (std::size_t p = 0; p + 1 < t_.size(); ++p) move(p, false);
    rotate_back();
    for (std::size_t r = 0; r < j; ++r) rotate_back();
  }

  // Element at q hops right over the product-1 block q+1..q+len; both unchanged.
  void hop_right(std::size_t q, std::size_t len) {
    for (std::size_t p = q; p < q + len; ++p) move(p, true);
  }
  // Element at q hops left over the product-1 block q-len..q-1.
  void hop_left(std::size_t q, std::size_t len) {
    for (std::size_t p = q; p-- > q - len;) move(p, false);
  }

  // Conjugates the product-1 block [lo, lo+len) by the entry at position q
  // outside it; every entry outside the block ends where it started.
  void conjugate_block_by_entry(std::size_t lo, std::size_t len, std::size_t q) {
    if (q < lo) {
      for (std::size_t r = lo; r-- > q + 1;) hop_right(r, len);
      // block now at q+1..q+len, entry q is its left neighbour
      std::size_t b = q + 1;
      for (std::size_t p = b - 1; p < b + len - 1; ++p) move(p, false);
      hop_left(b + len - 1, len);
      for (std::size_t r = q + len + 1; r < lo + len; ++r) hop_left(r, len);
    } else {
      std::size_t hi = lo + len;  // one past the block
      for (std::size_t r = hi; r < q; ++r) hop_left(r, len);
      // block now at q-len..q-1, entry q is its right neighbour
      std::size_t b = q - len;
      std::size_t reps = g_.element_order(t_[q]) - 1;
      for (std::size_t k = 0; k < reps; ++k) {
        for (std::size_t p = b + len; p-- > b;) move(p, true);
        hop_right(b, len);
      }
      for (std::size_t r = q - 1; r >= hi; --r) hop_right(r - len, len);
    }
  }

 private:
  const FiniteGroup& g_;
  NielsenTuple t_;
  BraidWord w_;
};

struct MoveResult {
  NielsenTuple tuple;
  BraidWord word;
};

inline void check_witness(const FiniteGroup& g, const NielsenTuple& from, const MoveResult& r,
                          const NielsenTuple& expected) {
  if (r.tuple != expected || apply_word(g, from, r.word) != expected)
    throw std::logic_error("derived move produced a tuple that does not match its target");
}

// (g1..gn) ~ (g2..gn, g1) for product-1 tuples.
inline MoveResult rotate(const FiniteGroup& g, const NielsenTuple& t) {
  if (product(g, t) != g.identity())
    throw PreconditionError("rotate requires a tuple with product 1");
  MoveRecorder rec(g, t);
  if (t.size() > 1) rec.rotate();
  MoveResult r{rec.tuple(), rec.word()};
  NielsenTuple expected = t;
  if (!t.empty()) std::rotate(expected.entries.begin(), expected.entries.begin() + 1, expected.entries.end());
  check_witness(g, t, r, expected);
  return r;
}

// Entrywise a t a^-1 for a product-1 tuple and a in <t>.
inline MoveResult conjugate_tuple(const FiniteGroup& g, const NielsenTuple& t, element_id a) {
  if (product(g, t) != g.identity())
    throw PreconditionError("conjugate_tuple requires a tuple with product 1");
  auto w = word_for_element(g, std::span<const element_id>(t.entries), a);
  if (!w) throw PreconditionError("conjugator " + g.label(a) + " is not in the group of the tuple");
  MoveRecorder rec(g, t);
  for (auto j : *w) rec.conjugate_by_entry(j);
  MoveResult r{rec.tuple(), rec.word()};
  NielsenTuple expected = t;
  for (auto& x : expected.entries) x = g.conj(a, x);
  check_witness(g, t, r, expected);
  return r;
}

// Conjugates the block lo..hi (1-based, inclusive) by a. The block must have
// product 1 and a must lie in the group generated by the entries outside it.
inline MoveResult conjugate_block(const FiniteGroup& g, const NielsenTuple& t, std::size_t lo,
                                  std::size_t hi, element_id a) {
  if (lo < 1 || hi > t.size() || lo > hi) throw PreconditionError("block range out of bounds");
  std::size_t b = lo - 1, len = hi - lo + 1;
  if (product(g, std::span<const element_id>(t.entries).subspan(b, len)) != g.identity())
    throw PreconditionError("conjugate_block requires a block with product 1");
  std::vector<element_id> outside;
  std::vector<std::size_t> outside_pos;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (i < b || i >= b + len) outside.push_back(t[i]), outside_pos.push_back(i);
  auto w = word_for_element(g, std::span<const element_id>(outside), a);
  if (!w)
    throw PreconditionError("conjugator " + g.label(a) +
                            " is not generated by the entries outside the block");
  MoveRecorder rec(g, t);
  // x^(e1...em) = e1(...(em x em^-1)...)e1^-1: innermost first.
  for (auto it = w->rbegin(); it != w->rend(); ++it) rec.conjugate_block_by_entry(b, len, outside_pos[*it]);
  MoveResult r{rec.tuple(), rec.word()};
  NielsenTuple expected = t;
  for (std::size_t i = b; i < b + len; ++i) expected[i] = g.conj(a, t[i]);
  check_witness(g, t, r, expected);
  return r;
}

}  // namespace hurwitz
