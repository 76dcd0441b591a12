#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "hurwitz/likely_maps.hpp"
#include "hurwitz/nielsen.hpp"

namespace hurwitz {

struct ClassDeficit {
  std::size_t class_index;  // index into conjugacy_classes(g)
  std::size_t required;
  std::size_t available;
};

class FactorizationHypothesisError : public PreconditionError {
 public:
  FactorizationHypothesisError(std::string what, std::vector<ClassDeficit> d)
      : PreconditionError(std::move(what)), deficits_(std::move(d)) {}
  const std::vector<ClassDeficit>& deficits() const noexcept { return deficits_; }

 private:
  std::vector<ClassDeficit> deficits_;
};

struct Factorization {
  NielsenTuple remainder;
  BraidWord witness;  // takes t_big to concatenate(t_factor, remainder)
};

// Classes of t_factor whose occurrence count in t_big falls short of
// |class| * ord(class) + occurrences in t_factor.
inline std::vector<ClassDeficit> factorization_deficits(const FiniteGroup& g,
                                                        const NielsenTuple& t_factor,
                                                        const NielsenTuple& t_big) {
  const auto& ct = conjugacy_classes(g);
  std::map<std::size_t, std::size_t> need, have;
  for (auto x : t_factor.entries) ++need[ct.class_of[x]];
  for (auto x : t_big.entries) ++have[ct.class_of[x]];
  std::vector<ClassDeficit> out;
  for (auto [cls, n] : need) {
    std::size_t req = ct.classes[cls].size() * ct.class_order[cls] + n;
    if (have[cls] < req) out.push_back({cls, req, have[cls]});
  }
  return out;
}

// Pulls t_factor off the front of t_big by braid moves, one entry at a time:
// ord+1 copies of some h in the entry's class go to the front, the first ord
// of them (product 1) get conjugated onto the wanted entry.
inline Factorization factorize(const FiniteGroup& g, const NielsenTuple& t_factor,
                               const NielsenTuple& t_big) {
  if (!generates(g, t_big)) throw PreconditionError("factorize: t_big must generate the group");
  if (auto d = factorization_deficits(g, t_factor, t_big); !d.empty()) {
    const auto& ct = conjugacy_classes(g);
    std::string msg = "factorize: not enough entries";
    for (const auto& x : d)
      msg += "; class of " + g.label(ct.classes[x.class_index].front()) + " needs " +
             std::to_string(x.required) + ", has " + std::to_string(x.available);
    throw FactorizationHypothesisError(msg, d);
  }
  const auto& ct = conjugacy_classes(g);
  NielsenTuple cur = t_big;
  BraidWord word;
  std::size_t off = 0;
  for (auto target : t_factor.entries) {
    std::size_t cls = ct.class_of[target];
    std::size_t ord = ct.class_order[cls];
    std::vector<std::size_t> count(g.order(), 0);
    for (std::size_t i = off; i < cur.size(); ++i) ++count[cur[i]];
    element_id h = g.order();
    for (auto x : ct.classes[cls])
      if (count[x] >= ord + 1 && x < h) h = x;
    if (h == g.order()) throw std::logic_error("factorize: pigeonhole step found no element");

    MoveRecorder rec(g, cur);
    // copy j of h moves left to position off + j, unchanged; anything it passes is conjugated by h
    std::size_t placed = 0;
    for (std::size_t q = off; q < cur.size() && placed < ord + 1; ++q) {
      if (rec.tuple()[q] != h) continue;
      for (std::size_t p = q; p-- > off + placed;) rec.move(p, true);
      ++placed;
    }
    cur = rec.tuple();
    word.insert(word.end(), rec.word().begin(), rec.word().end());

    element_id a = g.order();
    for (element_id x = 0; x < g.order() && a == g.order(); ++x)
      if (g.conj(x, h) == target) a = x;
    NielsenTuple suffix{std::vector<element_id>(cur.entries.begin() + static_cast<std::ptrdiff_t>(off),
                                                cur.entries.end())};
    auto r = conjugate_block(g, suffix, 1, ord, a);
    for (auto letter : r.word) word.push_back({letter.index + off, letter.inverse});
    std::copy(r.tuple.entries.begin(), r.tuple.entries.end(),
              cur.entries.begin() + static_cast<std::ptrdiff_t>(off));
    ++off;
  }
  Factorization f;
  f.remainder.entries.assign(cur.entries.begin() + static_cast<std::ptrdiff_t>(off), cur.entries.end());
  f.witness = std::move(word);
  if (apply_word(g, t_big, f.witness) != concatenate(t_factor, f.remainder))
    throw std::logic_error("factorize: witness does not replay");
  if (!generates(g, f.remainder)) throw std::logic_error("factorize: remainder does not generate");
  return f;
}

// A tuple with entries in c that generates G and whose multidiscriminant is a
// likely map of some degree r; r is as small as a bounded search finds.
struct GeneratingSeed {
  NielsenTuple tuple;
  std::int64_t degree = 0;
};

inline GeneratingSeed generating_seed(const ClassSetup& s, std::int64_t max_search_degree = 4) {
  const FiniteGroup& g = s.group();
  std::size_t work = 0;
  constexpr std::size_t kWorkCap = 2'000'000;
  for (std::int64_t r = 1; r <= max_search_degree; ++r) {
    std::optional<NielsenTuple> found;
    for_each_likely_map(s, r, [&](const Multidiscriminant& psi) {
      // choose a multiset from each class, nondecreasing ids within a class
      std::vector<element_id> picks;
      std::function<bool(std::size_t, std::int64_t, std::size_t)> rec =
          [&](std::size_t cls, std::int64_t left, std::size_t from) -> bool {
        if (++work > kWorkCap) return false;
        if (cls == s.num_dstar()) {
          NielsenTuple t{picks};
          if (generates(g, t)) {
            found = t;
            return true;
          }
          return false;
        }
        if (left == 0) {
          return cls + 1 == s.num_dstar() ? rec(cls + 1, 0, 0)
                                          : rec(cls + 1, psi.counts[cls + 1], 0);
        }
        const auto& el = s.dstar_elements(cls);
        for (std::size_t i = from; i < el.size(); ++i) {
          picks.push_back(el[i]);
          bool ok = rec(cls, left - 1, i);
          picks.pop_back();
          if (ok) return true;
        }
        return false;
      };
      rec(0, psi.counts[0], 0);
      return !found && work <= kWorkCap;
    });
    if (found) return {*found, r};
    if (work > kWorkCap) break;
  }
  // every element of c, padded per block up to a multiple of xi
  NielsenTuple t;
  std::vector<std::int64_t> per_block(s.num_blocks(), 0);
  for (std::size_t i = 0; i < s.num_dstar(); ++i)
    for (auto x : s.dstar_elements(i)) {
      t.entries.push_back(x);
      ++per_block[s.tau(i)];
    }
  std::int64_t r = 1;
  for (std::size_t b = 0; b < s.num_blocks(); ++b) r = std::max(r, (per_block[b] + s.xi(b) - 1) / s.xi(b));
  for (std::size_t b = 0; b < s.num_blocks(); ++b) {
    element_id pad = block_elements(s, b).front();
    for (std::int64_t k = per_block[b]; k < r * s.xi(b); ++k) t.entries.push_back(pad);
  }
  return {t, r};
}

}  // namespace hurwitz
