#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <numeric>
#include <set>
#include <span>
#include <stdexcept>
#include <tuple>
#include <string>
#include <vector>

#include "hurwitz/element_set.hpp"
#include "hurwitz/error.hpp"
#include "hurwitz/group.hpp"

namespace hurwitz {

struct ConjugacyClassTable {
  std::vector<std::vector<element_id>> classes;  // each ascending
  std::vector<std::size_t> class_of;
  std::vector<std::size_t> class_order;

  std::size_t size() const noexcept { return classes.size(); }
};

inline ConjugacyClassTable conjugacy_classes(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<element_id>> raw;
  for (element_id x = 0; x < n; ++x) {
    if (seen[x]) continue;
    std::vector<element_id> cls;
    for (element_id y = 0; y < n; ++y) {
      element_id z = g.conj(y, x);
      if (!seen[z]) {
        seen[z] = true;
        cls.push_back(z);
      }
    }
    std::sort(cls.begin(), cls.end());
    raw.push_back(std::move(cls));
  }
  std::sort(raw.begin(), raw.end(), [&](const auto& a, const auto& b) {
    auto key = [&](const auto& c) {
      return std::tuple(g.element_order(c.front()), c.size(), c.front());
    };
    return key(a) < key(b);
  });
  ConjugacyClassTable t;
  t.class_of.assign(n, 0);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    for (auto x : raw[i]) t.class_of[x] = i;
    t.class_order.push_back(g.element_order(raw[i].front()));
  }
  t.classes = std::move(raw);
  return t;
}

struct Subgroup {
  ElementSet elements;
  std::vector<element_id> generators;

  std::size_t order() const { return elements.size(); }
  bool contains(element_id x) const { return elements.contains(x); }
  bool operator==(const Subgroup& o) const { return elements == o.elements; }
};

inline Subgroup subgroup_closure(const FiniteGroup& g, std::span<const element_id> gens) {
  Subgroup h;
  h.elements = ElementSet(g.order());
  h.generators.assign(gens.begin(), gens.end());
  std::vector<element_id> queue{g.identity()};
  h.elements.insert(g.identity());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (auto s : gens) {
      element_id y = g.mul(queue[head], s);
      if (h.elements.insert(y)) queue.push_back(y);
    }
  }
  return h;
}

inline Subgroup subgroup_closure(const FiniteGroup& g, std::initializer_list<element_id> gens) {
  std::vector<element_id> v(gens);
  return subgroup_closure(g, std::span<const element_id>(v));
}

inline Subgroup subgroup_from_set(const FiniteGroup& g, const ElementSet& set) {
  auto elems = set.elements();
  return subgroup_closure(g, std::span<const element_id>(elems));
}

inline Subgroup whole_group(const FiniteGroup& g) {
  std::vector<element_id> all(g.order());
  std::iota(all.begin(), all.end(), element_id{0});
  Subgroup h;
  h.elements = ElementSet(g.order());
  for (auto x : all) h.elements.insert(x);
  h.generators = all;
  return h;
}

inline std::string subgroup_label(const FiniteGroup& g, const Subgroup& h) {
  if (h.order() == 1) return "<>";
  if (h.order() == g.order()) return "G";
  std::string s = "<";
  for (std::size_t i = 0; i < h.generators.size(); ++i) {
    if (i) s += ",";
    s += g.label(h.generators[i]);
  }
  return s + ">";
}

inline constexpr std::size_t kDefaultLatticeBound = 200;

// Every subgroup exactly once, sorted by (order, ascending element list).
// Generators are reduced greedily so labels stay short.
inline std::vector<Subgroup> all_subgroups(const FiniteGroup& g,
                                           std::size_t bound = kDefaultLatticeBound) {
  if (g.order() > bound)
    throw PreconditionError("lattice too large: group order " + std::to_string(g.order()) +
                            " exceeds the subgroup-lattice bound " + std::to_string(bound));
  std::vector<Subgroup> cyclic;
  std::vector<Subgroup> found;
  auto known = [&](const ElementSet& s) {
    return std::any_of(found.begin(), found.end(),
                       [&](const Subgroup& h) { return h.elements == s; });
  };
  found.push_back(subgroup_closure(g, std::span<const element_id>{}));
  for (element_id x = 1; x < g.order(); ++x) {
    Subgroup c = subgroup_closure(g, {x});
    if (!known(c.elements)) {
      cyclic.push_back(c);
      found.push_back(c);
    }
  }
  // Every subgroup is a join of cyclic subgroups; grow joins to a fixpoint.
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (const auto& c : cyclic) {
      if (c.elements.is_subset_of(found[i].elements)) continue;
      std::vector<element_id> gens = found[i].generators;
      gens.push_back(c.generators.front());
      Subgroup j = subgroup_closure(g, std::span<const element_id>(gens));
      if (!known(j.elements)) found.push_back(std::move(j));
    }
  }
  std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return lex_compare(a.elements, b.elements) < 0;
  });
  return found;
}

// ---------------------------------------------------------------------------

// Element of a finite abelian group Z/f_1 x ... x Z/f_r.
struct AbelianElement {
  std::vector<std::int64_t> coords;
  bool operator==(const AbelianElement&) const = default;
  bool is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](auto v) { return v == 0; });
  }
};

struct Abelianization {
  Subgroup commutator_subgroup;
  std::vector<std::int64_t> factors;  // invariant-style factors, descending
  std::size_t ab_order = 1;
  std::int64_t exponent_ab = 1;
  std::vector<AbelianElement> image;  // per element id

  const AbelianElement& project(element_id x) const { return image[x]; }

  AbelianElement zero() const { return {std::vector<std::int64_t>(factors.size(), 0)}; }

  AbelianElement add(const AbelianElement& a, const AbelianElement& b) const {
    AbelianElement r = a;
    for (std::size_t i = 0; i < factors.size(); ++i) r.coords[i] = (a.coords[i] + b.coords[i]) % factors[i];
    return r;
  }
  AbelianElement scale(const AbelianElement& a, std::int64_t k) const {
    AbelianElement r = a;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      __int128 v = static_cast<__int128>(a.coords[i]) * k % factors[i];
      if (v < 0) v += factors[i];
      r.coords[i] = static_cast<std::int64_t>(v);
    }
    return r;
  }
  std::int64_t order_of(const AbelianElement& a) const {
    std::int64_t o = 1;
    for (std::size_t i = 0; i < factors.size(); ++i)
      o = std::lcm(o, factors[i] / std::gcd(factors[i], a.coords[i]));
    return o;
  }
};

inline Abelianization abelianization(const FiniteGroup& g) {
  const std::size_t n = g.order();
  Abelianization ab;
  std::set<element_id> comms;
  for (element_id a = 0; a < n; ++a)
    for (element_id b = 0; b < n; ++b) comms.insert(g.commutator(a, b));
  std::vector<element_id> cv(comms.begin(), comms.end());
  ab.commutator_subgroup = subgroup_closure(g, std::span<const element_id>(cv));
  const auto& K = ab.commutator_subgroup.elements;

  // Cosets xK, numbered by smallest representative.
  std::vector<std::size_t> coset(n, SIZE_MAX);
  std::vector<element_id> rep;
  auto kelems = K.elements();
  for (element_id x = 0; x < n; ++x) {
    if (coset[x] != SIZE_MAX) continue;
    for (auto k : kelems) coset[g.mul(x, k)] = rep.size();
    rep.push_back(x);
  }
  const std::size_t q = rep.size();
  ab.ab_order = q;
  auto qmul = [&](std::size_t a, std::size_t b) { return coset[g.mul(rep[a], rep[b])]; };
  auto qorder = [&](std::size_t a) {
    std::size_t k = 1;
    for (std::size_t x = a; x != 0; x = qmul(x, a)) ++k;
    return k;
  };

  // Peel cyclic factors: take an element of maximal order modulo the span S of
  // factors already chosen, then lift it within its coset of S to an element
  // of exactly that order, so the quotient splits.
  std::vector<std::size_t> gens;
  std::vector<bool> in_span(q, false);
  std::vector<std::size_t> span{0};
  in_span[0] = true;
  while (span.size() < q) {
    auto order_mod = [&](std::size_t a) {
      std::size_t k = 1;
      for (std::size_t x = a; !in_span[x]; x = qmul(x, a)) ++k;
      return k;
    };
    std::size_t best = 0, best_ord = 1;
    for (std::size_t a = 1; a < q; ++a) {
      if (in_span[a]) continue;
      std::size_t o = order_mod(a);
      if (o > best_ord) best = a, best_ord = o;
    }
    std::size_t lift = SIZE_MAX;
    for (auto s : span) {
      std::size_t cand = qmul(best, s);
      if (qorder(cand) == best_ord) {
        lift = cand;
        break;
      }
    }
    if (lift == SIZE_MAX) throw std::logic_error("abelianization: no split lift found");
    gens.push_back(lift);
    ab.factors.push_back(static_cast<std::int64_t>(best_ord));
    std::vector<std::size_t> next;
    std::vector<bool> next_in(q, false);
    for (auto s : span) {
      std::size_t x = s;
      for (std::size_t k = 0; k < best_ord; ++k) {
        if (!next_in[x]) next_in[x] = true, next.push_back(x);
        x = qmul(x, lift);
      }
    }
    span = std::move(next);
    in_span = std::move(next_in);
  }
  // Tabulate coordinates of each coset by walking the product decomposition.
  std::vector<AbelianElement> coord(q);
  std::vector<bool> done(q, false);
  std::vector<std::int64_t> c(gens.size(), 0);
  for (;;) {
    std::size_t x = 0;
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::int64_t k = 0; k < c[i]; ++k) x = qmul(x, gens[i]);
    if (done[x]) throw std::logic_error("abelianization: factors are not independent");
    done[x] = true;
    coord[x].coords = c;
    std::size_t i = 0;
    while (i < gens.size() && ++c[i] == ab.factors[i]) c[i++] = 0;
    if (i == gens.size()) break;
  }
  // Orders modulo a growing span never increase, so factors come out descending.
  ab.exponent_ab = ab.factors.empty() ? 1 : ab.factors.front();
  ab.image.resize(n);
  for (element_id x = 0; x < n; ++x) ab.image[x] = coord[coset[x]];
  return ab;
}

}  // namespace hurwitz
