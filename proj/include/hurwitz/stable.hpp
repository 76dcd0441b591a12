#pragma once

#include <map>
#include <string>

#include "hurwitz/factorize.hpp"
#include "hurwitz/orbit_engine.hpp"

namespace hurwitz {

// Every class of <t> (classes taken inside <t>) that shows up among the
// entries shows up at least M times.
inline bool is_M_big(const FiniteGroup& g, const NielsenTuple& t, std::int64_t M) {
  if (t.empty() || M <= 0) return true;
  Subgroup h = generated_subgroup(g, t);
  auto hel = h.elements.elements();
  std::map<element_id, std::int64_t> by_rep;  // smallest element of the H-class
  for (auto x : t.entries) {
    element_id rep = x;
    for (auto y : hel) rep = std::min(rep, g.conj(y, x));
    ++by_rep[rep];
  }
  for (const auto& [rep, n] : by_rep)
    if (n < M) return false;
  return true;
}

// max over classes in D* of |class| * ord(class), plus one
inline std::int64_t default_bigness_threshold(const ClassSetup& s) {
  std::int64_t m = 0;
  for (std::size_t i = 0; i < s.num_dstar(); ++i) {
    std::size_t cls = s.dstar_class(i);
    m = std::max<std::int64_t>(m, static_cast<std::int64_t>(s.classes().classes[cls].size() *
                                                             s.classes().class_order[cls]));
  }
  return m + 1;
}

enum class StableVerdict { equal, distinct, inconclusive };

inline const char* to_string(StableVerdict v) {
  switch (v) {
    case StableVerdict::equal: return "equal";
    case StableVerdict::distinct: return "distinct";
    default: return "inconclusive";
  }
}

struct StableResult {
  StableVerdict verdict = StableVerdict::inconclusive;
  std::int64_t rounds = 0;  // padding level at which the verdict was reached
  std::int64_t threshold = 0;
  std::string note;
};

// Pads both tuples with k copies of a generating seed, k = 0..padding_rounds,
// and compares orbits. "distinct" is a heuristic: orbits still differ after
// the last round and the padded tuple is M-big for the threshold used.
inline StableResult stable_equivalence(const ClassSetup& s, const NielsenTuple& t1,
                                       const NielsenTuple& t2, std::int64_t padding_rounds,
                                       std::int64_t M = 0, const EngineConfig& cfg = {}) {
  const FiniteGroup& g = s.group();
  if (t1.size() != t2.size()) throw PreconditionError("stable_equivalence: sizes differ");
  if (product(g, t1) != product(g, t2)) throw PreconditionError("stable_equivalence: products differ");
  if (generated_subgroup(g, t1).elements != generated_subgroup(g, t2).elements)
    throw PreconditionError("stable_equivalence: monodromy groups differ");
  if (multidiscriminant(t1, s) != multidiscriminant(t2, s))
    throw PreconditionError("stable_equivalence: multidiscriminants differ");
  StableResult res;
  res.threshold = M > 0 ? M : default_bigness_threshold(s);
  auto seed = generating_seed(s).tuple;
  NielsenTuple a = t1, b = t2;
  for (std::int64_t k = 0; k <= padding_rounds; ++k) {
    if (k > 0) {
      a = concatenate(a, seed);
      b = concatenate(b, seed);
    }
    res.rounds = k;
    try {
      if (same_orbit(g, a, b, cfg)) {
        res.verdict = StableVerdict::equal;
        return res;
      }
    } catch (const BudgetExceeded& e) {
      res.verdict = StableVerdict::inconclusive;
      res.note = e.what();
      return res;
    }
  }
  res.verdict = is_M_big(g, a, res.threshold) ? StableVerdict::distinct : StableVerdict::inconclusive;
  return res;
}

}  // namespace hurwitz
