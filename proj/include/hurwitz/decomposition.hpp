#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "hurwitz/counting.hpp"
#include "hurwitz/orbit_engine.hpp"
#include "hurwitz/setup.hpp"

namespace hurwitz {

// Finite poset under containment, nodes ordered so that i < j whenever
// nodes[i] is a proper subgroup of nodes[j].
struct SubgroupLattice {
  std::vector<Subgroup> nodes;
  std::vector<std::vector<bool>> leq;  // leq[i][j]: nodes[i] <= nodes[j]
  std::vector<std::vector<std::int64_t>> mobius;

  std::size_t size() const noexcept { return nodes.size(); }
  std::size_t index_of(const Subgroup& h) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i] == h) return i;
    throw PreconditionError("subgroup not in lattice");
  }
};

// mu(x,x) = 1, mu(x,y) = -sum_{x <= z < y} mu(x,z)
inline std::vector<std::vector<std::int64_t>> mobius_table(const std::vector<std::vector<bool>>& leq) {
  const std::size_t n = leq.size();
  std::vector<std::vector<std::int64_t>> mu(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t x = 0; x < n; ++x) {
    mu[x][x] = 1;
    for (std::size_t y = x + 1; y < n; ++y) {
      if (!leq[x][y]) continue;
      std::int64_t s = 0;
      for (std::size_t z = x; z < y; ++z)
        if (leq[x][z] && leq[z][y]) s += mu[x][z];
      mu[x][y] = -s;
    }
  }
  return mu;
}

inline SubgroupLattice make_lattice(std::vector<Subgroup> nodes) {
  std::stable_sort(nodes.begin(), nodes.end(),
                   [](const Subgroup& a, const Subgroup& b) { return a.order() < b.order(); });
  SubgroupLattice L;
  L.nodes = std::move(nodes);
  const std::size_t n = L.nodes.size();
  L.leq.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      L.leq[i][j] = L.nodes[i].elements.is_subset_of(L.nodes[j].elements);
  L.mobius = mobius_table(L.leq);
  return L;
}

// Sub_{G,D} together with the trivial subgroup.
inline SubgroupLattice d_lattice(const ClassSetup& s, std::size_t bound = kDefaultLatticeBound) {
  return make_lattice(d_generated_subgroups(s, bound));
}

// chur(H) = sum over H' <= H of mu(H', H) hur(H')
inline std::vector<BigInt> chur_from_hur(const std::vector<BigInt>& hur, const SubgroupLattice& L) {
  if (hur.size() != L.size()) throw PreconditionError("chur_from_hur: one count per lattice node expected");
  std::vector<BigInt> chur(L.size(), 0);
  for (std::size_t h = 0; h < L.size(); ++h) {
    for (std::size_t k = 0; k <= h; ++k)
      if (L.leq[k][h]) chur[h] += L.mobius[k][h] * hur[k];
    if (chur[h] < 0)
      throw VerificationFailure("chur_from_hur: negative count for node " + std::to_string(h) +
                                "; the hur counts are inconsistent");
  }
  return chur;
}

// hur(H) = sum over H' <= H of chur(H')
inline std::vector<BigInt> hur_from_chur_counts(const std::vector<BigInt>& chur, const SubgroupLattice& L) {
  std::vector<BigInt> hur(L.size(), 0);
  for (std::size_t h = 0; h < L.size(); ++h)
    for (std::size_t k = 0; k <= h; ++k)
      if (L.leq[k][h]) hur[h] += chur[k];
  return hur;
}

struct DecompositionRow {
  std::string label;
  std::size_t order = 0;
  std::int64_t omega = 0;
  BigInt chur = 0;
  BigInt hur = 0;  // counts of covers with monodromy inside the subgroup
};

struct DecompositionTable {
  std::int64_t n = 0;
  Space space = Space::affine;
  std::vector<DecompositionRow> rows;  // lattice order
  BigInt hur_direct = 0;
  BigInt hur_sum = 0;
};

// Per-subgroup connected counts, summed and compared with the direct count.
inline DecompositionTable hur_from_chur(const ClassSetup& s, const SubgroupLattice& L, std::int64_t n,
                                        Space space, const EngineConfig& cfg = {}) {
  DecompositionTable t;
  t.n = n;
  t.space = space;
  const FiniteGroup& g = s.group();
  for (const auto& h : L.nodes) {
    DecompositionRow r;
    r.label = subgroup_label(g, h);
    r.order = h.order();
    if (h.order() == 1) {
      r.omega = 0;
      r.chur = n == 0 ? 1 : 0;
      r.hur = r.chur;
    } else {
      auto sub = restrict_setup(s, h);
      r.omega = splitting_number(sub);
      r.chur = count_components(sub, n, space, Connectedness::connected, cfg).total;
      r.hur = count_components(sub, n, space, Connectedness::all, cfg).total;
    }
    t.hur_sum += r.chur;
    t.rows.push_back(std::move(r));
  }
  t.hur_direct = count_components(s, n, space, Connectedness::all, cfg).total;
  if (t.hur_direct != t.hur_sum)
    throw VerificationFailure("decomposition mismatch at n = " + std::to_string(n) + ": direct " +
                              to_string(t.hur_direct) + ", sum over subgroups " + to_string(t.hur_sum));
  // the per-subgroup hur column must invert back to the chur column
  std::vector<BigInt> hur, chur;
  for (const auto& r : t.rows) hur.push_back(r.hur), chur.push_back(r.chur);
  if (chur_from_hur(hur, L) != chur)
    throw VerificationFailure("decomposition: Mobius inversion does not return the connected counts at n = " +
                              std::to_string(n));
  return t;
}

inline void write_decomposition_csv_header(std::ostream& os) { os << "n,subgroup,order,omega,count\n"; }

inline void write_decomposition_csv(std::ostream& os, const ClassSetup& s, const DecompositionTable& t) {
  for (const auto& r : t.rows)
    os << t.n << ",\"" << r.label << "\"," << r.order << ',' << r.omega << ',' << r.chur << '\n';
  os << t.n << ",hur," << s.group().order() << ',' << splitting_number(s) << ',' << t.hur_direct << '\n';
}

}  // namespace hurwitz
