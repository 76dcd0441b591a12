#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hurwitz/exact.hpp"
#include "hurwitz/nielsen.hpp"
#include "hurwitz/setup.hpp"

namespace hurwitz {

// Per-block targets n * xi(gamma).
inline std::vector<std::int64_t> block_targets(const ClassSetup& s, std::int64_t n) {
  std::vector<std::int64_t> t;
  for (std::size_t b = 0; b < s.num_blocks(); ++b) t.push_back(n * s.xi(b));
  return t;
}

inline BigInt count_likely_maps(const ClassSetup& s, std::int64_t n) {
  if (n < 0) throw PreconditionError("degree must be nonnegative");
  BigInt r = 1;
  for (std::size_t b = 0; b < s.num_blocks(); ++b) {
    std::uint64_t m = s.fiber_size(b);
    r *= binomial(static_cast<std::uint64_t>(n * s.xi(b)) + m - 1, m - 1);
  }
  return r;
}

// Visits every nonnegative psi over Dstar whose block sums are `targets`, in
// lexicographic order. Return false from the visitor to stop early.
inline void for_each_map_with_block_sums(const ClassSetup& s,
                                         const std::vector<std::int64_t>& targets,
                                         const std::function<bool(const Multidiscriminant&)>& visit) {
  const std::size_t k = s.num_dstar();
  std::vector<std::size_t> last_of_block(s.num_blocks(), 0);
  for (std::size_t i = 0; i < k; ++i) last_of_block[s.tau(i)] = i;
  Multidiscriminant psi{std::vector<std::int64_t>(k, 0)};
  std::vector<std::int64_t> remaining = targets;
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (stop) return;
    if (i == k) {
      if (!visit(psi)) stop = true;
      return;
    }
    std::size_t b = s.tau(i);
    if (last_of_block[b] == i) {
      psi.counts[i] = remaining[b];
      remaining[b] = 0;
      rec(i + 1);
      remaining[b] = psi.counts[i];
      psi.counts[i] = 0;
      return;
    }
    std::int64_t avail = remaining[b];
    for (std::int64_t v = 0; v <= avail && !stop; ++v) {
      psi.counts[i] = v;
      remaining[b] = avail - v;
      rec(i + 1);
    }
    psi.counts[i] = 0;
    remaining[b] = avail;
  };
  rec(0);
}

inline void for_each_likely_map(const ClassSetup& s, std::int64_t n,
                                const std::function<bool(const Multidiscriminant&)>& visit) {
  if (n < 0) throw PreconditionError("degree must be nonnegative");
  for_each_map_with_block_sums(s, block_targets(s, n), visit);
}

inline std::vector<Multidiscriminant> enumerate_likely_maps(const ClassSetup& s, std::int64_t n) {
  std::vector<Multidiscriminant> out;
  for_each_likely_map(s, n, [&](const Multidiscriminant& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

inline bool is_really_likely(const Multidiscriminant& psi, const ClassSetup& s) {
  return abelianized_product(psi, s).is_zero();
}

// Spreads each block's n*xi as evenly as possible over its classes, extra
// units going to the lower class indices.
inline Multidiscriminant balanced_likely_map(const ClassSetup& s, std::int64_t n) {
  Multidiscriminant psi{std::vector<std::int64_t>(s.num_dstar(), 0)};
  for (std::size_t b = 0; b < s.num_blocks(); ++b) {
    std::int64_t total = n * s.xi(b), m = static_cast<std::int64_t>(s.fiber_size(b));
    std::int64_t j = 0;
    for (std::size_t i = 0; i < s.num_dstar(); ++i) {
      if (s.tau(i) != b) continue;
      psi.counts[i] = total / m + (j < total % m ? 1 : 0);
      ++j;
    }
  }
  return psi;
}

}  // namespace hurwitz
