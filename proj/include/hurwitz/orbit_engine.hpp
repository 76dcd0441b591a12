#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "hurwitz/error.hpp"
#include "hurwitz/exact.hpp"
#include "hurwitz/likely_maps.hpp"
#include "hurwitz/nielsen.hpp"
#include "hurwitz/setup.hpp"

namespace hurwitz {

enum class Space { affine, projective };
enum class Connectedness { all, connected };

inline const char* to_string(Space s) { return s == Space::affine ? "affine" : "projective"; }
inline const char* to_string(Connectedness c) {
  return c == Connectedness::all ? "all" : "connected";
}

struct EngineConfig {
  std::uint64_t max_states = 200'000'000;
  std::uint64_t max_memory = 8ull << 30;  // bytes
  unsigned workers = 1;
  // Orbits of tuples over central elements are multisets; count them directly.
  bool central_shortcut = true;
  // Largest bitmap used for a dense visited set, in bytes.
  std::uint64_t dense_bytes_limit = 4ull << 30;

  // HURWITZ_MAX_STATES, HURWITZ_MAX_MEMORY (bytes, optional K/M/G suffix),
  // HURWITZ_WORKERS override the defaults.
  static EngineConfig from_env() {
    EngineConfig c;
    if (const char* v = std::getenv("HURWITZ_MAX_STATES")) c.max_states = std::stoull(v);
    if (const char* v = std::getenv("HURWITZ_MAX_MEMORY")) c.max_memory = parse_bytes(v);
    if (const char* v = std::getenv("HURWITZ_WORKERS")) c.workers = static_cast<unsigned>(std::stoul(v));
    return c;
  }

  static std::uint64_t parse_bytes(const std::string& text) {
    std::size_t pos = 0;
    std::uint64_t v = std::stoull(text, &pos);
    std::string suffix = text.substr(pos);
    if (suffix.empty() || suffix == "B") return v;
    if (suffix == "K" || suffix == "KiB") return v << 10;
    if (suffix == "M" || suffix == "MiB") return v << 20;
    if (suffix == "G" || suffix == "GiB") return v << 30;
    throw ParseError("bad byte size '" + text + "'");
  }
};

// ---------------------------------------------------------------------------
// Tuples over a fixed alphabet (a union of conjugacy classes, ascending ids)
// packed into one word, first entry in the most significant bits so numeric
// order is lexicographic order.

class TupleCodec {
 public:
  TupleCodec(const FiniteGroup& g, std::vector<element_id> alphabet, std::size_t length)
      : g_(&g), letters_(std::move(alphabet)), n_(length) {
    k_ = letters_.size();
    if (k_ == 0 && n_ > 0) throw PreconditionError("empty alphabet");
    bits_ = k_ <= 1 ? 1 : static_cast<unsigned>(std::bit_width(k_ - 1));
    if (n_ * bits_ > 63)
      throw PreconditionError("tuples of length " + std::to_string(n_) + " over " +
                              std::to_string(k_) + " letters do not fit in one word");
    mask_ = (std::uint64_t{1} << bits_) - 1;
    index_.assign(g.order(), -1);
    for (std::size_t i = 0; i < k_; ++i) index_[letters_[i]] = static_cast<int>(i);
    shift_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) shift_[i] = static_cast<unsigned>((n_ - 1 - i) * bits_);
    conj_fwd_.resize(k_ * k_);
    conj_inv_.resize(k_ * k_);
    for (std::size_t x = 0; x < k_; ++x)
      for (std::size_t y = 0; y < k_; ++y) {
        element_id a = letters_[x], b = letters_[y];
        int f = index_[g.conj(a, b)];
        int v = index_[g.mul(g.mul(g.inv(b), a), b)];
        if (f < 0 || v < 0) throw PreconditionError("alphabet is not closed under conjugation");
        conj_fwd_[x * k_ + y] = static_cast<std::uint16_t>(f);
        conj_inv_[x * k_ + y] = static_cast<std::uint16_t>(v);
      }
    // mixed-radix weights, if k^n fits
    weight_.assign(n_, 0);
    dense_size_ = 1;
    dense_ok_ = true;
    for (std::size_t i = n_; i-- > 0;) {
      weight_[i] = dense_size_;
      if (dense_size_ > (std::uint64_t{1} << 62) / std::max<std::size_t>(k_, 1)) {
        dense_ok_ = false;
        break;
      }
      dense_size_ *= k_;
    }
  }

  const FiniteGroup& group() const { return *g_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t length() const noexcept { return n_; }
  unsigned bits() const noexcept { return bits_; }
  const std::vector<element_id>& letters() const noexcept { return letters_; }
  int index_of(element_id x) const { return index_[x]; }
  bool dense_ok() const noexcept { return dense_ok_; }
  std::uint64_t dense_size() const noexcept { return dense_size_; }

  unsigned letter(std::uint64_t s, std::size_t i) const noexcept {
    return static_cast<unsigned>((s >> shift_[i]) & mask_);
  }
  std::uint64_t with_letter(std::uint64_t s, std::size_t i, unsigned v) const noexcept {
    return (s & ~(mask_ << shift_[i])) | (std::uint64_t{v} << shift_[i]);
  }
  std::uint64_t rank(std::uint64_t s) const noexcept {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < n_; ++i) r += letter(s, i) * weight_[i];
    return r;
  }
  std::uint64_t weight(std::size_t i) const noexcept { return weight_[i]; }

  std::uint64_t encode(const NielsenTuple& t) const {
    if (t.size() != n_) throw PreconditionError("tuple length does not match codec");
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      int v = index_[t[i]];
      if (v < 0) throw PreconditionError("tuple entry outside the alphabet");
      s |= std::uint64_t(v) << shift_[i];
    }
    return s;
  }
  NielsenTuple decode(std::uint64_t s) const {
    NielsenTuple t;
    for (std::size_t i = 0; i < n_; ++i) t.entries.push_back(letters_[letter(s, i)]);
    return t;
  }

  // Calls f(neighbour, neighbour_rank) for each state one elementary move
  // away. parent_rank is only meaningful when with_rank.
  template <class F>
  void for_each_neighbour(std::uint64_t s, std::uint64_t parent_rank, bool with_rank, F&& f) const {
    for (std::size_t p = 0; p + 1 < n_; ++p) {
      unsigned x = letter(s, p), y = letter(s, p + 1);
      if (x == y) continue;
      std::uint64_t clear = s & ~((mask_ << shift_[p]) | (mask_ << shift_[p + 1]));
      unsigned fx = conj_fwd_[x * k_ + y], fy = x;
      unsigned ix = y, iy = conj_inv_[x * k_ + y];
      std::uint64_t a = clear | (std::uint64_t{fx} << shift_[p]) | (std::uint64_t{fy} << shift_[p + 1]);
      std::uint64_t b = clear | (std::uint64_t{ix} << shift_[p]) | (std::uint64_t{iy} << shift_[p + 1]);
      std::uint64_t ra = 0, rb = 0;
      if (with_rank) {
        std::uint64_t base = parent_rank - x * weight_[p] - y * weight_[p + 1];
        ra = base + fx * weight_[p] + fy * weight_[p + 1];
        rb = base + ix * weight_[p] + iy * weight_[p + 1];
      }
      f(a, ra);
      f(b, rb);
    }
  }

 private:
  const FiniteGroup* g_;
  std::vector<element_id> letters_;
  std::size_t n_;
  std::size_t k_ = 0;
  unsigned bits_ = 1;
  std::uint64_t mask_ = 1;
  std::vector<int> index_;
  std::vector<unsigned> shift_;
  std::vector<std::uint16_t> conj_fwd_, conj_inv_;
  std::vector<std::uint64_t> weight_;
  std::uint64_t dense_size_ = 1;
  bool dense_ok_ = true;
};

// ---------------------------------------------------------------------------
// Visited sets. Dense: one bit per mixed-radix rank. Hashed: sharded open
// addressing on the packed word. Both support concurrent insert-if-absent.

class VisitedSet {
 public:
  static std::unique_ptr<VisitedSet> make(const TupleCodec& codec, const EngineConfig& cfg,
                                          std::uint64_t dense_bytes_cap) {
    auto v = std::unique_ptr<VisitedSet>(new VisitedSet());
    std::uint64_t cap = std::min({dense_bytes_cap, cfg.dense_bytes_limit, cfg.max_memory / 2});
    if (codec.dense_ok() && (codec.dense_size() + 63) / 64 * 8 <= cap) {
      v->dense_ = true;
      v->words_ = (codec.dense_size() + 63) / 64;
      v->bits_.reset(static_cast<std::uint64_t*>(std::calloc(v->words_, sizeof(std::uint64_t))));
      if (!v->bits_) throw BudgetExceeded("could not allocate visited bitmap", 0, 0);
    } else {
      v->shards_.resize(kShards);
    }
    return v;
  }

  bool dense() const noexcept { return dense_; }

  bool contains(std::uint64_t state, std::uint64_t rank) const {
    if (dense_) return (bits_.get()[rank >> 6] >> (rank & 63)) & 1u;
    const Shard& sh = shards_[shard_of(state)];
    return sh.find(state + 1);
  }

  // Returns true when newly inserted.
  bool insert(std::uint64_t state, std::uint64_t rank, bool concurrent) {
    if (dense_) {
      std::uint64_t bit = std::uint64_t{1} << (rank & 63);
      std::uint64_t& w = bits_.get()[rank >> 6];
      if (concurrent) return (std::atomic_ref<std::uint64_t>(w).fetch_or(bit) & bit) == 0;
      if (w & bit) return false;
      w |= bit;
      return true;
    }
    Shard& sh = shards_[shard_of(state)];
    if (concurrent) {
      std::lock_guard<std::mutex> lock(sh.mu);
      return sh.insert(state + 1);
    }
    return sh.insert(state + 1);
  }

  std::uint64_t memory_bytes() const {
    if (dense_) return words_ * 8;
    std::uint64_t b = 0;
    for (const auto& s : shards_) b += s.slots.size() * 8;
    return b;
  }

  void clear_hashed() {
    if (dense_) return;
    for (auto& s : shards_) {
      std::vector<std::uint64_t>().swap(s.slots);
      s.used = 0;
    }
  }

 private:
  static constexpr std::size_t kShards = 64;

  struct Shard {
    std::mutex mu;
    std::vector<std::uint64_t> slots;  // key+1, 0 = empty
    std::size_t used = 0;

    Shard() = default;
    Shard(Shard&& o) noexcept : slots(std::move(o.slots)), used(o.used) {}

    static std::uint64_t mix(std::uint64_t x) {
      x ^= x >> 31;
      x *= 0x7fb5d329728ea185ull;
      x ^= x >> 27;
      x *= 0x81dadef4bc2dd44dull;
      return x ^ (x >> 33);
    }
    bool find(std::uint64_t key) const {
      if (slots.empty()) return false;
      std::size_t m = slots.size() - 1;
      for (std::size_t i = mix(key) & m;; i = (i + 1) & m) {
        if (slots[i] == key) return true;
        if (slots[i] == 0) return false;
      }
    }
    bool insert(std::uint64_t key) {
      if ((used + 1) * 2 > slots.size()) grow();
      std::size_t m = slots.size() - 1;
      for (std::size_t i = mix(key) & m;; i = (i + 1) & m) {
        if (slots[i] == key) return false;
        if (slots[i] == 0) {
          slots[i] = key;
          ++used;
          return true;
        }
      }
    }
    void grow() {
      std::vector<std::uint64_t> old;
      old.swap(slots);
      slots.assign(std::max<std::size_t>(64, old.size() * 2), 0);
      std::size_t m = slots.size() - 1;
      for (auto key : old) {
        if (!key) continue;
        std::size_t i = mix(key) & m;
        while (slots[i]) i = (i + 1) & m;
        slots[i] = key;
      }
    }
  };

  static std::size_t shard_of(std::uint64_t state) {
    return (Shard::mix(state ^ 0x9e3779b97f4a7c15ull) >> 58) & (kShards - 1);
  }

  struct FreeDeleter {
    void operator()(std::uint64_t* p) const { std::free(p); }
  };

  VisitedSet() = default;
  bool dense_ = false;
  std::uint64_t words_ = 0;
  std::unique_ptr<std::uint64_t, FreeDeleter> bits_;
  std::vector<Shard> shards_;
};

// Global state counter for one query.
class Budget {
 public:
  explicit Budget(const EngineConfig& cfg) : cfg_(cfg) {}
  void add(std::uint64_t states, std::uint64_t frontier, const VisitedSet& v) {
    total_ += states;
    if (total_ > cfg_.max_states)
      throw BudgetExceeded("state budget of " + std::to_string(cfg_.max_states) + " exceeded",
                           total_, frontier);
    if (!v.dense() && v.memory_bytes() + frontier * 16 > cfg_.max_memory)
      throw BudgetExceeded("memory budget of " + std::to_string(cfg_.max_memory) + " bytes exceeded",
                           total_, frontier);
  }
  std::uint64_t total() const noexcept { return total_; }

 private:
  const EngineConfig& cfg_;
  std::uint64_t total_ = 0;
};

struct OrbitScan {
  std::uint64_t size = 0;
  std::uint64_t min_state = 0;
  bool found_target = false;
};

// Breadth-first closure of `seed` (not yet visited). Stops early when
// `target` is reached.
inline OrbitScan explore_orbit(const TupleCodec& codec, VisitedSet& visited, std::uint64_t seed,
                               Budget& budget, unsigned workers,
                               std::optional<std::uint64_t> target = std::nullopt) {
  const bool with_rank = visited.dense();
  OrbitScan scan;
  visited.insert(seed, with_rank ? codec.rank(seed) : 0, false);
  scan.size = 1;
  scan.min_state = seed;
  if (target && *target == seed) {
    scan.found_target = true;
    return scan;
  }
  budget.add(1, 1, visited);
  std::vector<std::uint64_t> frontier{seed}, next;
  constexpr std::size_t kParallelThreshold = 4096;
  while (!frontier.empty()) {
    next.clear();
    bool hit = false;
    if (workers > 1 && frontier.size() >= kParallelThreshold) {
      std::vector<std::vector<std::uint64_t>> local(workers);
      std::vector<std::uint64_t> local_min(workers, ~0ull);
      std::vector<char> local_hit(workers, 0);
      std::vector<std::thread> pool;
      std::size_t chunk = (frontier.size() + workers - 1) / workers;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          std::size_t lo = w * chunk, hi = std::min(frontier.size(), lo + chunk);
          for (std::size_t i = lo; i < hi; ++i) {
            std::uint64_t s = frontier[i];
            codec.for_each_neighbour(s, with_rank ? codec.rank(s) : 0, with_rank,
                                     [&](std::uint64_t t, std::uint64_t r) {
                                       if (visited.insert(t, r, true)) {
                                         local[w].push_back(t);
                                         local_min[w] = std::min(local_min[w], t);
                                         if (target && t == *target) local_hit[w] = 1;
                                       }
                                     });
          }
        });
      }
      for (auto& t : pool) t.join();
      for (unsigned w = 0; w < workers; ++w) {
        next.insert(next.end(), local[w].begin(), local[w].end());
        scan.min_state = std::min(scan.min_state, local_min[w]);
        hit = hit || local_hit[w];
      }
    } else {
      for (std::uint64_t s : frontier) {
        codec.for_each_neighbour(s, with_rank ? codec.rank(s) : 0, with_rank,
                                 [&](std::uint64_t t, std::uint64_t r) {
                                   if (visited.insert(t, r, false)) {
                                     next.push_back(t);
                                     if (t < scan.min_state) scan.min_state = t;
                                     if (target && t == *target) hit = true;
                                   }
                                 });
      }
    }
    scan.size += next.size();
    budget.add(next.size(), next.size(), visited);
    if (hit) {
      scan.found_target = true;
      return scan;
    }
    frontier.swap(next);
  }
  return scan;
}

// ---------------------------------------------------------------------------

struct OrbitRecord {
  NielsenTuple canonical_rep;
  BigInt orbit_size;
  element_id product = 0;
  Subgroup group;
  std::vector<std::int64_t> class_counts;  // indexed by the group's (or setup's) classes
};

// Union of the conjugacy classes of the entries, ascending.
inline std::vector<element_id> class_closure_alphabet(const FiniteGroup& g, const NielsenTuple& t) {
  auto cls = conjugacy_classes(g);
  std::vector<bool> take(cls.size(), false);
  for (auto x : t.entries) take[cls.class_of[x]] = true;
  std::vector<element_id> a;
  for (std::size_t k = 0; k < cls.size(); ++k)
    if (take[k]) a.insert(a.end(), cls.classes[k].begin(), cls.classes[k].end());
  std::sort(a.begin(), a.end());
  return a;
}

inline std::vector<std::int64_t> class_counts(const ConjugacyClassTable& cls, const NielsenTuple& t) {
  std::vector<std::int64_t> c(cls.size(), 0);
  for (auto x : t.entries) ++c[cls.class_of[x]];
  return c;
}

// Dense bitmaps for single-orbit searches stay small; larger spaces hash.
inline constexpr std::uint64_t kSingleOrbitDenseBytes = std::uint64_t{1} << 24;

inline OrbitRecord enumerate_orbit(const FiniteGroup& g, const NielsenTuple& t,
                                   const EngineConfig& cfg = {}) {
  OrbitRecord rec;
  rec.product = product(g, t);
  rec.group = generated_subgroup(g, t);
  rec.class_counts = class_counts(conjugacy_classes(g), t);
  if (t.empty()) {
    rec.orbit_size = 1;
    return rec;
  }
  TupleCodec codec(g, class_closure_alphabet(g, t), t.size());
  auto visited = VisitedSet::make(codec, cfg, kSingleOrbitDenseBytes);
  Budget budget(cfg);
  auto scan = explore_orbit(codec, *visited, codec.encode(t), budget, cfg.workers);
  rec.canonical_rep = codec.decode(scan.min_state);
  rec.orbit_size = scan.size;
  return rec;
}

inline bool same_orbit(const FiniteGroup& g, const NielsenTuple& a, const NielsenTuple& b,
                       const EngineConfig& cfg = {}) {
  if (a.size() != b.size()) return false;
  if (a == b) return true;
  if (product(g, a) != product(g, b)) return false;
  auto cls = conjugacy_classes(g);
  if (class_counts(cls, a) != class_counts(cls, b)) return false;
  if (!(generated_subgroup(g, a) == generated_subgroup(g, b))) return false;
  TupleCodec codec(g, class_closure_alphabet(g, a), a.size());
  auto visited = VisitedSet::make(codec, cfg, kSingleOrbitDenseBytes);
  Budget budget(cfg);
  return explore_orbit(codec, *visited, codec.encode(a), budget, cfg.workers, codec.encode(b))
      .found_target;
}

// ---------------------------------------------------------------------------
// Bucketed component counting.

struct BucketCount {
  Multidiscriminant psi;
  std::uint64_t components = 0;
};

struct CountResult {
  BigInt total = 0;
  std::vector<BucketCount> buckets;  // every likely map, in lexicographic order
  std::uint64_t states = 0;
  std::uint64_t largest_orbit = 0;
  bool central_shortcut = false;

  std::uint64_t max_bucket() const {
    std::uint64_t m = 0;
    for (const auto& b : buckets) m = std::max(m, b.components);
    return m;
  }
};

namespace detail {

inline bool c_is_central(const ClassSetup& s) {
  const FiniteGroup& g = s.group();
  for (auto x : s.c())
    for (element_id y = 0; y < g.order(); ++y)
      if (g.mul(x, y) != g.mul(y, x)) return false;
  return true;
}

// Orbits within one bucket, each reported through `emit(min_state, size)`.
class BucketSweeper {
 public:
  BucketSweeper(const ClassSetup& s, const TupleCodec& codec, VisitedSet& visited, Budget& budget,
                Space space, Connectedness conn, unsigned workers)
      : s_(s), g_(s.group()), codec_(codec), visited_(visited), budget_(budget), space_(space),
        conn_(conn), workers_(workers) {
    cls_of_letter_.resize(codec.k());
    for (std::size_t i = 0; i < codec.k(); ++i) cls_of_letter_[i] = s.dstar_index(codec.letters()[i]);
  }

  template <class Emit>
  void sweep(const Multidiscriminant& psi, Emit&& emit) {
    remaining_ = psi.counts;
    n_ = codec_.length();
    auto emit_fn = [&](std::uint64_t m, std::uint64_t sz) { emit(m, sz); };
    emit_ = emit_fn;
    dfs(0, 0, 0, g_.identity(), 0);
  }

  std::uint64_t largest_orbit() const noexcept { return largest_; }

 private:
  bool generates_mask(std::uint64_t mask) {
    auto it = gen_cache_.find(mask);
    if (it != gen_cache_.end()) return it->second;
    std::vector<element_id> gens;
    for (std::size_t i = 0; i < codec_.k(); ++i)
      if (mask >> i & 1u) gens.push_back(codec_.letters()[i]);
    bool r = subgroup_closure(g_, std::span<const element_id>(gens)).order() == g_.order();
    gen_cache_.emplace(mask, r);
    return r;
  }

  bool generates_state(std::uint64_t state, std::uint64_t mask) {
    if (codec_.k() <= 64) return generates_mask(mask);
    return generates(g_, codec_.decode(state));
  }

  void leaf(std::uint64_t state, std::uint64_t rank, std::uint64_t mask) {
    if (visited_.contains(state, rank)) return;
    if (conn_ == Connectedness::connected && !generates_state(state, mask)) return;
    auto scan = explore_orbit(codec_, visited_, state, budget_, workers_);
    if (scan.min_state != state)
      throw std::logic_error("orbit seed is not the lexicographic minimum of its orbit");
    largest_ = std::max(largest_, scan.size);
    emit_(state, scan.size);
  }

  // mask: letters used so far (only meaningful for k <= 64).
  void dfs(std::size_t pos, std::uint64_t state, std::uint64_t rank, element_id prefix,
           std::uint64_t mask) {
    const bool dense = visited_.dense();
    if (pos == n_) {
      leaf(state, rank, mask);
      return;
    }
    if (space_ == Space::projective && pos + 1 == n_) {
      int v = codec_.index_of(g_.inv(prefix));
      if (v < 0) return;
      std::size_t c = cls_of_letter_[v];
      if (remaining_[c] != 1) return;
      std::uint64_t st = state | (std::uint64_t(v) << ((n_ - 1 - pos) * codec_.bits()));
      leaf(st, dense ? rank + v * codec_.weight(pos) : 0, mask | bit(static_cast<std::size_t>(v)));
      return;
    }
    for (std::size_t v = 0; v < codec_.k(); ++v) {
      std::size_t c = cls_of_letter_[v];
      if (remaining_[c] == 0) continue;
      --remaining_[c];
      std::uint64_t st = state | (std::uint64_t(v) << ((n_ - 1 - pos) * codec_.bits()));
      dfs(pos + 1, st, dense ? rank + v * codec_.weight(pos) : 0,
          g_.mul(prefix, codec_.letters()[v]), mask | bit(v));
      ++remaining_[c];
    }
  }

  static std::uint64_t bit(std::size_t v) { return v < 64 ? std::uint64_t{1} << v : 0; }

  const ClassSetup& s_;
  const FiniteGroup& g_;
  const TupleCodec& codec_;
  VisitedSet& visited_;
  Budget& budget_;
  Space space_;
  Connectedness conn_;
  unsigned workers_;
  std::vector<std::size_t> cls_of_letter_;
  std::vector<std::int64_t> remaining_;
  std::size_t n_ = 0;
  std::function<void(std::uint64_t, std::uint64_t)> emit_;
  std::unordered_map<std::uint64_t, bool> gen_cache_;
  std::uint64_t largest_ = 0;
};

inline BigInt multinomial(const std::vector<std::int64_t>& parts) {
  BigInt r = 1;
  std::uint64_t acc = 0;
  for (auto p : parts) {
    acc += static_cast<std::uint64_t>(p);
    r *= binomial(acc, static_cast<std::uint64_t>(p));
  }
  return r;
}

// With c central every orbit is a multiset; a bucket is a single orbit.
inline std::optional<OrbitRecord> central_bucket(const ClassSetup& s, const Multidiscriminant& psi,
                                                 Space space, Connectedness conn) {
  const FiniteGroup& g = s.group();
  element_id prod = g.identity();
  NielsenTuple rep;
  std::vector<element_id> used;
  std::vector<std::pair<element_id, std::int64_t>> ordered;
  for (std::size_t i = 0; i < psi.counts.size(); ++i)
    ordered.emplace_back(s.dstar_elements(i).front(), psi.counts[i]);
  std::sort(ordered.begin(), ordered.end());
  for (auto [x, m] : ordered) {
    prod = g.mul(prod, g.power(x, m));
    for (std::int64_t j = 0; j < m; ++j) rep.entries.push_back(x);
    if (m > 0) used.push_back(x);
  }
  if (space == Space::projective && prod != g.identity()) return std::nullopt;
  Subgroup h = subgroup_closure(g, std::span<const element_id>(used));
  if (conn == Connectedness::connected && h.order() != g.order()) return std::nullopt;
  OrbitRecord rec;
  rec.canonical_rep = std::move(rep);
  rec.orbit_size = multinomial(psi.counts);
  rec.product = prod;
  rec.group = std::move(h);
  rec.class_counts = psi.counts;
  return rec;
}

inline std::size_t psi_total(const Multidiscriminant& psi) {
  std::int64_t t = 0;
  for (auto v : psi.counts) {
    if (v < 0) throw PreconditionError("multidiscriminant entries must be nonnegative");
    t += v;
  }
  return static_cast<std::size_t>(t);
}

template <class OnOrbit>
void sweep_buckets(const ClassSetup& s, std::size_t length, const std::vector<Multidiscriminant>& buckets,
                   Space space, Connectedness conn, const EngineConfig& cfg, CountResult& out,
                   OnOrbit&& on_orbit) {
  const FiniteGroup& g = s.group();
  if (cfg.central_shortcut && c_is_central(s)) {
    out.central_shortcut = true;
    for (const auto& psi : buckets) {
      auto rec = central_bucket(s, psi, space, conn);
      out.buckets.push_back({psi, rec ? 1u : 0u});
      if (rec) {
        out.total += 1;
        on_orbit(psi, *rec);
      }
    }
    return;
  }
  if (length == 0) {
    for (const auto& psi : buckets) {
      bool ok = conn == Connectedness::all || g.order() == 1;
      out.buckets.push_back({psi, ok ? 1u : 0u});
      if (ok) {
        out.total += 1;
        OrbitRecord rec;
        rec.orbit_size = 1;
        rec.group = subgroup_closure(g, std::span<const element_id>{});
        rec.class_counts = psi.counts;
        on_orbit(psi, rec);
      }
    }
    return;
  }
  TupleCodec codec(g, s.c(), length);
  auto visited = VisitedSet::make(codec, cfg, cfg.dense_bytes_limit);
  Budget budget(cfg);
  BucketSweeper sweeper(s, codec, *visited, budget, space, conn, cfg.workers);
  for (const auto& psi : buckets) {
    if (space == Space::projective && !is_really_likely(psi, s)) {
      out.buckets.push_back({psi, 0});
      continue;
    }
    std::uint64_t count = 0;
    sweeper.sweep(psi, [&](std::uint64_t min_state, std::uint64_t size) {
      ++count;
      OrbitRecord rec;
      rec.canonical_rep = codec.decode(min_state);
      rec.orbit_size = size;
      rec.product = product(g, rec.canonical_rep);
      rec.class_counts = psi.counts;
      on_orbit(psi, rec);
    });
    out.buckets.push_back({psi, count});
    out.total += count;
    visited->clear_hashed();
  }
  out.states = budget.total();
  out.largest_orbit = sweeper.largest_orbit();
}

}  // namespace detail

// Number of braid orbits of tuples over c of length n|xi| whose block counts
// are n*xi, with product 1 in projective space and generating G when
// connected.
inline CountResult count_components(const ClassSetup& s, std::int64_t n, Space space,
                                    Connectedness conn, const EngineConfig& cfg = {}) {
  if (n < 0) throw PreconditionError("degree must be nonnegative");
  CountResult out;
  auto buckets = enumerate_likely_maps(s, n);
  detail::sweep_buckets(s, static_cast<std::size_t>(n * s.xi_total()), buckets, space, conn, cfg,
                        out, [](const Multidiscriminant&, const OrbitRecord&) {});
  return out;
}

// All orbits whose multidiscriminant is exactly psi.
inline std::vector<OrbitRecord> components_by_multidiscriminant(const ClassSetup& s,
                                                                const Multidiscriminant& psi,
                                                                Space space, Connectedness conn,
                                                                const EngineConfig& cfg = {}) {
  if (psi.counts.size() != s.num_dstar())
    throw PreconditionError("multidiscriminant length does not match the setup");
  std::size_t length = detail::psi_total(psi);
  CountResult out;
  std::vector<OrbitRecord> records;
  detail::sweep_buckets(s, length, {psi}, space, conn, cfg, out,
                        [&](const Multidiscriminant&, const OrbitRecord& r) { records.push_back(r); });
  for (auto& r : records) r.group = generated_subgroup(s.group(), r.canonical_rep);
  return records;
}

// Same as count_components but also returns one record per orbit.
inline std::vector<OrbitRecord> list_components(const ClassSetup& s, std::int64_t n, Space space,
                                                Connectedness conn, const EngineConfig& cfg = {}) {
  CountResult out;
  std::vector<OrbitRecord> records;
  auto buckets = enumerate_likely_maps(s, n);
  detail::sweep_buckets(s, static_cast<std::size_t>(n * s.xi_total()), buckets, space, conn, cfg,
                        out, [&](const Multidiscriminant&, const OrbitRecord& r) { records.push_back(r); });
  for (auto& r : records) r.group = generated_subgroup(s.group(), r.canonical_rep);
  return records;
}

}  // namespace hurwitz
