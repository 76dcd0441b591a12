#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "hurwitz/element_set.hpp"
#include "hurwitz/error.hpp"
#include "hurwitz/group.hpp"
#include "hurwitz/subgroup.hpp"

namespace hurwitz {

// The triple (G, D, xi) with everything derived from it. Blocks are unions of
// whole conjugacy classes; Dstar lists the classes inside c in class-index
// order, and tau maps a Dstar position to its block.
class ClassSetup {
 public:
  ClassSetup(std::shared_ptr<const FiniteGroup> group,
             const std::vector<std::vector<element_id>>& block_reps,
             std::vector<std::int64_t> xi)
      : group_(std::move(group)) {
    const FiniteGroup& g = *group_;
    classes_ = conjugacy_classes(g);
    abel_ = abelianization(g);
    if (block_reps.empty()) throw ParseError("setup needs at least one block");
    if (xi.size() != block_reps.size())
      throw ParseError("setup has " + std::to_string(block_reps.size()) + " blocks but " +
                       std::to_string(xi.size()) + " xi values");
    std::vector<int> owner(classes_.size(), -1);
    for (std::size_t b = 0; b < block_reps.size(); ++b) {
      if (xi[b] <= 0) throw ParseError("xi values must be positive");
      if (block_reps[b].empty()) throw ParseError("empty block");
      std::set<std::size_t> cls;
      for (auto x : block_reps[b]) {
        if (x >= g.order()) throw ParseError("block element out of range");
        if (x == g.identity()) throw ParseError("blocks may not contain the identity");
        cls.insert(classes_.class_of[x]);
      }
      for (auto k : cls) {
        if (owner[k] != -1)
          throw ParseError("blocks " + std::to_string(owner[k] + 1) + " and " +
                           std::to_string(b + 1) + " overlap in the class of " +
                           g.label(classes_.classes[k].front()));
        owner[k] = static_cast<int>(b);
      }
      blocks_.emplace_back(cls.begin(), cls.end());
    }
    xi_ = std::move(xi);
    c_set_ = ElementSet(g.order());
    for (std::size_t k = 0; k < classes_.size(); ++k) {
      if (owner[k] < 0) continue;
      dstar_.push_back(k);
      tau_.push_back(static_cast<std::size_t>(owner[k]));
      for (auto x : classes_.classes[k]) c_set_.insert(x);
    }
    c_ = c_set_.elements();
    if (subgroup_closure(g, std::span<const element_id>(c_)).order() != g.order())
      throw ParseError("the union of the blocks does not generate the group");
    dstar_index_.assign(g.order(), SIZE_MAX);
    for (std::size_t i = 0; i < dstar_.size(); ++i)
      for (auto x : classes_.classes[dstar_[i]]) dstar_index_[x] = i;
    for (auto v : xi_) xi_total_ += v;
  }

  const FiniteGroup& group() const noexcept { return *group_; }
  std::shared_ptr<const FiniteGroup> group_ptr() const noexcept { return group_; }
  const ConjugacyClassTable& classes() const noexcept { return classes_; }
  const Abelianization& abelian() const noexcept { return abel_; }

  std::size_t num_blocks() const noexcept { return blocks_.size(); }
  // Class indices of block b, ascending.
  const std::vector<std::size_t>& block(std::size_t b) const { return blocks_[b]; }
  std::int64_t xi(std::size_t b) const { return xi_[b]; }
  const std::vector<std::int64_t>& xi() const noexcept { return xi_; }
  std::int64_t xi_total() const noexcept { return xi_total_; }

  const std::vector<element_id>& c() const noexcept { return c_; }
  const ElementSet& c_set() const noexcept { return c_set_; }
  bool in_c(element_id x) const { return c_set_.contains(x); }

  std::size_t num_dstar() const noexcept { return dstar_.size(); }
  std::size_t dstar_class(std::size_t i) const { return dstar_[i]; }
  const std::vector<element_id>& dstar_elements(std::size_t i) const {
    return classes_.classes[dstar_[i]];
  }
  std::size_t tau(std::size_t i) const { return tau_[i]; }
  // Position in Dstar of the class of x, or SIZE_MAX outside c.
  std::size_t dstar_index(element_id x) const { return dstar_index_[x]; }
  // Number of Dstar classes mapping to block b.
  std::size_t fiber_size(std::size_t b) const {
    return static_cast<std::size_t>(std::count(tau_.begin(), tau_.end(), b));
  }

  std::size_t omega() const noexcept { return dstar_.size() - blocks_.size(); }

  // Recorded when this setup was obtained by restriction: parent id of each
  // local element id.
  const std::vector<element_id>& embedding() const noexcept { return embedding_; }
  void set_embedding(std::vector<element_id> e) { embedding_ = std::move(e); }

  std::string describe() const {
    std::string s = group_->source().description + " D={";
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      if (b) s += "; ";
      bool first = true;
      for (auto k : blocks_[b]) {
        if (!first) s += " ";
        first = false;
        s += "[" + group_->label(classes_.classes[k].front()) + "]";
      }
      s += " xi=" + std::to_string(xi_[b]);
    }
    return s + "}";
  }

 private:
  std::shared_ptr<const FiniteGroup> group_;
  ConjugacyClassTable classes_;
  Abelianization abel_;
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::int64_t> xi_;
  std::int64_t xi_total_ = 0;
  ElementSet c_set_;
  std::vector<element_id> c_;
  std::vector<std::size_t> dstar_;
  std::vector<std::size_t> tau_;
  std::vector<std::size_t> dstar_index_;
  std::vector<element_id> embedding_;
};

inline std::vector<element_id> block_elements(const ClassSetup& s, std::size_t b) {
  std::vector<element_id> out;
  for (auto k : s.block(b))
    for (auto x : s.classes().classes[k]) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

// H is D-generated: meets every block, and c n H generates H.
inline bool is_d_generated(const ClassSetup& s, const Subgroup& h) {
  for (std::size_t b = 0; b < s.num_blocks(); ++b) {
    auto els = block_elements(s, b);
    if (std::none_of(els.begin(), els.end(), [&](element_id x) { return h.contains(x); }))
      return false;
  }
  auto inter = (s.c_set() & h.elements).elements();
  return subgroup_closure(s.group(), std::span<const element_id>(inter)).elements == h.elements;
}

// Sub_{G,D}: the trivial subgroup plus every D-generated subgroup, in the order
// of all_subgroups.
inline std::vector<Subgroup> d_generated_subgroups(const ClassSetup& s,
                                                   std::size_t bound = kDefaultLatticeBound) {
  std::vector<Subgroup> out;
  for (auto& h : all_subgroups(s.group(), bound))
    if (h.order() == 1 || is_d_generated(s, h)) out.push_back(std::move(h));
  return out;
}

// Re-tables H as its own group (identity first, then ascending parent ids,
// parent labels kept) and carries the blocks gamma n H with the same xi.
inline ClassSetup restrict_setup(const ClassSetup& s, const Subgroup& h) {
  if (h.order() == 1 || !is_d_generated(s, h))
    throw PreconditionError("restrict_setup: subgroup is not D-generated");
  const FiniteGroup& g = s.group();
  std::vector<element_id> elems = h.elements.elements();  // identity (0) first
  std::vector<std::size_t> local(g.order(), SIZE_MAX);
  for (std::size_t i = 0; i < elems.size(); ++i) local[elems[i]] = i;
  std::vector<std::vector<std::size_t>> table(elems.size(), std::vector<std::size_t>(elems.size()));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < elems.size(); ++a) {
    labels.push_back(g.label(elems[a]));
    for (std::size_t b = 0; b < elems.size(); ++b) table[a][b] = local[g.mul(elems[a], elems[b])];
  }
  auto sub = std::make_shared<FiniteGroup>(FiniteGroup::from_cayley(
      table, labels, {"subgroup", subgroup_label(g, h) + " of " + g.source().description}));
  std::vector<std::vector<element_id>> reps;
  for (std::size_t b = 0; b < s.num_blocks(); ++b) {
    std::vector<element_id> r;
    for (auto x : block_elements(s, b))
      if (h.contains(x)) r.push_back(static_cast<element_id>(local[x]));
    reps.push_back(std::move(r));
  }
  ClassSetup out(sub, reps, s.xi());
  out.set_embedding(elems);
  return out;
}

}  // namespace hurwitz
