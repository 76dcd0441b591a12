#include <gtest/gtest.h>

#include <memory>
#include <random>

#include "hurwitz/group_spec.hpp"
#include "hurwitz/nielsen.hpp"

using namespace hurwitz;

namespace {

std::shared_ptr<const FiniteGroup> share(FiniteGroup g) {
  return std::make_shared<const FiniteGroup>(std::move(g));
}

NielsenTuple random_tuple(const FiniteGroup& g, std::span<const element_id> pool, std::size_t n,
                          std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  NielsenTuple t;
  for (std::size_t i = 0; i < n; ++i) t.entries.push_back(pool[pick(rng)]);
  return t;
}

// Appends entries until the product is 1 (by appending the inverse of the
// product, which stays inside a class union closed under inverses only when
// that holds; callers use groups where it does).
NielsenTuple close_product(const FiniteGroup& g, NielsenTuple t) {
  element_id p = product(g, t);
  if (p != g.identity()) t.entries.push_back(g.inv(p));
  return t;
}

std::vector<element_id> all_nontrivial(const FiniteGroup& g) {
  std::vector<element_id> v;
  for (element_id x = 1; x < g.order(); ++x) v.push_back(x);
  return v;
}

}  // namespace

TEST(Braid, ForwardExample) {
  auto g = symmetric_group(3);
  auto t = parse_tuple(g, "(1 2),(1 3),(2 3)");
  auto r = apply_braid(g, t, 1);
  EXPECT_EQ(format_tuple(g, r), "(2 3),(1 2),(2 3)");
  EXPECT_THROW(apply_braid(g, t, 0), PreconditionError);
  EXPECT_THROW(apply_braid(g, t, 3), PreconditionError);
}

TEST(Braid, AbelianMovesSwap) {
  auto g = cyclic_group(7);
  NielsenTuple t{1, 3, 5, 2};
  for (std::size_t i = 1; i < 4; ++i) {
    auto r = apply_braid(g, t, i);
    auto e = t;
    std::swap(e[i - 1], e[i]);
    EXPECT_EQ(r, e);
    EXPECT_EQ(apply_braid(g, t, i, true), e);
  }
}

TEST(Braid, InvariantsRelationsAndInverses) {
  std::mt19937_64 rng(11);
  for (const auto& g : {symmetric_group(3), symmetric_group(4), dihedral_group(4), quaternion_group()}) {
    auto pool = all_nontrivial(g);
    for (int trial = 0; trial < 10000; ++trial) {
      auto t = random_tuple(g, pool, 2 + trial % 5, rng);
      std::size_t i = 1 + rng() % (t.size() - 1);
      bool inv = rng() & 1;
      auto r = apply_braid(g, t, i, inv);
      ASSERT_EQ(product(g, r), product(g, t));
      ASSERT_EQ(apply_braid(g, r, i, !inv), t);
      if (trial % 50 == 0) ASSERT_EQ(generated_subgroup(g, r), generated_subgroup(g, t));
      // conjugacy classes of entries are permuted: multiset of classes equal
      if (t.size() >= 3) {
        std::size_t j = 1 + rng() % (t.size() - 2);
        auto a = apply_braid(g, apply_braid(g, apply_braid(g, t, j), j + 1), j);
        auto b = apply_braid(g, apply_braid(g, apply_braid(g, t, j + 1), j), j + 1);
        ASSERT_EQ(a, b);
      }
      if (t.size() >= 4) {
        auto a = apply_braid(g, apply_braid(g, t, 1), 3);
        auto b = apply_braid(g, apply_braid(g, t, 3), 1);
        ASSERT_EQ(a, b);
      }
    }
  }
}

TEST(Braid, MultidiscriminantPreserved) {
  auto g = share(symmetric_group(4));
  ClassSetup s(g, {{g->parse_element("(1 2)")}, {g->parse_element("(1 2 3)")}}, {1, 1});
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10000; ++trial) {
    auto t = random_tuple(*g, s.c(), 2 + trial % 6, rng);
    auto r = apply_braid(*g, t, 1 + rng() % (t.size() - 1), rng() & 1);
    ASSERT_EQ(multidiscriminant(r, s), multidiscriminant(t, s));
  }
}

TEST(Tuple, ProductAndGroup) {
  auto g = symmetric_group(3);
  EXPECT_EQ(product(g, NielsenTuple{}), g.identity());
  EXPECT_EQ(product(g, parse_tuple(g, "(1 2),(1 2)")), g.identity());
  auto p = product(g, parse_tuple(g, "(1 2),(1 3)"));
  EXPECT_EQ(g.element_order(p), 3u);
  // left to right: (1 2) then (1 3) sends 1 -> 2 -> 2, 2 -> 1 -> 3
  EXPECT_EQ(g.label(p), "(1 2 3)");
  EXPECT_EQ(generated_subgroup(g, NielsenTuple{}).order(), 1u);
  EXPECT_EQ(generated_subgroup(g, parse_tuple(g, "(1 2),(1 2)")).order(), 2u);
  EXPECT_EQ(generated_subgroup(g, parse_tuple(g, "(1 2),(1 3)")).order(), 6u);
}

TEST(Tuple, Multidiscriminant) {
  auto s4 = share(symmetric_group(4));
  ClassSetup a(s4, {{s4->parse_element("(1 2)")}}, {1});
  EXPECT_EQ(multidiscriminant(NielsenTuple{}, a).counts, (std::vector<std::int64_t>{0}));
  EXPECT_EQ(multidiscriminant(parse_tuple(*s4, "(1 2),(1 2),(3 4)"), a).counts,
            (std::vector<std::int64_t>{3}));
  EXPECT_THROW(multidiscriminant(parse_tuple(*s4, "(1 2 3)"), a), PreconditionError);
  auto c3 = share(cyclic_group(3));
  ClassSetup b(c3, {{1, 2}}, {1});
  EXPECT_EQ(multidiscriminant(parse_tuple(*c3, "g,g,g^2"), b).counts,
            (std::vector<std::int64_t>{2, 1}));
}

TEST(Tuple, AbelianizedProduct) {
  auto c3 = share(cyclic_group(3));
  ClassSetup b(c3, {{1, 2}}, {1});
  EXPECT_TRUE(abelianized_product(Multidiscriminant{{0, 0}}, b).is_zero());
  EXPECT_TRUE(abelianized_product(Multidiscriminant{{1, 1}}, b).is_zero());
  EXPECT_FALSE(abelianized_product(Multidiscriminant{{1, 0}}, b).is_zero());
  EXPECT_TRUE(abelianized_product(Multidiscriminant{{-2, -2}}, b).is_zero());
  auto s4 = share(symmetric_group(4));
  ClassSetup a(s4, {{s4->parse_element("(1 2)")}}, {1});
  EXPECT_FALSE(abelianized_product(Multidiscriminant{{3}}, a).is_zero());
  EXPECT_TRUE(abelianized_product(Multidiscriminant{{4}}, a).is_zero());
}

TEST(Tuple, AbelianizedProductMatchesProjection) {
  std::mt19937_64 rng(3);
  for (const auto& [grp, reps] :
       std::vector<std::pair<FiniteGroup, std::vector<std::string>>>{
           {symmetric_group(4), {"(1 2)", "(1 2 3)"}},
           {dihedral_group(4), {"(1 2 3 4)", "(2 4)", "(1 2)(3 4)"}},
           {quaternion_group(), {"i", "j", "k"}},
           {direct_product(cyclic_group(2), cyclic_group(4)), {"[g,1]", "[1,g]", "[g,g]"}}}) {
    auto g = share(grp);
    std::vector<std::vector<element_id>> blocks;
    for (const auto& r : reps) blocks.push_back({g->parse_element(r)});
    ClassSetup s(g, blocks, std::vector<std::int64_t>(blocks.size(), 1));
    for (int trial = 0; trial < 500; ++trial) {
      auto t = random_tuple(*g, s.c(), trial % 9, rng);
      EXPECT_EQ(abelianized_product(multidiscriminant(t, s), s),
                s.abelian().project(product(*g, t)));
    }
  }
}

TEST(Tuple, Concatenate) {
  auto g = share(symmetric_group(4));
  ClassSetup s(g, {{g->parse_element("(1 2)")}}, {1});
  auto a = parse_tuple(*g, "(1 2)");
  EXPECT_EQ(concatenate(a, NielsenTuple{}), a);
  EXPECT_EQ(format_tuple(*g, concatenate(a, parse_tuple(*g, "(3 4)"))), "(1 2),(3 4)");
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    auto x = random_tuple(*g, s.c(), trial % 5, rng), y = random_tuple(*g, s.c(), trial % 7, rng);
    auto xy = concatenate(x, y);
    auto mx = multidiscriminant(x, s), my = multidiscriminant(y, s);
    EXPECT_EQ(multidiscriminant(xy, s).counts[0], mx.counts[0] + my.counts[0]);
    EXPECT_EQ(product(*g, xy), g->mul(product(*g, x), product(*g, y)));
  }
}

TEST(DerivedMoves, RotateFixedPoint) {
  auto g = symmetric_group(3);
  auto t = parse_tuple(g, "(1 2),(1 2)");
  auto r = rotate(g, t);
  EXPECT_EQ(r.tuple, t);
  EXPECT_EQ(apply_word(g, t, r.word), t);
  EXPECT_THROW(rotate(g, parse_tuple(g, "(1 2),(1 3)")), PreconditionError);
}

TEST(DerivedMoves, ConjugateTupleAndBlock) {
  auto g = symmetric_group(3);
  auto t = parse_tuple(g, "(1 2),(1 3),(1 2),(1 3),(1 2),(1 3)");
  ASSERT_EQ(product(g, t), g.identity());
  auto c = g.parse_element("(1 2 3)");
  auto r = conjugate_tuple(g, t, c);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ(r.tuple[i], g.conj(c, t[i]));

  auto s4 = symmetric_group(4);
  auto u = parse_tuple(s4, "(1 2),(3 4),(3 4),(1 3)");
  auto rb = conjugate_block(s4, u, 2, 3, s4.parse_element("(1 2)"));
  EXPECT_EQ(format_tuple(s4, rb.tuple), "(1 2),(3 4),(3 4),(1 3)");
  auto rb2 = conjugate_block(s4, u, 2, 3, s4.parse_element("(1 3)"));
  EXPECT_EQ(format_tuple(s4, rb2.tuple), "(1 2),(1 4),(1 4),(1 3)");
  EXPECT_EQ(apply_word(s4, u, rb2.word), rb2.tuple);
  EXPECT_THROW(conjugate_block(s4, u, 1, 2, 0), PreconditionError);
  EXPECT_THROW(conjugate_block(s4, u, 2, 3, s4.parse_element("(2 4)")), PreconditionError);
}

TEST(DerivedMoves, RandomWitnessesReplay) {
  std::mt19937_64 rng(21);
  for (const auto& g : {symmetric_group(3), symmetric_group(4), dihedral_group(4), quaternion_group()}) {
    auto pool = all_nontrivial(g);
    for (int trial = 0; trial < 300; ++trial) {
      auto t = close_product(g, random_tuple(g, pool, 1 + trial % 5, rng));
      if (t.size() > 1) {
        auto r = rotate(g, t);
        ASSERT_EQ(apply_word(g, t, r.word), r.tuple);
      }
      auto h = generated_subgroup(g, t).elements.elements();
      auto a = h[rng() % h.size()];
      auto r = conjugate_tuple(g, t, a);
      ASSERT_EQ(apply_word(g, t, r.word), r.tuple);

      // block in the middle, conjugated by something outside
      auto left = random_tuple(g, pool, 1 + trial % 3, rng);
      auto block = close_product(g, random_tuple(g, pool, 1 + trial % 4, rng));
      auto right = random_tuple(g, pool, trial % 3, rng);
      auto full = concatenate(concatenate(left, block), right);
      auto outside = concatenate(left, right);
      auto hs = generated_subgroup(g, outside).elements.elements();
      auto b = hs[rng() % hs.size()];
      auto rb = conjugate_block(g, full, left.size() + 1, left.size() + block.size(), b);
      ASSERT_EQ(apply_word(g, full, rb.word), rb.tuple);
    }
  }
}
