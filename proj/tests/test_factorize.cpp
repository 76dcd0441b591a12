#include <gtest/gtest.h>

#include <memory>
#include <random>

#include "hurwitz/factorize.hpp"
#include "hurwitz/stable.hpp"

using namespace hurwitz;

namespace {

std::shared_ptr<const FiniteGroup> share(FiniteGroup g) {
  return std::make_shared<const FiniteGroup>(std::move(g));
}

NielsenTuple random_tuple(std::mt19937_64& rng, const std::vector<element_id>& pool, std::size_t n) {
  NielsenTuple t;
  for (std::size_t i = 0; i < n; ++i) t.entries.push_back(pool[rng() % pool.size()]);
  return t;
}

}  // namespace

TEST(Factorize, EmptyFactor) {
  auto g = symmetric_group(3);
  auto big = parse_tuple(g, "(1 2),(1 3),(2 3)");
  auto f = factorize(g, NielsenTuple{}, big);
  EXPECT_EQ(f.remainder, big);
  EXPECT_TRUE(f.witness.empty());
}

TEST(Factorize, CyclicTwo) {
  auto g = cyclic_group(2);
  NielsenTuple t{1}, big{1, 1, 1};
  auto f = factorize(g, t, big);
  EXPECT_EQ(f.remainder, (NielsenTuple{1, 1}));
  EXPECT_TRUE(generates(g, f.remainder));
  EXPECT_THROW(factorize(g, t, NielsenTuple{1, 1}), FactorizationHypothesisError);
}

TEST(Factorize, DeficitsAreReportedPerClass) {
  auto g = symmetric_group(3);
  auto big = parse_tuple(g, "(1 2),(1 3),(2 3),(1 2),(1 2 3)");
  try {
    factorize(g, parse_tuple(g, "(1 2),(1 3)"), big);
    FAIL();
  } catch (const FactorizationHypothesisError& e) {
    ASSERT_EQ(e.deficits().size(), 1u);
    EXPECT_EQ(e.deficits()[0].required, 8u);  // 3*2 + 2
    EXPECT_EQ(e.deficits()[0].available, 4u);
  }
}

TEST(Factorize, S3ThirteenTranspositions) {
  auto g = symmetric_group(3);
  auto big = parse_tuple(g, "(1 2),(1 3),(2 3),(1 3),(1 3),(2 3),(1 2),(2 3),(2 3),(1 3),(1 2),(1 3),(2 3)");
  ASSERT_EQ(big.size(), 13u);
  auto f = factorize(g, parse_tuple(g, "(1 2)"), big);
  EXPECT_EQ(f.remainder.size(), 12u);
  EXPECT_TRUE(generates(g, f.remainder));
  EXPECT_EQ(apply_word(g, big, f.witness), concatenate(parse_tuple(g, "(1 2)"), f.remainder));

  // reduced instance: orbit oracle agrees with the replay
  auto small = parse_tuple(g, "(1 3),(2 3),(1 3),(1 3),(2 3),(2 3),(1 2)");
  auto fs = factorize(g, parse_tuple(g, "(1 2)"), small);
  EXPECT_TRUE(same_orbit(g, concatenate(parse_tuple(g, "(1 2)"), fs.remainder), small));
}

TEST(Factorize, RandomAdmissibleInstances) {
  std::mt19937_64 rng(36);
  struct Case {
    FiniteGroup g;
    std::vector<element_id> pool;
  };
  std::vector<Case> cases;
  {
    auto g = cyclic_group(2);
    cases.push_back(Case{g, {1}});
  }
  {
    auto g = symmetric_group(3);
    cases.push_back(Case{g, {g.parse_element("(1 2)"), g.parse_element("(1 3)"), g.parse_element("(2 3)"),
                         g.parse_element("(1 2 3)"), g.parse_element("(1 3 2)")}});
  }
  {
    std::vector<Permutation> gens{parse_permutation("(1 2)", 4), parse_permutation("(3 4)", 4)};
    auto g = FiniteGroup::from_permutations(gens, {"test", "<(1 2),(3 4)>"});
    cases.push_back(Case{g, {g.parse_element("(1 2)"), g.parse_element("(3 4)"), g.parse_element("(1 2)(3 4)")}});
  }
  std::size_t done = 0, orbit_checked = 0;
  for (std::size_t trial = 0; done < 150; ++trial) {
    const auto& c = cases[trial % cases.size()];
    const auto& g = c.g;
    auto big = random_tuple(rng, c.pool, 6 + rng() % 9);
    if (!generates(g, big)) continue;
    auto ct = conjugacy_classes(g);
    std::vector<std::size_t> have(ct.size(), 0);
    for (auto x : big.entries) ++have[ct.class_of[x]];
    NielsenTuple fac;
    for (std::size_t k = 0, want = 1 + rng() % 3; k < want; ++k) {
      auto x = c.pool[rng() % c.pool.size()];
      std::size_t cls = ct.class_of[x];
      std::size_t used = 0;
      for (auto y : fac.entries) used += ct.class_of[y] == cls;
      if (have[cls] >= ct.classes[cls].size() * ct.class_order[cls] + used + 1) fac.entries.push_back(x);
    }
    auto f = factorize(g, fac, big);
    EXPECT_TRUE(generates(g, f.remainder));
    EXPECT_EQ(f.remainder.size() + fac.size(), big.size());
    EXPECT_EQ(apply_word(g, big, f.witness), concatenate(fac, f.remainder));
    if (big.size() <= 9) {
      EXPECT_TRUE(same_orbit(g, concatenate(fac, f.remainder), big));
      ++orbit_checked;
    }
    ++done;
  }
  EXPECT_GT(orbit_checked, 20u);
}

TEST(Factorize, GeneratingSeed) {
  auto s4 = share(symmetric_group(4));
  ClassSetup s(s4, {{s4->parse_element("(1 2)")}}, {1});
  auto seed = generating_seed(s);
  EXPECT_EQ(seed.degree, 3);
  EXPECT_TRUE(generates(*s4, seed.tuple));

  auto c3 = share(cyclic_group(3));
  ClassSetup b(c3, {{1, 2}}, {1});
  EXPECT_EQ(generating_seed(b).degree, 1);
}

TEST(Stable, IsMBig) {
  auto g = symmetric_group(4);
  EXPECT_TRUE(is_M_big(g, NielsenTuple{}, 5));
  auto t = parse_tuple(g, "(1 2),(1 2)");
  EXPECT_TRUE(is_M_big(g, t, 2));
  EXPECT_FALSE(is_M_big(g, t, 3));
  auto v = parse_tuple(g, "(1 2),(1 2),(3 4),(3 4)");
  EXPECT_TRUE(is_M_big(g, v, 2));
  EXPECT_FALSE(is_M_big(g, v, 3));  // two classes of <t>, two entries each
  EXPECT_TRUE(is_M_big(g, parse_tuple(g, "(1 2),(2 3),(1 2),(2 3)"), 3));  // one class of <t>
  EXPECT_FALSE(is_M_big(g, parse_tuple(g, "(1 2),(2 3),(1 2),(2 3)"), 5));
}

TEST(Stable, Equivalence) {
  auto s3 = share(symmetric_group(3));
  ClassSetup s(s3, {{s3->parse_element("(1 2)")}}, {1});
  const auto& g = *s3;
  auto t = parse_tuple(g, "(1 2),(1 2),(1 3),(1 3)");
  auto r = stable_equivalence(s, t, t, 2);
  EXPECT_EQ(r.verdict, StableVerdict::equal);
  EXPECT_EQ(r.rounds, 0);

  auto u = parse_tuple(g, "(1 3),(1 3),(2 3),(2 3)");
  ASSERT_EQ(product(g, u), g.identity());
  ASSERT_TRUE(generates(g, u) && generates(g, t));
  EXPECT_EQ(stable_equivalence(s, t, u, 2).verdict, StableVerdict::equal);

  EXPECT_THROW(stable_equivalence(s, t, parse_tuple(g, "(1 2),(1 2),(1 2),(1 2)"), 1), PreconditionError);
  auto c3 = share(cyclic_group(3));
  ClassSetup b(c3, {{1, 2}}, {1});
  EXPECT_THROW(stable_equivalence(b, NielsenTuple{1, 1}, NielsenTuple{1, 2}, 1), PreconditionError);
}

TEST(Stable, BignessThreshold) {
  auto s3 = share(symmetric_group(3));
  ClassSetup s(s3, {{s3->parse_element("(1 2)")}}, {1});
  EXPECT_EQ(default_bigness_threshold(s), 7);  // 3 * 2 + 1
}
