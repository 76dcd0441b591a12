#include <gtest/gtest.h>

#include <memory>
#include <sstream>

#include "hurwitz/decomposition.hpp"

using namespace hurwitz;

namespace {

std::shared_ptr<const FiniteGroup> share(FiniteGroup g) {
  return std::make_shared<const FiniteGroup>(std::move(g));
}

ClassSetup transpositions(std::size_t d) {
  auto g = share(symmetric_group(d));
  return ClassSetup(g, {{g->parse_element("(1 2)")}}, {1});
}

std::int64_t mu_bottom_top(const SubgroupLattice& L) { return L.mobius.front().back(); }

}  // namespace

TEST(Mobius, SmallLattices) {
  EXPECT_EQ(mu_bottom_top(make_lattice(all_subgroups(cyclic_group(2)))), -1);
  auto c6 = make_lattice(all_subgroups(cyclic_group(6)));
  ASSERT_EQ(c6.size(), 4u);
  EXPECT_EQ(mu_bottom_top(c6), 1);
  EXPECT_EQ(mu_bottom_top(make_lattice(all_subgroups(cyclic_group(4)))), 0);
  // 1, three C2, C3, S3: mu(1,S3) = -(1 - 3 - 1) = 3
  auto s3 = make_lattice(all_subgroups(symmetric_group(3)));
  ASSERT_EQ(s3.size(), 6u);
  EXPECT_EQ(mu_bottom_top(s3), 3);
  auto v4 = make_lattice(all_subgroups(direct_product(cyclic_group(2), cyclic_group(2))));
  EXPECT_EQ(mu_bottom_top(v4), 2);
}

TEST(Mobius, DefiningRecursionHolds) {
  auto L = make_lattice(all_subgroups(symmetric_group(4)));
  for (std::size_t x = 0; x < L.size(); ++x)
    for (std::size_t y = 0; y < L.size(); ++y) {
      if (!L.leq[x][y]) continue;
      std::int64_t s = 0;
      for (std::size_t z = 0; z < L.size(); ++z)
        if (L.leq[x][z] && L.leq[z][y]) s += L.mobius[x][z];
      EXPECT_EQ(s, x == y ? 1 : 0);
    }
}

TEST(Decomposition, S3DegreeTwo) {
  auto s = transpositions(3);
  auto L = d_lattice(s);
  ASSERT_EQ(L.size(), 5u);  // 1, three C2, S3
  auto a = hur_from_chur(s, L, 2, Space::affine);
  EXPECT_EQ(a.hur_direct, 5);
  EXPECT_EQ(a.rows.back().chur, 2);
  for (std::size_t i = 1; i <= 3; ++i) EXPECT_EQ(a.rows[i].chur, 1);
  auto p = hur_from_chur(s, L, 2, Space::projective);
  EXPECT_EQ(p.hur_direct, 3);
  EXPECT_EQ(p.rows.back().chur, 0);
  auto z = hur_from_chur(s, L, 0, Space::affine);
  EXPECT_EQ(z.hur_direct, 1);
  EXPECT_EQ(z.rows.front().chur, 1);

  std::ostringstream os;
  write_decomposition_csv_header(os);
  write_decomposition_csv(os, s, a);
  EXPECT_EQ(os.str(),
            "n,subgroup,order,omega,count\n"
            "2,\"<>\",1,0,0\n"
            "2,\"<(1 2)>\",2,0,1\n"
            "2,\"<(1 3)>\",2,0,1\n"
            "2,\"<(2 3)>\",2,0,1\n"
            "2,\"G\",6,0,2\n"
            "2,hur,6,0,5\n");
}

TEST(Decomposition, ChurFromHur) {
  auto s = transpositions(3);
  auto L = d_lattice(s);
  std::vector<BigInt> hur{0, 1, 1, 1, 5};
  auto chur = chur_from_hur(hur, L);
  EXPECT_EQ(chur, (std::vector<BigInt>{0, 1, 1, 1, 2}));
  EXPECT_EQ(hur_from_chur_counts(chur, L), hur);
  EXPECT_EQ(chur_from_hur(std::vector<BigInt>(5, 0), L), std::vector<BigInt>(5, 0));
  EXPECT_THROW(chur_from_hur({0, 1, 1, 1, 2}, L), VerificationFailure);
  auto single = make_lattice({whole_group(cyclic_group(3))});
  EXPECT_EQ(chur_from_hur({7}, single), std::vector<BigInt>{7});
}

TEST(Decomposition, SumMatchesDirectCount) {
  for (std::size_t d : {3u, 4u}) {
    auto s = transpositions(d);
    auto L = d_lattice(s);
    for (std::int64_t n = 0; n <= (d == 3 ? 7 : 5); ++n)
      for (Space sp : {Space::affine, Space::projective}) {
        auto t = hur_from_chur(s, L, n, sp);
        EXPECT_EQ(t.hur_direct, t.hur_sum);
        std::vector<BigInt> chur;
        for (const auto& r : t.rows) chur.push_back(r.chur);
        auto back = hur_from_chur_counts(chur, L);
        EXPECT_EQ(back.back(), t.hur_direct);
      }
  }
}

TEST(Decomposition, NonDGeneratedSubgroupsHaveNoConnectedTuples) {
  // the only subgroup left out is C3, which contains no transposition
  auto s = transpositions(3);
  auto L = d_lattice(s);
  auto all = all_subgroups(s.group());
  EXPECT_EQ(all.size(), 6u);
  for (const auto& h : all) {
    bool in_lattice = false;
    for (const auto& k : L.nodes) in_lattice = in_lattice || k == h;
    if (in_lattice) continue;
    EXPECT_FALSE(is_d_generated(s, h));
    auto inter = (s.c_set() & h.elements).elements();
    EXPECT_NE(subgroup_closure(s.group(), std::span<const element_id>(inter)), h);
  }
}
