#include <gtest/gtest.h>

#include <memory>

#include "hurwitz/group_spec.hpp"
#include "hurwitz/setup.hpp"

using namespace hurwitz;

namespace {

std::shared_ptr<const FiniteGroup> share(FiniteGroup g) {
  return std::make_shared<const FiniteGroup>(std::move(g));
}

std::vector<std::size_t> class_sizes(const ConjugacyClassTable& t) {
  std::vector<std::size_t> out;
  for (const auto& c : t.classes) out.push_back(c.size());
  return out;
}

// Brute-force subgroup enumeration over all subsets closed under mul; only
// usable for tiny groups.
std::size_t brute_subgroup_count(const FiniteGroup& g) {
  std::size_t n = g.order(), count = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (!(mask & 1u)) continue;
    bool closed = true;
    for (std::size_t a = 0; a < n && closed; ++a)
      for (std::size_t b = 0; b < n && closed; ++b)
        if ((mask >> a & 1u) && (mask >> b & 1u))
          closed = mask >> g.mul(static_cast<element_id>(a), static_cast<element_id>(b)) & 1u;
    count += closed;
  }
  return count;
}

}  // namespace

TEST(GroupBuild, SymmetricThreeHasOrderSix) {
  auto g = symmetric_group(3);
  EXPECT_EQ(g.order(), 6u);
  EXPECT_EQ(g.identity(), 0u);
  EXPECT_EQ(g.label(0), "()");
}

TEST(GroupBuild, CyclicFiveIsAbelianWithSingletonClasses) {
  auto g = cyclic_group(5);
  EXPECT_EQ(g.order(), 5u);
  EXPECT_TRUE(g.is_abelian());
  auto t = conjugacy_classes(g);
  EXPECT_EQ(t.size(), 5u);
  for (const auto& c : t.classes) EXPECT_EQ(c.size(), 1u);
}

TEST(GroupBuild, PermutationGeneratorsClosure) {
  std::vector<Permutation> gens{parse_permutation("(1 2)"), parse_permutation("(1 2 3 4)")};
  auto g = FiniteGroup::from_permutations(gens, {"permutations", "test"});
  EXPECT_EQ(g.order(), 24u);
  // Breadth-first from the identity: first discovered are the generators.
  EXPECT_EQ(g.label(1), "(1 2)");
  EXPECT_EQ(g.label(2), "(1 2 3 4)");
}

TEST(GroupBuild, BuiltinFamiliesOrders) {
  EXPECT_EQ(alternating_group(4).order(), 12u);
  EXPECT_EQ(alternating_group(5).order(), 60u);
  EXPECT_EQ(dihedral_group(4).order(), 8u);
  EXPECT_EQ(dihedral_group(5).order(), 10u);
  EXPECT_EQ(quaternion_group().order(), 8u);
  EXPECT_EQ(direct_product(cyclic_group(2), symmetric_group(3)).order(), 12u);
  EXPECT_EQ(group_from_name("S3xC2").order(), 12u);
  EXPECT_EQ(group_from_name("D4").order(), 8u);
  EXPECT_EQ(group_from_name("symmetric(4)").order(), 24u);
}

TEST(GroupBuild, QuaternionRelations) {
  auto q = quaternion_group();
  auto i = q.parse_element("i"), j = q.parse_element("j"), k = q.parse_element("k");
  auto m1 = q.parse_element("-1");
  EXPECT_EQ(q.mul(i, j), k);
  EXPECT_EQ(q.mul(i, i), m1);
  EXPECT_EQ(q.mul(j, i), q.parse_element("-k"));
  EXPECT_EQ(q.element_order(i), 4u);
  EXPECT_EQ(conjugacy_classes(q).size(), 5u);
}

TEST(GroupBuild, RejectsBadTables) {
  // Latin square without associativity: a loop of order 5.
  std::vector<std::vector<std::size_t>> loop{
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  EXPECT_THROW(FiniteGroup::from_cayley(loop, {}, {"cayley", "loop"}), ParseError);
  std::vector<std::vector<std::size_t>> not_latin{{0, 1}, {1, 1}};
  EXPECT_THROW(FiniteGroup::from_cayley(not_latin, {}, {"cayley", "x"}), ParseError);
  EXPECT_THROW(parse_permutation("(1 2"), ParseError);
  EXPECT_THROW(parse_permutation("(1 1)"), ParseError);
  EXPECT_THROW(parse_permutation("12"), ParseError);
  EXPECT_THROW(symmetric_group(8), ParseError);  // 40320 > 10000
}

TEST(GroupBuild, CayleyIdentityMovedToZero) {
  // Z/3 with the identity stored at position 2.
  std::vector<std::vector<std::size_t>> t{{1, 2, 0}, {2, 0, 1}, {0, 1, 2}};
  auto g = FiniteGroup::from_cayley(t, {"a", "b", "e"}, {"cayley", "z3"});
  EXPECT_EQ(g.label(0), "e");
  EXPECT_EQ(g.mul(1, 1), 2u);
}

TEST(GroupBuild, GroupAxiomsHoldOnBuiltins) {
  for (const auto& g : {symmetric_group(4), dihedral_group(6), quaternion_group(),
                        alternating_group(5)}) {
    for (element_id x = 0; x < g.order(); ++x) {
      EXPECT_EQ(g.mul(0, x), x);
      EXPECT_EQ(g.mul(x, 0), x);
      EXPECT_EQ(g.mul(x, g.inv(x)), 0u);
    }
  }
}

TEST(GroupBuild, JsonDocuments) {
  auto a = group_from_json(json::parse(R"j({"builtin":"symmetric","n":4})j"));
  EXPECT_EQ(a.order(), 24u);
  auto b = group_from_json(json::parse(R"j({"permutations":["(1 2)","(1 2 3 4)"]})j"));
  EXPECT_EQ(b.order(), 24u);
  auto c = group_from_json(json::parse(R"j({"cayley":[[0,1],[1,0]]})j"));
  EXPECT_EQ(c.order(), 2u);
  auto d = group_from_json(json::parse(
      R"j({"builtin":"product","factors":[{"builtin":"cyclic","n":2},{"builtin":"cyclic","n":3}]})j"));
  EXPECT_EQ(d.order(), 6u);
  EXPECT_TRUE(d.is_abelian());
  EXPECT_THROW(group_from_json(json::parse(R"j({"nothing":1})j")), ParseError);
}

TEST(Classes, SymmetricThree) {
  auto t = conjugacy_classes(symmetric_group(3));
  EXPECT_EQ(class_sizes(t), (std::vector<std::size_t>{1, 3, 2}));
  EXPECT_EQ(t.class_order, (std::vector<std::size_t>{1, 2, 3}));
}

TEST(Classes, SymmetricFour) {
  auto g = symmetric_group(4);
  auto t = conjugacy_classes(g);
  EXPECT_EQ(t.size(), 5u);
  auto k = t.class_of[g.parse_element("(1 2)")];
  EXPECT_EQ(t.classes[k].size(), 6u);
  // Conjugation stays inside each class.
  for (element_id x = 0; x < g.order(); ++x)
    for (element_id y = 0; y < g.order(); ++y) EXPECT_EQ(t.class_of[g.conj(y, x)], t.class_of[x]);
}

TEST(Subgroups, Closure) {
  auto g = symmetric_group(4);
  EXPECT_EQ(subgroup_closure(g, std::span<const element_id>{}).order(), 1u);
  EXPECT_EQ(subgroup_closure(g, {g.parse_element("(1 2)")}).order(), 2u);
  EXPECT_EQ(subgroup_closure(g, {g.parse_element("(1 2)"), g.parse_element("(3 4)")}).order(), 4u);
}

TEST(Subgroups, LatticeCounts) {
  EXPECT_EQ(all_subgroups(cyclic_group(5)).size(), 2u);
  auto s3 = all_subgroups(symmetric_group(3));
  ASSERT_EQ(s3.size(), 6u);
  std::vector<std::size_t> orders;
  for (const auto& h : s3) orders.push_back(h.order());
  EXPECT_EQ(orders, (std::vector<std::size_t>{1, 2, 2, 2, 3, 6}));
  EXPECT_EQ(all_subgroups(symmetric_group(4)).size(), 30u);
  EXPECT_EQ(all_subgroups(quaternion_group()).size(), 6u);
  EXPECT_EQ(all_subgroups(dihedral_group(4)).size(), 10u);
}

TEST(Subgroups, LatticeMatchesBruteForceOnSmallGroups) {
  for (const auto& g : {symmetric_group(3), quaternion_group(), dihedral_group(4), cyclic_group(12),
                        direct_product(cyclic_group(2), cyclic_group(4))}) {
    auto subs = all_subgroups(g);
    EXPECT_EQ(subs.size(), brute_subgroup_count(g)) << g.source().description;
    for (const auto& h : subs) EXPECT_EQ(g.order() % h.order(), 0u);
  }
}

TEST(Subgroups, LatticeBound) {
  EXPECT_THROW(all_subgroups(symmetric_group(6)), PreconditionError);
}

TEST(Abelianization, Examples) {
  auto s3 = abelianization(symmetric_group(3));
  EXPECT_EQ(s3.ab_order, 2u);
  EXPECT_EQ(s3.commutator_subgroup.order(), 3u);
  auto c6 = abelianization(cyclic_group(6));
  EXPECT_EQ(c6.ab_order, 6u);
  EXPECT_EQ(c6.commutator_subgroup.order(), 1u);
  EXPECT_EQ(c6.factors, (std::vector<std::int64_t>{6}));
  auto s4 = abelianization(symmetric_group(4));
  EXPECT_EQ(s4.ab_order, 2u);
  EXPECT_EQ(s4.commutator_subgroup.order(), 12u);
  auto q = abelianization(quaternion_group());
  EXPECT_EQ(q.factors, (std::vector<std::int64_t>{2, 2}));
  auto c2c4 = abelianization(direct_product(cyclic_group(2), cyclic_group(4)));
  EXPECT_EQ(c2c4.factors, (std::vector<std::int64_t>{4, 2}));
  EXPECT_EQ(c2c4.exponent_ab, 4);
}

TEST(Abelianization, ProjectionIsHomomorphismKillingCommutators) {
  for (const auto& g : {symmetric_group(4), dihedral_group(6), quaternion_group(),
                        direct_product(cyclic_group(6), symmetric_group(3))}) {
    auto ab = abelianization(g);
    for (element_id x = 0; x < g.order(); ++x) {
      EXPECT_EQ(ab.project(x).is_zero(), ab.commutator_subgroup.contains(x));
      for (element_id y = 0; y < g.order(); ++y)
        EXPECT_EQ(ab.project(g.mul(x, y)), ab.add(ab.project(x), ab.project(y)));
    }
    // onto: image has ab_order distinct values
    std::set<std::vector<std::int64_t>> img;
    for (element_id x = 0; x < g.order(); ++x) img.insert(ab.project(x).coords);
    EXPECT_EQ(img.size(), ab.ab_order);
    EXPECT_EQ(ab.ab_order * ab.commutator_subgroup.order(), g.order());
  }
}

TEST(Setup, DerivedData) {
  auto c3 = share(cyclic_group(3));
  ClassSetup s(c3, {{c3->parse_element("g"), c3->parse_element("g^2")}}, {1});
  EXPECT_EQ(s.num_dstar(), 2u);
  EXPECT_EQ(s.omega(), 1u);
  EXPECT_EQ(s.xi_total(), 1);
  auto s3 = share(symmetric_group(3));
  ClassSetup t(s3, {{s3->parse_element("(1 2)")}}, {1});
  EXPECT_EQ(t.c().size(), 3u);
  EXPECT_EQ(t.omega(), 0u);
}

TEST(Setup, Rejections) {
  auto s3 = share(symmetric_group(3));
  auto t = s3->parse_element("(1 2)"), u = s3->parse_element("(1 3)");
  EXPECT_THROW(ClassSetup(s3, {{t}, {u}}, {1, 1}), ParseError);        // overlap
  EXPECT_THROW(ClassSetup(s3, {{0}}, {1}), ParseError);                 // identity
  EXPECT_THROW(ClassSetup(s3, {{t}}, {0}), ParseError);                 // xi
  EXPECT_THROW(ClassSetup(s3, {{s3->parse_element("(1 2 3)")}}, {1}), ParseError);  // A3 only
}

TEST(Setup, JsonDocument) {
  auto s4 = share(symmetric_group(4));
  auto s = setup_from_json(s4, json::parse(R"j({"blocks":[["(1 2)"]],"xi":[2]})j"));
  EXPECT_EQ(s.c().size(), 6u);
  EXPECT_EQ(s.xi(0), 2);
  EXPECT_THROW(setup_from_json(s4, json::parse(R"j({"blocks":[["(1 2)"],["(3 4)"]]})j")), ParseError);
}

TEST(Setup, DGeneratedSubgroups) {
  auto s3 = share(symmetric_group(3));
  ClassSetup a(s3, {{s3->parse_element("(1 2)")}}, {1});
  auto subs = d_generated_subgroups(a);
  std::vector<std::size_t> orders;
  for (const auto& h : subs) orders.push_back(h.order());
  EXPECT_EQ(orders, (std::vector<std::size_t>{1, 2, 2, 2, 6}));

  auto c3 = share(cyclic_group(3));
  ClassSetup b(c3, {{1}, {2}}, {1, 1});
  EXPECT_EQ(d_generated_subgroups(b).size(), 2u);

  auto s4 = share(symmetric_group(4));
  ClassSetup c(s4, {{s4->parse_element("(1 2)")}}, {1});
  auto sub4 = d_generated_subgroups(c);
  std::map<std::size_t, int> by_order;
  for (const auto& h : sub4) ++by_order[h.order()];
  EXPECT_EQ(sub4.size(), 15u);
  EXPECT_EQ(by_order, (std::map<std::size_t, int>{{1, 1}, {2, 6}, {4, 3}, {6, 4}, {24, 1}}));
  // Oracle: recheck the predicate on every subgroup.
  std::size_t passing = 0;
  for (const auto& h : all_subgroups(*s4)) passing += h.order() == 1 || is_d_generated(c, h);
  EXPECT_EQ(passing, sub4.size());
}

TEST(Setup, Restriction) {
  auto s4 = share(symmetric_group(4));
  ClassSetup s(s4, {{s4->parse_element("(1 2)")}}, {1});
  auto h = subgroup_closure(*s4, {s4->parse_element("(1 2)"), s4->parse_element("(3 4)")});
  auto r = restrict_setup(s, h);
  EXPECT_EQ(r.group().order(), 4u);
  EXPECT_EQ(r.num_blocks(), 1u);
  EXPECT_EQ(r.num_dstar(), 2u);
  EXPECT_EQ(r.omega(), 1u);
  // recompute from the subgroup's own class table
  auto t = conjugacy_classes(r.group());
  std::set<std::size_t> cls;
  for (auto x : r.c()) cls.insert(t.class_of[x]);
  EXPECT_EQ(cls.size() - r.num_blocks(), r.omega());
  EXPECT_EQ(r.embedding().size(), 4u);

  auto whole = restrict_setup(s, whole_group(*s4));
  EXPECT_EQ(whole.omega(), 0u);
  EXPECT_EQ(whole.group().order(), 24u);

  auto s3 = share(symmetric_group(3));
  ClassSetup a(s3, {{s3->parse_element("(1 2)")}}, {1});
  auto c2 = restrict_setup(a, subgroup_closure(*s3, {s3->parse_element("(1 2)")}));
  EXPECT_EQ(c2.c().size(), 1u);
  EXPECT_EQ(c2.omega(), 0u);
  EXPECT_THROW(restrict_setup(a, subgroup_closure(*s3, {s3->parse_element("(1 2 3)")})),
               PreconditionError);
}
