#include <gtest/gtest.h>

#include "proflq/catalog.hpp"
#include "proflq/group.hpp"
#include "test_support.hpp"

using namespace proflq;

namespace {

std::size_t count_of_order(const FiniteGroup& g, std::size_t k) {
  std::size_t n = 0;
  for (std::size_t a = 0; a < g.order(); ++a) n += g.element_order(a) == k ? 1 : 0;
  return n;
}

std::size_t index_of_perm(const FiniteGroup& g, const Permutation& p) {
  for (std::size_t a = 0; a < g.order(); ++a)
    if (g.permutations()[a] == p) return a;
  return SIZE_MAX;
}

}  // namespace

TEST(Permutations, ClosureExamples) {
  const auto s3 = group_from_permutations({perm_from_cycles(3, {{1, 2}}), perm_from_cycles(3, {{1, 2, 3}})});
  EXPECT_EQ(s3.order(), 6u);
  EXPECT_EQ(group_from_permutations({}).order(), 1u);
  const auto d4 = group_from_permutations({perm_from_cycles(4, {{1, 2, 3, 4}}), perm_from_cycles(4, {{1, 3}})});
  EXPECT_EQ(d4.order(), 8u);
  EXPECT_EQ(count_of_order(d4, 2), 5u);
  EXPECT_EQ(perm_from_one_line({2, 3, 1}), perm_from_cycles(3, {{1, 2, 3}}));
  EXPECT_EQ(s3.label(index_of_perm(s3, perm_from_cycles(3, {{1, 2}}))), "(1 2)");
}

TEST(Permutations, ErrorsAndDeterminism) {
  const std::vector<Permutation> s5{perm_from_cycles(5, {{1, 2, 3, 4, 5}}), perm_from_cycles(5, {{1, 2}})};
  EXPECT_THROW(group_from_permutations(s5, 100), BudgetExceeded);
  EXPECT_EQ(group_from_permutations(s5).order(), 120u);
  EXPECT_THROW(group_from_permutations({Permutation{0, 0, 1}}), InvalidArgument);
  EXPECT_THROW(perm_from_one_line({1, 1}), InvalidArgument);
  EXPECT_EQ(group_from_permutations(s5).table(), group_from_permutations(s5).table());
}

TEST(FiniteGroup, RejectsBadTables) {
  EXPECT_THROW(FiniteGroup({{0, 1}, {1, 1}}), InvalidArgument);
  EXPECT_THROW(FiniteGroup({{1, 0}, {0, 1}}), InvalidArgument);
  // Latin square with identity that is not associative (order 5 loop).
  const std::vector<std::vector<std::size_t>> loop{
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  EXPECT_THROW(FiniteGroup{loop}, InvalidArgument);
}

TEST(FiniteGroup, ProductConventionAppliesRightFactorFirst) {
  const auto a = perm_from_cycles(3, {{1, 2}});
  const auto b = perm_from_cycles(3, {{2, 3}});
  const auto g = group_from_permutations({a, b});
  const auto ab = g.mul(index_of_perm(g, a), index_of_perm(g, b));
  // (1 2)(2 3) sends 2 -> 3 -> 3 and 3 -> 2 -> 1.
  EXPECT_EQ(g.permutations()[ab], perm_from_one_line({2, 3, 1}));
}

TEST(Subgroups, CountsAgainstKnownValues) {
  EXPECT_EQ(all_subgroups(catalog::symmetric3()).size(), 6u);
  EXPECT_EQ(all_subgroups(catalog::symmetric4()).size(), 30u);
  EXPECT_EQ(all_subgroups(catalog::quaternion8()).size(), 6u);
  EXPECT_EQ(all_subgroups(catalog::dihedral4()).size(), 10u);
  // Subspaces of F_2^4: 1 + 15 + 35 + 15 + 1.
  EXPECT_EQ(all_subgroups(catalog::elementary_abelian(2, 4)).size(), 67u);
  EXPECT_EQ(conjugacy_classes(catalog::symmetric4()).size(), 5u);
  EXPECT_EQ(conjugacy_classes(catalog::alternating4()).size(), 4u);
  EXPECT_EQ(p_subgroup_classes(catalog::symmetric4(), 2).size(), 7u);
  EXPECT_EQ(p_subgroup_classes(catalog::symmetric4(), 3).size(), 2u);
  EXPECT_EQ(p_subgroup_classes(catalog::alternating4(), 2).size(), 3u);
}

TEST(Subgroups, CentralizerAndNormalizer) {
  const auto s3 = catalog::symmetric3();
  const auto t = index_of_perm(s3, perm_from_cycles(3, {{1, 2}}));
  EXPECT_EQ(centralizer(s3, {t}), (Subgroup{0, t}));
  EXPECT_EQ(centralizer(s3, {0}).size(), 6u);
  const auto a4 = catalog::alternating4();
  const auto c = index_of_perm(a4, perm_from_cycles(4, {{1, 2, 3}}));
  const Subgroup h = a4.closure({c});
  EXPECT_EQ(normalizer(a4, h), h);
  const auto s4 = catalog::symmetric4();
  const auto c4 = index_of_perm(s4, perm_from_cycles(4, {{1, 2, 3}}));
  EXPECT_EQ(normalizer(s4, s4.closure({c4})).size(), 6u);
  EXPECT_EQ(center(catalog::quaternion8()).size(), 2u);
}

TEST(Subgroups, SubgroupAsGroup) {
  const auto s4 = catalog::symmetric4();
  for (const auto& h : all_subgroups(s4)) {
    const auto sg = subgroup_as_group(s4, h);
    ASSERT_EQ(sg.group.order(), h.size());
    const auto inc = GroupHom::inclusion(sg, s4);
    ASSERT_TRUE(inc.is_injective());
  }
}

TEST(GroupHom, ConstructionAndChecks) {
  const auto c4 = cyclic_group(4), c2 = cyclic_group(2);
  const auto q = GroupHom::from_generator_images(c4, c2, {1});
  EXPECT_TRUE(q.is_surjective());
  EXPECT_EQ(q.kernel(), (Subgroup{0, 2}));
  EXPECT_THROW(GroupHom::from_generator_images(c2, c4, {1}), InvalidArgument);
  EXPECT_THROW(GroupHom(c4, c2, {0, 1, 1, 0}), InvalidArgument);
  EXPECT_EQ(compose(q, GroupHom::identity(c4)).images(), q.images());
  EXPECT_TRUE(GroupHom::trivial(c4, c2).kernel().size() == 4);
}

TEST(Isomorphism, DifferentConstructionsAgree) {
  EXPECT_TRUE(are_isomorphic(catalog::dihedral4(), catalog::dihedral(4)));
  EXPECT_TRUE(are_isomorphic(catalog::symmetric3(), catalog::dihedral(3)));
  EXPECT_FALSE(are_isomorphic(catalog::dihedral4(), catalog::quaternion8()));
  EXPECT_FALSE(are_isomorphic(cyclic_group(4), catalog::elementary_abelian(2, 2)));
  EXPECT_TRUE(are_isomorphic(direct_product(cyclic_group(2), cyclic_group(3)), cyclic_group(6)));
  // Q8 as 2x2 matrices over F_5 (i = diag(2, 3), j = [[0, 1], [-1, 0]]).
  FpMatrix i(5, 2, 2), j(5, 2, 2);
  i(0, 0) = 2;
  i(1, 1) = 3;
  j(0, 1) = 1;
  j(1, 0) = 4;
  EXPECT_TRUE(are_isomorphic(group_from_matrices(5, {i, j}), catalog::quaternion8()));
  const auto iso = find_isomorphism(catalog::symmetric3(), catalog::dihedral(3));
  ASSERT_TRUE(iso.has_value());
}

TEST(Catalog, CountsPerOrder) {
  // Number of groups of order n, n = 1..24.
  const std::vector<std::size_t> expected{1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15};
  std::vector<std::size_t> got(24, 0);
  for (const auto& e : small_groups()) {
    ASSERT_LE(e.group.order(), 24u);
    ++got[e.group.order() - 1];
  }
  EXPECT_EQ(got, expected);
  EXPECT_EQ(small_groups().size(), 74u);
}

TEST(Catalog, PairwiseNonIsomorphic) {
  const auto& g = small_groups();
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = a + 1; b < g.size(); ++b) {
      if (g[a].group.order() != g[b].group.order()) continue;
      ASSERT_FALSE(are_isomorphic(g[a].group, g[b].group)) << g[a].name << " ~ " << g[b].name;
    }
}

TEST(Catalog, AbelianCountsAndNames) {
  // Abelian groups of order n, n = 1..24.
  const std::vector<std::size_t> expected{1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5, 1, 2, 1, 2, 1, 1, 1, 3};
  std::vector<std::size_t> got(24, 0);
  std::set<std::string> names;
  for (const auto& e : small_groups()) {
    got[e.group.order() - 1] += e.group.is_abelian() ? 1 : 0;
    names.insert(e.name);
  }
  EXPECT_EQ(got, expected);
  EXPECT_EQ(names.size(), 74u);
  EXPECT_EQ(catalog_group("SL(2,3)").order(), 24u);
  EXPECT_EQ(count_of_order(catalog_group("SL(2,3)"), 2), 1u);
  EXPECT_EQ(count_of_order(catalog_group("Q16"), 2), 1u);
  EXPECT_THROW(catalog_group("nope"), InvalidArgument);
}
