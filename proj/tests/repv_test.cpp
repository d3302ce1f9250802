#include <gtest/gtest.h>

#include <set>

#include "proflq/catalog.hpp"
#include "proflq/repv.hpp"
#include "test_support.hpp"

using namespace proflq;

namespace {

std::size_t index_of_perm(const FiniteGroup& g, const Permutation& p) {
  for (std::size_t a = 0; a < g.order(); ++a)
    if (g.permutations()[a] == p) return a;
  return SIZE_MAX;
}

// Direct scan of all r-tuples (r <= 2), independent of hom_enumerate.
std::vector<HomTuple> scan_homs(const FiniteGroup& g, std::size_t p, std::size_t r) {
  std::vector<HomTuple> out;
  auto ok = [&](std::size_t a) { return g.pow(a, static_cast<std::int64_t>(p)) == 0; };
  if (r == 0) return {HomTuple{}};
  for (std::size_t a = 0; a < g.order(); ++a) {
    if (!ok(a)) continue;
    if (r == 1) {
      out.push_back({a});
      continue;
    }
    for (std::size_t b = 0; b < g.order(); ++b)
      if (ok(b) && g.mul(a, b) == g.mul(b, a)) out.push_back({a, b});
  }
  return out;
}

// Burnside: number of conjugation orbits = average number of fixed tuples.
std::size_t burnside_classes(const FiniteGroup& g, const std::vector<HomTuple>& homs) {
  std::size_t fixed = 0;
  for (std::size_t x = 0; x < g.order(); ++x)
    for (const auto& h : homs) fixed += conjugate_tuple(g, x, h) == h ? 1 : 0;
  return fixed / g.order();
}

// log_p of the subgroup generated by the tuple.
std::size_t scan_rank(const FiniteGroup& g, std::size_t p, const HomTuple& h) {
  std::size_t n = g.closure(h).size(), r = 0;
  while (n > 1) {
    n /= p;
    ++r;
  }
  return r;
}

}  // namespace

TEST(Homs, EnumerationExamples) {
  const auto s3 = catalog::symmetric3();
  EXPECT_EQ(hom_enumerate({2, 1}, s3).size(), 4u);
  EXPECT_EQ(hom_enumerate({2, 0}, s3), (std::vector<HomTuple>{HomTuple{}}));
  const auto q8 = hom_enumerate({2, 1}, catalog::quaternion8());
  ASSERT_EQ(q8.size(), 2u);
  EXPECT_EQ(q8[0], HomTuple{0});
  EXPECT_EQ(hom_enumerate({3, 1}, catalog::alternating4()).size(), 9u);
  EXPECT_THROW(hom_enumerate({2, 5}, catalog::symmetric4(), RepBudget{1000}), BudgetExceeded);
  EXPECT_THROW(hom_enumerate({4, 1}, s3), InvalidArgument);
}

TEST(Homs, MatchesDirectScanOnCatalog) {
  for (const auto& e : small_groups())
    for (std::size_t p : {2u, 3u})
      for (std::size_t r : {0u, 1u, 2u}) {
        auto expect = scan_homs(e.group, p, r);
        std::sort(expect.begin(), expect.end());
        ASSERT_EQ(hom_enumerate({static_cast<int>(p), r}, e.group), expect) << e.name;
      }
}

TEST(RepClasses, Examples) {
  const auto s3 = catalog::symmetric3();
  const auto rc = rep_classes({2, 1}, s3);
  ASSERT_EQ(rc.size(), 2u);
  EXPECT_EQ(rc.classes[0].orbit_size, 1u);
  EXPECT_EQ(rc.classes[1].orbit_size, 3u);
  EXPECT_EQ(rc.class_of, (std::vector<std::size_t>{0, 1, 1, 1}));
  EXPECT_EQ(rank_strata(rc), (std::vector<std::vector<std::size_t>>{{0}, {1}}));
  const auto t = index_of_perm(s3, perm_from_cycles(3, {{1, 2}}));
  std::size_t smallest = SIZE_MAX;
  for (std::size_t a = 1; a < 6; ++a)
    if (s3.element_order(a) == 2) smallest = std::min(smallest, a);
  EXPECT_EQ(rc.classes[1].representative, HomTuple{smallest});
  EXPECT_EQ(describe_class(s3, 2, {t}).centralizer, (Subgroup{0, t}));
  EXPECT_EQ(rc.classes[0].centralizer.size(), 6u);
  const auto r0 = rep_classes({3, 0}, s3);
  EXPECT_EQ(r0.size(), 1u);
  EXPECT_EQ(rank_strata(r0).size(), 1u);
  for (const auto& name : {"C2^3", "C6xC2", "C4xC4"}) {
    const auto a = rep_classes({2, 2}, catalog_group(name));
    EXPECT_EQ(a.size(), a.homs.size()) << name;
  }
}

TEST(RepClasses, WeylImagesOfThreeCycles) {
  const auto a4 = catalog::alternating4();
  const auto ra = rep_classes({3, 1}, a4);
  ASSERT_EQ(ra.size(), 3u);
  for (std::size_t c = 1; c < 3; ++c) {
    EXPECT_EQ(ra.classes[c].weyl_image.size(), 1u);
    EXPECT_EQ(ra.classes[c].normalizer.size(), 3u);
  }
  const auto rs = rep_classes({3, 1}, catalog::symmetric4());
  ASSERT_EQ(rs.size(), 2u);
  ASSERT_EQ(rs.classes[1].weyl_image.size(), 2u);
  FpMatrix minus(3, 1, 1);
  minus(0, 0) = 2;
  EXPECT_EQ(rs.classes[1].weyl_image[1], minus);
}

TEST(RepClasses, SweepAgainstOracles) {
  for (const auto& e : small_groups())
    for (int p : {2, 3})
      for (std::size_t r : {0u, 1u, 2u}) {
        const auto rc = rep_classes({p, r}, e.group);
        // Orbit counting and Burnside.
        std::size_t total = 0;
        for (const auto& c : rc.classes) total += c.orbit_size;
        ASSERT_EQ(total, rc.homs.size()) << e.name;
        ASSERT_EQ(rc.size(), burnside_classes(e.group, rc.homs)) << e.name;
        // Orbits as sets, computed directly.
        std::set<std::set<HomTuple>> orbits;
        for (const auto& h : rc.homs) {
          std::set<HomTuple> o;
          for (std::size_t x = 0; x < e.group.order(); ++x) o.insert(conjugate_tuple(e.group, x, h));
          orbits.insert(o);
        }
        ASSERT_EQ(orbits.size(), rc.size());
        for (std::size_t i = 0; i < rc.homs.size(); ++i)
          ASSERT_LE(rc.classes[rc.class_of[i]].representative, rc.homs[i]) << e.name;
        // Strata partition, with the trivial class alone in stratum 0.
        const auto strata = rank_strata(rc);
        ASSERT_EQ(strata[0], std::vector<std::size_t>{0}) << e.name;
        std::size_t in_strata = 0;
        for (std::size_t i = 0; i < strata.size(); ++i) {
          in_strata += strata[i].size();
          for (auto c : strata[i]) ASSERT_EQ(scan_rank(e.group, p, rc.classes[c].representative), i);
        }
        ASSERT_EQ(in_strata, rc.size());
      }
}

TEST(RepClasses, DihedralStrata) {
  const auto d4 = catalog::dihedral4();
  const auto rc = rep_classes({2, 2}, d4);
  const auto strata = rank_strata(rc);
  auto homs = scan_homs(d4, 2, 2);
  std::vector<std::size_t> sizes;
  for (const auto& s : strata) sizes.push_back(s.size());
  // Classes: trivial; rank 1 classes of (x, y) with <x, y> of order 2, three
  // involution classes times 3 nonzero images; rank 2 pairs spanning one of
  // the two Klein subgroups, 6 ordered bases each, in orbits of size 2.
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 9, 6}));
  EXPECT_EQ(rc.size(), burnside_classes(d4, homs));
}

TEST(RepClasses, AutOrbitFormula) {
  for (const auto& e : small_groups())
    for (int p : {2, 3})
      for (std::size_t r : {1u, 2u}) {
        const auto rc = rep_classes({p, r}, e.group);
        for (std::size_t c = 0; c < rc.size(); ++c) {
          if (rc.classes[c].image_rank != r) continue;
          ASSERT_EQ(aut_orbit(rc, c).size() * rc.classes[c].weyl_image.size(), general_linear_order(p, r))
              << e.name << " p=" << p << " r=" << r << " class " << c;
        }
      }
}

TEST(RepClasses, GeneralLinear) {
  EXPECT_EQ(general_linear(2, 2).size(), 6u);
  EXPECT_EQ(general_linear(3, 2).size(), 48u);
  EXPECT_EQ(general_linear_order(3, 2), 48u);
  EXPECT_EQ(general_linear(5, 0).size(), 1u);
}

TEST(RepTowers, CyclicTowerHasOnlyTrivialThread) {
  for (std::size_t p : {2u, 3u}) {
    const auto t = GroupTower::cyclic_p_adic(p, 2);
    const auto rt = rep_tower({static_cast<int>(p), 1}, t);
    for (const auto& lv : rt.levels) EXPECT_EQ(lv.size(), p);
    // Hand-computed: the p-torsion of C_{p^{k+1}} reduces to 0 in C_{p^k}.
    for (const auto& m : rt.maps) EXPECT_EQ(m, std::vector<std::size_t>(p, 0));
    const auto cands = rt.limit_candidates();
    ASSERT_EQ(cands.size(), 1u);
    EXPECT_TRUE(cands[0]->trivial);
    for (const auto& th : rt.threads)
      if (!th.trivial) {
        EXPECT_FALSE(th.stable);
        EXPECT_EQ(th.constant_from, 2u);
      }
  }
}

TEST(RepTowers, ConstantAndQuotientTowers) {
  const auto s3 = catalog::symmetric3();
  const auto rt = rep_tower({2, 1}, GroupTower::constant(s3, 2));
  for (const auto& m : rt.maps) EXPECT_EQ(m, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(rt.limit_candidates().size(), 2u);
  // S3 <- S3 x C2 by projection.
  const auto big = direct_product(s3, cyclic_group(2));
  std::vector<std::size_t> proj(big.order());
  for (std::size_t x = 0; x < big.order(); ++x) proj[x] = x / 2;
  const GroupTower q({s3, big}, {GroupHom(big, s3, proj)});
  const auto rq = rep_tower({2, 1}, q);
  EXPECT_EQ(rq.threads.size(), rq.levels[1].size());
  EXPECT_EQ(rq.levels[1].size(), 4u);
  std::size_t stable = 0;
  for (const auto& th : rq.threads) stable += th.stable ? 1 : 0;
  EXPECT_EQ(stable, 3u);
}

TEST(RepTowers, ClassMapsCompose) {
  const std::vector<std::string> names{"S4", "D4", "C2^2xS3", "SL(2,3)", "C4xC4"};
  for (int trial = 0; trial < 10; ++trial) {
    const auto& g = catalog_group(names[proflq::testing::uniform(0, static_cast<std::int64_t>(names.size()) - 1)]);
    // trivial <- G <- G <- ... with identities above level 1.
    std::vector<FiniteGroup> levels{trivial_group()};
    std::vector<GroupHom> maps;
    const auto reps = proflq::testing::uniform(1, 3);
    levels.push_back(g);
    maps.push_back(GroupHom::trivial(g, trivial_group()));
    for (std::int64_t k = 0; k < reps; ++k) {
      levels.push_back(g);
      maps.push_back(GroupHom::identity(g));
    }
    const GroupTower t(levels, maps);
    for (int p : {2, 3}) {
      const auto rt = rep_tower({p, 2}, t);
      for (std::size_t from = 0; from <= t.depth(); ++from)
        for (std::size_t to = 0; to <= from; ++to)
          for (std::size_t c = 0; c < rt.levels[from].size(); ++c) {
            HomTuple img = rt.levels[from].classes[c].representative;
            for (auto& x : img) x = t.project(from, to, x);
            ASSERT_EQ(rt.class_map(from, to, c), rt.levels[to].class_of_hom(img));
          }
    }
  }
}
