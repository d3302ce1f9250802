#include <gtest/gtest.h>

#include "proflq/etale.hpp"
#include "test_support.hpp"

using namespace proflq;
using namespace proflq::testing;

namespace {

std::vector<std::string> points(std::size_t n, const std::string& prefix = "p") {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

FiniteEtaleSpace random_space(std::int64_t m, std::size_t n, std::uint64_t max_order = 64) {
  std::vector<FiniteModule> fibers;
  for (std::size_t i = 0; i < n; ++i) fibers.push_back(random_module(m, max_order, 3));
  return FiniteEtaleSpace(FiniteRing(m), points(n), fibers);
}

// All set partitions of {0..n-1} as block labels (restricted growth strings).
std::vector<std::vector<std::size_t>> set_partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> a(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t blocks) {
    if (i == n) {
      out.push_back(a);
      return;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      a[i] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  if (n == 0) return {{}};
  rec(0, 0);
  return out;
}

const FiniteRing kZ4(4);

}  // namespace

TEST(Sections, FiniteProducts) {
  const FiniteEtaleSpace e(kZ4, {"a", "b"}, {FiniteModule(kZ4, {2}), FiniteModule(kZ4, {4})});
  const Sections all = sections(e, {"a", "b"});
  EXPECT_EQ(all.module.factors(), (std::vector<std::int64_t>{2, 4}));
  EXPECT_TRUE(sections(e, {}).module.is_zero());
  EXPECT_EQ(sections(e, {"a"}).module.factors(), (std::vector<std::int64_t>{2}));
  EXPECT_THROW(sections(e, {"zz"}), InvalidArgument);
}

TEST(Sections, ProductAndCoproductOfSmallSpaces) {
  const FiniteModule z2(kZ4, {2});
  const auto e = FiniteEtaleSpace::constant(kZ4, {"a", "b", "c"}, z2);
  EXPECT_EQ(product_finite(e).module.order(), 8);
  EXPECT_EQ(coproduct_finite(e).module.order(), 8);
  const FiniteModule m(kZ4, {2, 4});
  const auto one = FiniteEtaleSpace::constant(kZ4, {"x"}, m);
  const Sections p = product_finite(one);
  EXPECT_EQ(p.projections[0], ModuleMap::identity(m));
  EXPECT_EQ(p.inclusions[0], ModuleMap::identity(m));
}

TEST(Sections, CanonicalComponentsAreOrthogonalIdempotents) {
  for (int trial = 0; trial < 100; ++trial) {
    const std::int64_t m = std::vector<std::int64_t>{4, 6, 8, 12}[static_cast<std::size_t>(uniform(0, 3))];
    const auto e = random_space(m, static_cast<std::size_t>(uniform(1, 5)));
    const Sections p = product_finite(e);
    for (std::size_t s = 0; s < e.size(); ++s)
      for (std::size_t t = 0; t < e.size(); ++t) {
        const ModuleMap c = compose(p.projections[s], p.inclusions[t]);
        if (s == t) {
          ASSERT_EQ(c, ModuleMap::identity(e.fiber(t)));
        } else {
          ASSERT_TRUE(c.is_zero());
        }
      }
  }
}

TEST(Sections, ClopenSplittingExhaustive) {
  // For every partition of the base into blocks, prod_T E = prod_i E(U_i),
  // via the natural map assembling block sections.
  for (std::size_t n = 0; n <= 6; ++n) {
    const auto e = random_space(12, n, 16);
    const Sections whole = product_finite(e);
    for (const auto& labels : set_partitions(n)) {
      const std::size_t k = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
      std::vector<Sections> blocks;
      std::vector<FiniteModule> block_mods;
      for (std::size_t b = 0; b < k; ++b) {
        std::vector<std::string> u;
        for (std::size_t i = 0; i < n; ++i)
          if (labels[i] == b) u.push_back(e.base()[i]);
        blocks.push_back(sections(e, u));
        block_mods.push_back(blocks.back().module);
      }
      const DirectSum prod = direct_sum(e.ring(), block_mods);
      ASSERT_TRUE(is_isomorphic(prod.module, whole.module));
      // Natural map: whole -> prod_i E(U_i) restricting to each block.
      std::vector<Element> imgs;
      for (std::size_t g = 0; g < whole.module.rank(); ++g) {
        const Element x = whole.module.generator(g);
        Element acc = prod.module.zero_element();
        for (std::size_t b = 0; b < k; ++b) {
          Element xb = blocks[b].module.zero_element();
          for (std::size_t q = 0; q < blocks[b].points.size(); ++q) {
            const Element xt = whole.projections[whole.position(blocks[b].points[q])].apply(x);
            xb = blocks[b].module.add(xb, blocks[b].inclusions[q].apply(xt));
          }
          acc = prod.module.add(acc, prod.inclusions[b].apply(xb));
        }
        imgs.push_back(acc);
      }
      ASSERT_TRUE(is_isomorphism(ModuleMap::from_images(whole.module, prod.module, imgs)));
    }
  }
}

TEST(HomEtale, FiberwiseHomomorphisms) {
  const FiniteEtaleSpace e(kZ4, {"a", "b"}, {FiniteModule(kZ4, {2}), FiniteModule(kZ4, {4})});
  const auto f = FiniteEtaleSpace::constant(kZ4, {"a", "b"}, FiniteModule(kZ4, {4}));
  const auto h = hom_etale(e, f);
  // Oracle: enumerate homomorphisms on each fiber.
  ASSERT_EQ(all_homomorphisms(e.fiber(0), f.fiber(0)).size(), 2u);
  ASSERT_EQ(all_homomorphisms(e.fiber(1), f.fiber(1)).size(), 4u);
  EXPECT_EQ(h.fiber("a").factors(), (std::vector<std::int64_t>{2}));
  EXPECT_EQ(h.fiber("b").factors(), (std::vector<std::int64_t>{4}));
  const auto z = hom_etale(e, FiniteEtaleSpace::zero(kZ4, {"a", "b"}));
  EXPECT_TRUE(is_isomorphic(z, FiniteEtaleSpace::zero(kZ4, {"a", "b"})));
  const FiniteModule a(kZ4, {2, 4}), b(kZ4, {4});
  const auto tab = hom_etale(FiniteEtaleSpace::constant(kZ4, {"x", "y"}, a), FiniteEtaleSpace::constant(kZ4, {"x", "y"}, b));
  EXPECT_TRUE(is_isomorphic(tab, FiniteEtaleSpace::constant(kZ4, {"x", "y"}, hom_module(a, b))));
  EXPECT_THROW(hom_etale(e, FiniteEtaleSpace::zero(kZ4, {"a"})), InvalidArgument);
}

TEST(TensorEtale, UnitZeroAndGcd) {
  const FiniteRing z12(12);
  const FiniteEtaleSpace e(z12, {"a", "b"}, {FiniteModule(z12, {2, 6}), FiniteModule(z12, {4})});
  const auto unit = FiniteEtaleSpace::constant(z12, {"a", "b"}, FiniteModule(z12, {12}));
  EXPECT_TRUE(is_isomorphic(tensor_etale(e, unit), e));
  EXPECT_TRUE(is_isomorphic(tensor_etale(e, FiniteEtaleSpace::zero(z12, {"a", "b"})), FiniteEtaleSpace::zero(z12, {"a", "b"})));
  const FiniteEtaleSpace x(z12, {"p"}, {FiniteModule(z12, {4})});
  const FiniteEtaleSpace y(z12, {"p"}, {FiniteModule(z12, {6})});
  EXPECT_EQ(tensor_etale(x, y).fiber("p").factors(), tensor_module(FiniteModule(z12, {4}), FiniteModule(z12, {6})).factors());
  EXPECT_EQ(tensor_etale(x, y).fiber("p").factors(), (std::vector<std::int64_t>{2}));
}

TEST(DualEtale, InvolutiveAndSwapsInjectionsWithSurjections) {
  for (int trial = 0; trial < 100; ++trial) {
    const auto e = random_space(8, static_cast<std::size_t>(uniform(0, 4)));
    EXPECT_TRUE(is_isomorphic(dual_etale(dual_etale(e)), e));
  }
  EXPECT_EQ(dual_etale(FiniteEtaleSpace::zero(kZ4, {"a"})), FiniteEtaleSpace::zero(kZ4, {"a"}));
  // Morphism with one injective and one surjective fiber.
  const FiniteModule z2(kZ4, {2}), z4(kZ4, {4});
  const FiniteEtaleSpace src(kZ4, {"a", "b"}, {z2, z4});
  const FiniteEtaleSpace tgt(kZ4, {"x", "y"}, {z4, z2});
  const EtaleMorphism f(src, tgt, {0, 1}, {ModuleMap(z2, z4, {{2}}), ModuleMap(z4, z2, {{1}})});
  ASSERT_TRUE(is_injective(f.fiber_map(0)));
  ASSERT_TRUE(is_surjective(f.fiber_map(1)));
  const auto d = dual_fiber_maps(f);
  EXPECT_TRUE(is_surjective(d[0]));
  EXPECT_TRUE(is_injective(d[1]));
}

TEST(DualEtale, DualOfProductIsCoproductOfDuals) {
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t m = std::vector<std::int64_t>{4, 6, 8, 9, 12}[static_cast<std::size_t>(uniform(0, 4))];
    const auto e = random_space(m, static_cast<std::size_t>(uniform(0, 5)));
    const Sections prod = product_finite(e);
    const Sections coprod_dual = coproduct_finite(dual_etale(e));
    // Natural map  sum_t F_t^  ->  (prod_t F_t)^ :  sum of the duals of the projections.
    std::vector<Element> imgs;
    for (std::size_t g = 0; g < coprod_dual.module.rank(); ++g) {
      const Element x = coprod_dual.module.generator(g);
      Element acc = pontryagin_dual(prod.module).zero_element();
      for (std::size_t t = 0; t < e.size(); ++t)
        acc = prod.module.add(acc, dual_map(prod.projections[t]).apply(coprod_dual.projections[t].apply(x)));
      imgs.push_back(acc);
    }
    ASSERT_TRUE(is_isomorphism(ModuleMap::from_images(coprod_dual.module, pontryagin_dual(prod.module), imgs)));
  }
}

TEST(EtaleMorphism, CompositionValidatesEagerly) {
  const FiniteModule z2(kZ4, {2});
  const auto a = FiniteEtaleSpace::constant(kZ4, {"a"}, z2);
  const auto b = FiniteEtaleSpace::constant(kZ4, {"b"}, z2);
  const auto id_a = EtaleMorphism::identity(a);
  const auto id_b = EtaleMorphism::identity(b);
  EXPECT_THROW(compose(id_b, id_a), InvalidArgument);
  EXPECT_EQ(compose(id_a, id_a).fiber_map(0), ModuleMap::identity(z2));
  EXPECT_THROW(EtaleMorphism(a, b, {0}, {ModuleMap::identity(FiniteModule(kZ4, {4}))}), InvalidArgument);
}

TEST(Pushforward, CollapsingPairs) {
  const FiniteModule z2(kZ4, {2});
  const auto e = FiniteEtaleSpace::constant(kZ4, points(4), z2);
  const BaseMap psi(points(4), {"s0", "s1"}, {0, 0, 1, 1});
  const auto pf = pushforward(e, psi);
  for (std::size_t s = 0; s < 2; ++s) {
    // Oracle: sections over the two-point fiber.
    ASSERT_EQ(sections(e, psi.preimage(s)).module.factors(), (std::vector<std::int64_t>{2, 2}));
    EXPECT_EQ(pf.space.fiber(s).factors(), (std::vector<std::int64_t>{2, 2}));
  }
  EXPECT_THROW(pushforward(e, BaseMap(points(4), {"s0", "s1", "s2"}, {0, 0, 1, 1})), InvalidArgument);
}

TEST(Pushforward, IdentityAndPoint) {
  const auto e = random_space(12, 4);
  const BaseMap id(e.base(), e.base(), {0, 1, 2, 3});
  EXPECT_TRUE(is_isomorphic(pushforward(e, id).space, e));
  const BaseMap to_point(e.base(), {"*"}, {0, 0, 0, 0});
  EXPECT_TRUE(is_isomorphic(pushforward(e, to_point).space.fiber(0), product_finite(e).module));
}

TEST(Pushforward, ProductOverTargetEqualsProductOverSourceExhaustive) {
  // Every surjection T -> S with |T| <= 6.
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto e = random_space(6, n, 36);
    const Sections over_t = product_finite(e);
    for (const auto& labels : set_partitions(n)) {
      const std::size_t k = *std::max_element(labels.begin(), labels.end()) + 1;
      const BaseMap psi(e.base(), points(k, "s"), labels);
      const auto pf = pushforward(e, psi);
      const Sections over_s = product_finite(pf.space);
      const ModuleMap c = pushforward_product_comparison(pf, over_s, over_t);
      ASSERT_TRUE(is_isomorphism(c));
    }
  }
}

TEST(Pullback, IdentityAndConstant) {
  const auto e = random_space(12, 3);
  EXPECT_EQ(pullback(e, BaseMap(e.base(), e.base(), {0, 1, 2})), e);
  const FiniteModule a(kZ4, {2, 4});
  const auto pt = FiniteEtaleSpace::constant(kZ4, {"*"}, a);
  EXPECT_EQ(pullback(pt, BaseMap(points(3), {"*"}, {0, 0, 0})), FiniteEtaleSpace::constant(kZ4, points(3), a));
}

TEST(Pullback, SectionsOverPreimages) {
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t ns = static_cast<std::size_t>(uniform(1, 4));
    const std::size_t nt = static_cast<std::size_t>(uniform(1, 6));
    const auto e = random_space(8, ns, 16);
    std::vector<std::size_t> img(nt);
    for (auto& i : img) i = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(ns) - 1));
    const BaseMap psi(points(nt, "t"), e.base(), img);
    const auto pb = pullback(e, psi);
    std::vector<std::string> u;
    std::vector<FiniteModule> expected;
    for (std::size_t s = 0; s < ns; ++s)
      if (uniform(0, 1) == 1) u.push_back(e.base()[s]);
    std::vector<std::string> pre;
    for (std::size_t t = 0; t < nt; ++t)
      if (std::find(u.begin(), u.end(), e.base()[img[t]]) != u.end()) {
        pre.push_back(psi.source[t]);
        expected.push_back(e.fiber(img[t]));
      }
    // Oracle: sections of the pullback over psi^{-1}(U) are the fibers of E over U,
    // repeated once per preimage point.
    EXPECT_TRUE(is_isomorphic(sections(pb, pre).module, direct_sum(e.ring(), expected).module));
  }
}

TEST(Skyscraper, Products) {
  const FiniteModule m(kZ4, {2, 4});
  EXPECT_EQ(skyscraper_product(SkyscraperFamily(kZ4, points(5), {"p2"}, {m})).module, m);
  EXPECT_TRUE(skyscraper_product(SkyscraperFamily(kZ4, points(5), {}, {})).module.is_zero());
  const auto e = random_space(4, 4);
  const SkyscraperFamily full(kZ4, e.base(), e.base(), e.fibers());
  EXPECT_EQ(skyscraper_product(full).module, product_finite(e).module);
  EXPECT_THROW(SkyscraperFamily(kZ4, points(2), {"q"}, {m}), InvalidArgument);
}

TEST(Skyscraper, FiberAdjunction) {
  const auto f = random_space(4, 3);
  const SkyscraperFamily k(kZ4, f.base(), {"p0", "p2"}, {FiniteModule(kZ4, {4}), FiniteModule(kZ4, {2})});
  const BigInt expected = hom_module(f.fiber("p0"), FiniteModule(kZ4, {4})).order() *
                          hom_module(f.fiber("p2"), FiniteModule(kZ4, {2})).order();
  EXPECT_EQ(skyscraper_hom(f, k).order(), expected);
}

TEST(Adjunction, ConstantZ2OverTwoPoints) {
  const FiniteModule z2(kZ4, {2});
  const auto c = FiniteEtaleSpace::constant(kZ4, {"a", "b"}, z2);
  const auto r = adjunction_check(c, c, c);
  EXPECT_EQ(r.lhs_order, 4);
  EXPECT_EQ(r.rhs_order, 4);
  EXPECT_TRUE(r.ok());
}

TEST(Adjunction, ZeroAndUnit) {
  const auto f = random_space(4, 2, 16);
  const auto l = random_space(4, 2, 16);
  const auto z = FiniteEtaleSpace::zero(kZ4, f.base());
  const auto r0 = adjunction_check(f, z, l);
  EXPECT_EQ(r0.lhs_order, 1);
  EXPECT_EQ(r0.rhs_order, 1);
  EXPECT_TRUE(r0.ok());
  const auto unit = FiniteEtaleSpace::constant(kZ4, f.base(), FiniteModule(kZ4, {4}));
  const auto g = random_space(4, 2, 16);
  const auto r1 = adjunction_check(unit, g, l);
  EXPECT_TRUE(r1.ok());
  BigInt hom_gl = 1;
  for (std::size_t t = 0; t < 2; ++t) hom_gl *= hom_module(g.fiber(t), l.fiber(t)).order();
  EXPECT_EQ(r1.lhs_order, hom_gl);
  EXPECT_EQ(r1.rhs_order, hom_gl);
}

TEST(Adjunction, SizeBound) {
  const FiniteModule big(kZ4, {4, 4, 4});
  const auto c = FiniteEtaleSpace::constant(kZ4, {"a"}, big);
  EXPECT_THROW(adjunction_check(c, c, c, 1000), BudgetExceeded);
}
