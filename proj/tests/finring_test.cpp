#include <gtest/gtest.h>

#include "proflq/finring.hpp"
#include "test_support.hpp"

using namespace proflq;
using namespace proflq::testing;

namespace {

std::int64_t big_to_i64(const BigInt& b) { return b.convert_to<std::int64_t>(); }

bool is_unimodular(const IntMatrix& u, const IntMatrix& u_inv) {
  return u * u_inv == IntMatrix::identity(u.rows()) && u_inv * u == IntMatrix::identity(u.rows());
}

const FiniteRing kZ12(12);

}  // namespace

TEST(SmithNormalForm, DiagonalTwoThree) {
  const IntMatrix a = IntMatrix::from_rows<int>({{2, 0}, {0, 3}});
  const auto s = smith_normal_form(a);
  EXPECT_EQ(s.left * a * s.right, s.diagonal);
  EXPECT_TRUE(is_unimodular(s.left, s.left_inv));
  EXPECT_TRUE(is_unimodular(s.right, s.right_inv));
  EXPECT_EQ(big_to_i64(s.diagonal(0, 0)), 1);
  EXPECT_EQ(big_to_i64(s.diagonal(1, 1)), 6);
  EXPECT_EQ(big_to_i64(s.diagonal(0, 1)), 0);
}

TEST(SmithNormalForm, IdentityAndZero) {
  const auto s = smith_normal_form(IntMatrix::identity(3));
  EXPECT_EQ(s.diagonal, IntMatrix::identity(3));
  const auto z = smith_normal_form(IntMatrix::from_rows<int>({{0}}));
  EXPECT_EQ(big_to_i64(z.diagonal(0, 0)), 0);
  EXPECT_EQ(z.rank, 0u);
  const auto e = smith_normal_form(IntMatrix(0, 0));
  EXPECT_TRUE(e.invariants().empty());
}

TEST(SmithNormalForm, RandomMatricesFactorCorrectly) {
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = static_cast<std::size_t>(uniform(1, 5));
    const std::size_t c = static_cast<std::size_t>(uniform(1, 5));
    IntMatrix a(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) a(i, j) = uniform(-40, 40);
    const auto s = smith_normal_form(a);
    ASSERT_EQ(s.left * a * s.right, s.diagonal);
    ASSERT_TRUE(is_unimodular(s.left, s.left_inv));
    ASSERT_TRUE(is_unimodular(s.right, s.right_inv));
    const auto d = s.invariants();
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) {
          ASSERT_EQ(s.diagonal(i, j), 0);
        }
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      ASSERT_GE(d[i], 0);
      if (d[i] == 0) {
        ASSERT_EQ(d[i + 1], 0);
      } else {
        ASSERT_EQ(d[i + 1] % d[i], 0);
      }
    }
  }
}

TEST(SmithNormalForm, IntegerKernelIsKernel) {
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix a(2, 4);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 4; ++j) a(i, j) = uniform(-9, 9);
    const IntMatrix k = integer_kernel(a);
    EXPECT_TRUE((a * k).is_zero());
    EXPECT_EQ(k.cols(), 4 - smith_normal_form(a).rank);
  }
}

TEST(FiniteModule, NormalizesToInvariantFactors) {
  EXPECT_EQ(FiniteModule(FiniteRing(6), {2, 3}).factors(), (std::vector<std::int64_t>{6}));
  EXPECT_EQ(FiniteModule(kZ12, {4, 2, 1}).factors(), (std::vector<std::int64_t>{2, 4}));
  EXPECT_EQ(FiniteModule(kZ12, {12, 6, 4}).factors(), (std::vector<std::int64_t>{2, 12, 12}));
  EXPECT_TRUE(FiniteModule(kZ12, {1, 1}).is_zero());
  EXPECT_THROW(FiniteModule(kZ12, {5}), InvalidArgument);
  EXPECT_THROW(FiniteRing(1), InvalidArgument);
}

TEST(FiniteModule, Isomorphism) {
  const FiniteRing z4(4);
  EXPECT_FALSE(is_isomorphic(FiniteModule(z4, {2, 2}), FiniteModule(z4, {4})));
  const FiniteModule m(kZ12, {2, 6});
  EXPECT_TRUE(is_isomorphic(m, m));
  EXPECT_THROW(is_isomorphic(m, FiniteModule(FiniteRing(6), {2})), InvalidArgument);
}

TEST(ModuleMap, RejectsIllDefinedMatrix) {
  const FiniteRing z4(4);
  EXPECT_THROW(ModuleMap(FiniteModule(z4, {2}), FiniteModule(z4, {4}), {{1}}), InvalidArgument);
  EXPECT_NO_THROW(ModuleMap(FiniteModule(z4, {2}), FiniteModule(z4, {4}), {{2}}));
}

TEST(Kernel, TimesTwoOnZ4) {
  const FiniteRing z4(4);
  const FiniteModule m(z4, {4});
  const ModuleMap f(m, m, {{2}});
  // Oracle: enumerate the 4 elements.
  const auto ks = kernel_set(f);
  ASSERT_EQ(ks.size(), 2u);
  const auto k = kernel(f);
  EXPECT_EQ(k.module.factors(), (std::vector<std::int64_t>{2}));
  EXPECT_TRUE(compose(f, k.inclusion).is_zero());
  EXPECT_EQ(image_set(k.inclusion), ks);
}

TEST(Kernel, ZeroAndIdentityMaps) {
  const FiniteModule m(kZ12, {2, 6});
  const FiniteModule n(kZ12, {4, 12});
  const auto kz = kernel(ModuleMap::zero(m, n));
  EXPECT_TRUE(is_isomorphic(kz.module, m));
  EXPECT_TRUE(is_isomorphic(cokernel(ModuleMap::zero(m, n)).module, n));
  EXPECT_TRUE(kernel(ModuleMap::identity(m)).module.is_zero());
  EXPECT_TRUE(cokernel(ModuleMap::identity(m)).module.is_zero());
}

TEST(Cokernel, TimesTwoOnZ8) {
  const FiniteRing z8(8);
  const FiniteModule m(z8, {8});
  const ModuleMap f(m, m, {{2}});
  // Oracle: the image has 4 elements, so the quotient has order 2.
  ASSERT_EQ(image_set(f).size(), 4u);
  const auto c = cokernel(f);
  EXPECT_TRUE(is_isomorphic(c.module, FiniteModule(z8, {2})));
  EXPECT_TRUE(compose(c.projection, f).is_zero());
  EXPECT_TRUE(is_surjective(c.projection));
}

TEST(Kernel, OrderIdentitiesAndUniversality) {
  // |im f| = |src| / |ker f| and |coker f| = |tgt| / |im f|, against enumeration.
  const std::vector<std::int64_t> moduli{4, 6, 8, 9, 12};
  for (int trial = 0; trial < 300; ++trial) {
    const std::int64_t m = moduli[static_cast<std::size_t>(uniform(0, 4))];
    const FiniteModule src = random_module(m);
    const FiniteModule tgt = random_module(m);
    const ModuleMap f = random_map(src, tgt);
    const auto ks = kernel_set(f);
    const auto is = image_set(f);
    const auto k = kernel(f);
    const auto im = image(f);
    const auto c = cokernel(f);
    ASSERT_EQ(k.module.order(), BigInt(ks.size()));
    ASSERT_EQ(im.module.order(), BigInt(is.size()));
    ASSERT_EQ(BigInt(ks.size()) * BigInt(is.size()), src.order());
    ASSERT_EQ(c.module.order() * BigInt(is.size()), tgt.order());
    ASSERT_EQ(image_set(k.inclusion), ks);
    ASSERT_EQ(image_set(im.inclusion), is);
    ASSERT_TRUE(is_injective(k.inclusion));
    ASSERT_TRUE(is_injective(im.inclusion));
    // Kernel of the cokernel projection is exactly the image.
    ASSERT_EQ(kernel_set(c.projection), is);
    // Torsion profiles determine finite abelian groups.
    ASSERT_EQ(torsion_profile(k.module), torsion_profile_of_set(ks, m, src));
  }
}

TEST(Hom, Z4ToZ6OverZ12) {
  const FiniteModule a(kZ12, {4});
  const FiniteModule b(kZ12, {6});
  // Oracle: 6 candidate images of the generator, keep those killed by 4.
  const auto homs = all_homomorphisms(a, b);
  ASSERT_EQ(homs.size(), 2u);
  EXPECT_EQ(hom_module(a, b).factors(), (std::vector<std::int64_t>{2}));
}

TEST(Hom, UnitsAndZero) {
  const FiniteModule m(kZ12, {2, 6});
  const FiniteModule unit(kZ12, {12});
  EXPECT_TRUE(is_isomorphic(tensor_module(m, unit), m));
  EXPECT_TRUE(hom_module(FiniteModule::zero(kZ12), m).is_zero());
  EXPECT_THROW(hom_module(m, FiniteModule(FiniteRing(6), {2})), InvalidArgument);
}

TEST(Hom, ElementsAreExactlyTheHomomorphisms) {
  for (int trial = 0; trial < 60; ++trial) {
    const std::int64_t m = std::vector<std::int64_t>{4, 6, 8, 12}[static_cast<std::size_t>(uniform(0, 3))];
    const FiniteModule a = random_module(m, 32, 3);
    const FiniteModule b = random_module(m, 32, 3);
    const HomSpace h(a, b);
    const auto brute = all_homomorphisms(a, b);
    ASSERT_EQ(h.module().order(), BigInt(brute.size()));
    std::set<SmallMatrix> seen;
    h.module().for_each_element([&](const Element& x) {
      const ModuleMap f = h.to_map(x);
      seen.insert(f.matrix());
      ASSERT_EQ(h.from_map(f), x);
    });
    std::set<SmallMatrix> expected;
    for (const auto& f : brute) expected.insert(f.matrix());
    ASSERT_EQ(seen, expected);
    // Addition in Hom is pointwise addition of maps.
    const Element x = random_element(h.module());
    const Element y = random_element(h.module());
    ASSERT_EQ(h.to_map(h.module().add(x, y)), add_maps(h.to_map(x), h.to_map(y)));
  }
}

TEST(Tensor, GcdRuleAndBilinearity) {
  const FiniteModule a(kZ12, {4});
  const FiniteModule b(kZ12, {6});
  EXPECT_EQ(tensor_module(a, b).factors(), (std::vector<std::int64_t>{2}));
  for (int trial = 0; trial < 100; ++trial) {
    const FiniteModule m = random_module(12, 64, 3);
    const FiniteModule n = random_module(12, 64, 3);
    const TensorProduct t(m, n);
    const Element x1 = random_element(m), x2 = random_element(m), y = random_element(n);
    ASSERT_EQ(t.tensor(m.add(x1, x2), y), t.module().add(t.tensor(x1, y), t.tensor(x2, y)));
  }
}

TEST(Duality, CyclicSelfDual) {
  const FiniteModule z6(kZ12, {6});
  EXPECT_TRUE(is_isomorphic(pontryagin_dual(z6), z6));
}

TEST(Duality, DualOfSurjectionHitsOrderTwoElement) {
  const FiniteRing z4(4);
  const FiniteModule a(z4, {4});
  const FiniteModule b(z4, {2});
  const ModuleMap q(a, b, {{1}});
  ASSERT_TRUE(is_surjective(q));
  const ModuleMap d = dual_map(q);
  EXPECT_TRUE(is_injective(d));
  // Oracle: the nontrivial character of Z/2 composed with q is the character of
  // Z/4 sending 1 to 2 in Z/4, i.e. the element of order 2 in the dual.
  const Element chi{1};
  const Element img = d.apply(chi);
  for (const Element& x : a.elements()) {
    EXPECT_EQ(character_value(a, img, x), character_value(b, chi, q.apply(x)));
  }
  EXPECT_EQ(a.scale(2, img), a.zero_element());
  EXPECT_FALSE(a.is_zero_element(img));
}

TEST(Duality, DualMapIsPrecompositionOfCharacters) {
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t m = std::vector<std::int64_t>{4, 6, 8, 9, 12}[static_cast<std::size_t>(uniform(0, 4))];
    const FiniteModule src = random_module(m, 64, 3);
    const FiniteModule tgt = random_module(m, 64, 3);
    const ModuleMap f = random_map(src, tgt);
    const ModuleMap d = dual_map(f);
    const Element chi = random_element(tgt);
    const Element x = random_element(src);
    ASSERT_EQ(character_value(src, d.apply(chi), x), character_value(tgt, chi, f.apply(x)));
  }
}

TEST(Duality, DoubleDualNaturality) {
  for (int trial = 0; trial < 100; ++trial) {
    const std::int64_t m = std::vector<std::int64_t>{4, 6, 8, 9, 12}[static_cast<std::size_t>(uniform(0, 4))];
    const FiniteModule src = random_module(m);
    const FiniteModule tgt = random_module(m);
    const ModuleMap f = random_map(src, tgt);
    const ModuleMap ev_s = double_dual_iso(src);
    const ModuleMap ev_t = double_dual_iso(tgt);
    ASSERT_TRUE(is_isomorphism(ev_s));
    ASSERT_EQ(compose(dual_map(dual_map(f)), ev_s), compose(ev_t, f));
  }
}

TEST(Duality, ExactnessReversesOnShortExactSequences) {
  for (int trial = 0; trial < 150; ++trial) {
    const std::int64_t m = std::vector<std::int64_t>{4, 6, 8, 9, 12}[static_cast<std::size_t>(uniform(0, 4))];
    const FiniteModule b = random_module(m);
    std::vector<Element> gens;
    for (int g = 0; g < uniform(0, 3); ++g) gens.push_back(random_element(b));
    const auto a = generated_submodule(b, gens);
    const auto c = cokernel(a.inclusion);
    // 0 -> C^ -> B^ -> A^ -> 0
    const ModuleMap p_dual = dual_map(c.projection);
    const ModuleMap i_dual = dual_map(a.inclusion);
    ASSERT_TRUE(is_injective(p_dual));
    ASSERT_TRUE(is_surjective(i_dual));
    ASSERT_TRUE(compose(i_dual, p_dual).is_zero());
    ASSERT_EQ(image_set(p_dual), kernel_set(i_dual));
  }
}

TEST(Duality, HomIntoUnitCapturesDual) {
  for (int trial = 0; trial < 50; ++trial) {
    const std::int64_t m = std::vector<std::int64_t>{4, 6, 8, 9, 12}[static_cast<std::size_t>(uniform(0, 4))];
    const FiniteModule a = random_module(m);
    EXPECT_TRUE(is_isomorphic(hom_module(a, FiniteModule(FiniteRing(m), {m})), pontryagin_dual(a)));
  }
}

TEST(DirectSum, InclusionsAndProjectionsCompose) {
  const FiniteRing z6(6);
  const std::vector<FiniteModule> parts{FiniteModule(z6, {2}), FiniteModule(z6, {3}), FiniteModule(z6, {6})};
  const DirectSum s = direct_sum(z6, parts);
  EXPECT_EQ(s.module.factors(), (std::vector<std::int64_t>{6, 6}));
  for (std::size_t a = 0; a < parts.size(); ++a)
    for (std::size_t b = 0; b < parts.size(); ++b) {
      const ModuleMap pi = compose(s.projections[a], s.inclusions[b]);
      if (a == b) {
        EXPECT_EQ(pi, ModuleMap::identity(parts[a]));
      } else {
        EXPECT_TRUE(pi.is_zero());
      }
    }
}

TEST(FieldFastPath, AgreesWithSmithComputations) {
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t p = std::vector<std::int64_t>{2, 3, 5}[static_cast<std::size_t>(uniform(0, 2))];
    const FiniteModule src = random_module(p, 256, 5);
    const FiniteModule tgt = random_module(p, 256, 5);
    const ModuleMap f = random_map(src, tgt);
    ASSERT_EQ(is_injective(f), kernel(f).module.is_zero());
    ASSERT_EQ(is_surjective(f), cokernel(f).module.is_zero());
    std::vector<Element> gens;
    for (int g = 0; g < uniform(0, 4); ++g) gens.push_back(random_element(tgt));
    ASSERT_EQ(submodule_order(tgt, gens), generated_submodule(tgt, gens).module.order());
  }
}
