#pragma once

// The acceptance suite: eight criteria, each a randomized or exhaustive
// property sweep with a time limit. Used by the acceptance binary and by
// the `selftest` subcommand.

#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "proflq/catalog.hpp"
#include "proflq/etale.hpp"
#include "proflq/finring.hpp"
#include "proflq/groupcoh.hpp"
#include "proflq/lq.hpp"
#include "proflq/random.hpp"
#include "proflq/repv.hpp"
#include "proflq/sep.hpp"
#include "proflq/tower.hpp"
#include "proflq/verdict.hpp"

namespace proflq {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  double limit_seconds = 0;  // 0: no limit
  std::size_t instances = 0;
  std::string detail;
};

struct SelftestOptions {
  std::uint64_t seed = env_seed();
  std::vector<int> only;  // empty: all criteria
  std::size_t jobs = 1;
};

namespace selftest {

// Thrown by a criterion body to report the first failing instance.
struct Failure {
  std::string what;
};

inline void expect(bool cond, const std::string& what) {
  if (!cond) throw Failure{what};
}

inline std::set<Element> image_set(const ModuleMap& f) {
  std::set<Element> s;
  f.source().for_each_element([&](const Element& x) { s.insert(f.apply(x)); });
  return s;
}

inline std::set<Element> kernel_set(const ModuleMap& f) {
  std::set<Element> s;
  f.source().for_each_element([&](const Element& x) {
    if (f.target().is_zero_element(f.apply(x))) s.insert(x);
  });
  return s;
}

inline const std::vector<std::int64_t>& moduli() {
  static const std::vector<std::int64_t> m{4, 6, 8, 9, 12};
  return m;
}

// Map X -> prod_t F_t assembled from fiber maps X -> F_t.
inline ModuleMap assemble(const Sections& s, const FiniteModule& x, const std::vector<ModuleMap>& parts) {
  std::vector<Element> imgs;
  for (std::size_t g = 0; g < x.rank(); ++g) {
    Element acc = s.module.zero_element();
    for (std::size_t t = 0; t < parts.size(); ++t) acc = s.module.add(acc, s.inclusions[t].apply(parts[t].apply(x.generator(g))));
    imgs.push_back(acc);
  }
  return ModuleMap::from_images(x, s.module, imgs);
}

// Restriction of a section over the whole base to the blocks of a partition.
inline ModuleMap restriction_to_blocks(const Sections& whole, const std::vector<Sections>& blocks, const DirectSum& prod) {
  std::vector<Element> imgs;
  for (std::size_t g = 0; g < whole.module.rank(); ++g) {
    const Element x = whole.module.generator(g);
    Element acc = prod.module.zero_element();
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      Element xb = blocks[b].module.zero_element();
      for (std::size_t q = 0; q < blocks[b].points.size(); ++q) {
        const Element xt = whole.projections[whole.position(blocks[b].points[q])].apply(x);
        xb = blocks[b].module.add(xb, blocks[b].inclusions[q].apply(xt));
      }
      acc = prod.module.add(acc, prod.inclusions[b].apply(xb));
    }
    imgs.push_back(acc);
  }
  return ModuleMap::from_images(whole.module, prod.module, imgs);
}

// All set partitions of {0..n-1} as restricted growth strings.
inline std::vector<std::vector<std::size_t>> set_partitions(std::size_t n) {
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
  rec(0, 0);
  return out;
}

// Every tower of depth <= max_depth with at most max_points points per
// level, up to isomorphism. A tower is a forest whose leaves all sit at the
// top level; trees of height h are roots over multisets of trees of height
// h - 1, enumerated as nondecreasing index lists.
inline std::vector<SpaceTower> tower_shapes(std::size_t max_depth, std::size_t max_points) {
  struct Node {
    std::vector<std::size_t> children;
    std::size_t leaves;
  };
  std::vector<std::vector<Node>> trees{{Node{{}, 1}}};
  std::vector<SpaceTower> out;
  for (std::size_t h = 0; h <= max_depth; ++h) {
    std::vector<std::vector<std::size_t>> forests;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t leaves) {
      if (!cur.empty()) forests.push_back(cur);
      for (std::size_t i = start; i < trees[h].size(); ++i)
        if (leaves + trees[h][i].leaves <= max_points) {
          cur.push_back(i);
          rec(i, leaves + trees[h][i].leaves);
          cur.pop_back();
        }
    };
    rec(0, 0);
    std::vector<Node> next;
    for (const auto& f : forests) {
      std::size_t leaves = 0;
      for (auto i : f) leaves += trees[h][i].leaves;
      next.push_back(Node{f, leaves});
      // Unfold the forest level by level.
      std::vector<std::vector<std::string>> lv;
      std::vector<std::vector<std::size_t>> tr;
      std::vector<std::size_t> types = f;
      for (std::size_t k = 0; k <= h; ++k) {
        std::vector<std::string> pts;
        for (std::size_t i = 0; i < types.size(); ++i) pts.push_back(std::to_string(k) + "_" + std::to_string(i));
        lv.push_back(std::move(pts));
        if (k == h) break;
        std::vector<std::size_t> up, img;
        for (std::size_t i = 0; i < types.size(); ++i)
          for (auto c : trees[h - k][types[i]].children) {
            up.push_back(c);
            img.push_back(i);
          }
        tr.push_back(std::move(img));
        types = std::move(up);
      }
      out.emplace_back(std::move(lv), std::move(tr));
    }
    trees.push_back(std::move(next));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Criteria

inline std::size_t duality(Rng& rng) {
  std::size_t n = 0;
  for (int trial = 0; trial < 200; ++trial, ++n) {
    const std::int64_t m = rng.pick(moduli());
    const FiniteModule src = rng.module(m), tgt = rng.module(m);
    const ModuleMap f = rng.map(src, tgt);
    const ModuleMap df = dual_map(f);
    expect(df.source() == pontryagin_dual(tgt) && df.target() == pontryagin_dual(src), "dual map does not reverse direction");
    const ModuleMap ev_s = double_dual_iso(src), ev_t = double_dual_iso(tgt);
    expect(is_isomorphism(ev_s) && is_isomorphism(ev_t), "double dual map is not an isomorphism");
    expect(compose(dual_map(df), ev_s) == compose(ev_t, f), "double dual is not natural");
  }
  for (int trial = 0; trial < 200; ++trial, ++n) {
    const std::int64_t m = rng.pick(moduli());
    const FiniteModule b = rng.module(m);
    std::vector<Element> gens;
    for (std::int64_t g = rng.uniform(0, 3); g > 0; --g) gens.push_back(rng.element(b));
    const auto a = generated_submodule(b, gens);
    const auto c = cokernel(a.inclusion);
    // 0 -> C^ -> B^ -> A^ -> 0
    const ModuleMap p_dual = dual_map(c.projection);
    const ModuleMap i_dual = dual_map(a.inclusion);
    expect(is_injective(p_dual) && is_surjective(i_dual), "dual of the sequence is not exact at the ends");
    expect(compose(i_dual, p_dual).is_zero() && image_set(p_dual) == kernel_set(i_dual), "dual sequence is not exact in the middle");
  }
  for (int trial = 0; trial < 150; ++trial, ++n) {
    const std::int64_t m = rng.pick(moduli());
    const FiniteRing ring(m);
    std::vector<FiniteModule> parts, duals;
    for (std::int64_t k = rng.uniform(0, 3); k > 0; --k) {
      parts.push_back(rng.module(m, 6, 2));
      duals.push_back(pontryagin_dual(parts.back()));
    }
    const DirectSum s = direct_sum(ring, parts), d = direct_sum(ring, duals);
    // sum_i A_i^  ->  (sum_i A_i)^ : the sum of the duals of the projections.
    std::vector<Element> imgs;
    const FiniteModule ds = pontryagin_dual(s.module);
    for (std::size_t g = 0; g < d.module.rank(); ++g) {
      Element acc = ds.zero_element();
      for (std::size_t i = 0; i < parts.size(); ++i)
        acc = ds.add(acc, dual_map(s.projections[i]).apply(d.projections[i].apply(d.module.generator(g))));
      imgs.push_back(acc);
    }
    expect(is_isomorphism(ModuleMap::from_images(d.module, ds, imgs)), "dual of a sum is not the product of the duals");
  }
  return n;
}

// One tower shape: product = sections levelwise, joint surjectivity and
// kernel triviality of the evaluations, levelwise density of the
// inclusions, and splitting over a random clopen partition of level 0.
inline void tower_shape_checks(Rng& rng, const SpaceTower& base) {
  const EtaleTower pro = rng.pro_etale(2, base, 2);
  const EtaleTower ind = dual_tower(pro);
  const ProductTower full = product_ind_with_sections(ind);
  for (std::size_t k = 0; k <= base.depth(); ++k)
    expect(full.tower.level(k) == product_finite(ind.level(k)).module, "product tower level is not the sections module");
  const auto threads = base.threads();
  const auto ri = canonical_components(ind, threads);
  expect(ri.ok(), "evaluation maps fail");
  for (const auto& l : ri.levels) expect(l.jointly_injective, "joint kernel is nonzero at a truncation");
  expect(ri.levels.back().jointly_surjective, "evaluations are not jointly surjective at the top level");
  if (threads.size() >= 2) {
    std::vector<Thread> two{threads.front(), threads.back()};
    const auto r2 = canonical_components(ind, two);
    expect(r2.ok(), "evaluations at two threads fail");
    for (const auto& l : r2.levels)
      if (l.separated) expect(l.jointly_surjective, "evaluations at two separated threads are not jointly surjective");
  }
  const auto rp = canonical_components(pro, threads);
  expect(rp.ok(), "inclusion maps fail");
  for (const auto& l : rp.levels) expect(l.dense, "inclusions are not levelwise dense");
  const std::size_t n0 = base.level(0).size();
  std::vector<std::size_t> label(n0);
  for (auto& l : label) l = rng.index(n0);
  std::vector<ProductTower> parts;
  for (std::size_t b = 0; b < n0; ++b) {
    std::vector<bool> in(n0);
    for (std::size_t i = 0; i < n0; ++i) in[i] = label[i] == b;
    if (std::find(in.begin(), in.end(), true) != in.end()) parts.push_back(product_ind_with_sections(ind.restrict_to(in)));
  }
  for (std::size_t k = 0; k <= base.depth(); ++k) {
    std::vector<FiniteModule> mods;
    std::vector<Sections> secs;
    for (const auto& p : parts) {
      mods.push_back(p.tower.level(k));
      secs.push_back(p.sections[k]);
    }
    const DirectSum sum = direct_sum(ind.ring(), mods);
    expect(is_isomorphism(restriction_to_blocks(full.sections[k], secs, sum)), "product does not split over a clopen partition");
  }
}

inline std::size_t products(Rng& rng) {
  std::size_t n = 0;
  for (std::size_t pts = 0; pts <= 6; ++pts) {
    const FiniteEtaleSpace e = rng.space(12, pts, 16, 2);
    const Sections whole = product_finite(e);
    // Universal property against a random test module.
    const FiniteModule x = rng.module(12, 16, 2);
    std::vector<ModuleMap> parts;
    for (std::size_t t = 0; t < pts; ++t) parts.push_back(rng.map(x, e.fiber(t)));
    const ModuleMap u = assemble(whole, x, parts);
    for (std::size_t t = 0; t < pts; ++t) expect(compose(whole.projections[t], u) == parts[t], "sections fail the universal property");
    const DirectSum fibers = direct_sum(e.ring(), e.fibers());
    std::vector<ModuleMap> proj(whole.projections.begin(), whole.projections.end());
    std::vector<Element> imgs;
    for (std::size_t g = 0; g < whole.module.rank(); ++g) {
      Element acc = fibers.module.zero_element();
      for (std::size_t t = 0; t < pts; ++t) acc = fibers.module.add(acc, fibers.inclusions[t].apply(proj[t].apply(whole.module.generator(g))));
      imgs.push_back(acc);
    }
    expect(is_isomorphism(ModuleMap::from_images(whole.module, fibers.module, imgs)), "evaluations do not identify sections");
    // Every clopen partition.
    for (const auto& labels : set_partitions(pts)) {
      const std::size_t k = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
      std::vector<Sections> blocks;
      std::vector<FiniteModule> block_mods;
      for (std::size_t b = 0; b < k; ++b) {
        std::vector<std::string> u_ids;
        for (std::size_t i = 0; i < pts; ++i)
          if (labels[i] == b) u_ids.push_back(e.base()[i]);
        blocks.push_back(sections(e, u_ids));
        block_mods.push_back(blocks.back().module);
      }
      const DirectSum prod = direct_sum(e.ring(), block_mods);
      expect(is_isomorphism(restriction_to_blocks(whole, blocks, prod)), "sections do not split over a partition");
      ++n;
    }
    // Every support of a skyscraper family.
    for (std::size_t mask = 0; mask < (std::size_t{1} << pts); ++mask) {
      std::vector<std::string> support;
      std::vector<FiniteModule> mods;
      for (std::size_t i = 0; i < pts; ++i)
        if (mask >> i & 1) {
          support.push_back(e.base()[i]);
          mods.push_back(rng.module(12, 12, 2));
        }
      const SkyscraperFamily sky(e.ring(), e.base(), support, mods);
      expect(is_isomorphic(skyscraper_product(sky).module, direct_sum(e.ring(), mods).module), "skyscraper product is wrong");
      BigInt homs = 1;
      for (std::size_t i = 0; i < support.size(); ++i) homs *= hom_module(e.fiber(support[i]), mods[i]).order();
      expect(skyscraper_hom(e, sky).order() == homs, "skyscraper hom has the wrong order");
      ++n;
    }
  }
  for (const auto& base : tower_shapes(4, 8)) {
    tower_shape_checks(rng, base);
    ++n;
  }
  return n;
}

inline std::size_t free_towers(Rng& rng) {
  std::size_t n = 0;
  for (int trial = 0; trial < 120; ++trial, ++n) {
    const TowerMap pi = rng.tower_map(static_cast<std::size_t>(rng.uniform(0, 3)), 8);
    const std::int64_t m = rng.pick(std::vector<std::int64_t>{2, 4, 6});
    const FiniteModule a = rng.module(m, 8, 2);
    const SpaceTower& t = pi.source();
    const std::string at = "tower map " + std::to_string(trial) + ": ";
    // Free product as the product of the constant tower, and its dual.
    expect(product_ind(EtaleTower::constant(TowerKind::Ind, a.ring(), t, a)) == free_product(a, t), at + "free product");
    expect(coproduct_pro(EtaleTower::constant(TowerKind::Pro, a.ring(), t, a)) == free_sum(a, t), at + "free sum");
    expect(dual_tower(free_product(pontryagin_dual(a), t)) == free_sum(a, t), at + "dual of the free product");
    // Relative towers: stalks are free over the fibers of pi.
    const RelativeTower rp = relative_product(a, pi), rs = relative_sum(a, pi);
    expect(dual_tower(relative_product(pontryagin_dual(a), pi).tower) == rs.tower, at + "relative sum is not dual");
    for (const auto& x : pi.target().threads()) {
      const ModuleTower sp = stalk_at_thread(rp.tower, x), ss = stalk_at_thread(rs.tower, x);
      for (std::size_t k = 0; k <= t.depth(); ++k) {
        std::size_t fiber = 0;
        for (auto img : pi.images(k)) fiber += img == x[k] ? 1 : 0;
        BigInt expected = 1;
        for (std::size_t i = 0; i < fiber; ++i) expected *= a.order();
        expect(sp.level(k).order() == expected && ss.level(k).order() == expected, at + "stalk is not free over the fiber");
      }
    }
    const auto r = decomposition_check(a, pi);
    expect(r.ok(), at + "decomposition fails at level " + std::to_string(r.failing_level().value_or(0)));
  }
  return n;
}

inline std::size_t adjunction(Rng& rng) {
  std::size_t n = 0;
  for (int trial = 0; trial < 120; ++trial, ++n) {
    const std::int64_t m = rng.pick(std::vector<std::int64_t>{2, 4, 6, 8, 12});
    const auto pts = static_cast<std::size_t>(rng.uniform(1, 3));
    const FiniteEtaleSpace f = rng.space(m, pts, 16, 2), g = rng.space(m, pts, 16, 2), l = rng.space(m, pts, 16, 2);
    const auto r = adjunction_check(f, g, l, std::uint64_t{1} << 20);
    expect(r.ok() && r.lhs_order == r.rhs_order, "adjunction fails on instance " + std::to_string(trial));
  }
  return n;
}

inline std::size_t cohomology_oracle() {
  std::size_t n = 0;
  ResolutionCache cache;
  for (int p : {2, 3, 5}) {
    expect(trivial_cohomology(cyclic_group(static_cast<std::size_t>(p)), p, 4, cache) == GradedDims(5, 1), "cyclic cohomology");
    ++n;
  }
  const GradedDims v4 = trivial_cohomology(catalog::elementary_abelian(2, 2), 2, 4, cache);
  for (std::size_t k = 0; k <= 4; ++k) expect(v4[k] == k + 1, "Klein four cohomology");
  ++n;
  for (const auto& e : small_groups())
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23}) {
      if (e.group.order() % static_cast<std::size_t>(p) == 0) continue;
      const GradedDims triv = trivial_cohomology(e.group, p, 4, cache);
      const GradedDims reg = cohomology(e.group, permutation_module(e.group, regular_action(e.group), p), 4, cache);
      for (std::size_t k = 1; k <= 4; ++k) expect(triv[k] == 0 && reg[k] == 0, "coprime cohomology of " + e.name);
      n += 2;
    }
  for (const auto& e : small_groups())
    for (const auto& h : all_subgroups(e.group))
      for (int p : {2, 3}) {
        expect(shapiro_check(e.group, h, p, 3, cache).equal(), "Shapiro dims for a subgroup of " + e.name);
        ++n;
      }
  return n;
}

inline std::size_t lq_sweep() {
  std::size_t n = 0;
  ResolutionCache cache;
  for (const auto& e : small_groups())
    for (int p : {2, 3})
      for (std::size_t r : {1u, 2u}) {
        const ElementaryAbelian v{p, r};
        const auto rep = lq_check(v, e.group, 3, cache);
        expect(rep.ok(), "lq_check " + e.name + " p=" + std::to_string(p) + " r=" + std::to_string(r));
        expect(rep.degree0 == rep.rhs.base.size() && rep.lhs[0] == rep.rhs.base.size(),
               "degree 0 count for " + e.name);
        const auto st = strata_split(v, e.group, 3, cache);
        expect(st.ok() && st.lhs == rep.lhs, "strata for " + e.name);
        ++n;
      }
  return n;
}

inline std::size_t profinite() {
  ResolutionCache cache;
  const auto r = profinite_lq({2, 1}, GroupTower::cyclic_p_adic(2, 2), 3, cache);
  expect(r.levels.size() == 3 && r.levels_ok(), "levelwise lq_check");
  for (const auto& l : r.levels) expect(l.rhs.base.size() == 2 && l.lhs == GradedDims(4, 2), "level dims");
  expect(!r.nontrivial_limit_class(), "a nontrivial class survives to the limit");
  return r.levels.size();
}

inline std::size_t index_of_perm(const FiniteGroup& g, const Permutation& p) {
  for (std::size_t a = 0; a < g.order(); ++a)
    if (g.permutations()[a] == p) return a;
  throw InvariantViolation("permutation is not in the group");
}

// Inclusion of a permutation group on at most four letters into S4.
inline GroupHom into_s4(const FiniteGroup& g) {
  const FiniteGroup s4 = catalog::symmetric4();
  std::vector<std::size_t> img;
  for (const auto& p : g.permutations()) {
    Permutation q(4);
    for (std::size_t x = 0; x < 4; ++x) q[x] = x < p.size() ? p[x] : x;
    img.push_back(index_of_perm(s4, q));
  }
  return GroupHom(g, s4, img);
}

inline std::size_t separability() {
  std::size_t n = 0;
  const GroupHom a4 = into_s4(catalog::alternating4());
  const SepReport ra = sep_check({3, 1}, a4);
  expect(!ra.full() && exit_code_for(ra.ok()) == ExitCode::Negative, "A4 in S4 passes fullness");
  bool witness = false;
  for (const auto& fc : ra.fullness)
    if (!fc.skipped && fc.witness) {
      const Permutation& w = a4.target().permutations()[*fc.witness];
      std::size_t moved = 0;
      for (std::size_t x = 0; x < w.size(); ++x) moved += w[x] != x ? 1 : 0;
      witness = witness || moved == 2;
    }
  expect(witness, "fullness witness is not a transposition");
  ++n;
  expect(fv_map({2, 1}, into_s4(catalog::symmetric3())).injective(), "S3 in S4 is not injective on classes");
  ++n;
  for (const auto& e : small_groups())
    for (int p : {2, 3}) {
      const GroupHom id = GroupHom::identity(e.group);
      for (std::size_t r : {1u, 2u}) expect(sep_check({p, r}, id).ok(), "identity of " + e.name);
      expect(sp_functor_check(id, static_cast<std::size_t>(p)).equivalence(), "identity functor of " + e.name);
      n += 3;
    }
  return n;
}

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<std::size_t(Rng&)> body;
};

inline std::vector<Criterion> criteria() {
  return {
      {1, "duality", 30, duality},
      {2, "products and coproducts", 60, products},
      {3, "free towers and decomposition", 60, free_towers},
      {4, "tensor-hom adjunction", 0, adjunction},
      {5, "cohomology oracle", 300, [](Rng&) { return cohomology_oracle(); }},
      {6, "Lannes-Quillen conformance", 600, [](Rng&) { return lq_sweep(); }},
      {7, "profinite levelwise run", 30, [](Rng&) { return profinite(); }},
      {8, "separability findings", 60, [](Rng&) { return separability(); }},
  };
}

inline CriterionResult run_criterion(const Criterion& c, std::uint64_t seed) {
  CriterionResult r;
  r.id = c.id;
  r.name = c.name;
  r.limit_seconds = c.limit_seconds;
  // Each criterion draws from its own stream so results do not depend on
  // which criteria run or in which order.
  Rng rng(seed + static_cast<std::uint64_t>(c.id));
  const auto start = std::chrono::steady_clock::now();
  try {
    r.instances = c.body(rng);
    r.pass = true;
  } catch (const Failure& f) {
    r.detail = f.what;
  } catch (const std::exception& e) {
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.pass && c.limit_seconds > 0 && r.seconds > c.limit_seconds) {
    r.pass = false;
    r.detail = "time limit exceeded";
  }
  return r;
}

}  // namespace selftest

inline std::vector<CriterionResult> run_selftest(const SelftestOptions& opts = {}) {
  std::vector<selftest::Criterion> chosen;
  for (auto& c : selftest::criteria())
    if (opts.only.empty() || std::find(opts.only.begin(), opts.only.end(), c.id) != opts.only.end()) chosen.push_back(c);
  std::vector<CriterionResult> out(chosen.size());
  const std::size_t jobs = std::max<std::size_t>(1, opts.jobs);
  for (std::size_t i = 0; i < chosen.size(); i += jobs) {
    std::vector<std::future<CriterionResult>> batch;
    for (std::size_t j = i; j < std::min(chosen.size(), i + jobs); ++j)
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, selftest::run_criterion, chosen[j], opts.seed));
    for (std::size_t j = 0; j < batch.size(); ++j) out[i + j] = batch[j].get();
  }
  return out;
}

inline std::string format_criterion(const CriterionResult& r) {
  std::ostringstream os;
  os << "criterion " << r.id << " " << (r.pass ? "PASS" : "FAIL") << " " << r.name << " (" << r.instances << " instances, ";
  os.setf(std::ios::fixed);
  os.precision(2);
  os << r.seconds << " s";
  if (r.limit_seconds > 0) os << " of " << r.limit_seconds << " s";
  os << ")";
  if (!r.detail.empty()) os << ": " << r.detail;
  return os.str();
}

}  // namespace proflq
