#pragma once

// Seeded generators of random finite instances, shared by the acceptance
// suite and the command-line selftest. The seed comes from PROFLQ_SEED when
// set.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "proflq/etale.hpp"
#include "proflq/finring.hpp"
#include "proflq/tower.hpp"

namespace proflq {

inline constexpr std::uint64_t kDefaultSeed = 20261014ULL;

inline std::uint64_t env_seed() {
  if (const char* s = std::getenv("PROFLQ_SEED")) {
    char* end = nullptr;
    const auto v = std::strtoull(s, &end, 10);
    require(end != s && *end == '\0', "PROFLQ_SEED must be a decimal integer");
    return v;
  }
  return kDefaultSeed;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed = env_seed()) : gen_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen_); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(n) - 1)); }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[index(v.size())];
  }
  bool coin() { return uniform(0, 1) == 1; }
  std::mt19937_64& engine() { return gen_; }

  // Module over Z/m of order <= max_order with at most max_gens cyclic factors.
  FiniteModule module(std::int64_t m, std::uint64_t max_order = 256, std::size_t max_gens = 4) {
    std::vector<std::int64_t> divs;
    for (std::int64_t k = 2; k <= m; ++k)
      if (m % k == 0) divs.push_back(k);
    std::vector<std::int64_t> orders;
    std::uint64_t order = 1;
    const auto n = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(max_gens)));
    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t d = pick(divs);
      if (order * static_cast<std::uint64_t>(d) > max_order) continue;
      order *= static_cast<std::uint64_t>(d);
      orders.push_back(d);
    }
    return FiniteModule(FiniteRing(m), orders);
  }

  Element element(const FiniteModule& m) {
    Element x(m.rank());
    for (std::size_t i = 0; i < m.rank(); ++i) x[i] = uniform(0, m.factors()[i] - 1);
    return x;
  }

  // Entry (i, j) is a multiple of e_i / gcd(d_j, e_i), so the map is well defined.
  ModuleMap map(const FiniteModule& src, const FiniteModule& tgt) {
    SmallMatrix a(tgt.rank(), std::vector<std::int64_t>(src.rank(), 0));
    for (std::size_t i = 0; i < tgt.rank(); ++i)
      for (std::size_t j = 0; j < src.rank(); ++j) {
        const std::int64_t e = tgt.factors()[i];
        const std::int64_t g = std::gcd(e, src.factors()[j]);
        a[i][j] = uniform(0, g - 1) * (e / g);
      }
    return ModuleMap(src, tgt, a);
  }

  FiniteEtaleSpace space(std::int64_t m, std::size_t n, std::uint64_t max_order = 64, std::size_t max_gens = 3) {
    std::vector<FiniteModule> fibers;
    for (std::size_t i = 0; i < n; ++i) fibers.push_back(module(m, max_order, max_gens));
    return FiniteEtaleSpace(FiniteRing(m), point_ids(n), fibers);
  }

  // Level sizes nondecreasing, at most max_points.
  SpaceTower space_tower(std::size_t depth, std::size_t max_points) {
    std::vector<std::vector<std::string>> lv;
    std::vector<std::vector<std::size_t>> tr;
    std::size_t n = static_cast<std::size_t>(uniform(1, 2));
    for (std::size_t k = 0; k <= depth; ++k) {
      std::vector<std::string> pts;
      for (std::size_t i = 0; i < n; ++i) pts.push_back("t" + std::to_string(k) + "_" + std::to_string(i));
      if (k > 0) {
        const std::size_t prev = lv.back().size();
        std::vector<std::size_t> img(n);
        for (std::size_t i = 0; i < n; ++i) img[i] = i < prev ? i : index(prev);
        std::shuffle(img.begin(), img.end(), gen_);
        tr.push_back(img);
      }
      lv.push_back(pts);
      n = std::min(max_points, n + static_cast<std::size_t>(uniform(0, 2)));
    }
    return SpaceTower(lv, tr);
  }

  // Fiber over t' is the fiber over its image plus a random summand; the
  // transition is the projection.
  EtaleTower pro_etale(std::int64_t m, const SpaceTower& base, std::uint64_t extra_order = 8) {
    const FiniteRing ring(m);
    std::vector<FiniteEtaleSpace> lv;
    std::vector<std::vector<ModuleMap>> tr;
    std::vector<FiniteModule> f0;
    for (std::size_t i = 0; i < base.level(0).size(); ++i) f0.push_back(module(m, extra_order, 2));
    lv.emplace_back(ring, base.level(0), f0);
    for (std::size_t k = 0; k < base.depth(); ++k) {
      std::vector<FiniteModule> fibers;
      std::vector<ModuleMap> maps;
      for (auto t : base.transition_images(k)) {
        const DirectSum s = direct_sum(ring, {lv.back().fiber(t), module(m, extra_order, 1)});
        fibers.push_back(s.module);
        maps.push_back(s.projections[0]);
      }
      lv.emplace_back(ring, base.level(k + 1), fibers);
      tr.push_back(maps);
    }
    return EtaleTower(TowerKind::Pro, base, lv, tr);
  }

  // Tower map T -> S over a random S, with at most max_points points per level of T.
  TowerMap tower_map(std::size_t depth, std::size_t max_points) {
    const SpaceTower s = space_tower(depth, std::max<std::size_t>(1, max_points / 2));
    std::vector<std::vector<std::size_t>> tr, pi;
    std::vector<std::size_t> p0(s.level(0).size());
    std::iota(p0.begin(), p0.end(), 0);
    while (p0.size() < max_points && uniform(0, 2) == 0) p0.push_back(index(s.level(0).size()));
    pi.push_back(p0);
    for (std::size_t k = 0; k < depth; ++k) {
      const auto& simg = s.transition_images(k);
      std::vector<std::size_t> img, pk;
      auto over = [&](std::size_t q) {
        std::vector<std::size_t> downs;
        for (std::size_t t = 0; t < pi[k].size(); ++t)
          if (pi[k][t] == simg[q]) downs.push_back(t);
        return downs;
      };
      // Every lower point and every point of S_{k+1} gets a preimage.
      for (std::size_t t = 0; t < pi[k].size(); ++t) {
        std::vector<std::size_t> ups;
        for (std::size_t q = 0; q < simg.size(); ++q)
          if (simg[q] == pi[k][t]) ups.push_back(q);
        pk.push_back(pick(ups));
        img.push_back(t);
      }
      for (std::size_t q = 0; q < simg.size(); ++q) {
        if (std::find(pk.begin(), pk.end(), q) != pk.end()) continue;
        pk.push_back(q);
        img.push_back(pick(over(q)));
      }
      while (img.size() < max_points && coin()) {
        const std::size_t q = index(simg.size());
        pk.push_back(q);
        img.push_back(pick(over(q)));
      }
      tr.push_back(img);
      pi.push_back(pk);
    }
    std::vector<std::vector<std::string>> lv;
    for (std::size_t k = 0; k <= depth; ++k) {
      std::vector<std::string> pts;
      for (std::size_t i = 0; i < pi[k].size(); ++i) pts.push_back("u" + std::to_string(k) + "_" + std::to_string(i));
      lv.push_back(pts);
    }
    return TowerMap(SpaceTower(lv, tr), s, pi);
  }

  static std::vector<std::string> point_ids(std::size_t n, const std::string& prefix = "p") {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace proflq
