#pragma once

// Homomorphisms from an elementary abelian p-group V = (Z/p)^r into a
// finite group G, their conjugacy classes Rep(V, G), rank strata,
// centralizers and Weyl images, and the levelwise version over towers.
//
// A homomorphism is stored as the tuple (rho(e_1), ..., rho(e_r)).

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "proflq/error.hpp"
#include "proflq/fp.hpp"
#include "proflq/group.hpp"
#include "proflq/groupcoh.hpp"

namespace proflq {

struct ElementaryAbelian {
  int p = 2;
  std::size_t r = 1;
};

inline void validate(const ElementaryAbelian& v) { require(is_prime(v.p) && v.p < 256, "ElementaryAbelian: p must be a prime below 256"); }

using HomTuple = std::vector<std::size_t>;

struct RepBudget {
  // Bound on |G|^r, the size of the tuple scan.
  std::size_t max_tuples = 4000000;
};

// All invertible r x r matrices over F_p, ordered by their row-major entries.
inline std::vector<FpMatrix> general_linear(int p, std::size_t r) {
  std::vector<FpMatrix> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < r * r; ++i) total *= static_cast<std::size_t>(p);
  for (std::size_t code = 0; code < total; ++code) {
    FpMatrix m(p, r, r);
    std::size_t c = code;
    for (std::size_t i = r * r; i-- > 0;) {
      m(i / r, i % r) = static_cast<std::uint8_t>(c % static_cast<std::size_t>(p));
      c /= static_cast<std::size_t>(p);
    }
    if (rank(m) == r) out.push_back(std::move(m));
  }
  return out;
}

inline std::size_t general_linear_order(int p, std::size_t r) {
  std::size_t q = 1, order = 1;
  for (std::size_t i = 0; i < r; ++i) q *= static_cast<std::size_t>(p);
  std::size_t pi = 1;
  for (std::size_t i = 0; i < r; ++i, pi *= static_cast<std::size_t>(p)) order *= q - pi;
  return order;
}

// Greedy generating set: smallest element not yet generated, repeatedly.
inline std::vector<std::size_t> subgroup_generators(const FiniteGroup& g, const Subgroup& h) {
  std::vector<std::size_t> gens;
  Subgroup cur{0};
  for (auto a : h) {
    if (std::binary_search(cur.begin(), cur.end(), a)) continue;
    gens.push_back(a);
    cur = g.closure(gens);
  }
  return gens;
}

inline HomTuple conjugate_tuple(const FiniteGroup& g, std::size_t x, const HomTuple& rho) {
  HomTuple out(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) out[i] = g.conj(x, rho[i]);
  return out;
}

inline HomTuple compose_tuple(const GroupHom& f, const HomTuple& rho) {
  HomTuple out(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) out[i] = f(rho[i]);
  return out;
}

// rho o alpha: (rho alpha)(e_j) = prod_i rho(e_i)^{alpha(i, j)}.
inline HomTuple precompose(const FiniteGroup& g, const HomTuple& rho, const FpMatrix& alpha) {
  HomTuple out(rho.size(), 0);
  for (std::size_t j = 0; j < rho.size(); ++j)
    for (std::size_t i = 0; i < rho.size(); ++i) out[j] = g.mul(out[j], g.pow(rho[i], alpha(i, j)));
  return out;
}

// Tuples of pairwise commuting elements of order dividing p, in
// lexicographic order.
inline std::vector<HomTuple> hom_enumerate(const ElementaryAbelian& v, const FiniteGroup& g, const RepBudget& budget = {}) {
  validate(v);
  std::size_t scan = 1;
  for (std::size_t i = 0; i < v.r; ++i) {
    if (scan > budget.max_tuples / g.order()) throw BudgetExceeded("hom_enumerate: |G|^r exceeds the tuple budget");
    scan *= g.order();
  }
  std::vector<std::size_t> cand;
  for (std::size_t a = 0; a < g.order(); ++a)
    if (static_cast<std::size_t>(v.p) % g.element_order(a) == 0) cand.push_back(a);
  std::vector<HomTuple> out;
  HomTuple cur;
  auto rec = [&](auto&& self) -> void {
    if (cur.size() == v.r) {
      out.push_back(cur);
      return;
    }
    for (auto a : cand) {
      bool ok = true;
      for (auto b : cur)
        if (g.mul(a, b) != g.mul(b, a)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur.push_back(a);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

struct RepClass {
  HomTuple representative;
  std::size_t orbit_size = 0;
  std::size_t image_rank = 0;
  Subgroup image;
  // Entries of the representative forming a basis of the image, in order.
  std::vector<std::size_t> image_basis;
  Subgroup centralizer;
  Subgroup normalizer;
  // Conjugation action of N_G(rho(V)) on rho(V) in the image basis, as
  // distinct matrices in sorted order.
  std::vector<FpMatrix> weyl_image;
};

namespace detail {

// Coordinates of every element of the subgroup spanned by basis.
inline std::map<std::size_t, FpVector> span_coordinates(const FiniteGroup& g, int p, const std::vector<std::size_t>& basis) {
  std::map<std::size_t, FpVector> coords;
  std::size_t total = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) total *= static_cast<std::size_t>(p);
  for (std::size_t code = 0; code < total; ++code) {
    FpVector c(basis.size());
    std::size_t x = code, e = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      c[i] = static_cast<std::uint8_t>(x % static_cast<std::size_t>(p));
      x /= static_cast<std::size_t>(p);
      e = g.mul(e, g.pow(basis[i], c[i]));
    }
    coords.emplace(e, std::move(c));
  }
  return coords;
}

inline bool matrix_less(const FpMatrix& a, const FpMatrix& b) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return a(i, j) < b(i, j);
  return false;
}

}  // namespace detail

// Matrix of conjugation by x on the span of basis, or the empty matrix when
// x does not normalize it.
inline FpMatrix conjugation_matrix(const FiniteGroup& g, int p, const std::vector<std::size_t>& basis,
                                   const std::map<std::size_t, FpVector>& coords, std::size_t x) {
  FpMatrix m(p, basis.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const auto it = coords.find(g.conj(x, basis[j]));
    require(it != coords.end(), "conjugation_matrix: element does not normalize the subgroup");
    for (std::size_t i = 0; i < basis.size(); ++i) m(i, j) = it->second[i];
  }
  return m;
}

inline std::vector<FpMatrix> sorted_unique(std::vector<FpMatrix> ms) {
  std::sort(ms.begin(), ms.end(), detail::matrix_less);
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  return ms;
}

inline RepClass describe_class(const FiniteGroup& g, int p, const HomTuple& rho) {
  RepClass c;
  c.representative = rho;
  c.image = g.closure(rho);
  for (auto x : rho) {
    std::vector<std::size_t> trial = c.image_basis;
    trial.push_back(x);
    if (g.closure(trial).size() > g.closure(c.image_basis).size()) c.image_basis = std::move(trial);
  }
  c.image_rank = c.image_basis.size();
  c.centralizer = centralizer(g, rho);
  c.normalizer = normalizer(g, c.image);
  c.orbit_size = g.order() / c.centralizer.size();
  const auto coords = detail::span_coordinates(g, p, c.image_basis);
  std::vector<FpMatrix> ms;
  for (auto x : c.normalizer) ms.push_back(conjugation_matrix(g, p, c.image_basis, coords, x));
  c.weyl_image = sorted_unique(std::move(ms));
  return c;
}

struct RepClasses {
  ElementaryAbelian v;
  FiniteGroup group;
  std::vector<HomTuple> homs;
  // Orbit map hom(V, G) -> Rep(V, G) as an index table.
  std::vector<std::size_t> class_of;
  std::vector<RepClass> classes;

  std::size_t index_of_hom(const HomTuple& rho) const {
    const auto it = std::lower_bound(homs.begin(), homs.end(), rho);
    require(it != homs.end() && *it == rho, "RepClasses: tuple is not a homomorphism from V");
    return static_cast<std::size_t>(it - homs.begin());
  }
  std::size_t class_of_hom(const HomTuple& rho) const { return class_of[index_of_hom(rho)]; }
  std::size_t size() const { return classes.size(); }
};

// Orbits under simultaneous conjugation. Classes are numbered by their
// lexicographically smallest member, so the trivial class comes first.
inline RepClasses rep_classes(const ElementaryAbelian& v, const FiniteGroup& g, const RepBudget& budget = {}) {
  RepClasses rc{v, g, hom_enumerate(v, g, budget), {}, {}};
  rc.class_of.assign(rc.homs.size(), SIZE_MAX);
  for (std::size_t i = 0; i < rc.homs.size(); ++i) {
    if (rc.class_of[i] != SIZE_MAX) continue;
    const std::size_t c = rc.classes.size();
    std::set<std::size_t> orbit;
    for (std::size_t x = 0; x < g.order(); ++x) {
      const std::size_t j = rc.index_of_hom(conjugate_tuple(g, x, rc.homs[i]));
      rc.class_of[j] = c;
      orbit.insert(j);
    }
    RepClass cls = describe_class(g, v.p, rc.homs[i]);
    if (cls.orbit_size != orbit.size()) throw InvariantViolation("rep_classes: orbit size disagrees with the centralizer index");
    rc.classes.push_back(std::move(cls));
  }
  return rc;
}

// Class indices grouped by image rank 0..r.
inline std::vector<std::vector<std::size_t>> rank_strata(const RepClasses& rc) {
  std::vector<std::vector<std::size_t>> strata(rc.v.r + 1);
  for (std::size_t c = 0; c < rc.classes.size(); ++c) strata[rc.classes[c].image_rank].push_back(c);
  return strata;
}

// Aut(V)-orbit of a class, acting by precomposition.
inline std::vector<std::size_t> aut_orbit(const RepClasses& rc, std::size_t c) {
  std::set<std::size_t> out;
  for (const auto& alpha : general_linear(rc.v.p, rc.v.r))
    out.insert(rc.class_of_hom(precompose(rc.group, rc.classes[c].representative, alpha)));
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// Towers

struct RepThread {
  std::vector<std::size_t> classes;  // one class per level, level 0 first
  std::vector<std::size_t> ranks;
  bool trivial = false;
  // The image rank is unchanged by the top transition, so rho(V) lifts
  // isomorphically across the last two levels. Evidence of a limit class,
  // not a proof.
  bool stable = false;
  // Smallest level from which the image rank is constant up to the top.
  std::size_t constant_from = 0;
};

struct RepTower {
  ElementaryAbelian v;
  std::vector<RepClasses> levels;
  // maps[k][c]: class c at level k+1 to its image class at level k.
  std::vector<std::vector<std::size_t>> maps;
  std::vector<RepThread> threads;

  std::size_t class_map(std::size_t from, std::size_t to, std::size_t c) const {
    require(to <= from && from < levels.size(), "RepTower::class_map: bad levels");
    for (std::size_t k = from; k > to; --k) c = maps[k - 1][c];
    return c;
  }
  std::vector<const RepThread*> limit_candidates() const {
    std::vector<const RepThread*> out;
    for (const auto& t : threads)
      if (t.stable) out.push_back(&t);
    return out;
  }
};

// Threads are determined by their top class; one per class of the top level.
inline RepTower rep_tower(const ElementaryAbelian& v, const GroupTower& t, const RepBudget& budget = {}) {
  RepTower rt{v, {}, {}, {}};
  for (const auto& g : t.levels()) rt.levels.push_back(rep_classes(v, g, budget));
  for (std::size_t k = 0; k < t.depth(); ++k) {
    std::vector<std::size_t> m;
    for (const auto& c : rt.levels[k + 1].classes)
      m.push_back(rt.levels[k].class_of_hom(compose_tuple(t.transition(k), c.representative)));
    // Well defined on classes: every member of the orbit lands in the same class.
    for (std::size_t i = 0; i < rt.levels[k + 1].homs.size(); ++i)
      if (rt.levels[k].class_of_hom(compose_tuple(t.transition(k), rt.levels[k + 1].homs[i])) != m[rt.levels[k + 1].class_of[i]])
        throw InvariantViolation("rep_tower: transition is not well defined on classes");
    rt.maps.push_back(std::move(m));
  }
  const std::size_t top = t.depth();
  for (std::size_t c = 0; c < rt.levels[top].size(); ++c) {
    RepThread th;
    th.classes.assign(top + 1, 0);
    for (std::size_t k = top + 1; k-- > 0;) th.classes[k] = rt.class_map(top, k, c);
    th.trivial = true;
    for (std::size_t k = 0; k <= top; ++k) {
      th.ranks.push_back(rt.levels[k].classes[th.classes[k]].image_rank);
      th.trivial = th.trivial && th.classes[k] == 0;
    }
    th.constant_from = top;
    while (th.constant_from > 0 && th.ranks[th.constant_from - 1] == th.ranks[top]) --th.constant_from;
    th.stable = top == 0 || th.ranks[top - 1] == th.ranks[top];
    rt.threads.push_back(std::move(th));
  }
  return rt;
}

}  // namespace proflq
