#pragma once

// Separability checks for a homomorphism f : G -> L of finite groups: the
// induced map Rep(V, G) -> Rep(V, L), fullness through Weyl images, the
// functor on p-subgroups up to conjugacy, and separation of elements and
// subgroups along towers of quotients.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "proflq/error.hpp"
#include "proflq/group.hpp"
#include "proflq/groupcoh.hpp"
#include "proflq/repv.hpp"

namespace proflq {

struct FvMapReport {
  RepClasses source;
  RepClasses target;
  std::vector<std::size_t> map;  // class in Rep(V, G) -> class in Rep(V, L)
  std::vector<std::pair<std::size_t, std::size_t>> collisions;
  std::vector<std::size_t> missed;
  bool injective() const { return collisions.empty(); }
  bool surjective() const { return missed.empty(); }
};

inline FvMapReport fv_map(const ElementaryAbelian& v, const GroupHom& f, const RepBudget& budget = {}) {
  FvMapReport r{rep_classes(v, f.source(), budget), rep_classes(v, f.target(), budget), {}, {}, {}};
  std::vector<std::size_t> first(r.target.size(), SIZE_MAX);
  for (std::size_t c = 0; c < r.source.size(); ++c) {
    const std::size_t d = r.target.class_of_hom(compose_tuple(f, r.source.classes[c].representative));
    r.map.push_back(d);
    if (first[d] == SIZE_MAX)
      first[d] = c;
    else
      r.collisions.emplace_back(first[d], c);
  }
  for (std::size_t d = 0; d < r.target.size(); ++d)
    if (first[d] == SIZE_MAX) r.missed.push_back(d);
  return r;
}

struct FullnessReport {
  std::size_t source_class = 0;
  bool skipped = false;
  std::string note;
  std::vector<FpMatrix> eta;  // Weyl image in G, coordinates of V
  std::vector<FpMatrix> mu;   // Weyl image in L, coordinates transported along f
  bool injective = false;
  bool surjective = false;
  // Element of N_L(f rho(V)) whose automorphism is not induced from G.
  std::optional<std::size_t> witness;
  std::optional<FpMatrix> witness_matrix;
  bool bijective() const { return !skipped && injective && surjective; }
};

// eta(N_G(rho(V))) -> mu(N_L(f rho(V))) for injective rho. In the fixed
// coordinates both are matrix groups and the natural map is inclusion.
inline FullnessReport fullness_check(const RepClasses& source, const GroupHom& f, std::size_t c) {
  FullnessReport r;
  r.source_class = c;
  const RepClass& cls = source.classes.at(c);
  const int p = source.v.p;
  if (cls.image_rank != source.v.r) {
    r.skipped = true;
    r.note = "rho is not injective";
    return r;
  }
  const HomTuple frho = compose_tuple(f, cls.representative);
  const FiniteGroup& l = f.target();
  if (l.closure(frho).size() != cls.image.size()) {
    r.skipped = true;
    r.note = "f o rho is not injective";
    return r;
  }
  r.eta = cls.weyl_image;
  const auto coords = detail::span_coordinates(l, p, frho);
  std::vector<FpMatrix> mu;
  std::vector<std::size_t> mu_elems;
  for (auto y : normalizer(l, l.closure(frho))) {
    mu.push_back(conjugation_matrix(l, p, frho, coords, y));
    mu_elems.push_back(y);
  }
  // Every eta(n) equals mu(f(n)); the map is injective because both sit in GL(V).
  const auto gcoords = detail::span_coordinates(source.group, p, cls.representative);
  for (auto n : cls.normalizer) {
    const FpMatrix a = conjugation_matrix(source.group, p, cls.representative, gcoords, n);
    const FpMatrix b = conjugation_matrix(l, p, frho, coords, f(n));
    if (!(a == b)) throw InvariantViolation("fullness_check: eta and mu disagree on an element of N_G");
  }
  r.injective = true;
  for (std::size_t i = 0; i < mu.size() && !r.witness; ++i)
    if (!std::binary_search(r.eta.begin(), r.eta.end(), mu[i], detail::matrix_less)) {
      r.witness = mu_elems[i];
      r.witness_matrix = mu[i];
    }
  r.mu = sorted_unique(std::move(mu));
  r.surjective = !r.witness.has_value();
  return r;
}

struct SepReport {
  ElementaryAbelian v;
  FvMapReport fv;
  std::vector<FullnessReport> fullness;
  bool full() const {
    for (const auto& x : fullness)
      if (!x.skipped && !x.bijective()) return false;
    return true;
  }
  bool ok() const { return fv.injective() && full(); }
};

inline SepReport sep_check(const ElementaryAbelian& v, const GroupHom& f, const RepBudget& budget = {}) {
  SepReport r{v, fv_map(v, f, budget), {}};
  for (std::size_t c = 0; c < r.fv.source.size(); ++c) r.fullness.push_back(fullness_check(r.fv.source, f, c));
  return r;
}

// ---------------------------------------------------------------------------
// The functor on p-subgroups

struct SpFunctorReport {
  std::size_t p = 2;
  std::vector<Subgroup> source_classes;
  std::vector<Subgroup> target_classes;
  bool a = false;  // A1 ~ A2 in G iff f(A1) ~ f(A2) in L
  bool b = false;  // N_G(A) -> Aut(A) and N_L(f A) -> Aut(f A) have equal images
  bool c = false;  // every p-subgroup of L is conjugate to some f(A)
  std::optional<std::pair<std::size_t, std::size_t>> a_witness;
  std::optional<std::pair<std::size_t, std::size_t>> b_witness;  // (class of A, element of L)
  std::vector<std::size_t> c_missed;                             // classes of L missed
  bool fully_faithful() const { return a && b; }
  bool equivalence() const { return a && b && c; }
};

namespace detail {

// Conjugation by x on the sorted elements of a, as a permutation of positions.
inline std::vector<std::size_t> conjugation_on(const FiniteGroup& g, std::size_t x, const Subgroup& a) {
  std::vector<std::size_t> out;
  for (auto y : a)
    out.push_back(static_cast<std::size_t>(std::lower_bound(a.begin(), a.end(), g.conj(x, y)) - a.begin()));
  return out;
}

}  // namespace detail

inline SpFunctorReport sp_functor_check(const GroupHom& f, std::size_t p, std::size_t order_bound = 360) {
  require(is_prime(static_cast<std::int64_t>(p)), "sp_functor_check: p must be prime");
  if (f.source().order() > order_bound || f.target().order() > order_bound)
    throw BudgetExceeded("sp_functor_check: group order exceeds the bound");
  const FiniteGroup& g = f.source();
  const FiniteGroup& l = f.target();
  SpFunctorReport r;
  r.p = p;
  r.source_classes = p_subgroup_classes(g, p);
  r.target_classes = p_subgroup_classes(l, p);
  std::vector<Subgroup> images;
  for (const auto& a : r.source_classes) images.push_back(f.image(a));
  r.a = true;
  for (std::size_t i = 0; i < images.size() && r.a; ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (are_conjugate_subgroups(l, images[i], images[j])) {
        r.a = false;
        r.a_witness = std::make_pair(i, j);
        break;
      }
  r.b = true;
  for (std::size_t i = 0; i < r.source_classes.size() && r.b; ++i) {
    const Subgroup& a = r.source_classes[i];
    const Subgroup& fa = images[i];
    if (fa.size() != a.size()) {
      r.b = false;
      r.b_witness = std::make_pair(i, std::size_t{0});
      break;
    }
    // Positions of f(a) in fa, to transport automorphisms of A.
    std::vector<std::size_t> pos;
    for (auto y : a) pos.push_back(static_cast<std::size_t>(std::lower_bound(fa.begin(), fa.end(), f(y)) - fa.begin()));
    std::set<std::vector<std::size_t>> from_g;
    for (auto n : normalizer(g, a)) {
      const auto perm = detail::conjugation_on(g, n, a);
      std::vector<std::size_t> moved(fa.size());
      for (std::size_t k = 0; k < a.size(); ++k) moved[pos[k]] = pos[perm[k]];
      from_g.insert(moved);
    }
    for (auto y : normalizer(l, fa))
      if (!from_g.count(detail::conjugation_on(l, y, fa))) {
        r.b = false;
        r.b_witness = std::make_pair(i, y);
        break;
      }
  }
  for (std::size_t j = 0; j < r.target_classes.size(); ++j) {
    bool hit = false;
    for (const auto& im : images)
      if (im.size() == r.target_classes[j].size() && are_conjugate_subgroups(l, im, r.target_classes[j])) {
        hit = true;
        break;
      }
    if (!hit) r.c_missed.push_back(j);
  }
  r.c = r.c_missed.empty();
  return r;
}

// ---------------------------------------------------------------------------
// Separation along towers of quotients

struct SeparationReport {
  std::optional<std::size_t> level;  // smallest separating level
  bool exhausted() const { return !level.has_value(); }
};

inline void validate_element_thread(const GroupTower& t, const std::vector<std::size_t>& x) {
  require(x.size() == t.depth() + 1, "element thread: need one element per level");
  for (std::size_t k = 0; k <= t.depth(); ++k) require(x[k] < t.level(k).order(), "element thread: element out of range");
  for (std::size_t k = 0; k < t.depth(); ++k)
    require(t.transition(k)(x[k + 1]) == x[k], "element thread: elements are not compatible at level " + std::to_string(k));
}

inline SeparationReport conjugacy_distinguished(const GroupTower& t, const std::vector<std::size_t>& x,
                                                const std::vector<std::size_t>& y) {
  validate_element_thread(t, x);
  validate_element_thread(t, y);
  SeparationReport r;
  for (std::size_t k = 0; k <= t.depth() && !r.level; ++k)
    if (!are_conjugate(t.level(k), x[k], y[k])) r.level = k;
  return r;
}

inline void validate_subgroup_thread(const GroupTower& t, const std::vector<Subgroup>& a) {
  require(a.size() == t.depth() + 1, "subgroup thread: need one subgroup per level");
  for (std::size_t k = 0; k <= t.depth(); ++k) require(is_subgroup(t.level(k), a[k]), "subgroup thread: not a subgroup");
  for (std::size_t k = 0; k < t.depth(); ++k)
    require(t.transition(k).image(a[k + 1]) == a[k], "subgroup thread: subgroups are not compatible at level " + std::to_string(k));
}

inline SeparationReport subgroup_conjugacy_distinguished(const GroupTower& t, const std::vector<Subgroup>& a,
                                                         const std::vector<Subgroup>& b) {
  validate_subgroup_thread(t, a);
  validate_subgroup_thread(t, b);
  SeparationReport r;
  for (std::size_t k = 0; k <= t.depth() && !r.level; ++k)
    if (a[k].size() != b[k].size() || !are_conjugate_subgroups(t.level(k), a[k], b[k])) r.level = k;
  return r;
}

}  // namespace proflq
