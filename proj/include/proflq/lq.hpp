#pragma once

// T_V H^*(G) computed two ways for finite G and compared degree by degree:
//   lhs = H^*(G; C(hom(V, G), F_p)) with G acting by conjugation,
//   rhs = sum over [rho] in Rep(V, G) of H^*(C_G(rho(V)); F_p).
// Also the degree-0 count, the rank-stratified splitting and the levelwise
// version over group towers.

#include <sstream>
#include <string>
#include <vector>

#include "proflq/error.hpp"
#include "proflq/group.hpp"
#include "proflq/groupcoh.hpp"
#include "proflq/repv.hpp"

namespace proflq {

struct LqOptions {
  CohomologyOptions cohomology{};
  RepBudget rep{};
};

// Permutation module on hom(V, G) with g.e_rho = e_{g rho g^-1}; in the
// indicator basis this is (g f)(rho) = f(g^-1 rho g).
inline GModule symonds_module(const RepClasses& rc) {
  const FiniteGroup& g = rc.group;
  std::vector<std::vector<std::size_t>> act(g.order(), std::vector<std::size_t>(rc.homs.size()));
  for (std::size_t x = 0; x < g.order(); ++x)
    for (std::size_t i = 0; i < rc.homs.size(); ++i) act[x][i] = rc.index_of_hom(conjugate_tuple(g, x, rc.homs[i]));
  return permutation_module(g, act, rc.v.p);
}

inline GradedDims tv_lhs(const RepClasses& rc, std::size_t k_max, ResolutionCache& cache, const LqOptions& opts = {}) {
  return cohomology(rc.group, symonds_module(rc), k_max, cache, opts.cohomology);
}

// Graded dimensions over the finite base Rep(V, G).
struct CohomologyEtale {
  std::vector<RepClass> base;
  std::vector<GradedDims> fibers;
};

inline GradedDims sum_dims(const std::vector<GradedDims>& parts, std::size_t k_max) {
  GradedDims total(k_max + 1, 0);
  for (const auto& d : parts)
    for (std::size_t k = 0; k <= k_max; ++k) total[k] += d[k];
  return total;
}

inline std::vector<GradedDims> centralizer_dims(const RepClasses& rc, std::size_t k_max, ResolutionCache& cache) {
  std::vector<GradedDims> out;
  for (const auto& c : rc.classes)
    out.push_back(trivial_cohomology(subgroup_as_group(rc.group, c.centralizer).group, rc.v.p, k_max, cache));
  return out;
}

inline CohomologyEtale tv_rhs(const RepClasses& rc, std::size_t k_max, ResolutionCache& cache) {
  return CohomologyEtale{rc.classes, centralizer_dims(rc, k_max, cache)};
}

struct LqReport {
  std::string group;
  std::size_t group_order = 0;
  ElementaryAbelian v;
  std::size_t k_max = 0;
  std::size_t hom_count = 0;
  GradedDims lhs;
  CohomologyEtale rhs;
  GradedDims rhs_total;
  std::vector<bool> verdict;
  // Conjugation stabilizer of each representative equals its centralizer.
  bool stabilizers_match = true;
  std::size_t degree0 = 0;

  bool ok() const {
    for (bool b : verdict)
      if (!b) return false;
    return stabilizers_match && degree0 == rhs.base.size();
  }
};

// Conjugation stabilizer of a tuple, by scan.
inline Subgroup tuple_stabilizer(const FiniteGroup& g, const HomTuple& rho) {
  Subgroup s;
  for (std::size_t x = 0; x < g.order(); ++x)
    if (conjugate_tuple(g, x, rho) == rho) s.push_back(x);
  return s;
}

// dim T_V H^0(G) as the invariants of the Symonds module; equals |Rep(V, G)|.
inline std::size_t degree0(const RepClasses& rc) { return invariants_dim(rc.group, symonds_module(rc)); }

inline LqReport lq_check(const ElementaryAbelian& v, const FiniteGroup& g, std::size_t k_max, ResolutionCache& cache,
                         const LqOptions& opts = {}) {
  const RepClasses rc = rep_classes(v, g, opts.rep);
  LqReport r;
  r.group = g.name();
  r.group_order = g.order();
  r.v = v;
  r.k_max = k_max;
  r.hom_count = rc.homs.size();
  r.lhs = tv_lhs(rc, k_max, cache, opts);
  r.rhs = tv_rhs(rc, k_max, cache);
  r.rhs_total = sum_dims(r.rhs.fibers, k_max);
  for (std::size_t k = 0; k <= k_max; ++k) r.verdict.push_back(r.lhs[k] == r.rhs_total[k]);
  for (const auto& c : rc.classes) r.stabilizers_match = r.stabilizers_match && tuple_stabilizer(g, c.representative) == c.centralizer;
  r.degree0 = degree0(rc);
  return r;
}

// Per-orbit diagnostic: H^*(G; F_p[orbit]) next to H^*(Stab; F_p).
struct OrbitDump {
  HomTuple representative;
  std::size_t orbit_size = 0;
  GradedDims induced;
  GradedDims stabilizer;
};

inline std::vector<OrbitDump> dump_orbits(const ElementaryAbelian& v, const FiniteGroup& g, std::size_t k_max,
                                          ResolutionCache& cache, const LqOptions& opts = {}) {
  const RepClasses rc = rep_classes(v, g, opts.rep);
  std::vector<OrbitDump> out;
  for (const auto& c : rc.classes) {
    const Subgroup stab = tuple_stabilizer(g, c.representative);
    OrbitDump d{c.representative, c.orbit_size,
                cohomology(g, permutation_module(g, cosets(g, stab).action, v.p), k_max, cache, opts.cohomology),
                trivial_cohomology(subgroup_as_group(g, stab).group, v.p, k_max, cache)};
    out.push_back(std::move(d));
  }
  return out;
}

inline std::string describe_failure(const LqReport& r, const std::vector<OrbitDump>& orbits) {
  std::ostringstream os;
  auto dims = [&](const GradedDims& d) {
    std::ostringstream s;
    for (std::size_t k = 0; k < d.size(); ++k) s << (k ? "," : "") << d[k];
    return s.str();
  };
  os << "lq_check mismatch for " << r.group << " p=" << r.v.p << " r=" << r.v.r << ": lhs (" << dims(r.lhs) << ") rhs ("
     << dims(r.rhs_total) << ")";
  for (const auto& o : orbits) os << "; orbit size " << o.orbit_size << " induced (" << dims(o.induced) << ") stab (" << dims(o.stabilizer) << ")";
  return os.str();
}

// Throws InvariantViolation with the orbit decomposition when the two sides differ.
inline void require_lq(const LqReport& r, const FiniteGroup& g, ResolutionCache& cache, const LqOptions& opts = {}) {
  if (r.ok()) return;
  throw InvariantViolation(describe_failure(r, dump_orbits(r.v, g, r.k_max, cache, opts)));
}

// ---------------------------------------------------------------------------
// Rank strata

struct StrataReport {
  // strata[i]: H^*(G; F_p[hom(V, G)_i]) where hom_i have image rank i.
  std::vector<GradedDims> strata;
  GradedDims group_cohomology;
  GradedDims lhs;
  bool stratum0_is_group_cohomology = false;
  bool totals_match = false;
  bool ok() const { return stratum0_is_group_cohomology && totals_match; }
};

inline StrataReport strata_split(const ElementaryAbelian& v, const FiniteGroup& g, std::size_t k_max, ResolutionCache& cache,
                                 const LqOptions& opts = {}) {
  const RepClasses rc = rep_classes(v, g, opts.rep);
  const GModule full = symonds_module(rc);
  StrataReport r;
  r.lhs = cohomology(g, full, k_max, cache, opts.cohomology);
  r.group_cohomology = trivial_cohomology(g, v.p, k_max, cache);
  for (std::size_t i = 0; i <= v.r; ++i) {
    std::vector<std::size_t> members;
    for (std::size_t h = 0; h < rc.homs.size(); ++h)
      if (rc.classes[rc.class_of[h]].image_rank == i) members.push_back(h);
    if (members.empty()) {
      r.strata.emplace_back(k_max + 1, 0);
      continue;
    }
    std::vector<std::size_t> pos(rc.homs.size(), SIZE_MAX);
    for (std::size_t j = 0; j < members.size(); ++j) pos[members[j]] = j;
    std::vector<std::vector<std::size_t>> act(g.order(), std::vector<std::size_t>(members.size()));
    for (std::size_t x = 0; x < g.order(); ++x)
      for (std::size_t j = 0; j < members.size(); ++j) act[x][j] = pos[full.perm[x][members[j]]];
    r.strata.push_back(cohomology(g, permutation_module(g, act, v.p), k_max, cache, opts.cohomology));
  }
  r.stratum0_is_group_cohomology = r.strata[0] == r.group_cohomology;
  r.totals_match = sum_dims(r.strata, k_max) == r.lhs;
  return r;
}

// ---------------------------------------------------------------------------
// Towers

struct ThreadCohomology {
  std::size_t thread = 0;
  // Centralizers of the thread's representatives map onto each other at
  // the top transition, so inflation between them is defined.
  bool centralizers_surjective = false;
  std::vector<std::size_t> inflation_ranks;  // top transition, degrees 0..k_max
};

struct ProfiniteLqReport {
  std::vector<LqReport> levels;
  RepTower rep_tower;
  std::vector<CohomologyEtale> etale;  // levelwise fibers over Rep(V, G_k)
  ContinuousCohomologyReport group_cohomology;
  std::vector<ThreadCohomology> threads;  // for stable threads only
  // Per degree: lhs dims agree at the last two levels.
  std::vector<bool> stabilized;
  // Per degree: sum over stable threads of the surviving centralizer
  // inflation ranks. Evidence about the limit at this depth.
  GradedDims limit_estimate;
  bool levels_ok() const {
    for (const auto& l : levels)
      if (!l.ok()) return false;
    return true;
  }
  bool nontrivial_limit_class() const {
    for (const auto* t : rep_tower.limit_candidates())
      if (!t->trivial) return true;
    return false;
  }
};

inline ProfiniteLqReport profinite_lq(const ElementaryAbelian& v, const GroupTower& t, std::size_t k_max, ResolutionCache& cache,
                                      const LqOptions& opts = {}) {
  ProfiniteLqReport r;
  for (const auto& g : t.levels()) {
    r.levels.push_back(lq_check(v, g, k_max, cache, opts));
    r.etale.push_back(r.levels.back().rhs);
  }
  r.rep_tower = rep_tower(v, t, opts.rep);
  r.group_cohomology = continuous_cohomology(t, v.p, k_max, cache);
  const std::size_t top = t.depth();
  for (std::size_t n = 0; n <= k_max; ++n)
    r.stabilized.push_back(top == 0 || r.levels[top - 1].lhs[n] == r.levels[top].lhs[n]);
  r.limit_estimate.assign(k_max + 1, 0);
  for (std::size_t i = 0; i < r.rep_tower.threads.size(); ++i) {
    const RepThread& th = r.rep_tower.threads[i];
    if (!th.stable) continue;
    ThreadCohomology tc;
    tc.thread = i;
    if (top == 0) {
      tc.centralizers_surjective = true;
      tc.inflation_ranks = r.levels[0].rhs.fibers[th.classes[0]];
    } else {
      const RepClasses& hi = r.rep_tower.levels[top];
      const RepClasses& lo = r.rep_tower.levels[top - 1];
      const Subgroup& ch = hi.classes[th.classes[top]].centralizer;
      const Subgroup& cl = lo.classes[th.classes[top - 1]].centralizer;
      // The representatives at the two levels may differ by conjugation;
      // move the lower one onto the image of the upper one.
      const HomTuple image = compose_tuple(t.transition(top - 1), hi.classes[th.classes[top]].representative);
      const FiniteGroup& gl = t.level(top - 1);
      std::size_t x = 0;
      while (conjugate_tuple(gl, x, lo.classes[th.classes[top - 1]].representative) != image) ++x;
      const Subgroup target = conjugate_subgroup(gl, x, cl);
      const Subgroup mapped = t.transition(top - 1).image(ch);
      tc.centralizers_surjective = mapped == target;
      if (tc.centralizers_surjective) {
        const SubgroupGroup sh = subgroup_as_group(t.level(top), ch), sl = subgroup_as_group(gl, target);
        std::vector<std::size_t> img;
        for (auto a : sh.embedding) {
          const std::size_t y = t.transition(top - 1)(a);
          img.push_back(static_cast<std::size_t>(std::lower_bound(sl.embedding.begin(), sl.embedding.end(), y) - sl.embedding.begin()));
        }
        tc.inflation_ranks = inflation_ranks(GroupHom(sh.group, sl.group, img), v.p, k_max, cache);
      }
    }
    if (tc.centralizers_surjective)
      for (std::size_t n = 0; n <= k_max; ++n) r.limit_estimate[n] += tc.inflation_ranks[n];
    r.threads.push_back(std::move(tc));
  }
  return r;
}

}  // namespace proflq
