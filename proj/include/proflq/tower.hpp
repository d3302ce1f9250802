#pragma once

// Chains of finite objects presenting profinite spaces, profinite modules
// (pro towers, surjective transitions) and discrete torsion modules (ind
// towers, injective transitions), plus etale towers over a space tower.
//
// Index conventions: a space tower's transition k maps T_{k+1} -> T_k. A pro
// module tower's transition k maps level k+1 -> level k; an ind module
// tower's transition k maps level k -> level k+1. Etale towers store one map
// per point t' of T_{k+1}: (E_{k+1})_{t'} -> (E_k)_{p(t')} for pro,
// (E_k)_{p(t')} -> (E_{k+1})_{t'} for ind.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "proflq/error.hpp"
#include "proflq/etale.hpp"
#include "proflq/finring.hpp"

namespace proflq {

enum class TowerKind { Pro, Ind };

inline TowerKind opposite(TowerKind k) { return k == TowerKind::Pro ? TowerKind::Ind : TowerKind::Pro; }
inline const char* to_string(TowerKind k) { return k == TowerKind::Pro ? "pro" : "ind"; }

// A compatible sequence of points, one per level.
using Thread = std::vector<std::size_t>;

class SpaceTower {
 public:
  SpaceTower(std::vector<std::vector<std::string>> levels, std::vector<std::vector<std::size_t>> transitions)
      : levels_(std::move(levels)), transitions_(std::move(transitions)) {
    require(!levels_.empty(), "SpaceTower: need at least one level");
    require(transitions_.size() + 1 == levels_.size(), "SpaceTower: need one transition between consecutive levels");
    for (std::size_t k = 0; k < levels_.size(); ++k) {
      std::set<std::string> ids(levels_[k].begin(), levels_[k].end());
      require(ids.size() == levels_[k].size(), "SpaceTower: duplicate point at level " + std::to_string(k));
    }
    for (std::size_t k = 0; k + 1 < levels_.size(); ++k) {
      const BaseMap p = transition(k);
      require(p.is_surjective(), "SpaceTower: transition " + std::to_string(k + 1) + " -> " + std::to_string(k) +
                                     " is not surjective");
    }
  }

  // From point ids: transitions[k] maps each point of level k+1 to its image id.
  static SpaceTower from_ids(std::vector<std::vector<std::string>> levels,
                             const std::vector<std::map<std::string, std::string>>& transitions) {
    require(transitions.size() + 1 == levels.size(), "SpaceTower: need one transition between consecutive levels");
    std::vector<std::vector<std::size_t>> t;
    for (std::size_t k = 0; k < transitions.size(); ++k)
      t.push_back(BaseMap::from_ids(levels[k + 1], levels[k], transitions[k]).images);
    return SpaceTower(std::move(levels), std::move(t));
  }

  // |T_k| = 2^k; point "b0110" maps to "b011".
  static SpaceTower binary(std::size_t depth) {
    std::vector<std::vector<std::string>> lv{{"b"}};
    std::vector<std::vector<std::size_t>> tr;
    for (std::size_t k = 1; k <= depth; ++k) {
      std::vector<std::string> next;
      std::vector<std::size_t> img;
      for (std::size_t i = 0; i < lv.back().size(); ++i)
        for (char c : {'0', '1'}) {
          next.push_back(lv.back()[i] + c);
          img.push_back(i);
        }
      lv.push_back(std::move(next));
      tr.push_back(std::move(img));
    }
    return SpaceTower(std::move(lv), std::move(tr));
  }

  // |T_k| = k+1; the newest point at each level maps onto the last old one.
  static SpaceTower chain(std::size_t depth) {
    std::vector<std::vector<std::string>> lv;
    std::vector<std::vector<std::size_t>> tr;
    for (std::size_t k = 0; k <= depth; ++k) {
      std::vector<std::string> pts;
      for (std::size_t i = 0; i <= k; ++i) pts.push_back("c" + std::to_string(k) + "_" + std::to_string(i));
      lv.push_back(std::move(pts));
      if (k > 0) {
        std::vector<std::size_t> img(k + 1);
        for (std::size_t i = 0; i <= k; ++i) img[i] = std::min(i, k - 1);
        tr.push_back(std::move(img));
      }
    }
    return SpaceTower(std::move(lv), std::move(tr));
  }

  static SpaceTower point(std::size_t depth) {
    std::vector<std::vector<std::string>> lv(depth + 1, std::vector<std::string>{"*"});
    std::vector<std::vector<std::size_t>> tr(depth, std::vector<std::size_t>{0});
    return SpaceTower(std::move(lv), std::move(tr));
  }

  std::size_t depth() const { return levels_.size() - 1; }
  std::size_t num_levels() const { return levels_.size(); }
  const std::vector<std::string>& level(std::size_t k) const { return levels_.at(k); }
  const std::vector<std::vector<std::string>>& levels() const { return levels_; }
  const std::vector<std::size_t>& transition_images(std::size_t k) const { return transitions_.at(k); }
  BaseMap transition(std::size_t k) const { return BaseMap(levels_.at(k + 1), levels_.at(k), transitions_.at(k)); }

  // Image at level `to` of point i at level `from` (to <= from).
  std::size_t project(std::size_t from, std::size_t to, std::size_t i) const {
    require(to <= from && from < levels_.size(), "SpaceTower::project: bad levels");
    for (std::size_t k = from; k > to; --k) i = transitions_[k - 1][i];
    return i;
  }

  // The thread through point i of the top level; every thread at the
  // available depth arises this way.
  Thread thread_through(std::size_t i) const {
    Thread t(levels_.size());
    t.back() = i;
    for (std::size_t k = depth(); k > 0; --k) t[k - 1] = transitions_[k - 1][t[k]];
    return t;
  }
  std::vector<Thread> threads() const {
    std::vector<Thread> out;
    for (std::size_t i = 0; i < levels_.back().size(); ++i) out.push_back(thread_through(i));
    return out;
  }
  bool is_thread(const Thread& x) const {
    if (x.size() != levels_.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k)
      if (x[k] >= levels_[k].size()) return false;
    for (std::size_t k = 0; k + 1 < x.size(); ++k)
      if (transitions_[k][x[k + 1]] != x[k]) return false;
    return true;
  }

  SpaceTower truncate(std::size_t depth) const {
    require(depth <= this->depth(), "SpaceTower::truncate: depth exceeds the tower");
    return SpaceTower({levels_.begin(), levels_.begin() + static_cast<std::ptrdiff_t>(depth + 1)},
                      {transitions_.begin(), transitions_.begin() + static_cast<std::ptrdiff_t>(depth)});
  }

  // Points of level k lying over a subset of level 0 (a clopen subset).
  std::vector<std::size_t> over(std::size_t k, const std::vector<bool>& level0_subset) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < levels_[k].size(); ++i)
      if (level0_subset.at(project(k, 0, i))) out.push_back(i);
    return out;
  }

  // The subtower over a nonempty subset of level 0.
  SpaceTower restrict_to(const std::vector<bool>& level0_subset) const {
    std::vector<std::vector<std::string>> lv;
    std::vector<std::vector<std::size_t>> tr;
    std::vector<std::size_t> prev_pos(levels_[0].size(), 0);
    for (std::size_t k = 0; k < levels_.size(); ++k) {
      const auto keep = over(k, level0_subset);
      std::vector<std::string> pts;
      std::vector<std::size_t> pos(levels_[k].size(), 0);
      std::vector<std::size_t> img;
      for (std::size_t q = 0; q < keep.size(); ++q) {
        pts.push_back(levels_[k][keep[q]]);
        pos[keep[q]] = q;
        if (k > 0) img.push_back(prev_pos[transitions_[k - 1][keep[q]]]);
      }
      lv.push_back(std::move(pts));
      if (k > 0) tr.push_back(std::move(img));
      prev_pos = std::move(pos);
    }
    return SpaceTower(std::move(lv), std::move(tr));
  }

  friend bool operator==(const SpaceTower& a, const SpaceTower& b) {
    return a.levels_ == b.levels_ && a.transitions_ == b.transitions_;
  }

 private:
  std::vector<std::vector<std::string>> levels_;
  std::vector<std::vector<std::size_t>> transitions_;
};

// ---------------------------------------------------------------------------
// Module towers

class ModuleTower {
 public:
  // `strict` enforces surjective (pro) / injective (ind) transitions.
  ModuleTower(TowerKind kind, std::vector<FiniteModule> levels, std::vector<ModuleMap> transitions, bool strict = true)
      : kind_(kind), levels_(std::move(levels)), transitions_(std::move(transitions)) {
    require(!levels_.empty(), "ModuleTower: need at least one level");
    require(transitions_.size() + 1 == levels_.size(), "ModuleTower: need one transition between consecutive levels");
    for (std::size_t k = 0; k + 1 < levels_.size(); ++k) {
      const FiniteModule& from = kind_ == TowerKind::Pro ? levels_[k + 1] : levels_[k];
      const FiniteModule& to = kind_ == TowerKind::Pro ? levels_[k] : levels_[k + 1];
      require(transitions_[k].source() == from && transitions_[k].target() == to,
              "ModuleTower: transition " + std::to_string(k) + " has the wrong source or target");
      const bool good = kind_ == TowerKind::Pro ? is_surjective(transitions_[k]) : is_injective(transitions_[k]);
      if (!good) {
        strict_ok_ = false;
        require(!strict, std::string("ModuleTower: ") + (kind_ == TowerKind::Pro ? "pro transition is not surjective"
                                                                                 : "ind transition is not injective"));
      }
    }
  }

  static ModuleTower constant(TowerKind kind, const FiniteModule& a, std::size_t depth) {
    return ModuleTower(kind, std::vector<FiniteModule>(depth + 1, a),
                       std::vector<ModuleMap>(depth, ModuleMap::identity(a)));
  }

  TowerKind kind() const { return kind_; }
  std::size_t depth() const { return levels_.size() - 1; }
  const FiniteModule& level(std::size_t k) const { return levels_.at(k); }
  const std::vector<FiniteModule>& levels() const { return levels_; }
  const ModuleMap& transition(std::size_t k) const { return transitions_.at(k); }
  const std::vector<ModuleMap>& transitions() const { return transitions_; }
  // Whether every transition is surjective (pro) / injective (ind).
  bool transitions_strict() const { return strict_ok_; }
  bool is_zero() const {
    return std::all_of(levels_.begin(), levels_.end(), [](const FiniteModule& m) { return m.is_zero(); });
  }

  friend bool operator==(const ModuleTower& a, const ModuleTower& b) {
    return a.kind_ == b.kind_ && a.levels_ == b.levels_ && a.transitions_ == b.transitions_;
  }

 private:
  TowerKind kind_;
  std::vector<FiniteModule> levels_;
  std::vector<ModuleMap> transitions_;
  bool strict_ok_ = true;
};

// Levelwise isomorphism of levels (not of transitions).
inline bool levelwise_isomorphic(const ModuleTower& a, const ModuleTower& b) {
  if (a.kind() != b.kind() || a.depth() != b.depth()) return false;
  for (std::size_t k = 0; k <= a.depth(); ++k)
    if (!is_isomorphic(a.level(k), b.level(k))) return false;
  return true;
}

// Maps f_k : X_k -> Y_k commuting with the transitions.
inline bool is_tower_morphism(const ModuleTower& x, const ModuleTower& y, const std::vector<ModuleMap>& f) {
  if (x.kind() != y.kind() || x.depth() != y.depth() || f.size() != x.depth() + 1) return false;
  for (std::size_t k = 0; k + 1 <= x.depth(); ++k) {
    if (x.kind() == TowerKind::Pro) {
      if (compose(f[k], x.transition(k)) != compose(y.transition(k), f[k + 1])) return false;
    } else {
      if (compose(f[k + 1], x.transition(k)) != compose(y.transition(k), f[k])) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Etale towers

class EtaleTower {
 public:
  EtaleTower(TowerKind kind, SpaceTower base, std::vector<FiniteEtaleSpace> levels,
             std::vector<std::vector<ModuleMap>> transitions, bool strict = true)
      : kind_(kind), base_(std::move(base)), levels_(std::move(levels)), transitions_(std::move(transitions)) {
    require(levels_.size() == base_.num_levels(), "EtaleTower: need one etale space per base level");
    require(transitions_.size() == base_.depth(), "EtaleTower: need one transition per base transition");
    const FiniteRing& ring = levels_[0].ring();
    for (std::size_t k = 0; k < levels_.size(); ++k) {
      require(levels_[k].base() == base_.level(k), "EtaleTower: level " + std::to_string(k) + " is over the wrong base");
      require(levels_[k].ring() == ring, "EtaleTower: ring mismatch between levels");
    }
    for (std::size_t k = 0; k < transitions_.size(); ++k) {
      const auto& img = base_.transition_images(k);
      require(transitions_[k].size() == img.size(), "EtaleTower: need one fiber map per point of the finer level");
      for (std::size_t q = 0; q < img.size(); ++q) {
        const FiniteModule& up = levels_[k + 1].fiber(q);
        const FiniteModule& down = levels_[k].fiber(img[q]);
        const ModuleMap& f = transitions_[k][q];
        const bool shape = kind_ == TowerKind::Pro ? (f.source() == up && f.target() == down)
                                                   : (f.source() == down && f.target() == up);
        require(shape, "EtaleTower: fiber map over '" + base_.level(k + 1)[q] + "' has the wrong source or target");
        const bool good = kind_ == TowerKind::Pro ? is_surjective(f) : is_injective(f);
        if (!good) {
          strict_ok_ = false;
          require(!strict, std::string("EtaleTower: fiber map over '") + base_.level(k + 1)[q] + "' is not " +
                               (kind_ == TowerKind::Pro ? "surjective" : "injective"));
        }
      }
    }
  }

  // Constant module a at every point with identity transitions.
  static EtaleTower constant(TowerKind kind, const FiniteRing& ring, const SpaceTower& base, const FiniteModule& a) {
    std::vector<FiniteEtaleSpace> lv;
    std::vector<std::vector<ModuleMap>> tr;
    for (std::size_t k = 0; k < base.num_levels(); ++k) {
      lv.push_back(FiniteEtaleSpace::constant(ring, base.level(k), a));
      if (k > 0) tr.emplace_back(base.level(k).size(), ModuleMap::identity(a));
    }
    return EtaleTower(kind, base, std::move(lv), std::move(tr));
  }

  TowerKind kind() const { return kind_; }
  const SpaceTower& base() const { return base_; }
  const FiniteRing& ring() const { return levels_[0].ring(); }
  std::size_t depth() const { return base_.depth(); }
  const FiniteEtaleSpace& level(std::size_t k) const { return levels_.at(k); }
  const std::vector<FiniteEtaleSpace>& levels() const { return levels_; }
  const std::vector<ModuleMap>& transition(std::size_t k) const { return transitions_.at(k); }
  bool transitions_strict() const { return strict_ok_; }

  // The subtower over a nonempty subset of level 0.
  EtaleTower restrict_to(const std::vector<bool>& level0_subset) const {
    const SpaceTower sub = base_.restrict_to(level0_subset);
    std::vector<FiniteEtaleSpace> lv;
    std::vector<std::vector<ModuleMap>> tr;
    for (std::size_t k = 0; k < levels_.size(); ++k) {
      const auto keep = base_.over(k, level0_subset);
      std::vector<FiniteModule> fibers;
      std::vector<ModuleMap> maps;
      for (auto i : keep) {
        fibers.push_back(levels_[k].fiber(i));
        if (k > 0) maps.push_back(transitions_[k - 1][i]);
      }
      lv.emplace_back(ring(), sub.level(k), std::move(fibers));
      if (k > 0) tr.push_back(std::move(maps));
    }
    return EtaleTower(kind_, sub, std::move(lv), std::move(tr), false);
  }

  friend bool operator==(const EtaleTower& a, const EtaleTower& b) {
    return a.kind_ == b.kind_ && a.base_ == b.base_ && a.levels_ == b.levels_ && a.transitions_ == b.transitions_;
  }

 private:
  TowerKind kind_;
  SpaceTower base_;
  std::vector<FiniteEtaleSpace> levels_;
  std::vector<std::vector<ModuleMap>> transitions_;
  bool strict_ok_ = true;
};

inline bool levelwise_isomorphic(const EtaleTower& a, const EtaleTower& b) {
  if (a.kind() != b.kind() || !(a.base() == b.base())) return false;
  for (std::size_t k = 0; k <= a.depth(); ++k)
    if (!is_isomorphic(a.level(k), b.level(k))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Duality

inline ModuleTower dual_tower(const ModuleTower& x) {
  std::vector<FiniteModule> lv;
  std::vector<ModuleMap> tr;
  for (const auto& m : x.levels()) lv.push_back(pontryagin_dual(m));
  for (const auto& f : x.transitions()) tr.push_back(dual_map(f));
  return ModuleTower(opposite(x.kind()), std::move(lv), std::move(tr), false);
}

inline EtaleTower dual_tower(const EtaleTower& x) {
  std::vector<FiniteEtaleSpace> lv;
  std::vector<std::vector<ModuleMap>> tr;
  for (const auto& e : x.levels()) lv.push_back(dual_etale(e));
  for (std::size_t k = 0; k < x.depth(); ++k) {
    std::vector<ModuleMap> maps;
    for (const auto& f : x.transition(k)) maps.push_back(dual_map(f));
    tr.push_back(std::move(maps));
  }
  return EtaleTower(opposite(x.kind()), x.base(), std::move(lv), std::move(tr), false);
}

// Levelwise canonical maps X_k -> (X_k^)^, checked to be isomorphisms that
// commute with the transitions of X and of its double dual.
inline bool double_dual_natural(const ModuleTower& x) {
  const ModuleTower dd = dual_tower(dual_tower(x));
  std::vector<ModuleMap> iso;
  for (std::size_t k = 0; k <= x.depth(); ++k) {
    iso.push_back(double_dual_iso(x.level(k)));
    if (!is_isomorphism(iso.back())) return false;
  }
  return is_tower_morphism(x, dd, iso);
}

// ---------------------------------------------------------------------------
// Free products and sums

struct TowerBudget {
  // Bound on |T_k| * log2|A| at any level.
  double max_level_bits = 1 << 16;
};

namespace detail {

inline void check_level_budget(const FiniteModule& a, const SpaceTower& t, const TowerBudget& budget) {
  double log_a = 0;
  for (auto d : a.factors()) log_a += std::log2(static_cast<double>(d));
  for (std::size_t k = 0; k < t.num_levels(); ++k)
    if (static_cast<double>(t.level(k).size()) * log_a > budget.max_level_bits)
      throw BudgetExceeded("tower level " + std::to_string(k) + " exceeds the level bit budget");
}

// Map between direct sums of copies: out coordinate q takes in coordinate
// src_of[q] (precomposition), or in coordinate i is added into out
// coordinate dst_of[i] (summation).
inline ModuleMap copy_map(const DirectSum& from, const DirectSum& to, const std::vector<std::size_t>& index, bool summing) {
  std::vector<Element> imgs;
  for (std::size_t g = 0; g < from.module.rank(); ++g) {
    const Element x = from.module.generator(g);
    Element acc = to.module.zero_element();
    if (summing) {
      for (std::size_t i = 0; i < index.size(); ++i)
        acc = to.module.add(acc, to.inclusions[index[i]].apply(from.projections[i].apply(x)));
    } else {
      for (std::size_t q = 0; q < index.size(); ++q)
        acc = to.module.add(acc, to.inclusions[q].apply(from.projections[index[q]].apply(x)));
    }
    imgs.push_back(acc);
  }
  return ModuleMap::from_images(from.module, to.module, imgs);
}

inline std::vector<DirectSum> copies(const FiniteModule& a, const SpaceTower& t) {
  std::vector<DirectSum> out;
  for (std::size_t k = 0; k < t.num_levels(); ++k)
    out.push_back(direct_sum(a.ring(), std::vector<FiniteModule>(t.level(k).size(), a)));
  return out;
}

}  // namespace detail

// A^{T_k} with precomposition along T_{k+1} -> T_k.
inline ModuleTower free_product(const FiniteModule& a, const SpaceTower& t, const TowerBudget& budget = {}) {
  detail::check_level_budget(a, t, budget);
  const auto lv = detail::copies(a, t);
  std::vector<FiniteModule> mods;
  std::vector<ModuleMap> tr;
  for (const auto& s : lv) mods.push_back(s.module);
  for (std::size_t k = 0; k < t.depth(); ++k) tr.push_back(detail::copy_map(lv[k], lv[k + 1], t.transition_images(k), false));
  return ModuleTower(TowerKind::Ind, std::move(mods), std::move(tr));
}

// A[T_k] with summation along the fibers of T_{k+1} -> T_k.
inline ModuleTower free_sum(const FiniteModule& a, const SpaceTower& t, const TowerBudget& budget = {}) {
  detail::check_level_budget(a, t, budget);
  const auto lv = detail::copies(a, t);
  std::vector<FiniteModule> mods;
  std::vector<ModuleMap> tr;
  for (const auto& s : lv) mods.push_back(s.module);
  for (std::size_t k = 0; k < t.depth(); ++k) tr.push_back(detail::copy_map(lv[k + 1], lv[k], t.transition_images(k), true));
  return ModuleTower(TowerKind::Pro, std::move(mods), std::move(tr));
}

// ---------------------------------------------------------------------------
// Product and coproduct

// Level data of product_ind: sections of E_k over all of T_k.
struct ProductTower {
  ModuleTower tower;
  std::vector<Sections> sections;
};

inline ProductTower product_ind_with_sections(const EtaleTower& e) {
  require(e.kind() == TowerKind::Ind, "product_ind: need an ind etale tower");
  std::vector<Sections> secs;
  std::vector<FiniteModule> mods;
  for (std::size_t k = 0; k <= e.depth(); ++k) {
    secs.push_back(product_finite(e.level(k)));
    mods.push_back(secs.back().module);
  }
  std::vector<ModuleMap> tr;
  for (std::size_t k = 0; k < e.depth(); ++k) {
    const auto& img = e.base().transition_images(k);
    std::vector<Element> imgs;
    for (std::size_t g = 0; g < mods[k].rank(); ++g) {
      const Element x = mods[k].generator(g);
      Element acc = mods[k + 1].zero_element();
      for (std::size_t q = 0; q < img.size(); ++q) {
        const Element xt = e.transition(k)[q].apply(secs[k].projections[img[q]].apply(x));
        acc = mods[k + 1].add(acc, secs[k + 1].inclusions[q].apply(xt));
      }
      imgs.push_back(acc);
    }
    tr.push_back(ModuleMap::from_images(mods[k], mods[k + 1], imgs));
  }
  return ProductTower{ModuleTower(TowerKind::Ind, std::move(mods), std::move(tr), false), std::move(secs)};
}

inline ModuleTower product_ind(const EtaleTower& e) { return product_ind_with_sections(e).tower; }

// Defined through duality: the dual of the product of the dual tower.
inline ModuleTower coproduct_pro(const EtaleTower& e) {
  require(e.kind() == TowerKind::Pro, "coproduct_pro: need a pro etale tower");
  return dual_tower(product_ind(dual_tower(e)));
}

// The same coproduct written out directly: level k is the direct sum of the
// fibers, transitions add the fiber maps over each point of T_k.
inline ProductTower coproduct_pro_direct(const EtaleTower& e) {
  require(e.kind() == TowerKind::Pro, "coproduct_pro: need a pro etale tower");
  std::vector<Sections> secs;
  std::vector<FiniteModule> mods;
  for (std::size_t k = 0; k <= e.depth(); ++k) {
    secs.push_back(coproduct_finite(e.level(k)));
    mods.push_back(secs.back().module);
  }
  std::vector<ModuleMap> tr;
  for (std::size_t k = 0; k < e.depth(); ++k) {
    const auto& img = e.base().transition_images(k);
    std::vector<Element> imgs;
    for (std::size_t g = 0; g < mods[k + 1].rank(); ++g) {
      const Element x = mods[k + 1].generator(g);
      Element acc = mods[k].zero_element();
      for (std::size_t q = 0; q < img.size(); ++q) {
        const Element xt = e.transition(k)[q].apply(secs[k + 1].projections[q].apply(x));
        acc = mods[k].add(acc, secs[k].inclusions[img[q]].apply(xt));
      }
      imgs.push_back(acc);
    }
    tr.push_back(ModuleMap::from_images(mods[k + 1], mods[k], imgs));
  }
  return ProductTower{ModuleTower(TowerKind::Pro, std::move(mods), std::move(tr), false), std::move(secs)};
}

// Levelwise product of a morphism of ind towers over the same base, given by
// fiber maps f[k][t] : (E_k)_t -> (F_k)_t.
inline std::vector<ModuleMap> product_ind_map(const EtaleTower& e, const EtaleTower& f,
                                              const std::vector<std::vector<ModuleMap>>& maps) {
  require(e.base() == f.base() && maps.size() == e.depth() + 1, "product_ind_map: shape mismatch");
  std::vector<ModuleMap> out;
  for (std::size_t k = 0; k <= e.depth(); ++k) {
    const Sections se = product_finite(e.level(k));
    const Sections sf = product_finite(f.level(k));
    std::vector<Element> imgs;
    for (std::size_t g = 0; g < se.module.rank(); ++g) {
      Element acc = sf.module.zero_element();
      for (std::size_t t = 0; t < se.points.size(); ++t)
        acc = sf.module.add(acc, sf.inclusions[t].apply(maps[k][t].apply(se.projections[t].apply(se.module.generator(g)))));
      imgs.push_back(acc);
    }
    out.push_back(ModuleMap::from_images(se.module, sf.module, imgs));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stalks

inline ModuleTower stalk_at_thread(const EtaleTower& e, const Thread& x) {
  require(e.base().is_thread(x), "stalk_at_thread: incompatible thread");
  std::vector<FiniteModule> lv;
  std::vector<ModuleMap> tr;
  for (std::size_t k = 0; k <= e.depth(); ++k) lv.push_back(e.level(k).fiber(x[k]));
  for (std::size_t k = 0; k < e.depth(); ++k) tr.push_back(e.transition(k)[x[k + 1]]);
  return ModuleTower(e.kind(), std::move(lv), std::move(tr), false);
}

// ---------------------------------------------------------------------------
// Relative versions along a map of towers

class TowerMap {
 public:
  TowerMap(SpaceTower source, SpaceTower target, std::vector<std::vector<std::size_t>> maps)
      : source_(std::move(source)), target_(std::move(target)), maps_(std::move(maps)) {
    require(source_.depth() == target_.depth(), "TowerMap: towers of different depth");
    require(maps_.size() == source_.num_levels(), "TowerMap: need one map per level");
    for (std::size_t k = 0; k < maps_.size(); ++k) {
      const BaseMap pk(source_.level(k), target_.level(k), maps_[k]);
      require(pk.is_surjective(), "TowerMap: level " + std::to_string(k) + " map is not surjective");
    }
    for (std::size_t k = 0; k + 1 < maps_.size(); ++k)
      for (std::size_t q = 0; q < source_.level(k + 1).size(); ++q)
        require(maps_[k][source_.transition_images(k)[q]] == target_.transition_images(k)[maps_[k + 1][q]],
                "TowerMap: does not commute with the transitions at level " + std::to_string(k + 1));
  }

  static TowerMap identity(const SpaceTower& t) {
    std::vector<std::vector<std::size_t>> m;
    for (std::size_t k = 0; k < t.num_levels(); ++k) {
      std::vector<std::size_t> id(t.level(k).size());
      for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
      m.push_back(std::move(id));
    }
    return TowerMap(t, t, std::move(m));
  }

  static TowerMap to_point(const SpaceTower& t) {
    std::vector<std::vector<std::size_t>> m;
    for (std::size_t k = 0; k < t.num_levels(); ++k) m.emplace_back(t.level(k).size(), 0);
    return TowerMap(t, SpaceTower::point(t.depth()), std::move(m));
  }

  // T -> S where S_k = T_{k-1} (S_0 = point): each point goes to its parent.
  static TowerMap level_shift(const SpaceTower& t) {
    std::vector<std::vector<std::string>> lv{{"*"}};
    std::vector<std::vector<std::size_t>> tr;
    for (std::size_t k = 0; k < t.depth(); ++k) {
      lv.push_back(t.level(k));
      tr.push_back(k == 0 ? std::vector<std::size_t>(t.level(0).size(), 0) : t.transition_images(k - 1));
    }
    std::vector<std::vector<std::size_t>> m{std::vector<std::size_t>(t.level(0).size(), 0)};
    for (std::size_t k = 1; k <= t.depth(); ++k) m.push_back(t.transition_images(k - 1));
    return TowerMap(t, SpaceTower(std::move(lv), std::move(tr)), std::move(m));
  }

  const SpaceTower& source() const { return source_; }
  const SpaceTower& target() const { return target_; }
  BaseMap level_map(std::size_t k) const { return BaseMap(source_.level(k), target_.level(k), maps_.at(k)); }
  const std::vector<std::size_t>& images(std::size_t k) const { return maps_.at(k); }

 private:
  SpaceTower source_;
  SpaceTower target_;
  std::vector<std::vector<std::size_t>> maps_;
};

// Relative product and sum carry the pushforward data used to build the
// comparison maps.
struct RelativeTower {
  EtaleTower tower;
  std::vector<Pushforward> pushforwards;
};

namespace detail {

// Fiber map for s' in S_{k+1}: precompose (ind) or sum (pro) along the
// points of pi_{k+1}^{-1}(s') and their images in pi_k^{-1}(s).
inline ModuleMap relative_fiber_map(const Sections& lower, const Sections& upper, const SpaceTower& t, std::size_t k,
                                    bool summing) {
  const auto& img = t.transition_images(k);
  std::vector<std::size_t> down;  // for each upper point, its image's position in lower
  for (const auto& id : upper.points) {
    const auto q = static_cast<std::size_t>(std::find(t.level(k + 1).begin(), t.level(k + 1).end(), id) - t.level(k + 1).begin());
    down.push_back(lower.position(t.level(k)[img[q]]));
  }
  const FiniteModule& from = summing ? upper.module : lower.module;
  const FiniteModule& to = summing ? lower.module : upper.module;
  std::vector<Element> imgs;
  for (std::size_t g = 0; g < from.rank(); ++g) {
    const Element x = from.generator(g);
    Element acc = to.zero_element();
    for (std::size_t u = 0; u < down.size(); ++u) {
      if (summing)
        acc = to.add(acc, lower.inclusions[down[u]].apply(upper.projections[u].apply(x)));
      else
        acc = to.add(acc, upper.inclusions[u].apply(lower.projections[down[u]].apply(x)));
    }
    imgs.push_back(acc);
  }
  return ModuleMap::from_images(from, to, imgs);
}

inline RelativeTower relative_tower(const FiniteModule& a, const TowerMap& pi, TowerKind kind) {
  const SpaceTower& t = pi.source();
  const SpaceTower& s = pi.target();
  std::vector<Pushforward> pfs;
  std::vector<FiniteEtaleSpace> lv;
  for (std::size_t k = 0; k < t.num_levels(); ++k) {
    pfs.push_back(pushforward(FiniteEtaleSpace::constant(a.ring(), t.level(k), a), pi.level_map(k)));
    lv.push_back(pfs.back().space);
  }
  std::vector<std::vector<ModuleMap>> tr;
  for (std::size_t k = 0; k < t.depth(); ++k) {
    std::vector<ModuleMap> maps;
    for (std::size_t q = 0; q < s.level(k + 1).size(); ++q) {
      const Sections& upper = pfs[k + 1].fiber_sections[q];
      const Sections& lower = pfs[k].fiber_sections[s.transition_images(k)[q]];
      maps.push_back(relative_fiber_map(lower, upper, t, k, kind == TowerKind::Pro));
    }
    tr.push_back(std::move(maps));
  }
  return RelativeTower{EtaleTower(kind, s, std::move(lv), std::move(tr), false), std::move(pfs)};
}

}  // namespace detail

// Pushforward of the constant ind tower A along pi. Fiber transitions need
// not be injective when the restricted fiber maps of pi are not onto; the
// tower reports this through transitions_strict().
inline RelativeTower relative_product(const FiniteModule& a, const TowerMap& pi) {
  return detail::relative_tower(a, pi, TowerKind::Ind);
}

inline RelativeTower relative_sum(const FiniteModule& a, const TowerMap& pi) {
  return detail::relative_tower(a, pi, TowerKind::Pro);
}

// ---------------------------------------------------------------------------
// Decomposition along a tower map

struct DecompositionLevel {
  std::size_t level = 0;
  BigInt lhs_order;
  BigInt rhs_order;
  bool isomorphism = false;
  bool natural = false;  // commutes with the transitions into the next level
};

struct DecompositionReport {
  std::vector<DecompositionLevel> product_levels;  // prod_S prod_{T/S} A  vs  prod_T A
  std::vector<DecompositionLevel> sum_levels;      // sum_S sum_{T/S} A    vs  sum_T A
  bool ok() const {
    auto good = [](const auto& v) {
      return std::all_of(v.begin(), v.end(), [](const DecompositionLevel& l) { return l.isomorphism && l.natural; });
    };
    return good(product_levels) && good(sum_levels);
  }
  std::optional<std::size_t> failing_level() const {
    for (const auto* v : {&product_levels, &sum_levels})
      for (const auto& l : *v)
        if (!l.isomorphism || !l.natural) return l.level;
    return std::nullopt;
  }
};

namespace detail {

// Comparison from sections over S of the relative tower to the free tower
// over T: (f_s)_s |-> (t |-> f_{pi(t)}(t)).
inline std::vector<ModuleMap> relative_comparison(const RelativeTower& rel, const ProductTower& over_s,
                                                  const std::vector<DirectSum>& free_levels, const SpaceTower& t) {
  std::vector<ModuleMap> out;
  for (std::size_t k = 0; k < rel.pushforwards.size(); ++k) {
    const Sections over_t{t.level(k), free_levels[k].module, free_levels[k].projections, free_levels[k].inclusions};
    out.push_back(pushforward_product_comparison(rel.pushforwards[k], over_s.sections[k], over_t));
  }
  return out;
}

inline std::vector<DecompositionLevel> compare_levels(const ModuleTower& lhs, const ModuleTower& rhs,
                                                      const std::vector<ModuleMap>& c) {
  std::vector<DecompositionLevel> out;
  for (std::size_t k = 0; k <= lhs.depth(); ++k) {
    DecompositionLevel l;
    l.level = k;
    l.lhs_order = lhs.level(k).order();
    l.rhs_order = rhs.level(k).order();
    l.isomorphism = is_isomorphism(c[k]);
    l.natural = true;
    if (k < lhs.depth()) {
      if (lhs.kind() == TowerKind::Ind)
        l.natural = compose(c[k + 1], lhs.transition(k)) == compose(rhs.transition(k), c[k]);
      else
        l.natural = compose(c[k], lhs.transition(k)) == compose(rhs.transition(k), c[k + 1]);
    }
    out.push_back(l);
  }
  return out;
}

}  // namespace detail

inline DecompositionReport decomposition_check(const FiniteModule& a, const TowerMap& pi, const TowerBudget& budget = {}) {
  const SpaceTower& t = pi.source();
  detail::check_level_budget(a, t, budget);
  const auto free_levels = detail::copies(a, t);
  DecompositionReport report;
  {
    const RelativeTower rel = relative_product(a, pi);
    const ProductTower lhs = product_ind_with_sections(rel.tower);
    const ModuleTower rhs = free_product(a, t, budget);
    report.product_levels =
        detail::compare_levels(lhs.tower, rhs, detail::relative_comparison(rel, lhs, free_levels, t));
  }
  {
    const RelativeTower rel = relative_sum(a, pi);
    const ProductTower lhs = coproduct_pro_direct(rel.tower);
    const ModuleTower rhs = free_sum(a, t, budget);
    report.sum_levels = detail::compare_levels(lhs.tower, rhs, detail::relative_comparison(rel, lhs, free_levels, t));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Canonical components at threads

struct ComponentLevel {
  std::size_t level = 0;
  bool separated = false;          // the chosen threads are pairwise distinct at this level
  bool jointly_surjective = false; // P_k -> prod_{chosen} fibers (ind), only meaningful when separated
  bool jointly_injective = false;  // P_k -> prod over all threads at this level (ind)
  bool dense = false;              // images of w_t over a transversal span P_k (pro)
};

struct ComponentsReport {
  TowerKind kind = TowerKind::Ind;
  std::vector<ComponentLevel> levels;
  std::optional<std::size_t> separation_level;  // first level where the chosen threads separate
  // Evaluation maps o_t (ind: P_d -> fiber) or inclusions w_t (pro: fiber -> P_d)
  // at the top level, one per chosen thread.
  std::vector<ModuleMap> components;
  bool ok() const {
    if (!separation_level) return false;
    for (const auto& l : levels) {
      if (kind == TowerKind::Ind && (!l.jointly_injective || (l.separated && !l.jointly_surjective))) return false;
      if (kind == TowerKind::Pro && !l.dense) return false;
    }
    return true;
  }
};

inline ComponentsReport canonical_components(const EtaleTower& e, const std::vector<Thread>& chosen) {
  for (const auto& x : chosen) require(e.base().is_thread(x), "canonical_components: incompatible thread");
  ComponentsReport r;
  r.kind = e.kind();
  const ProductTower p = e.kind() == TowerKind::Ind ? product_ind_with_sections(e) : coproduct_pro_direct(e);
  for (std::size_t k = 0; k <= e.depth(); ++k) {
    ComponentLevel l;
    l.level = k;
    const Sections& sec = p.sections[k];
    std::set<std::size_t> coords;
    for (const auto& x : chosen) coords.insert(x[k]);
    l.separated = coords.size() == chosen.size();
    if (l.separated && !r.separation_level) r.separation_level = k;
    if (e.kind() == TowerKind::Ind) {
      if (l.separated) {
        std::vector<FiniteModule> fibers;
        for (const auto& x : chosen) fibers.push_back(e.level(k).fiber(x[k]));
        const DirectSum target = direct_sum(e.ring(), fibers);
        std::vector<Element> imgs;
        for (std::size_t g = 0; g < sec.module.rank(); ++g) {
          Element acc = target.module.zero_element();
          for (std::size_t c = 0; c < chosen.size(); ++c)
            acc = target.module.add(acc, target.inclusions[c].apply(sec.projections[chosen[c][k]].apply(sec.module.generator(g))));
          imgs.push_back(acc);
        }
        l.jointly_surjective = is_surjective(ModuleMap::from_images(sec.module, target.module, imgs));
      }
      // All threads at level k meet every point of T_k.
      std::vector<FiniteModule> all_fibers(e.level(k).fibers());
      const DirectSum all = direct_sum(e.ring(), all_fibers);
      std::vector<Element> eval;
      for (std::size_t g = 0; g < sec.module.rank(); ++g) {
        Element acc = all.module.zero_element();
        for (std::size_t t = 0; t < sec.points.size(); ++t)
          acc = all.module.add(acc, all.inclusions[t].apply(sec.projections[t].apply(sec.module.generator(g))));
        eval.push_back(acc);
      }
      const bool inj = is_injective(ModuleMap::from_images(sec.module, all.module, eval));
      l.jointly_injective = inj;
    } else {
      // A transversal: one thread through each point of T_k.
      std::vector<Element> gens;
      for (std::size_t t = 0; t < sec.points.size(); ++t)
        for (std::size_t g = 0; g < e.level(k).fiber(t).rank(); ++g)
          gens.push_back(sec.inclusions[t].apply(e.level(k).fiber(t).generator(g)));
      l.dense = submodule_order(sec.module, gens) == sec.module.order();
    }
    r.levels.push_back(l);
  }
  const std::size_t d = e.depth();
  for (const auto& x : chosen)
    r.components.push_back(e.kind() == TowerKind::Ind ? p.sections[d].projections[x[d]] : p.sections[d].inclusions[x[d]]);
  return r;
}

}  // namespace proflq
