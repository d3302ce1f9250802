#pragma once

// Etale spaces of finite modules over a finite base set: one fiber per point,
// morphisms over a base map, stalkwise Hom / tensor / dual, sections,
// pushforward and pullback, skyscrapers, and the finite-level product and
// coproduct with their canonical components.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "proflq/error.hpp"
#include "proflq/finring.hpp"

namespace proflq {

class FiniteEtaleSpace {
 public:
  FiniteEtaleSpace(FiniteRing ring, std::vector<std::string> base, std::vector<FiniteModule> fibers)
      : ring_(ring), base_(std::move(base)), fibers_(std::move(fibers)) {
    require(base_.size() == fibers_.size(), "FiniteEtaleSpace: need exactly one fiber per base point");
    for (std::size_t i = 0; i < base_.size(); ++i) {
      require(fibers_[i].ring() == ring_, "FiniteEtaleSpace: fiber over '" + base_[i] + "' has the wrong ring");
      require(index_.emplace(base_[i], i).second, "FiniteEtaleSpace: duplicate base point '" + base_[i] + "'");
    }
  }

  static FiniteEtaleSpace constant(FiniteRing ring, std::vector<std::string> base, const FiniteModule& a) {
    std::vector<FiniteModule> fibers(base.size(), a);
    return FiniteEtaleSpace(ring, std::move(base), std::move(fibers));
  }
  static FiniteEtaleSpace zero(FiniteRing ring, std::vector<std::string> base) {
    return constant(ring, std::move(base), FiniteModule::zero(ring));
  }

  const FiniteRing& ring() const { return ring_; }
  const std::vector<std::string>& base() const { return base_; }
  std::size_t size() const { return base_.size(); }
  const FiniteModule& fiber(std::size_t i) const { return fibers_.at(i); }
  const FiniteModule& fiber(const std::string& id) const { return fibers_[index_of(id)]; }
  const std::vector<FiniteModule>& fibers() const { return fibers_; }

  std::size_t index_of(const std::string& id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) throw InvalidArgument("unknown base point '" + id + "'");
    return it->second;
  }
  bool contains(const std::string& id) const { return index_.count(id) != 0; }

  bool same_base(const FiniteEtaleSpace& other) const { return ring_ == other.ring_ && base_ == other.base_; }

  friend bool operator==(const FiniteEtaleSpace& a, const FiniteEtaleSpace& b) {
    return a.ring_ == b.ring_ && a.base_ == b.base_ && a.fibers_ == b.fibers_;
  }

 private:
  FiniteRing ring_;
  std::vector<std::string> base_;
  std::vector<FiniteModule> fibers_;
  std::map<std::string, std::size_t> index_;
};

// Fiberwise isomorphism of fibers over the same base.
inline bool is_isomorphic(const FiniteEtaleSpace& a, const FiniteEtaleSpace& b) {
  if (!a.same_base(b)) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!is_isomorphic(a.fiber(i), b.fiber(i))) return false;
  return true;
}

// Morphism F -> G over psi: base(F) -> base(G); the fiber map at t goes
// F_t -> G_{psi(t)}.
class EtaleMorphism {
 public:
  EtaleMorphism(FiniteEtaleSpace source, FiniteEtaleSpace target, std::vector<std::size_t> base_map,
                std::vector<ModuleMap> fiber_maps)
      : source_(std::move(source)),
        target_(std::move(target)),
        base_map_(std::move(base_map)),
        fiber_maps_(std::move(fiber_maps)) {
    require(source_.ring() == target_.ring(), "EtaleMorphism: ring mismatch");
    require(base_map_.size() == source_.size(), "EtaleMorphism: base map must be total on the source base");
    require(fiber_maps_.size() == source_.size(), "EtaleMorphism: need one fiber map per source point");
    for (std::size_t t = 0; t < source_.size(); ++t) {
      require(base_map_[t] < target_.size(), "EtaleMorphism: base map leaves the target base");
      require(fiber_maps_[t].source() == source_.fiber(t) && fiber_maps_[t].target() == target_.fiber(base_map_[t]),
              "EtaleMorphism: fiber map over '" + source_.base()[t] + "' has the wrong source or target");
    }
  }

  static EtaleMorphism identity(const FiniteEtaleSpace& e) {
    std::vector<std::size_t> psi(e.size());
    std::vector<ModuleMap> maps;
    for (std::size_t t = 0; t < e.size(); ++t) {
      psi[t] = t;
      maps.push_back(ModuleMap::identity(e.fiber(t)));
    }
    return EtaleMorphism(e, e, psi, maps);
  }

  const FiniteEtaleSpace& source() const { return source_; }
  const FiniteEtaleSpace& target() const { return target_; }
  const std::vector<std::size_t>& base_map() const { return base_map_; }
  const std::vector<ModuleMap>& fiber_maps() const { return fiber_maps_; }
  const ModuleMap& fiber_map(std::size_t t) const { return fiber_maps_.at(t); }

  bool fiberwise_injective() const {
    return std::all_of(fiber_maps_.begin(), fiber_maps_.end(), [](const ModuleMap& f) { return is_injective(f); });
  }
  bool fiberwise_surjective() const {
    return std::all_of(fiber_maps_.begin(), fiber_maps_.end(), [](const ModuleMap& f) { return is_surjective(f); });
  }

 private:
  FiniteEtaleSpace source_;
  FiniteEtaleSpace target_;
  std::vector<std::size_t> base_map_;
  std::vector<ModuleMap> fiber_maps_;
};

// g o f, checked eagerly: f must land exactly in the source of g.
inline EtaleMorphism compose(const EtaleMorphism& g, const EtaleMorphism& f) {
  require(f.target() == g.source(), "compose: target of f is not the source of g");
  std::vector<std::size_t> psi(f.source().size());
  std::vector<ModuleMap> maps;
  for (std::size_t t = 0; t < f.source().size(); ++t) {
    const std::size_t s = f.base_map()[t];
    psi[t] = g.base_map()[s];
    maps.push_back(compose(g.fiber_map(s), f.fiber_map(t)));
  }
  return EtaleMorphism(f.source(), g.target(), psi, maps);
}

// Fiberwise duals of a morphism F -> G over psi: at each source point t the
// map G_{psi(t)}^ -> F_t^.
inline std::vector<ModuleMap> dual_fiber_maps(const EtaleMorphism& f) {
  std::vector<ModuleMap> out;
  for (const auto& m : f.fiber_maps()) out.push_back(dual_map(m));
  return out;
}

// ---------------------------------------------------------------------------
// Sections

// The module of sections over a set of points U (a finite direct sum of
// fibers), with evaluation maps o_t onto each fiber and inclusions w_t.
struct Sections {
  std::vector<std::string> points;
  FiniteModule module;
  std::vector<ModuleMap> projections;
  std::vector<ModuleMap> inclusions;

  std::size_t position(const std::string& id) const {
    const auto it = std::find(points.begin(), points.end(), id);
    if (it == points.end()) throw InvalidArgument("point '" + id + "' is not in this section module");
    return static_cast<std::size_t>(it - points.begin());
  }
};

namespace detail {

inline Sections make_sections(const FiniteRing& ring, std::vector<std::string> points,
                              const std::vector<FiniteModule>& fibers) {
  DirectSum s = direct_sum(ring, fibers);
  return Sections{std::move(points), s.module, std::move(s.projections), std::move(s.inclusions)};
}

}  // namespace detail

inline Sections sections(const FiniteEtaleSpace& e, const std::vector<std::string>& u) {
  std::vector<bool> in(e.size(), false);
  for (const auto& id : u) in[e.index_of(id)] = true;
  std::vector<std::string> pts;
  std::vector<FiniteModule> fibers;
  for (std::size_t t = 0; t < e.size(); ++t)
    if (in[t]) {
      pts.push_back(e.base()[t]);
      fibers.push_back(e.fiber(t));
    }
  return detail::make_sections(e.ring(), std::move(pts), fibers);
}

inline Sections product_finite(const FiniteEtaleSpace& e) { return sections(e, e.base()); }
// Over a finite base the coproduct is the same direct sum; w_t are the inclusions.
inline Sections coproduct_finite(const FiniteEtaleSpace& e) { return sections(e, e.base()); }

// ---------------------------------------------------------------------------
// Stalkwise constructions

inline FiniteEtaleSpace hom_etale(const FiniteEtaleSpace& e, const FiniteEtaleSpace& f) {
  require(e.same_base(f), "hom_etale: base or ring mismatch");
  std::vector<FiniteModule> fibers;
  for (std::size_t t = 0; t < e.size(); ++t) fibers.push_back(hom_module(e.fiber(t), f.fiber(t)));
  return FiniteEtaleSpace(e.ring(), e.base(), fibers);
}

inline FiniteEtaleSpace tensor_etale(const FiniteEtaleSpace& e, const FiniteEtaleSpace& f) {
  require(e.same_base(f), "tensor_etale: base or ring mismatch");
  std::vector<FiniteModule> fibers;
  for (std::size_t t = 0; t < e.size(); ++t) fibers.push_back(tensor_module(e.fiber(t), f.fiber(t)));
  return FiniteEtaleSpace(e.ring(), e.base(), fibers);
}

inline FiniteEtaleSpace dual_etale(const FiniteEtaleSpace& e) {
  std::vector<FiniteModule> fibers;
  for (const auto& m : e.fibers()) fibers.push_back(pontryagin_dual(m));
  return FiniteEtaleSpace(e.ring(), e.base(), fibers);
}

// ---------------------------------------------------------------------------
// Pushforward / pullback along maps of finite sets

// A map of finite sets given pointwise by index.
struct BaseMap {
  std::vector<std::string> source;
  std::vector<std::string> target;
  std::vector<std::size_t> images;  // images[i] indexes target

  BaseMap(std::vector<std::string> src, std::vector<std::string> tgt, std::vector<std::size_t> img)
      : source(std::move(src)), target(std::move(tgt)), images(std::move(img)) {
    require(images.size() == source.size(), "BaseMap: map must be total");
    for (auto i : images) require(i < target.size(), "BaseMap: image outside the target");
  }

  static BaseMap from_ids(std::vector<std::string> src, std::vector<std::string> tgt,
                          const std::map<std::string, std::string>& assignment) {
    std::vector<std::size_t> img;
    for (const auto& s : src) {
      const auto it = assignment.find(s);
      require(it != assignment.end(), "BaseMap: no image for point '" + s + "'");
      const auto pos = std::find(tgt.begin(), tgt.end(), it->second);
      require(pos != tgt.end(), "BaseMap: image '" + it->second + "' is not a target point");
      img.push_back(static_cast<std::size_t>(pos - tgt.begin()));
    }
    return BaseMap(std::move(src), std::move(tgt), std::move(img));
  }

  bool is_surjective() const {
    std::vector<bool> hit(target.size(), false);
    for (auto i : images) hit[i] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  }

  std::vector<std::string> preimage(std::size_t s) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < source.size(); ++i)
      if (images[i] == s) out.push_back(source[i]);
    return out;
  }
};

struct Pushforward {
  FiniteEtaleSpace space;
  std::vector<Sections> fiber_sections;  // sections over psi^{-1}(s), per target point
};

inline Pushforward pushforward(const FiniteEtaleSpace& e, const BaseMap& psi) {
  require(psi.source == e.base(), "pushforward: base map source must be the base of the space");
  require(psi.is_surjective(), "pushforward: base map must be surjective");
  std::vector<Sections> secs;
  std::vector<FiniteModule> fibers;
  for (std::size_t s = 0; s < psi.target.size(); ++s) {
    secs.push_back(sections(e, psi.preimage(s)));
    fibers.push_back(secs.back().module);
  }
  return Pushforward{FiniteEtaleSpace(e.ring(), psi.target, fibers), std::move(secs)};
}

// Natural map  prod_S (pushforward E)  ->  prod_T E,  sending a family of
// sections over the fibers of psi to the section they assemble into.
inline ModuleMap pushforward_product_comparison(const Pushforward& pf, const Sections& over_s,
                                                const Sections& over_t) {
  std::vector<Element> imgs;
  for (std::size_t g = 0; g < over_s.module.rank(); ++g) {
    const Element x = over_s.module.generator(g);
    Element acc = over_t.module.zero_element();
    for (std::size_t s = 0; s < over_s.points.size(); ++s) {
      const Sections& fs = pf.fiber_sections[pf.space.index_of(over_s.points[s])];
      const Element xs = over_s.projections[s].apply(x);
      for (std::size_t k = 0; k < fs.points.size(); ++k) {
        const Element xt = fs.projections[k].apply(xs);
        acc = over_t.module.add(acc, over_t.inclusions[over_t.position(fs.points[k])].apply(xt));
      }
    }
    imgs.push_back(acc);
  }
  return ModuleMap::from_images(over_s.module, over_t.module, imgs);
}

inline FiniteEtaleSpace pullback(const FiniteEtaleSpace& e, const BaseMap& psi) {
  require(psi.target == e.base(), "pullback: base map target must be the base of the space");
  std::vector<FiniteModule> fibers;
  for (auto s : psi.images) fibers.push_back(e.fiber(s));
  return FiniteEtaleSpace(e.ring(), psi.source, fibers);
}

// ---------------------------------------------------------------------------
// Skyscrapers

// A family of modules supported on a subset of the base. Not an etale space
// of the Hausdorff kind; only products and the fiber adjunction are modelled.
class SkyscraperFamily {
 public:
  SkyscraperFamily(FiniteRing ring, std::vector<std::string> base, std::vector<std::string> support,
                   std::vector<FiniteModule> modules)
      : ring_(ring), base_(std::move(base)), support_(std::move(support)), modules_(std::move(modules)) {
    require(support_.size() == modules_.size(), "SkyscraperFamily: one module per support point");
    for (std::size_t i = 0; i < support_.size(); ++i) {
      require(std::find(base_.begin(), base_.end(), support_[i]) != base_.end(),
              "SkyscraperFamily: support point '" + support_[i] + "' is not in the base");
      require(std::count(support_.begin(), support_.end(), support_[i]) == 1,
              "SkyscraperFamily: duplicate support point");
      require(modules_[i].ring() == ring_, "SkyscraperFamily: ring mismatch");
    }
  }

  const FiniteRing& ring() const { return ring_; }
  const std::vector<std::string>& base() const { return base_; }
  const std::vector<std::string>& support() const { return support_; }
  const std::vector<FiniteModule>& modules() const { return modules_; }

 private:
  FiniteRing ring_;
  std::vector<std::string> base_;
  std::vector<std::string> support_;
  std::vector<FiniteModule> modules_;
};

// Global sections of the product of skyscrapers: the product of the supported
// modules only.
inline Sections skyscraper_product(const SkyscraperFamily& k) {
  std::vector<std::string> pts;
  std::vector<FiniteModule> mods;
  for (const auto& b : k.base()) {
    const auto it = std::find(k.support().begin(), k.support().end(), b);
    if (it == k.support().end()) continue;
    pts.push_back(b);
    mods.push_back(k.modules()[static_cast<std::size_t>(it - k.support().begin())]);
  }
  return detail::make_sections(k.ring(), std::move(pts), mods);
}

// hom(F, prod_t sky_t(M_t)) = prod_t hom(F_t, M_t): a morphism into the
// skyscraper product is determined by its fiber maps on the support.
inline FiniteModule skyscraper_hom(const FiniteEtaleSpace& f, const SkyscraperFamily& k) {
  require(f.base() == k.base() && f.ring() == k.ring(), "skyscraper_hom: base or ring mismatch");
  std::vector<FiniteModule> parts;
  for (std::size_t i = 0; i < k.support().size(); ++i) parts.push_back(hom_module(f.fiber(k.support()[i]), k.modules()[i]));
  return direct_sum(f.ring(), parts).module;
}

// ---------------------------------------------------------------------------
// Tensor-Hom adjunction over a common finite base

struct AdjunctionPointReport {
  std::string point;
  BigInt lhs_order;  // |hom(F_t (x) G_t, L_t)|
  BigInt rhs_order;  // |hom(G_t, Hom(F_t, L_t))|
  bool bijective = false;
  bool additive = false;
  bool evaluation_ok = false;  // Phi(f)(y)(x) == f(x (x) y) on every pair checked
};

struct AdjunctionReport {
  std::vector<AdjunctionPointReport> points;
  BigInt lhs_order = 1;
  BigInt rhs_order = 1;
  bool ok() const {
    return std::all_of(points.begin(), points.end(),
                       [](const auto& p) { return p.bijective && p.additive && p.evaluation_ok; });
  }
};

// Phi : hom(F (x) G, L) -> hom(G, Hom(F, L)),  f |-> [y |-> [x |-> f(x (x) y)]],
// built element by element and checked to be a module isomorphism.
inline AdjunctionReport adjunction_check(const FiniteEtaleSpace& f, const FiniteEtaleSpace& g,
                                         const FiniteEtaleSpace& l, std::uint64_t max_hom_order = 4096) {
  require(f.same_base(g) && f.same_base(l), "adjunction_check: base or ring mismatch");
  AdjunctionReport report;
  for (std::size_t t = 0; t < f.size(); ++t) {
    const FiniteModule& ft = f.fiber(t);
    const FiniteModule& gt = g.fiber(t);
    const FiniteModule& lt = l.fiber(t);
    const TensorProduct tens(ft, gt);
    const HomSpace lhs(tens.module(), lt);
    const HomSpace inner(ft, lt);
    const HomSpace rhs(gt, inner.module());
    AdjunctionPointReport pr;
    pr.point = f.base()[t];
    pr.lhs_order = lhs.module().order();
    pr.rhs_order = rhs.module().order();
    if (pr.lhs_order > max_hom_order) throw BudgetExceeded("adjunction_check: hom set larger than the size bound");

    auto phi = [&](const Element& h) {
      const ModuleMap fm = lhs.to_map(h);
      std::vector<Element> per_y;
      for (std::size_t j = 0; j < gt.rank(); ++j) {
        std::vector<Element> per_x;
        for (std::size_t i = 0; i < ft.rank(); ++i) per_x.push_back(fm.apply(tens.tensor(ft.generator(i), gt.generator(j))));
        per_y.push_back(inner.from_map(ModuleMap::from_images(ft, lt, per_x)));
      }
      return rhs.from_map(ModuleMap::from_images(gt, inner.module(), per_y));
    };

    // Phi as a linear map, from the images of generators; then compare with
    // the element-by-element construction.
    std::vector<Element> gen_images;
    for (std::size_t a = 0; a < lhs.module().rank(); ++a) gen_images.push_back(phi(lhs.module().generator(a)));
    const ModuleMap linear = ModuleMap::from_images(lhs.module(), rhs.module(), gen_images);

    bool additive = true;
    bool eval_ok = true;
    std::vector<Element> seen;
    lhs.module().for_each_element([&](const Element& h) {
      const Element img = phi(h);
      if (img != linear.apply(h)) additive = false;
      seen.push_back(img);
      const ModuleMap fm = lhs.to_map(h);
      const ModuleMap gm = rhs.to_map(img);
      gt.for_each_element([&](const Element& y) {
        const ModuleMap inner_map = inner.to_map(gm.apply(y));
        ft.for_each_element([&](const Element& x) {
          if (inner_map.apply(x) != fm.apply(tens.tensor(x, y))) eval_ok = false;
        });
      });
    });
    std::sort(seen.begin(), seen.end());
    const bool injective = std::adjacent_find(seen.begin(), seen.end()) == seen.end();
    pr.bijective = injective && pr.lhs_order == pr.rhs_order;
    pr.additive = additive;
    pr.evaluation_ok = eval_ok;
    report.lhs_order *= pr.lhs_order;
    report.rhs_order *= pr.rhs_order;
    report.points.push_back(std::move(pr));
  }
  return report;
}

}  // namespace proflq
