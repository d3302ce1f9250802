#pragma once

// JSON literals for modules, maps, etale spaces, space towers, groups, group
// homomorphisms, group towers and threads, and JSON renderings of reports.
// Keys are emitted in sorted order, so equal values dump to equal bytes.
//
// Group elements in input files are either 0-based element indices or
// 1-based one-line permutations; a permutation of smaller degree is padded
// with fixed points.

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "proflq/catalog.hpp"
#include "proflq/etale.hpp"
#include "proflq/finring.hpp"
#include "proflq/group.hpp"
#include "proflq/groupcoh.hpp"
#include "proflq/lq.hpp"
#include "proflq/repv.hpp"
#include "proflq/sep.hpp"
#include "proflq/tower.hpp"

namespace proflq::io {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Reading

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& what) {
  require(j.is_object() && j.contains(key), what + ": missing \"" + key + "\"");
  return j.at(key);
}

inline std::int64_t integer(const Json& j, const std::string& what) {
  require(j.is_number_integer(), what + ": expected an integer");
  return j.get<std::int64_t>();
}

inline std::size_t natural(const Json& j, const std::string& what) {
  require(j.is_number_integer() && j.get<std::int64_t>() >= 0, what + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

inline std::vector<std::string> strings(const Json& j, const std::string& what) {
  require(j.is_array(), what + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& s : j) {
    require(s.is_string(), what + ": expected an array of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

}  // namespace detail

inline FiniteModule parse_module(const Json& j) {
  const std::int64_t m = detail::integer(detail::field(j, "m", "module"), "module.m");
  require(m >= 1, "module.m must be positive");
  const Json& f = detail::field(j, "factors", "module");
  require(f.is_array(), "module.factors: expected an array");
  std::vector<std::int64_t> orders;
  for (const auto& d : f) orders.push_back(detail::integer(d, "module.factors"));
  return FiniteModule(FiniteRing(m), orders);
}

// Source and target come from the literal unless supplied by the context;
// when both are present they must agree.
inline ModuleMap parse_map(const Json& j, const std::optional<FiniteModule>& source = std::nullopt,
                           const std::optional<FiniteModule>& target = std::nullopt) {
  auto side = [&](const char* key, const std::optional<FiniteModule>& given) {
    if (j.contains(key)) {
      FiniteModule m = parse_module(j.at(key));
      require(!given || *given == m, std::string("map.") + key + " does not match its context");
      return m;
    }
    require(given.has_value(), std::string("map: missing \"") + key + "\"");
    return *given;
  };
  const FiniteModule src = side("source", source);
  const FiniteModule tgt = side("target", target);
  const Json& a = detail::field(j, "matrix", "map");
  require(a.is_array() && a.size() == tgt.rank(), "map.matrix: need one row per target factor");
  SmallMatrix mat;
  for (const auto& row : a) {
    require(row.is_array() && row.size() == src.rank(), "map.matrix: need one column per source factor");
    std::vector<std::int64_t> r;
    for (const auto& x : row) r.push_back(detail::integer(x, "map.matrix"));
    mat.push_back(std::move(r));
  }
  return ModuleMap(src, tgt, mat);
}

// {"base": [...], "fibers": {id: module}}; "m" is required only over an
// empty base.
inline FiniteEtaleSpace parse_etale(const Json& j) {
  const auto base = detail::strings(detail::field(j, "base", "etale"), "etale.base");
  const Json& fj = detail::field(j, "fibers", "etale");
  require(fj.is_object(), "etale.fibers: expected an object keyed by point");
  require(fj.size() == base.size(), "etale.fibers: need exactly one fiber per base point");
  std::optional<std::int64_t> m;
  if (j.contains("m")) m = detail::integer(j.at("m"), "etale.m");
  std::vector<FiniteModule> fibers;
  for (const auto& t : base) {
    require(fj.contains(t), "etale.fibers: no fiber over '" + t + "'");
    fibers.push_back(parse_module(fj.at(t)));
    require(!m || fibers.back().modulus() == *m, "etale: fibers over different rings");
    m = fibers.back().modulus();
  }
  require(m.has_value(), "etale: need \"m\" over an empty base");
  return FiniteEtaleSpace(FiniteRing(*m), base, fibers);
}

// {"levels": [[ids]...], "transitions": [{child: parent}...]}.
inline SpaceTower parse_space_tower(const Json& j) {
  const Json& lj = detail::field(j, "levels", "tower");
  require(lj.is_array() && !lj.empty(), "tower.levels: expected a nonempty array");
  std::vector<std::vector<std::string>> levels;
  for (const auto& l : lj) levels.push_back(detail::strings(l, "tower.levels"));
  std::vector<std::map<std::string, std::string>> tr;
  const Json empty = Json::array();
  const Json& tj = j.contains("transitions") ? j.at("transitions") : empty;
  require(tj.is_array() && tj.size() + 1 == levels.size(), "tower.transitions: need one map between consecutive levels");
  for (const auto& t : tj) {
    require(t.is_object(), "tower.transitions: expected objects {child: parent}");
    std::map<std::string, std::string> m;
    for (auto it = t.begin(); it != t.end(); ++it) {
      require(it->is_string(), "tower.transitions: parents must be point ids");
      m[it.key()] = it->get<std::string>();
    }
    tr.push_back(std::move(m));
  }
  return SpaceTower::from_ids(levels, tr);
}

inline TowerKind parse_kind(const Json& j) {
  require(j.is_string(), "kind: expected \"pro\" or \"ind\"");
  const auto s = j.get<std::string>();
  require(s == "pro" || s == "ind", "kind: expected \"pro\" or \"ind\"");
  return s == "pro" ? TowerKind::Pro : TowerKind::Ind;
}

// {"kind": "pro"|"ind", "base": tower, "levels": [etale...],
//  "transitions": [{child: map}...]}; transition maps go from the finer
// fiber (pro) or into it (ind) and may omit source and target.
inline EtaleTower parse_etale_tower(const Json& j) {
  const TowerKind kind = parse_kind(detail::field(j, "kind", "etale tower"));
  const SpaceTower base = parse_space_tower(detail::field(j, "base", "etale tower"));
  const Json& lj = detail::field(j, "levels", "etale tower");
  require(lj.is_array() && lj.size() == base.num_levels(), "etale tower.levels: need one etale space per base level");
  std::vector<FiniteEtaleSpace> levels;
  for (const auto& l : lj) levels.push_back(parse_etale(l));
  const Json empty = Json::array();
  const Json& tj = j.contains("transitions") ? j.at("transitions") : empty;
  require(tj.is_array() && tj.size() == base.depth(), "etale tower.transitions: need one entry per base transition");
  std::vector<std::vector<ModuleMap>> tr;
  for (std::size_t k = 0; k < base.depth(); ++k) {
    require(tj[k].is_object(), "etale tower.transitions: expected objects keyed by point");
    const auto& img = base.transition_images(k);
    std::vector<ModuleMap> maps;
    for (std::size_t q = 0; q < img.size(); ++q) {
      const std::string& id = base.level(k + 1)[q];
      require(tj[k].contains(id), "etale tower.transitions: no fiber map over '" + id + "'");
      const FiniteModule& up = levels[k + 1].fiber(q);
      const FiniteModule& down = levels[k].fiber(img[q]);
      maps.push_back(kind == TowerKind::Pro ? parse_map(tj[k].at(id), up, down) : parse_map(tj[k].at(id), down, up));
    }
    tr.push_back(std::move(maps));
  }
  return EtaleTower(kind, base, levels, tr);
}

// Tower map {"source": tower, "target": tower, "maps": [{point: point}...]}.
inline TowerMap parse_tower_map(const Json& j) {
  const SpaceTower src = parse_space_tower(detail::field(j, "source", "tower map"));
  const SpaceTower tgt = parse_space_tower(detail::field(j, "target", "tower map"));
  const Json& mj = detail::field(j, "maps", "tower map");
  require(mj.is_array() && mj.size() == src.num_levels(), "tower map.maps: need one map per level");
  std::vector<std::vector<std::size_t>> maps;
  for (std::size_t k = 0; k < src.num_levels(); ++k) {
    std::map<std::string, std::string> ids;
    require(mj[k].is_object(), "tower map.maps: expected objects {point: point}");
    for (auto it = mj[k].begin(); it != mj[k].end(); ++it) {
      require(it->is_string(), "tower map.maps: images must be point ids");
      ids[it.key()] = it->get<std::string>();
    }
    maps.push_back(BaseMap::from_ids(src.level(k), tgt.level(k), ids).images);
  }
  return TowerMap(src, tgt, maps);
}

struct GroupBudget {
  std::size_t max_order = 360;
};

inline FiniteGroup parse_group(const Json& j, const GroupBudget& budget = {}) {
  require(j.is_object(), "group: expected an object");
  const std::string name = j.contains("name") ? j.at("name").get<std::string>() : "";
  std::optional<FiniteGroup> g;
  if (j.contains("catalog")) {
    require(j.at("catalog").is_string(), "group.catalog: expected a name");
    g = catalog_group(j.at("catalog").get<std::string>());
  } else if (j.contains("cyclic")) {
    g = cyclic_group(detail::natural(j.at("cyclic"), "group.cyclic"));
    g->set_name("C" + std::to_string(g->order()));
  } else if (j.contains("perm_generators")) {
    const Json& pj = j.at("perm_generators");
    require(pj.is_array() && !pj.empty(), "group.perm_generators: expected a nonempty array");
    std::vector<Permutation> gens;
    for (const auto& p : pj) {
      require(p.is_array(), "group.perm_generators: expected one-line permutations");
      std::vector<std::int64_t> line;
      for (const auto& x : p) line.push_back(detail::integer(x, "group.perm_generators"));
      gens.push_back(perm_from_one_line(line));
    }
    g = group_from_permutations(gens, budget.max_order);
  } else if (j.contains("table")) {
    std::vector<std::vector<std::size_t>> t;
    const Json& tj = j.at("table");
    require(tj.is_array(), "group.table: expected rows");
    require(tj.size() <= budget.max_order, "group.table: group order exceeds the bound");
    for (const auto& row : tj) {
      require(row.is_array(), "group.table: expected rows");
      std::vector<std::size_t> r;
      for (const auto& x : row) r.push_back(detail::natural(x, "group.table"));
      t.push_back(std::move(r));
    }
    g = FiniteGroup(std::move(t));
  } else {
    throw InvalidArgument("group: need one of \"catalog\", \"cyclic\", \"perm_generators\", \"table\"");
  }
  if (g->order() > budget.max_order) throw BudgetExceeded("group: order exceeds the bound");
  if (!name.empty()) g->set_name(name);
  return *g;
}

inline std::size_t element_of_perm(const FiniteGroup& g, const Permutation& p) {
  const auto& perms = g.permutations();
  require(!perms.empty(), "group element: permutation given for a group without a permutation realization");
  const std::size_t n = perms[0].size();
  require(p.size() <= n, "group element: permutation of larger degree than the group");
  Permutation q(n);
  for (std::size_t x = 0; x < n; ++x) q[x] = x < p.size() ? p[x] : x;
  for (std::size_t a = 0; a < perms.size(); ++a)
    if (perms[a] == q) return a;
  throw InvalidArgument("group element: permutation is not in the group");
}

inline std::size_t parse_element(const Json& j, const FiniteGroup& g) {
  if (j.is_array()) {
    std::vector<std::int64_t> line;
    for (const auto& x : j) line.push_back(detail::integer(x, "group element"));
    return element_of_perm(g, perm_from_one_line(line));
  }
  const std::size_t a = detail::natural(j, "group element");
  require(a < g.order(), "group element: index out of range");
  return a;
}

// Homomorphism from images of a chosen generating list, by closure.
inline GroupHom hom_from_pairs(const FiniteGroup& src, const FiniteGroup& tgt, const std::vector<std::size_t>& gens,
                               const std::vector<std::size_t>& images) {
  std::vector<std::size_t> img(src.order(), SIZE_MAX);
  img[0] = 0;
  std::vector<std::size_t> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (std::size_t s = 0; s < gens.size(); ++s) {
      const std::size_t y = src.mul(queue[i], gens[s]);
      const std::size_t v = tgt.mul(img[queue[i]], images[s]);
      if (img[y] == SIZE_MAX) {
        img[y] = v;
        queue.push_back(y);
      } else {
        require(img[y] == v, "hom: generator images do not extend to a homomorphism");
      }
    }
  require(queue.size() == src.order(), "hom: the listed elements do not generate the source");
  return GroupHom(src, tgt, img);
}

// The map part of a hom literal: "images" (one per element, by index),
// "generator_images" ({"generators": [...], "images": [...]} or a list
// aligned with the source generators), or "inclusion": true.
inline GroupHom parse_hom_body(const Json& j, const FiniteGroup& src, const FiniteGroup& tgt) {
  if (j.is_array()) {
    std::vector<std::size_t> img;
    for (const auto& x : j) img.push_back(parse_element(x, tgt));
    return GroupHom(src, tgt, img);
  }
  require(j.is_object(), "hom: expected an object or an image list");
  if (j.contains("images")) return parse_hom_body(j.at("images"), src, tgt);
  if (j.contains("inclusion") && j.at("inclusion") == true) {
    std::vector<std::size_t> img;
    for (const auto& p : src.permutations()) img.push_back(element_of_perm(tgt, p));
    require(!img.empty(), "hom.inclusion: needs permutation groups");
    return GroupHom(src, tgt, img);
  }
  if (j.contains("generator_images")) {
    const Json& gj = j.at("generator_images");
    std::vector<std::size_t> gens, images;
    if (gj.is_object()) {
      const Json& a = detail::field(gj, "generators", "hom.generator_images");
      const Json& b = detail::field(gj, "images", "hom.generator_images");
      require(a.is_array() && b.is_array() && a.size() == b.size(), "hom.generator_images: need one image per generator");
      for (const auto& x : a) gens.push_back(parse_element(x, src));
      for (const auto& x : b) images.push_back(parse_element(x, tgt));
    } else {
      require(gj.is_array() && gj.size() == src.generators().size(),
              "hom.generator_images: need one image per source generator");
      gens = src.generators();
      for (const auto& x : gj) images.push_back(parse_element(x, tgt));
    }
    return hom_from_pairs(src, tgt, gens, images);
  }
  throw InvalidArgument("hom: need \"images\", \"generator_images\" or \"inclusion\"");
}

inline GroupHom parse_hom(const Json& j, const GroupBudget& budget = {}) {
  const FiniteGroup src = parse_group(detail::field(j, "source", "hom"), budget);
  const FiniteGroup tgt = parse_group(detail::field(j, "target", "hom"), budget);
  return parse_hom_body(j, src, tgt);
}

// {"levels": [groups], "transitions": [hom bodies]} with transitions[k] from
// level k+1 onto level k; or {"constant": group, "depth": n}; or
// {"cyclic_p_adic": {"p": p, "depth": n}}.
inline GroupTower parse_group_tower(const Json& j, const GroupBudget& budget = {}) {
  require(j.is_object(), "group tower: expected an object");
  if (j.contains("cyclic_p_adic")) {
    const Json& c = j.at("cyclic_p_adic");
    const std::size_t p = detail::natural(detail::field(c, "p", "cyclic_p_adic"), "cyclic_p_adic.p");
    const std::size_t d = detail::natural(detail::field(c, "depth", "cyclic_p_adic"), "cyclic_p_adic.depth");
    require(is_prime(static_cast<std::int64_t>(p)), "cyclic_p_adic.p must be prime");
    std::size_t top = p;
    for (std::size_t k = 0; k < d; ++k) {
      top *= p;
      if (top > budget.max_order) throw BudgetExceeded("cyclic_p_adic: group order exceeds the bound");
    }
    return GroupTower::cyclic_p_adic(p, d);
  }
  if (j.contains("constant"))
    return GroupTower::constant(parse_group(j.at("constant"), budget),
                                detail::natural(detail::field(j, "depth", "group tower"), "group tower.depth"));
  const Json& lj = detail::field(j, "levels", "group tower");
  require(lj.is_array() && !lj.empty(), "group tower.levels: expected a nonempty array");
  std::vector<FiniteGroup> levels;
  for (const auto& g : lj) levels.push_back(parse_group(g, budget));
  const Json empty = Json::array();
  const Json& tj = j.contains("transitions") ? j.at("transitions") : empty;
  require(tj.is_array() && tj.size() + 1 == levels.size(), "group tower.transitions: need one map between consecutive levels");
  std::vector<GroupHom> tr;
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) tr.push_back(parse_hom_body(tj[k], levels[k + 1], levels[k]));
  return GroupTower(levels, tr);
}

inline GroupTower truncate(const GroupTower& t, std::size_t depth) {
  if (depth >= t.depth()) return t;
  std::vector<FiniteGroup> lv(t.levels().begin(), t.levels().begin() + static_cast<std::ptrdiff_t>(depth + 1));
  std::vector<GroupHom> tr;
  for (std::size_t k = 0; k < depth; ++k) tr.push_back(t.transition(k));
  return GroupTower(lv, tr);
}

// {"elements": [element per level]}.
inline std::vector<std::size_t> parse_element_thread(const Json& j, const GroupTower& t) {
  const Json& ej = detail::field(j, "elements", "thread");
  require(ej.is_array() && ej.size() >= t.depth() + 1, "thread.elements: need one element per level");
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k <= t.depth(); ++k) out.push_back(parse_element(ej[k], t.level(k)));
  return out;
}

// {"subgroups": [[generators] per level]}.
inline std::vector<Subgroup> parse_subgroup_thread(const Json& j, const GroupTower& t) {
  const Json& sj = detail::field(j, "subgroups", "thread");
  require(sj.is_array() && sj.size() >= t.depth() + 1, "thread.subgroups: need one subgroup per level");
  std::vector<Subgroup> out;
  for (std::size_t k = 0; k <= t.depth(); ++k) {
    require(sj[k].is_array(), "thread.subgroups: expected generator lists");
    std::vector<std::size_t> gens;
    for (const auto& x : sj[k]) gens.push_back(parse_element(x, t.level(k)));
    out.push_back(t.level(k).closure(gens));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Writing

inline Json big(const BigInt& n) {
  if (n <= std::numeric_limits<std::int64_t>::max()) return static_cast<std::int64_t>(n);
  return n.str();
}

inline Json to_json(const FiniteModule& m) {
  return Json{{"m", m.modulus()}, {"factors", m.factors()}, {"order", big(m.order())}};
}

inline Json to_json(const ModuleMap& f) {
  return Json{{"source", to_json(f.source())}, {"target", to_json(f.target())}, {"matrix", f.matrix()}};
}

inline Json to_json(const FiniteEtaleSpace& e) {
  Json fibers = Json::object();
  for (std::size_t t = 0; t < e.size(); ++t) fibers[e.base()[t]] = to_json(e.fiber(t));
  return Json{{"m", e.ring().modulus()}, {"base", e.base()}, {"fibers", fibers}};
}

inline Json to_json(const ModuleTower& x) {
  Json levels = Json::array(), tr = Json::array();
  for (const auto& m : x.levels()) levels.push_back(to_json(m));
  for (const auto& f : x.transitions()) tr.push_back(f.matrix());
  return Json{{"kind", to_string(x.kind())}, {"levels", levels}, {"transition_matrices", tr}};
}

inline Json to_json(const FpMatrix& a) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) r.push_back(static_cast<int>(a(i, j)));
    rows.push_back(r);
  }
  return rows;
}

inline Json labels(const FiniteGroup& g, const std::vector<std::size_t>& elems) {
  Json out = Json::array();
  for (auto a : elems) out.push_back(g.label(a));
  return out;
}

inline Json to_json(const FiniteGroup& g) {
  return Json{{"name", g.name()}, {"order", g.order()}, {"generators", labels(g, g.generators())}};
}

inline Json to_json(const FiniteGroup& g, const RepClass& c) {
  Json weyl = Json::array();
  for (const auto& a : c.weyl_image) weyl.push_back(to_json(a));
  return Json{{"representative", c.representative},
              {"representative_labels", labels(g, c.representative)},
              {"orbit_size", c.orbit_size},
              {"image_rank", c.image_rank},
              {"centralizer_order", c.centralizer.size()},
              {"centralizer_generators", labels(g, subgroup_generators(g, c.centralizer))},
              {"normalizer_order", c.normalizer.size()},
              {"weyl_matrices", weyl}};
}

inline Json to_json(const RepClasses& rc) {
  Json classes = Json::array();
  for (const auto& c : rc.classes) classes.push_back(to_json(rc.group, c));
  return Json{{"group", to_json(rc.group)},
              {"p", rc.v.p},
              {"rank", rc.v.r},
              {"hom_count", rc.homs.size()},
              {"class_count", rc.size()},
              {"classes", classes},
              {"strata", rank_strata(rc)}};
}

inline Json to_json(const RepTower& rt, const GroupTower& t) {
  Json levels = Json::array(), threads = Json::array();
  for (const auto& l : rt.levels) levels.push_back(to_json(l));
  for (const auto& th : rt.threads)
    threads.push_back(Json{{"classes", th.classes},
                           {"ranks", th.ranks},
                           {"trivial", th.trivial},
                           {"stable", th.stable},
                           {"constant_from", th.constant_from}});
  Json cands = Json::array();
  for (std::size_t i = 0; i < rt.threads.size(); ++i)
    for (const auto* c : rt.limit_candidates())
      if (c == &rt.threads[i]) cands.push_back(i);
  return Json{{"depth", t.depth()}, {"levels", levels}, {"class_maps", rt.maps}, {"threads", threads}, {"limit_candidates", cands}};
}

inline Json to_json(const LqReport& r) {
  Json fibers = Json::array();
  for (std::size_t c = 0; c < r.rhs.base.size(); ++c)
    fibers.push_back(Json{{"class", c}, {"centralizer_order", r.rhs.base[c].centralizer.size()}, {"dims", r.rhs.fibers[c]}});
  Json verdict = Json::array();
  for (bool b : r.verdict) verdict.push_back(b);
  return Json{{"group", r.group},
              {"group_order", r.group_order},
              {"p", r.v.p},
              {"rank", r.v.r},
              {"k_max", r.k_max},
              {"hom_count", r.hom_count},
              {"class_count", r.rhs.base.size()},
              {"lhs", r.lhs},
              {"rhs", r.rhs_total},
              {"rhs_fibers", fibers},
              {"degree_verdicts", verdict},
              {"stabilizers_match", r.stabilizers_match},
              {"degree0", r.degree0},
              {"ok", r.ok()}};
}

inline Json to_json(const OrbitDump& d, const FiniteGroup& g) {
  return Json{{"representative", d.representative},
              {"representative_labels", labels(g, d.representative)},
              {"orbit_size", d.orbit_size},
              {"induced", d.induced},
              {"stabilizer", d.stabilizer}};
}

inline Json to_json(const FullnessReport& f, const FiniteGroup& target) {
  Json eta = Json::array(), mu = Json::array();
  for (const auto& a : f.eta) eta.push_back(to_json(a));
  for (const auto& a : f.mu) mu.push_back(to_json(a));
  Json j{{"source_class", f.source_class}, {"skipped", f.skipped}};
  if (f.skipped) {
    j["note"] = f.note;
    return j;
  }
  j["eta"] = eta;
  j["mu"] = mu;
  j["injective"] = f.injective;
  j["surjective"] = f.surjective;
  if (f.witness) {
    j["witness"] = Json{{"element", *f.witness}, {"label", target.label(*f.witness)}, {"matrix", to_json(*f.witness_matrix)}};
  }
  return j;
}

inline Json to_json(const SepReport& r, const GroupHom& f) {
  Json collisions = Json::array(), full = Json::array();
  for (const auto& [a, b] : r.fv.collisions) collisions.push_back(Json::array({a, b}));
  for (const auto& x : r.fullness) full.push_back(to_json(x, f.target()));
  return Json{{"p", r.v.p},
              {"rank", r.v.r},
              {"source", to_json(r.fv.source)},
              {"target", to_json(r.fv.target)},
              {"fv", Json{{"map", r.fv.map},
                          {"collisions", collisions},
                          {"missed", r.fv.missed},
                          {"injective", r.fv.injective()},
                          {"surjective", r.fv.surjective()}}},
              {"fullness", full},
              {"full", r.full()},
              {"ok", r.ok()}};
}

inline Json to_json(const SpFunctorReport& r, const GroupHom& f) {
  auto subs = [](const FiniteGroup& g, const std::vector<Subgroup>& v) {
    Json out = Json::array();
    for (const auto& h : v) out.push_back(Json{{"order", h.size()}, {"generators", labels(g, subgroup_generators(g, h))}});
    return out;
  };
  Json j{{"p", r.p},
         {"source_classes", subs(f.source(), r.source_classes)},
         {"target_classes", subs(f.target(), r.target_classes)},
         {"a", r.a},
         {"b", r.b},
         {"c", r.c},
         {"c_missed", r.c_missed},
         {"fully_faithful", r.fully_faithful()},
         {"equivalence", r.equivalence()}};
  if (r.a_witness) j["a_witness"] = Json::array({r.a_witness->first, r.a_witness->second});
  if (r.b_witness)
    j["b_witness"] = Json{{"class", r.b_witness->first}, {"element", r.b_witness->second}, {"label", f.target().label(r.b_witness->second)}};
  return j;
}

// ---------------------------------------------------------------------------
// Table rendering: one "path = value" line per scalar, in key order.

inline void flatten(const Json& j, const std::string& prefix, std::string& out) {
  if (j.is_object() && !j.empty()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(*it, prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out += prefix + " = " + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
  }
}

inline std::string to_table(const Json& j) {
  std::string out;
  flatten(j, "", out);
  return out;
}

}  // namespace proflq::io
