#pragma once

// Finite groups by multiplication table. Element 0 is the identity. Groups
// built from permutations keep the permutation of each element, composed as
// (a*b)(x) = a(b(x)).

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "proflq/error.hpp"
#include "proflq/fp.hpp"

namespace proflq {

using Permutation = std::vector<std::size_t>;
// A subgroup as the sorted list of its element indices.
using Subgroup = std::vector<std::size_t>;

inline Permutation compose_perm(const Permutation& a, const Permutation& b) {
  Permutation c(b.size());
  for (std::size_t x = 0; x < b.size(); ++x) c[x] = a[b[x]];
  return c;
}

inline bool is_permutation(const Permutation& a) {
  std::vector<bool> seen(a.size(), false);
  for (auto x : a) {
    if (x >= a.size() || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(std::vector<std::vector<std::size_t>>{{0}}) {}

  // Validates identity at 0, Latin-square rows/columns and associativity.
  explicit FiniteGroup(std::vector<std::vector<std::size_t>> table, std::string name = "")
      : table_(std::move(table)), name_(std::move(name)) {
    const std::size_t n = table_.size();
    require(n >= 1, "FiniteGroup: empty table");
    for (const auto& row : table_) require(row.size() == n, "FiniteGroup: table is not square");
    for (std::size_t a = 0; a < n; ++a) {
      require(table_[0][a] == a && table_[a][0] == a, "FiniteGroup: element 0 is not the identity");
      std::vector<bool> seen(n, false);
      for (std::size_t b = 0; b < n; ++b) {
        require(table_[a][b] < n, "FiniteGroup: product out of range");
        require(!seen[table_[a][b]], "FiniteGroup: table row is not a permutation");
        seen[table_[a][b]] = true;
      }
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          require(table_[table_[a][b]][c] == table_[a][table_[b][c]], "FiniteGroup: multiplication is not associative");
    finish();
  }

  std::size_t order() const { return table_.size(); }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  std::size_t conj(std::size_t g, std::size_t x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
  std::size_t pow(std::size_t a, std::int64_t k) const {
    std::size_t r = 0;
    const std::size_t base = k >= 0 ? a : inv(a);
    for (std::int64_t i = 0; i < (k >= 0 ? k : -k); ++i) r = mul(r, base);
    return r;
  }
  std::size_t element_order(std::size_t a) const { return elem_order_[a]; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }
  const std::vector<std::size_t>& generators() const { return generators_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  bool is_abelian() const {
    for (std::size_t a = 0; a < order(); ++a)
      for (std::size_t b = 0; b < a; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  // Permutation realizing each element, when built from permutations.
  const std::vector<Permutation>& permutations() const { return perms_; }
  std::string label(std::size_t a) const {
    if (perms_.empty()) return "g" + std::to_string(a);
    // cycle notation on 1-based points
    const Permutation& p = perms_[a];
    std::vector<bool> seen(p.size(), false);
    std::ostringstream os;
    for (std::size_t x = 0; x < p.size(); ++x) {
      if (seen[x] || p[x] == x) continue;
      os << '(';
      std::size_t y = x;
      bool first = true;
      while (!seen[y]) {
        seen[y] = true;
        os << (first ? "" : " ") << y + 1;
        first = false;
        y = p[y];
      }
      os << ')';
    }
    const std::string s = os.str();
    return s.empty() ? "()" : s;
  }

  // Deterministic generators: greedily add the smallest element not yet generated.
  void compute_generators() {
    generators_.clear();
    Subgroup h{0};
    for (std::size_t a = 1; a < order() && h.size() < order(); ++a) {
      if (std::binary_search(h.begin(), h.end(), a)) continue;
      generators_.push_back(a);
      h = closure(generators_);
    }
  }
  void set_generators(std::vector<std::size_t> gens) {
    for (auto g : gens) require(g < order(), "FiniteGroup: generator out of range");
    require(closure(gens).size() == order(), "FiniteGroup: given elements do not generate the group");
    generators_ = std::move(gens);
  }

  // Subgroup generated by a set of elements.
  Subgroup closure(const std::vector<std::size_t>& gens) const {
    std::vector<bool> in(order(), false);
    std::vector<std::size_t> out{0};
    in[0] = true;
    for (std::size_t i = 0; i < out.size(); ++i)
      for (auto g : gens) {
        const std::size_t y = mul(out[i], g);
        if (!in[y]) {
          in[y] = true;
          out.push_back(y);
        }
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

  static FiniteGroup from_permutation_list(std::vector<Permutation> perms, std::vector<std::size_t> gens,
                                           std::string name) {
    const std::size_t n = perms.size();
    std::map<Permutation, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[perms[i]] = i;
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) t[a][b] = index.at(compose_perm(perms[a], perms[b]));
    FiniteGroup g;
    g.table_ = std::move(t);
    g.name_ = std::move(name);
    g.perms_ = std::move(perms);
    g.finish();
    g.generators_ = std::move(gens);
    return g;
  }

 private:
  void finish() {
    const std::size_t n = order();
    inverse_.assign(n, 0);
    elem_order_.assign(n, 1);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b)
        if (table_[a][b] == 0) inverse_[a] = b;
      std::size_t x = a, k = 1;
      while (x != 0) {
        x = table_[x][a];
        ++k;
      }
      elem_order_[a] = a == 0 ? 1 : k;
    }
    if (generators_.empty()) compute_generators();
  }

  std::vector<std::vector<std::size_t>> table_;
  std::string name_;
  std::vector<std::size_t> inverse_;
  std::vector<std::size_t> elem_order_;
  std::vector<std::size_t> generators_;
  std::vector<Permutation> perms_;
};

// Closure of permutation generators by breadth-first search: elements are
// numbered in discovery order, extending each known element by the
// generators in the order given.
inline FiniteGroup group_from_permutations(const std::vector<Permutation>& generators, std::size_t bound = 360,
                                           std::string name = "") {
  std::size_t degree = 0;
  for (const auto& g : generators) {
    require(is_permutation(g), "group_from_permutations: malformed permutation");
    degree = std::max(degree, g.size());
  }
  for (const auto& g : generators) require(g.size() == degree, "group_from_permutations: permutations of different degree");
  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Permutation> elems{id};
  std::map<Permutation, std::size_t> index{{id, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : generators) {
      Permutation y = compose_perm(elems[i], g);
      if (index.count(y)) continue;
      if (elems.size() >= bound) throw BudgetExceeded("group_from_permutations: group order exceeds the bound");
      index[y] = elems.size();
      elems.push_back(std::move(y));
    }
  std::vector<std::size_t> gens;
  for (const auto& g : generators) {
    const std::size_t i = index.at(g);
    if (i != 0 && std::find(gens.begin(), gens.end(), i) == gens.end()) gens.push_back(i);
  }
  return FiniteGroup::from_permutation_list(std::move(elems), std::move(gens), std::move(name));
}

// Permutation from 1-based one-line images.
inline Permutation perm_from_one_line(const std::vector<std::int64_t>& images) {
  Permutation p;
  for (auto x : images) {
    require(x >= 1 && static_cast<std::size_t>(x) <= images.size(), "permutation image out of range");
    p.push_back(static_cast<std::size_t>(x - 1));
  }
  require(is_permutation(p), "malformed permutation");
  return p;
}

// Permutation from 1-based disjoint cycles on n points.
inline Permutation perm_from_cycles(std::size_t n, const std::vector<std::vector<std::size_t>>& cycles) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  for (const auto& c : cycles)
    for (std::size_t i = 0; i < c.size(); ++i) p[c[i] - 1] = c[(i + 1) % c.size()] - 1;
  require(is_permutation(p), "malformed cycles");
  return p;
}

// ---------------------------------------------------------------------------
// Subgroups, conjugacy

inline bool is_subgroup(const FiniteGroup& g, const Subgroup& h) {
  if (h.empty() || h[0] != 0) return false;
  for (auto a : h)
    for (auto b : h)
      if (!std::binary_search(h.begin(), h.end(), g.mul(a, g.inv(b)))) return false;
  return true;
}

inline Subgroup whole_group(const FiniteGroup& g) {
  Subgroup h(g.order());
  std::iota(h.begin(), h.end(), 0);
  return h;
}

inline Subgroup centralizer(const FiniteGroup& g, const std::vector<std::size_t>& s) {
  Subgroup out;
  for (std::size_t x = 0; x < g.order(); ++x)
    if (std::all_of(s.begin(), s.end(), [&](std::size_t y) { return g.mul(x, y) == g.mul(y, x); })) out.push_back(x);
  return out;
}

inline Subgroup center(const FiniteGroup& g) { return centralizer(g, whole_group(g)); }

inline Subgroup conjugate_subgroup(const FiniteGroup& g, std::size_t x, const Subgroup& h) {
  Subgroup out;
  for (auto a : h) out.push_back(g.conj(x, a));
  std::sort(out.begin(), out.end());
  return out;
}

inline Subgroup normalizer(const FiniteGroup& g, const Subgroup& h) {
  Subgroup out;
  for (std::size_t x = 0; x < g.order(); ++x)
    if (conjugate_subgroup(g, x, h) == h) out.push_back(x);
  return out;
}

inline bool are_conjugate(const FiniteGroup& g, std::size_t a, std::size_t b) {
  for (std::size_t x = 0; x < g.order(); ++x)
    if (g.conj(x, a) == b) return true;
  return false;
}

inline bool are_conjugate_subgroups(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t x = 0; x < g.order(); ++x)
    if (conjugate_subgroup(g, x, a) == b) return true;
  return false;
}

inline std::vector<std::vector<std::size_t>> conjugacy_classes(const FiniteGroup& g) {
  std::vector<bool> seen(g.order(), false);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t a = 0; a < g.order(); ++a) {
    if (seen[a]) continue;
    std::set<std::size_t> cls;
    for (std::size_t x = 0; x < g.order(); ++x) cls.insert(g.conj(x, a));
    for (auto c : cls) seen[c] = true;
    out.emplace_back(cls.begin(), cls.end());
  }
  return out;
}

// Every subgroup, sorted by (order, elements).
inline std::vector<Subgroup> all_subgroups(const FiniteGroup& g) {
  std::set<Subgroup> found{Subgroup{0}};
  std::deque<Subgroup> queue{Subgroup{0}};
  while (!queue.empty()) {
    const Subgroup h = queue.front();
    queue.pop_front();
    for (std::size_t a = 1; a < g.order(); ++a) {
      if (std::binary_search(h.begin(), h.end(), a)) continue;
      std::vector<std::size_t> gens(h.begin(), h.end());
      gens.push_back(a);
      Subgroup k = g.closure(gens);
      if (found.insert(k).second) queue.push_back(std::move(k));
    }
  }
  std::vector<Subgroup> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

inline bool is_p_power(std::size_t n, std::size_t p) {
  while (n > 1 && n % p == 0) n /= p;
  return n == 1;
}

// Subgroups of p-power order, one per conjugacy class.
inline std::vector<Subgroup> p_subgroup_classes(const FiniteGroup& g, std::size_t p) {
  std::vector<Subgroup> reps;
  for (const auto& h : all_subgroups(g)) {
    if (!is_p_power(h.size(), p)) continue;
    bool fresh = true;
    for (const auto& r : reps)
      if (are_conjugate_subgroups(g, r, h)) {
        fresh = false;
        break;
      }
    if (fresh) reps.push_back(h);
  }
  return reps;
}

// A subgroup as a group in its own right, elements renumbered in the
// subgroup's sorted order. embedding[i] is the ambient index of element i.
struct SubgroupGroup {
  FiniteGroup group;
  std::vector<std::size_t> embedding;
};

inline SubgroupGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h) {
  require(is_subgroup(g, h), "subgroup_as_group: not a subgroup");
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t i = 0; i < h.size(); ++i) pos[h[i]] = i;
  std::vector<std::vector<std::size_t>> t(h.size(), std::vector<std::size_t>(h.size()));
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = 0; j < h.size(); ++j) t[i][j] = pos.at(g.mul(h[i], h[j]));
  return SubgroupGroup{FiniteGroup(std::move(t)), h};
}

// ---------------------------------------------------------------------------
// Homomorphisms

class GroupHom {
 public:
  GroupHom(FiniteGroup source, FiniteGroup target, std::vector<std::size_t> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    require(images_.size() == source_.order(), "GroupHom: need the image of every source element");
    for (auto y : images_) require(y < target_.order(), "GroupHom: image out of range");
    for (std::size_t a = 0; a < source_.order(); ++a)
      for (std::size_t b = 0; b < source_.order(); ++b)
        require(images_[source_.mul(a, b)] == target_.mul(images_[a], images_[b]), "GroupHom: map is not multiplicative");
  }

  // Extends given images of the source generators, checking well-definedness.
  static GroupHom from_generator_images(const FiniteGroup& source, const FiniteGroup& target,
                                        const std::vector<std::size_t>& gen_images) {
    const auto ext = extend(source, target, gen_images);
    require(ext.has_value(), "GroupHom: generator images do not extend to a homomorphism");
    return GroupHom(source, target, *ext);
  }

  // Extension along the Cayley graph of source.generators(); nullopt when
  // the images are inconsistent.
  static std::optional<std::vector<std::size_t>> extend(const FiniteGroup& source, const FiniteGroup& target,
                                                        const std::vector<std::size_t>& gen_images) {
    const auto& gens = source.generators();
    require(gen_images.size() == gens.size(), "GroupHom: need one image per generator");
    std::vector<std::size_t> img(source.order(), SIZE_MAX);
    img[0] = 0;
    std::vector<std::size_t> queue{0};
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (std::size_t s = 0; s < gens.size(); ++s) {
        const std::size_t y = source.mul(queue[i], gens[s]);
        const std::size_t v = target.mul(img[queue[i]], gen_images[s]);
        if (img[y] == SIZE_MAX) {
          img[y] = v;
          queue.push_back(y);
        } else if (img[y] != v) {
          return std::nullopt;
        }
      }
    for (std::size_t a = 0; a < source.order(); ++a)
      for (std::size_t s = 0; s < gens.size(); ++s)
        if (img[source.mul(a, gens[s])] != target.mul(img[a], gen_images[s])) return std::nullopt;
    return img;
  }

  static GroupHom identity(const FiniteGroup& g) {
    std::vector<std::size_t> id(g.order());
    std::iota(id.begin(), id.end(), 0);
    return GroupHom(g, g, id);
  }
  static GroupHom trivial(const FiniteGroup& g, const FiniteGroup& l) {
    return GroupHom(g, l, std::vector<std::size_t>(g.order(), 0));
  }
  static GroupHom inclusion(const SubgroupGroup& h, const FiniteGroup& g) { return GroupHom(h.group, g, h.embedding); }

  const FiniteGroup& source() const { return source_; }
  const FiniteGroup& target() const { return target_; }
  std::size_t operator()(std::size_t a) const { return images_[a]; }
  const std::vector<std::size_t>& images() const { return images_; }

  bool is_injective() const {
    std::set<std::size_t> s(images_.begin(), images_.end());
    return s.size() == images_.size();
  }
  bool is_surjective() const {
    std::set<std::size_t> s(images_.begin(), images_.end());
    return s.size() == target_.order();
  }
  Subgroup kernel() const {
    Subgroup k;
    for (std::size_t a = 0; a < images_.size(); ++a)
      if (images_[a] == 0) k.push_back(a);
    return k;
  }
  Subgroup image(const Subgroup& h) const {
    std::set<std::size_t> s;
    for (auto a : h) s.insert(images_[a]);
    return Subgroup(s.begin(), s.end());
  }

 private:
  FiniteGroup source_;
  FiniteGroup target_;
  std::vector<std::size_t> images_;
};

inline GroupHom compose(const GroupHom& g, const GroupHom& f) {
  require(f.target() == g.source(), "compose: target of f is not the source of g");
  std::vector<std::size_t> img;
  for (std::size_t a = 0; a < f.source().order(); ++a) img.push_back(g(f(a)));
  return GroupHom(f.source(), g.target(), img);
}

// ---------------------------------------------------------------------------
// Constructions

inline FiniteGroup cyclic_group(std::size_t n) {
  require(n >= 1, "cyclic_group: order must be positive");
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  FiniteGroup g(std::move(t), "C" + std::to_string(n));
  if (n > 1) g.set_generators({1});
  return g;
}

inline FiniteGroup trivial_group() { return cyclic_group(1); }

// Elements (a, b) numbered a * |B| + b.
inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b, std::string name = "") {
  const std::size_t na = a.order(), nb = b.order();
  std::vector<std::vector<std::size_t>> t(na * nb, std::vector<std::size_t>(na * nb));
  for (std::size_t x = 0; x < na * nb; ++x)
    for (std::size_t y = 0; y < na * nb; ++y) t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  FiniteGroup g(std::move(t), name.empty() ? a.name() + "x" + b.name() : name);
  std::vector<std::size_t> gens;
  for (auto s : a.generators()) gens.push_back(s * nb);
  for (auto s : b.generators()) gens.push_back(s);
  if (!gens.empty()) g.set_generators(gens);
  return g;
}

// N x| H with h acting on N by action[h] (a permutation of N's elements that
// is an automorphism). Elements (n, h) numbered n * |H| + h, product
// (n1, h1)(n2, h2) = (n1 * h1(n2), h1 h2).
inline FiniteGroup semidirect_product(const FiniteGroup& n, const FiniteGroup& h,
                                      const std::vector<std::vector<std::size_t>>& action, std::string name = "") {
  require(action.size() == h.order(), "semidirect_product: need an automorphism for every element of H");
  const std::size_t nn = n.order(), nh = h.order();
  std::vector<std::vector<std::size_t>> t(nn * nh, std::vector<std::size_t>(nn * nh));
  for (std::size_t x = 0; x < nn * nh; ++x)
    for (std::size_t y = 0; y < nn * nh; ++y) {
      const std::size_t n1 = x / nh, h1 = x % nh, n2 = y / nh, h2 = y % nh;
      t[x][y] = n.mul(n1, action[h1][n2]) * nh + h.mul(h1, h2);
    }
  FiniteGroup g(std::move(t), std::move(name));
  std::vector<std::size_t> gens;
  for (auto s : n.generators()) gens.push_back(s * nh);
  for (auto s : h.generators()) gens.push_back(s);
  if (!gens.empty()) g.set_generators(gens);
  return g;
}

// The action of H on N through a homomorphism to Aut(N) given by the
// automorphisms attached to H's generators (each as a full permutation of N).
inline std::vector<std::vector<std::size_t>> action_from_generators(const FiniteGroup& n, const FiniteGroup& h,
                                                                    const std::vector<std::vector<std::size_t>>& gen_autos) {
  require(gen_autos.size() == h.generators().size(), "action_from_generators: one automorphism per generator");
  std::vector<std::size_t> id(n.order());
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<std::size_t>> act(h.order());
  act[0] = id;
  std::vector<std::size_t> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (std::size_t s = 0; s < h.generators().size(); ++s) {
      const std::size_t y = h.mul(queue[i], h.generators()[s]);
      std::vector<std::size_t> a(n.order());
      for (std::size_t x = 0; x < n.order(); ++x) a[x] = act[queue[i]][gen_autos[s][x]];
      if (act[y].empty()) {
        act[y] = std::move(a);
        queue.push_back(y);
      } else {
        require(act[y] == a, "action_from_generators: automorphisms do not define an action");
      }
    }
  return act;
}

// Automorphism of N from images of its generators.
inline std::vector<std::size_t> automorphism(const FiniteGroup& n, const std::vector<std::size_t>& gen_images) {
  const GroupHom f = GroupHom::from_generator_images(n, n, gen_images);
  require(f.is_injective(), "automorphism: map is not bijective");
  return f.images();
}

// Extension of N by a cyclic group of order k: elements a z^i (i < k),
// numbered a * k + i, with z a z^-1 = alpha(a) and z^k = t. Requires alpha
// to fix t and alpha^k to be conjugation by t.
inline FiniteGroup cyclic_extension(const FiniteGroup& n, const std::vector<std::size_t>& alpha, std::size_t k,
                                    std::size_t t, std::string name = "") {
  const std::size_t nn = n.order();
  require(alpha[t] == t, "cyclic_extension: alpha must fix z^k");
  std::vector<std::vector<std::size_t>> alpha_pow{std::vector<std::size_t>(nn)};
  std::iota(alpha_pow[0].begin(), alpha_pow[0].end(), 0);
  for (std::size_t i = 1; i <= k; ++i) {
    std::vector<std::size_t> a(nn);
    for (std::size_t x = 0; x < nn; ++x) a[x] = alpha[alpha_pow.back()[x]];
    alpha_pow.push_back(std::move(a));
  }
  for (std::size_t x = 0; x < nn; ++x)
    require(alpha_pow[k][x] == n.conj(t, x), "cyclic_extension: alpha^k must be conjugation by z^k");
  std::vector<std::vector<std::size_t>> tab(nn * k, std::vector<std::size_t>(nn * k));
  for (std::size_t x = 0; x < nn * k; ++x)
    for (std::size_t y = 0; y < nn * k; ++y) {
      const std::size_t a = x / k, i = x % k, b = y / k, j = y % k;
      std::size_t c = n.mul(a, alpha_pow[i][b]);
      std::size_t e = i + j;
      if (e >= k) {
        c = n.mul(c, t);
        e -= k;
      }
      tab[x][y] = c * k + e;
    }
  FiniteGroup g(std::move(tab), std::move(name));
  std::vector<std::size_t> gens;
  for (auto s : n.generators()) gens.push_back(s * k);
  if (k > 1) gens.push_back(1);
  if (!gens.empty()) g.set_generators(gens);
  return g;
}

// Group generated by invertible matrices over F_q (q prime).
inline FiniteGroup group_from_matrices(int q, const std::vector<FpMatrix>& gens, std::size_t bound = 360,
                                       std::string name = "") {
  require(!gens.empty(), "group_from_matrices: need at least one generator");
  const std::size_t d = gens[0].rows();
  for (const auto& m : gens)
    require(m.rows() == d && m.cols() == d && m.p() == q && rank(m) == d, "group_from_matrices: malformed generator");
  auto key = [&](const FpMatrix& m) {
    std::vector<std::uint8_t> k;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) k.push_back(m(i, j));
    return k;
  };
  std::vector<FpMatrix> elems{FpMatrix::identity(q, d)};
  std::map<std::vector<std::uint8_t>, std::size_t> index{{key(elems[0]), 0}};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      FpMatrix y = elems[i] * g;
      const auto ky = key(y);
      if (index.count(ky)) continue;
      if (elems.size() >= bound) throw BudgetExceeded("group_from_matrices: group order exceeds the bound");
      index[ky] = elems.size();
      elems.push_back(std::move(y));
    }
  const std::size_t n = elems.size();
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = index.at(key(elems[a] * elems[b]));
  FiniteGroup g(std::move(t), std::move(name));
  std::vector<std::size_t> gi;
  for (const auto& m : gens) {
    const std::size_t i = index.at(key(m));
    if (i != 0 && std::find(gi.begin(), gi.end(), i) == gi.end()) gi.push_back(i);
  }
  if (!gi.empty()) g.set_generators(gi);
  return g;
}

// Left multiplication as permutations of the elements.
inline std::vector<Permutation> regular_permutations(const FiniteGroup& g) {
  std::vector<Permutation> out;
  for (std::size_t a = 0; a < g.order(); ++a) {
    Permutation p(g.order());
    for (std::size_t x = 0; x < g.order(); ++x) p[x] = g.mul(a, x);
    out.push_back(std::move(p));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism testing

namespace detail {

inline std::vector<std::size_t> order_statistics(const FiniteGroup& g) {
  std::vector<std::size_t> s(g.order() + 1, 0);
  for (std::size_t a = 0; a < g.order(); ++a) ++s[g.element_order(a)];
  return s;
}

}  // namespace detail

// An isomorphism a -> b as element images, found by backtracking over the
// images of a's generators; nullopt if none exists.
inline std::optional<std::vector<std::size_t>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return std::nullopt;
  if (detail::order_statistics(a) != detail::order_statistics(b)) return std::nullopt;
  if (center(a).size() != center(b).size()) return std::nullopt;
  if (conjugacy_classes(a).size() != conjugacy_classes(b).size()) return std::nullopt;
  const auto& gens = a.generators();
  std::vector<std::size_t> choice(gens.size());
  std::function<std::optional<std::vector<std::size_t>>(std::size_t)> rec =
      [&](std::size_t i) -> std::optional<std::vector<std::size_t>> {
    if (i == gens.size()) {
      auto ext = GroupHom::extend(a, b, choice);
      if (!ext) return std::nullopt;
      std::set<std::size_t> s(ext->begin(), ext->end());
      if (s.size() != a.order()) return std::nullopt;
      return ext;
    }
    for (std::size_t y = 0; y < b.order(); ++y) {
      if (b.element_order(y) != a.element_order(gens[i])) continue;
      choice[i] = y;
      if (auto r = rec(i + 1)) return r;
    }
    return std::nullopt;
  };
  return rec(0);
}

inline bool are_isomorphic(const FiniteGroup& a, const FiniteGroup& b) { return find_isomorphism(a, b).has_value(); }

}  // namespace proflq
