#pragma once

// One group of each isomorphism type of order at most 24 (74 in all),
// built from cyclic groups, products, semidirect products, cyclic
// extensions and a matrix group.

#include <string>
#include <vector>

#include "proflq/group.hpp"

namespace proflq {

struct CatalogEntry {
  std::string name;
  FiniteGroup group;
};

namespace catalog {

inline std::vector<std::size_t> power_map(std::size_t m, std::size_t r) {
  std::vector<std::size_t> a(m);
  for (std::size_t x = 0; x < m; ++x) a[x] = x * r % m;
  return a;
}

// C_m x| C_n, the generator of C_n acting by x -> x^r.
inline FiniteGroup cyclic_semidirect(std::size_t m, std::size_t n, std::size_t r, std::string name) {
  const FiniteGroup cm = cyclic_group(m), cn = cyclic_group(n);
  return semidirect_product(cm, cn, action_from_generators(cm, cn, {power_map(m, r)}), std::move(name));
}

inline FiniteGroup dihedral(std::size_t n) {
  return cyclic_semidirect(n, 2, n - 1, "D" + std::to_string(n));
}

// Order 4n: <a, x | a^{2n}, x^2 = a^n, x a x^-1 = a^-1>.
inline FiniteGroup dicyclic(std::size_t n, std::string name) {
  return cyclic_extension(cyclic_group(2 * n), power_map(2 * n, 2 * n - 1), 2, n, std::move(name));
}

inline FiniteGroup perm_group(std::size_t degree, const std::vector<std::vector<std::vector<std::size_t>>>& gens,
                              std::string name) {
  std::vector<Permutation> ps;
  for (const auto& c : gens) ps.push_back(perm_from_cycles(degree, c));
  return group_from_permutations(ps, 360, std::move(name));
}

inline FiniteGroup symmetric3() { return perm_group(3, {{{1, 2}}, {{1, 2, 3}}}, "S3"); }
inline FiniteGroup dihedral4() { return perm_group(4, {{{1, 2, 3, 4}}, {{1, 3}}}, "D4"); }
inline FiniteGroup alternating4() { return perm_group(4, {{{1, 2, 3}}, {{1, 2}, {3, 4}}}, "A4"); }
inline FiniteGroup symmetric4() { return perm_group(4, {{{1, 2, 3, 4}}, {{1, 2}}}, "S4"); }
inline FiniteGroup quaternion8() { return dicyclic(2, "Q8"); }

inline FiniteGroup elementary_abelian(std::size_t p, std::size_t r) {
  FiniteGroup g = trivial_group();
  for (std::size_t i = 0; i < r; ++i) g = direct_product(g, cyclic_group(p));
  g.set_name(r == 0 ? "C1" : "C" + std::to_string(p) + "^" + std::to_string(r));
  return g;
}

inline FiniteGroup named_product(const FiniteGroup& a, const FiniteGroup& b, std::string name) {
  return direct_product(a, b, std::move(name));
}

inline std::vector<CatalogEntry> build() {
  std::vector<CatalogEntry> out;
  auto add = [&](FiniteGroup g) {
    const std::string n = g.name();
    out.push_back(CatalogEntry{n, std::move(g)});
  };
  const FiniteGroup c2 = cyclic_group(2), c3 = cyclic_group(3), c4 = cyclic_group(4);
  const FiniteGroup s3 = symmetric3(), d4 = dihedral4(), q8 = quaternion8(), a4 = alternating4();

  add(trivial_group());
  add(cyclic_group(2));
  add(cyclic_group(3));
  // 4
  add(cyclic_group(4));
  add(elementary_abelian(2, 2));
  add(cyclic_group(5));
  // 6
  add(cyclic_group(6));
  add(s3);
  add(cyclic_group(7));
  // 8
  add(cyclic_group(8));
  add(named_product(c4, c2, "C4xC2"));
  add(elementary_abelian(2, 3));
  add(d4);
  add(q8);
  // 9
  add(cyclic_group(9));
  add(elementary_abelian(3, 2));
  // 10
  add(cyclic_group(10));
  add(dihedral(5));
  add(cyclic_group(11));
  // 12
  add(cyclic_group(12));
  add(named_product(cyclic_group(6), c2, "C6xC2"));
  add(dihedral(6));
  add(a4);
  add(dicyclic(3, "Dic3"));
  add(cyclic_group(13));
  // 14
  add(cyclic_group(14));
  add(dihedral(7));
  add(cyclic_group(15));
  // 16
  add(cyclic_group(16));
  add(named_product(c4, c4, "C4xC4"));
  {
    // (C4 x C2) x| C2 with c: a -> ab, b -> b.
    const FiniteGroup n = named_product(c4, c2, "C4xC2");
    const std::size_t a = n.generators()[0], b = n.generators()[1];
    const auto alpha = automorphism(n, {n.mul(a, b), b});
    add(semidirect_product(n, c2, action_from_generators(n, c2, {alpha}), "C2^2:C4"));
  }
  add(cyclic_semidirect(4, 4, 3, "C4:C4"));
  add(named_product(cyclic_group(8), c2, "C8xC2"));
  add(cyclic_semidirect(8, 2, 5, "M16"));
  add(dihedral(8));
  add(cyclic_semidirect(8, 2, 3, "SD16"));
  add(dicyclic(4, "Q16"));
  add(named_product(named_product(c4, c2, "C4xC2"), c2, "C4xC2^2"));
  add(named_product(c2, d4, "C2xD4"));
  add(named_product(c2, q8, "C2xQ8"));
  {
    // (C4 x C2) x| C2 with c: a -> a, b -> a^2 b; the central product C4 o D4.
    const FiniteGroup n = named_product(c4, c2, "C4xC2");
    const std::size_t a = n.generators()[0], b = n.generators()[1];
    const auto alpha = automorphism(n, {a, n.mul(n.mul(a, a), b)});
    add(semidirect_product(n, c2, action_from_generators(n, c2, {alpha}), "C4oD4"));
  }
  add(elementary_abelian(2, 4));
  add(cyclic_group(17));
  // 18
  add(cyclic_group(18));
  add(named_product(cyclic_group(6), c3, "C6xC3"));
  add(dihedral(9));
  add(named_product(s3, c3, "S3xC3"));
  {
    const FiniteGroup n = elementary_abelian(3, 2);
    std::vector<std::size_t> inv(n.order());
    for (std::size_t x = 0; x < n.order(); ++x) inv[x] = n.inv(x);
    add(semidirect_product(n, c2, action_from_generators(n, c2, {inv}), "C3^2:C2"));
  }
  add(cyclic_group(19));
  // 20
  add(cyclic_group(20));
  add(named_product(cyclic_group(10), c2, "C10xC2"));
  add(dihedral(10));
  add(dicyclic(5, "Dic5"));
  add(cyclic_semidirect(5, 4, 2, "F20"));
  // 21
  add(cyclic_group(21));
  add(cyclic_semidirect(7, 3, 2, "C7:C3"));
  // 22
  add(cyclic_group(22));
  add(dihedral(11));
  add(cyclic_group(23));
  // 24
  add(cyclic_semidirect(3, 8, 2, "C3:C8"));
  add(cyclic_group(24));
  {
    FpMatrix x(3, 2, 2), y(3, 2, 2);
    x(0, 0) = x(0, 1) = x(1, 1) = 1;
    y(0, 0) = y(1, 0) = y(1, 1) = 1;
    add(group_from_matrices(3, {x, y}, 360, "SL(2,3)"));
  }
  add(dicyclic(6, "Dic6"));
  add(named_product(c4, s3, "C4xS3"));
  add(dihedral(12));
  add(named_product(c2, dicyclic(3, "Dic3"), "C2xDic3"));
  {
    // C3 x| D4 with the rotation inverting and the reflection fixing C3.
    std::vector<std::size_t> id{0, 1, 2};
    add(semidirect_product(c3, d4, action_from_generators(c3, d4, {power_map(3, 2), id}), "C3:D4"));
  }
  add(named_product(cyclic_group(12), c2, "C12xC2"));
  add(named_product(c3, d4, "C3xD4"));
  add(named_product(c3, q8, "C3xQ8"));
  add(symmetric4());
  add(named_product(c2, a4, "C2xA4"));
  add(named_product(elementary_abelian(2, 2), s3, "C2^2xS3"));
  add(named_product(elementary_abelian(2, 2), cyclic_group(6), "C2^2xC6"));
  return out;
}

}  // namespace catalog

// All 74 groups of order <= 24, ordered by group order.
inline const std::vector<CatalogEntry>& small_groups() {
  static const std::vector<CatalogEntry> groups = catalog::build();
  return groups;
}

inline std::vector<CatalogEntry> small_groups_up_to(std::size_t max_order) {
  std::vector<CatalogEntry> out;
  for (const auto& e : small_groups())
    if (e.group.order() <= max_order) out.push_back(e);
  return out;
}

inline const FiniteGroup& catalog_group(const std::string& name) {
  for (const auto& e : small_groups())
    if (e.name == name) return e.group;
  throw InvalidArgument("unknown group '" + name + "'");
}

}  // namespace proflq
