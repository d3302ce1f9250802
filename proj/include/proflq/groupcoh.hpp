#pragma once

// Mod-p cohomology of finite groups with coefficients in finite-dimensional
// F_p[G]-modules.
//
// The default engine builds a free resolution P_n = F_p[G]^{r_n} of the
// trivial module degree by degree (generators of each kernel K are chosen
// as a complement of the augmentation ideal times K, topped up greedily
// when that does not generate) and computes Hom_G(P_n, M) = M^{r_n}. The
// inhomogeneous bar complex is available as an independent second route.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "proflq/error.hpp"
#include "proflq/fp.hpp"
#include "proflq/group.hpp"

namespace proflq {

using GradedDims = std::vector<std::size_t>;

// A left F_p[G]-module. perm is set for permutation modules: perm[g][x] is
// the index of g.e_x.
struct GModule {
  int p = 2;
  std::size_t dim = 0;
  std::vector<FpMatrix> action;
  std::vector<std::vector<std::size_t>> perm;

  bool is_permutation_module() const { return !perm.empty(); }
};

// Checks rho(e) = 1 and rho(s h) = rho(s) rho(h) for every generator s and
// every h, which forces rho to be a homomorphism.
inline GModule make_gmodule(const FiniteGroup& g, int p, std::vector<FpMatrix> action) {
  require(is_prime(p), "GModule: p must be prime");
  require(action.size() == g.order(), "GModule: need a matrix for every group element");
  const std::size_t d = action[0].rows();
  for (const auto& a : action) require(a.p() == p && a.rows() == d && a.cols() == d, "GModule: matrices of the wrong shape");
  require(action[0] == FpMatrix::identity(p, d), "GModule: identity must act trivially");
  for (auto s : g.generators())
    for (std::size_t h = 0; h < g.order(); ++h)
      require(action[g.mul(s, h)] == action[s] * action[h], "GModule: action is not a homomorphism");
  return GModule{p, d, std::move(action), {}};
}

inline GModule trivial_module(const FiniteGroup& g, int p, std::size_t d = 1) {
  require(is_prime(p), "GModule: p must be prime");
  GModule m{p, d, std::vector<FpMatrix>(g.order(), FpMatrix::identity(p, d)), {}};
  m.perm.assign(g.order(), std::vector<std::size_t>(d));
  for (auto& row : m.perm) std::iota(row.begin(), row.end(), 0);
  return m;
}

// act[g][x] = g.x for a finite G-set X = {0..n-1}; g acts on F_p[X] by
// e_x -> e_{g x}. In the indicator basis this is also the action on
// functions X -> F_p given by (g f)(x) = f(g^-1 x).
inline GModule permutation_module(const FiniteGroup& g, const std::vector<std::vector<std::size_t>>& act, int p) {
  require(is_prime(p), "permutation_module: p must be prime");
  require(act.size() == g.order(), "permutation_module: need the action of every element");
  const std::size_t n = act[0].size();
  for (const auto& a : act) require(a.size() == n && is_permutation(a), "permutation_module: action is not closed");
  for (std::size_t x = 0; x < n; ++x) require(act[0][x] == x, "permutation_module: identity must act trivially");
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b)
      for (std::size_t x = 0; x < n; ++x)
        require(act[g.mul(a, b)][x] == act[a][act[b][x]], "permutation_module: not an action");
  GModule m{p, n, {}, act};
  for (const auto& a : act) {
    FpMatrix mat(p, n, n);
    for (std::size_t x = 0; x < n; ++x) mat(a[x], x) = 1;
    m.action.push_back(std::move(mat));
  }
  return m;
}

// Left cosets gH, numbered by smallest representative, with G acting by
// left multiplication.
struct CosetSpace {
  std::vector<std::size_t> representatives;
  std::vector<std::vector<std::size_t>> action;
};

inline CosetSpace cosets(const FiniteGroup& g, const Subgroup& h) {
  require(is_subgroup(g, h), "cosets: not a subgroup");
  std::vector<std::size_t> coset_of(g.order(), SIZE_MAX);
  CosetSpace cs;
  for (std::size_t a = 0; a < g.order(); ++a) {
    if (coset_of[a] != SIZE_MAX) continue;
    const std::size_t c = cs.representatives.size();
    cs.representatives.push_back(a);
    for (auto x : h) coset_of[g.mul(a, x)] = c;
  }
  cs.action.assign(g.order(), std::vector<std::size_t>(cs.representatives.size()));
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t c = 0; c < cs.representatives.size(); ++c) cs.action[a][c] = coset_of[g.mul(a, cs.representatives[c])];
  return cs;
}

inline std::vector<std::vector<std::size_t>> regular_action(const FiniteGroup& g) {
  std::vector<std::vector<std::size_t>> act(g.order(), std::vector<std::size_t>(g.order()));
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t x = 0; x < g.order(); ++x) act[a][x] = g.mul(a, x);
  return act;
}

// dim M^G.
inline std::size_t invariants_dim(const FiniteGroup& g, const GModule& m) {
  if (m.dim == 0) return 0;
  FpMatrix stacked(m.p, m.dim * std::max<std::size_t>(1, g.generators().size()), m.dim);
  std::size_t r = 0;
  for (auto s : g.generators()) {
    for (std::size_t i = 0; i < m.dim; ++i, ++r)
      for (std::size_t j = 0; j < m.dim; ++j)
        stacked(r, j) = static_cast<std::uint8_t>((m.action[s](i, j) + m.p - (i == j ? 1 : 0)) % m.p);
  }
  return m.dim - rank(stacked);
}

// Pullback of a G-module along q : G' -> G.
inline GModule inflation(const GroupHom& q, const GModule& m) {
  require(q.is_surjective(), "inflation: map must be surjective");
  GModule out{m.p, m.dim, {}, {}};
  for (std::size_t a = 0; a < q.source().order(); ++a) {
    out.action.push_back(m.action[q(a)]);
    if (m.is_permutation_module()) out.perm.push_back(m.perm[q(a)]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Budgets

struct CohomologyBudget {
  // Largest cochain space dimension (rows or columns of a coboundary matrix).
  std::size_t max_cochain_dim = 5000;
};

// ---------------------------------------------------------------------------
// Free resolutions

class Resolution {
 public:
  Resolution(FiniteGroup g, int p) : g_(std::move(g)), p_(p) {
    require(is_prime(p), "Resolution: p must be prime");
    ranks_.push_back(1);
    boundaries_.emplace_back();  // d_0 unused
    const std::size_t n = g_.order();
    kernel_ = {};
    for (std::size_t h = 1; h < n; ++h) {
      FpVector v(n, 0);
      v[h] = 1;
      v[0] = static_cast<std::uint8_t>(p - 1);
      kernel_.push_back(std::move(v));
    }
  }

  const FiniteGroup& group() const { return g_; }
  int p() const { return p_; }
  std::size_t length() const { return ranks_.size() - 1; }
  std::size_t rank(std::size_t n) {
    extend_to(n);
    return ranks_[n];
  }
  // d_n(e_i) in P_{n-1}, coordinates j * |G| + h for h e_j.
  const std::vector<FpVector>& boundary(std::size_t n) {
    extend_to(n);
    return boundaries_.at(n);
  }
  // g . v for v in F_p[G]^r.
  FpVector act(std::size_t g, const FpVector& v) const {
    const std::size_t n = g_.order();
    FpVector out(v.size(), 0);
    for (std::size_t j = 0; j < v.size() / n; ++j)
      for (std::size_t h = 0; h < n; ++h) out[j * n + g_.mul(g, h)] = v[j * n + h];
    return out;
  }
  // d_n as an F_p-linear map P_n -> P_{n-1}; column (i, h) is h . d_n(e_i).
  FpMatrix boundary_matrix(std::size_t n) {
    extend_to(n);
    const std::size_t ng = g_.order();
    FpMatrix d(p_, ranks_[n - 1] * ng, ranks_[n] * ng);
    for (std::size_t i = 0; i < ranks_[n]; ++i)
      for (std::size_t h = 0; h < ng; ++h) d.set_col(i * ng + h, act(h, boundaries_[n][i]));
    return d;
  }

  void extend_to(std::size_t n) {
    while (length() < n) step();
  }

 private:
  void step() {
    const std::size_t ng = g_.order();
    const std::size_t len = ranks_.back() * ng;  // ambient dim of P_{length}
    // I.K, spanned by (s - 1) k over generators s.
    Subspace ik(p_, len);
    for (auto s : g_.generators())
      for (const auto& k : kernel_) {
        FpVector v = act(s, k);
        for (std::size_t t = 0; t < len; ++t) v[t] = static_cast<std::uint8_t>((v[t] + p_ - k[t]) % p_);
        ik.add(v);
      }
    Subspace complement = ik;
    std::vector<FpVector> gens;
    for (const auto& k : kernel_)
      if (complement.add(k)) gens.push_back(k);
    // Top up until the chosen elements generate K as a module.
    Subspace generated(p_, len);
    auto absorb = [&](const FpVector& x) {
      for (std::size_t h = 0; h < ng; ++h) generated.add(act(h, x));
    };
    for (const auto& x : gens) absorb(x);
    for (const auto& k : kernel_) {
      if (generated.dim() == kernel_.size()) break;
      if (!generated.contains(k)) {
        gens.push_back(k);
        absorb(k);
      }
    }
    if (generated.dim() != kernel_.size()) throw InvariantViolation("Resolution: generators do not span the kernel");
    ranks_.push_back(gens.size());
    boundaries_.push_back(gens);
    kernel_ = gens.empty() ? std::vector<FpVector>{} : kernel_basis(boundary_matrix(length()));
  }

  FiniteGroup g_;
  int p_;
  std::vector<std::size_t> ranks_;
  std::vector<std::vector<FpVector>> boundaries_;
  std::vector<FpVector> kernel_;  // basis of ker d_{length} in P_{length}
};

// Resolutions keyed by (p, multiplication table), shared across calls that
// revisit the same group.
class ResolutionCache {
 public:
  Resolution& get(const FiniteGroup& g, int p) {
    auto key = std::make_pair(p, g.table());
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(std::move(key), std::make_unique<Resolution>(g, p)).first;
    return *it->second;
  }
  std::size_t size() const { return cache_.size(); }

 private:
  std::map<std::pair<int, std::vector<std::vector<std::size_t>>>, std::unique_ptr<Resolution>> cache_;
};

namespace detail {

// Coboundary Hom_G(P_n, M) -> Hom_G(P_{n+1}, M): block (i, j) is
// sum_h x_i[j, h] rho(h) with x_i = d_{n+1}(e_i).
inline FpMatrix resolution_coboundary(Resolution& res, const GModule& m, std::size_t n, const CohomologyBudget& budget) {
  const std::size_t rn = res.rank(n), rn1 = res.rank(n + 1);
  const std::size_t ng = res.group().order();
  const std::size_t d = m.dim;
  if (rn * d > budget.max_cochain_dim || rn1 * d > budget.max_cochain_dim)
    throw BudgetExceeded("cohomology: cochain dimension " + std::to_string(std::max(rn, rn1) * d) + " exceeds the budget");
  FpMatrix delta(m.p, rn1 * d, rn * d);
  const auto& xs = res.boundary(n + 1);
  std::vector<unsigned> acc;
  for (std::size_t i = 0; i < rn1; ++i)
    for (std::size_t j = 0; j < rn; ++j) {
      acc.assign(d * d, 0);
      bool any = false;
      for (std::size_t h = 0; h < ng; ++h) {
        const unsigned c = xs[i][j * ng + h];
        if (c == 0) continue;
        any = true;
        if (m.is_permutation_module()) {
          for (std::size_t col = 0; col < d; ++col) acc[m.perm[h][col] * d + col] += c;
        } else {
          const FpMatrix& a = m.action[h];
          for (std::size_t r = 0; r < d; ++r)
            for (std::size_t col = 0; col < d; ++col) acc[r * d + col] += c * a(r, col);
        }
      }
      if (!any) continue;
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t col = 0; col < d; ++col)
          delta(i * d + r, j * d + col) = static_cast<std::uint8_t>(acc[r * d + col] % static_cast<unsigned>(m.p));
    }
  return delta;
}

// Orbits of a permutation module, each as a smaller permutation module.
inline std::vector<GModule> orbit_summands(const FiniteGroup& g, const GModule& m) {
  std::vector<std::size_t> orbit_of(m.dim, SIZE_MAX);
  std::vector<std::vector<std::size_t>> orbits;
  for (std::size_t x = 0; x < m.dim; ++x) {
    if (orbit_of[x] != SIZE_MAX) continue;
    std::vector<std::size_t> orb{x};
    orbit_of[x] = orbits.size();
    for (std::size_t i = 0; i < orb.size(); ++i)
      for (auto s : g.generators()) {
        const std::size_t y = m.perm[s][orb[i]];
        if (orbit_of[y] == SIZE_MAX) {
          orbit_of[y] = orbits.size();
          orb.push_back(y);
        }
      }
    std::sort(orb.begin(), orb.end());
    orbits.push_back(std::move(orb));
  }
  std::vector<GModule> out;
  for (const auto& orb : orbits) {
    std::map<std::size_t, std::size_t> pos;
    for (std::size_t i = 0; i < orb.size(); ++i) pos[orb[i]] = i;
    GModule sub{m.p, orb.size(), {}, {}};
    for (std::size_t a = 0; a < g.order(); ++a) {
      std::vector<std::size_t> pa(orb.size());
      for (std::size_t i = 0; i < orb.size(); ++i) pa[i] = pos.at(m.perm[a][orb[i]]);
      FpMatrix mat(m.p, orb.size(), orb.size());
      for (std::size_t i = 0; i < orb.size(); ++i) mat(pa[i], i) = 1;
      sub.perm.push_back(std::move(pa));
      sub.action.push_back(std::move(mat));
    }
    out.push_back(std::move(sub));
  }
  return out;
}

inline GradedDims resolution_cohomology(Resolution& res, const GModule& m, std::size_t k_max,
                                        const CohomologyBudget& budget) {
  GradedDims dims;
  std::size_t prev_rank = 0;
  for (std::size_t n = 0; n <= k_max; ++n) {
    const FpMatrix delta = resolution_coboundary(res, m, n, budget);
    const std::size_t r = rank(delta);
    dims.push_back(res.rank(n) * m.dim - r - prev_rank);
    prev_rank = r;
  }
  return dims;
}

}  // namespace detail

struct CohomologyOptions {
  // Permutation modules are split into orbit summands and the dimensions
  // added up; identical summands are computed once.
  bool split_orbits = true;
  CohomologyBudget budget{};
};

inline GradedDims cohomology(const FiniteGroup& g, const GModule& m, std::size_t k_max, ResolutionCache& cache,
                             const CohomologyOptions& opts = {}) {
  require(m.action.size() == g.order(), "cohomology: module is over a different group");
  Resolution& res = cache.get(g, m.p);
  if (!(opts.split_orbits && m.is_permutation_module())) return detail::resolution_cohomology(res, m, k_max, opts.budget);
  GradedDims total(k_max + 1, 0);
  std::map<std::vector<std::vector<std::size_t>>, GradedDims> seen;
  for (const auto& s : detail::orbit_summands(g, m)) {
    auto it = seen.find(s.perm);
    if (it == seen.end()) it = seen.emplace(s.perm, detail::resolution_cohomology(res, s, k_max, opts.budget)).first;
    for (std::size_t k = 0; k <= k_max; ++k) total[k] += it->second[k];
  }
  return total;
}

inline GradedDims cohomology(const FiniteGroup& g, const GModule& m, std::size_t k_max, const CohomologyOptions& opts = {}) {
  ResolutionCache cache;
  return cohomology(g, m, k_max, cache, opts);
}

// H^*(G; F_p) with trivial coefficients.
inline GradedDims trivial_cohomology(const FiniteGroup& g, int p, std::size_t k_max, ResolutionCache& cache) {
  return cohomology(g, trivial_module(g, p), k_max, cache);
}

// Standard inhomogeneous cochains C^k = maps G^k -> M; tuples are numbered
// with g_1 most significant.
inline GradedDims bar_cohomology(const FiniteGroup& g, const GModule& m, std::size_t k_max,
                                 const CohomologyBudget& budget = {}) {
  const std::size_t n = g.order();
  const std::size_t d = m.dim;
  const int p = m.p;
  std::vector<std::size_t> pw{1};
  for (std::size_t k = 0; k <= k_max + 1; ++k) pw.push_back(pw.back() * n);
  auto coboundary = [&](std::size_t k) {
    if (pw[k + 1] * d > budget.max_cochain_dim) throw BudgetExceeded("bar_cohomology: cochain dimension exceeds the budget");
    FpMatrix delta(p, pw[k + 1] * d, pw[k] * d);
    std::vector<std::size_t> t(k + 1);
    for (std::size_t row = 0; row < pw[k + 1]; ++row) {
      std::size_t r = row;
      for (std::size_t i = k + 1; i-- > 0;) {
        t[i] = r % n;
        r /= n;
      }
      auto index = [&](const std::vector<std::size_t>& u) {
        std::size_t x = 0;
        for (auto a : u) x = x * n + a;
        return x;
      };
      auto add_block = [&](std::size_t col, const FpMatrix* a, int sign) {
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < d; ++j) {
            const int v = a ? (*a)(i, j) : (i == j ? 1 : 0);
            if (v == 0) continue;
            auto& e = delta(row * d + i, col * d + j);
            e = static_cast<std::uint8_t>(mod_floor(static_cast<std::int64_t>(e) + sign * v, p));
          }
      };
      // g_1 . phi(g_2, ..., g_{k+1})
      add_block(index(std::vector<std::size_t>(t.begin() + 1, t.end())), &m.action[t[0]], 1);
      for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::size_t> u;
        for (std::size_t j = 0; j < k + 1; ++j) {
          if (j == i) {
            u.push_back(g.mul(t[i], t[i + 1]));
            ++j;
          } else {
            u.push_back(t[j]);
          }
        }
        add_block(index(u), nullptr, (i + 1) % 2 == 0 ? 1 : -1);
      }
      add_block(index(std::vector<std::size_t>(t.begin(), t.end() - 1)), nullptr, (k + 1) % 2 == 0 ? 1 : -1);
    }
    return delta;
  };
  GradedDims dims;
  std::size_t prev = 0;
  for (std::size_t k = 0; k <= k_max; ++k) {
    const std::size_t r = rank(coboundary(k));
    dims.push_back(pw[k] * d - r - prev);
    prev = r;
  }
  return dims;
}

// ---------------------------------------------------------------------------
// Shapiro

struct ShapiroReport {
  std::size_t subgroup_order = 0;
  GradedDims induced;   // H^*(G; F_p[G/H])
  GradedDims subgroup;  // H^*(H; F_p)
  bool equal() const { return induced == subgroup; }
};

inline ShapiroReport shapiro_check(const FiniteGroup& g, const Subgroup& h, int p, std::size_t k_max, ResolutionCache& cache) {
  ShapiroReport r;
  r.subgroup_order = h.size();
  r.induced = cohomology(g, permutation_module(g, cosets(g, h).action, p), k_max, cache);
  r.subgroup = trivial_cohomology(subgroup_as_group(g, h).group, p, k_max, cache);
  return r;
}

// ---------------------------------------------------------------------------
// Inflation along surjections and group towers

namespace detail {

// Vector of P_{n} (for G) obtained by applying a q-equivariant map given on
// generators (images y_j) to v in P'_n (for G').
inline FpVector apply_equivariant(const GroupHom& q, Resolution& target, const std::vector<FpVector>& y,
                                  const FpVector& v, std::size_t target_len) {
  const std::size_t ns = q.source().order();
  FpVector out(target_len, 0);
  const int p = target.p();
  for (std::size_t j = 0; j < y.size(); ++j)
    for (std::size_t h = 0; h < ns; ++h) {
      const unsigned c = v[j * ns + h];
      if (c == 0) continue;
      const FpVector moved = target.act(q(h), y[j]);
      for (std::size_t t = 0; t < target_len; ++t) out[t] = static_cast<std::uint8_t>((out[t] + c * moved[t]) % static_cast<unsigned>(p));
    }
  return out;
}

}  // namespace detail

// Ranks of H^n(G; F_p) -> H^n(G'; F_p) for n <= k_max along a surjection
// q : G' -> G, by lifting the identity of F_p to a chain map between the
// resolutions.
inline std::vector<std::size_t> inflation_ranks(const GroupHom& q, int p, std::size_t k_max, ResolutionCache& cache) {
  require(q.is_surjective(), "inflation_ranks: map must be surjective");
  Resolution& src = cache.get(q.source(), p);  // G'
  Resolution& tgt = cache.get(q.target(), p);  // G
  const std::size_t ng = q.target().order();
  std::vector<std::size_t> out;
  // y[i] = f_n(e'_i) in P_n.
  std::vector<FpVector> y{FpVector(ng, 0)};
  y[0][0] = 1;
  for (std::size_t n = 0; n <= k_max; ++n) {
    if (n > 0) {
      const FpMatrix dn = tgt.boundary_matrix(n);
      std::vector<FpVector> next;
      for (const auto& x : src.boundary(n)) {
        const FpVector z = detail::apply_equivariant(q, tgt, y, x, tgt.rank(n - 1) * ng);
        const auto sol = solve(dn, z);
        if (!sol) throw InvariantViolation("inflation_ranks: chain map does not lift");
        next.push_back(*sol);
      }
      y = std::move(next);
    }
    // Cochain map F_p^{r_n} -> F_p^{r'_n}: (f* phi)_i = sum_{j,h} y_i[j,h] phi_j.
    const std::size_t rn = tgt.rank(n), rsn = src.rank(n);
    FpMatrix f(p, rsn, rn);
    for (std::size_t i = 0; i < rsn; ++i)
      for (std::size_t j = 0; j < rn; ++j) {
        unsigned acc = 0;
        for (std::size_t h = 0; h < ng; ++h) acc += y[i][j * ng + h];
        f(i, j) = static_cast<std::uint8_t>(acc % static_cast<unsigned>(p));
      }
    const GModule triv_t = trivial_module(q.target(), p), triv_s = trivial_module(q.source(), p);
    const auto cocycles = kernel_basis(detail::resolution_coboundary(tgt, triv_t, n, {}));
    Subspace b(p, rsn);
    if (n > 0) {
      const FpMatrix prev = detail::resolution_coboundary(src, triv_s, n - 1, {});
      for (std::size_t c = 0; c < prev.cols(); ++c) b.add(prev.col_vector(c));
    }
    const std::size_t base = b.dim();
    for (const auto& z : cocycles) b.add(f.apply(z));
    out.push_back(b.dim() - base);
  }
  return out;
}

class GroupTower {
 public:
  // transitions[k] : levels[k+1] -> levels[k], surjective.
  GroupTower(std::vector<FiniteGroup> levels, std::vector<GroupHom> transitions)
      : levels_(std::move(levels)), transitions_(std::move(transitions)) {
    require(!levels_.empty(), "GroupTower: need at least one level");
    require(transitions_.size() + 1 == levels_.size(), "GroupTower: need one transition between consecutive levels");
    for (std::size_t k = 0; k < transitions_.size(); ++k) {
      require(transitions_[k].source() == levels_[k + 1] && transitions_[k].target() == levels_[k],
              "GroupTower: transition " + std::to_string(k) + " has the wrong source or target");
      require(transitions_[k].is_surjective(), "GroupTower: transition " + std::to_string(k) + " is not surjective");
    }
  }

  static GroupTower constant(const FiniteGroup& g, std::size_t depth) {
    return GroupTower(std::vector<FiniteGroup>(depth + 1, g), std::vector<GroupHom>(depth, GroupHom::identity(g)));
  }

  // C_{p} <- C_{p^2} <- ... <- C_{p^{depth+1}} by reduction.
  static GroupTower cyclic_p_adic(std::size_t p, std::size_t depth) {
    std::vector<FiniteGroup> lv;
    std::vector<GroupHom> tr;
    std::size_t m = p;
    for (std::size_t k = 0; k <= depth; ++k, m *= p) {
      lv.push_back(cyclic_group(m));
      if (k > 0) {
        std::vector<std::size_t> img(m);
        for (std::size_t x = 0; x < m; ++x) img[x] = x % (m / p);
        tr.emplace_back(lv[k], lv[k - 1], img);
      }
    }
    return GroupTower(std::move(lv), std::move(tr));
  }

  std::size_t depth() const { return levels_.size() - 1; }
  const FiniteGroup& level(std::size_t k) const { return levels_.at(k); }
  const std::vector<FiniteGroup>& levels() const { return levels_; }
  const GroupHom& transition(std::size_t k) const { return transitions_.at(k); }

  // Image in level `to` of element a of level `from`.
  std::size_t project(std::size_t from, std::size_t to, std::size_t a) const {
    require(to <= from && from <= depth(), "GroupTower::project: bad levels");
    for (std::size_t k = from; k > to; --k) a = transitions_[k - 1](a);
    return a;
  }

 private:
  std::vector<FiniteGroup> levels_;
  std::vector<GroupHom> transitions_;
};

struct ContinuousCohomologyReport {
  std::vector<GradedDims> level_dims;
  // inflation_ranks[k][n]: rank of H^n(G_k) -> H^n(G_{k+1}).
  std::vector<std::vector<std::size_t>> inflation_ranks;
  // Per degree: the last inflation is an isomorphism between equal dims.
  std::vector<bool> stabilized;
  // Per degree: dimension of the image of the last inflation (the level
  // dims themselves for a single-level tower). Evidence about the colimit,
  // not a proof.
  GradedDims surviving;
};

inline ContinuousCohomologyReport continuous_cohomology(const GroupTower& t, int p, std::size_t k_max, ResolutionCache& cache) {
  ContinuousCohomologyReport r;
  for (const auto& g : t.levels()) r.level_dims.push_back(trivial_cohomology(g, p, k_max, cache));
  for (std::size_t k = 0; k < t.depth(); ++k) r.inflation_ranks.push_back(inflation_ranks(t.transition(k), p, k_max, cache));
  for (std::size_t n = 0; n <= k_max; ++n) {
    if (t.depth() == 0) {
      r.stabilized.push_back(true);
      r.surviving.push_back(r.level_dims[0][n]);
      continue;
    }
    const std::size_t last = t.depth() - 1;
    const std::size_t rk = r.inflation_ranks[last][n];
    r.stabilized.push_back(r.level_dims[last][n] == r.level_dims[last + 1][n] && rk == r.level_dims[last][n]);
    r.surviving.push_back(rk);
  }
  return r;
}

}  // namespace proflq
