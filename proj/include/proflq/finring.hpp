#pragma once

// Finite modules over Z/m in invariant-factor normal form, their morphisms,
// kernels, cokernels, images, Hom, tensor products and Pontryagin duals.
//
// Q/Z is modelled as Z/m for the ambient modulus m: every module of one
// computation has exponent dividing m, so Hom(-, Z/m) is the Pontryagin dual.

#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "proflq/error.hpp"
#include "proflq/intmat.hpp"

namespace proflq {

using Element = std::vector<std::int64_t>;
using SmallMatrix = std::vector<std::vector<std::int64_t>>;

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::int64_t mod_floor(const BigInt& a, std::int64_t m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r.convert_to<std::int64_t>();
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class FiniteRing {
 public:
  explicit FiniteRing(std::int64_t modulus) : modulus_(modulus), prime_(is_prime(modulus)) {
    require(modulus >= 2, "FiniteRing: modulus must be >= 2");
  }
  std::int64_t modulus() const { return modulus_; }
  bool is_field() const { return prime_; }
  friend bool operator==(const FiniteRing& a, const FiniteRing& b) { return a.modulus_ == b.modulus_; }

 private:
  std::int64_t modulus_;
  bool prime_;
};

class FiniteModule;

namespace detail {
inline std::vector<std::int64_t> normalized_factors(const FiniteRing& ring, const std::vector<std::int64_t>& orders);
}

// Direct sum of cyclic modules Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... | d_k,
// each d_i > 1 dividing m.
class FiniteModule {
 public:
  explicit FiniteModule(FiniteRing ring) : ring_(ring) {}

  // Any list of cyclic orders (each dividing m); re-normalized to invariant
  // factors. {2, 3} over Z/6 becomes {6}; 1s are dropped.
  FiniteModule(FiniteRing ring, const std::vector<std::int64_t>& orders)
      : ring_(ring), factors_(detail::normalized_factors(ring, orders)) {}

  static FiniteModule cyclic(FiniteRing ring, std::int64_t order) { return FiniteModule(ring, {order}); }
  static FiniteModule zero(FiniteRing ring) { return FiniteModule(ring); }

  const FiniteRing& ring() const { return ring_; }
  std::int64_t modulus() const { return ring_.modulus(); }
  const std::vector<std::int64_t>& factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  bool is_zero() const { return factors_.empty(); }

  BigInt order() const {
    BigInt o = 1;
    for (auto d : factors_) o *= d;
    return o;
  }
  std::uint64_t order_u64() const {
    const BigInt o = order();
    require(o <= BigInt(std::numeric_limits<std::uint64_t>::max()), "FiniteModule: order exceeds 64 bits");
    return o.convert_to<std::uint64_t>();
  }

  Element zero_element() const { return Element(rank(), 0); }
  Element reduce(Element x) const {
    require(x.size() == rank(), "FiniteModule: element has wrong length");
    for (std::size_t i = 0; i < rank(); ++i) x[i] = mod_floor(x[i], factors_[i]);
    return x;
  }
  Element add(const Element& a, const Element& b) const {
    Element c(rank());
    for (std::size_t i = 0; i < rank(); ++i) c[i] = mod_floor(a[i] + b[i], factors_[i]);
    return c;
  }
  Element scale(std::int64_t s, const Element& a) const {
    Element c(rank());
    for (std::size_t i = 0; i < rank(); ++i) c[i] = mod_floor(s % factors_[i] * a[i], factors_[i]);
    return c;
  }
  Element negate(const Element& a) const { return scale(-1, a); }
  Element generator(std::size_t i) const {
    Element e = zero_element();
    e[i] = 1;
    return e;
  }
  bool is_zero_element(const Element& a) const {
    for (std::size_t i = 0; i < rank(); ++i)
      if (mod_floor(a[i], factors_[i]) != 0) return false;
    return true;
  }

  // Visits every element in lexicographic order of coordinates.
  void for_each_element(const std::function<void(const Element&)>& visit) const {
    Element x = zero_element();
    for (;;) {
      visit(x);
      std::size_t i = rank();
      while (i > 0) {
        --i;
        if (++x[i] < factors_[i]) break;
        x[i] = 0;
        if (i == 0) return;
      }
      if (rank() == 0) return;
    }
  }
  std::vector<Element> elements() const {
    std::vector<Element> out;
    for_each_element([&](const Element& x) { out.push_back(x); });
    return out;
  }

  friend bool operator==(const FiniteModule& a, const FiniteModule& b) {
    return a.ring_ == b.ring_ && a.factors_ == b.factors_;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "Z/" << modulus() << "-module[";
    for (std::size_t i = 0; i < rank(); ++i) os << (i ? "," : "") << factors_[i];
    os << ']';
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const FiniteModule& m) { return os << m.to_string(); }

 private:
  FiniteRing ring_;
  std::vector<std::int64_t> factors_;
};

inline bool is_isomorphic(const FiniteModule& a, const FiniteModule& b) {
  require(a.ring() == b.ring(), "is_isomorphic: ring mismatch");
  return a.factors() == b.factors();
}

// Homomorphism source -> target. Column j is the image of the j-th generator
// of the source; entry (i, j) is read modulo the target's i-th invariant factor.
class ModuleMap {
 public:
  ModuleMap(FiniteModule source, FiniteModule target, SmallMatrix matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    require(source_.ring() == target_.ring(), "ModuleMap: ring mismatch");
    require(matrix_.size() == target_.rank(), "ModuleMap: matrix row count must equal target rank");
    for (std::size_t i = 0; i < target_.rank(); ++i) {
      require(matrix_[i].size() == source_.rank(), "ModuleMap: matrix column count must equal source rank");
      for (std::size_t j = 0; j < source_.rank(); ++j) {
        const std::int64_t e = target_.factors()[i];
        matrix_[i][j] = mod_floor(matrix_[i][j], e);
        require(mod_floor(source_.factors()[j] % e * matrix_[i][j], e) == 0,
                "ModuleMap: not well defined (order of source generator does not annihilate its image)");
      }
    }
  }

  static ModuleMap zero(const FiniteModule& source, const FiniteModule& target) {
    return ModuleMap(source, target, SmallMatrix(target.rank(), std::vector<std::int64_t>(source.rank(), 0)));
  }
  static ModuleMap identity(const FiniteModule& m) {
    SmallMatrix a(m.rank(), std::vector<std::int64_t>(m.rank(), 0));
    for (std::size_t i = 0; i < m.rank(); ++i) a[i][i] = 1;
    return ModuleMap(m, m, std::move(a));
  }
  // The map sending source generator j to images[j].
  static ModuleMap from_images(const FiniteModule& source, const FiniteModule& target,
                               const std::vector<Element>& images) {
    require(images.size() == source.rank(), "ModuleMap::from_images: wrong number of images");
    SmallMatrix a(target.rank(), std::vector<std::int64_t>(source.rank(), 0));
    for (std::size_t j = 0; j < source.rank(); ++j) {
      require(images[j].size() == target.rank(), "ModuleMap::from_images: image has wrong length");
      for (std::size_t i = 0; i < target.rank(); ++i) a[i][j] = images[j][i];
    }
    return ModuleMap(source, target, std::move(a));
  }

  const FiniteModule& source() const { return source_; }
  const FiniteModule& target() const { return target_; }
  const SmallMatrix& matrix() const { return matrix_; }

  Element apply(const Element& x) const {
    require(x.size() == source_.rank(), "ModuleMap::apply: element has wrong length");
    Element y(target_.rank(), 0);
    for (std::size_t i = 0; i < target_.rank(); ++i) {
      const std::int64_t e = target_.factors()[i];
      std::int64_t acc = 0;
      for (std::size_t j = 0; j < source_.rank(); ++j) {
        if (matrix_[i][j] == 0 || x[j] == 0) continue;
        acc = (acc + matrix_[i][j] * mod_floor(x[j], e)) % e;
      }
      y[i] = acc;
    }
    return y;
  }

  Element image_of_generator(std::size_t j) const {
    Element y(target_.rank());
    for (std::size_t i = 0; i < target_.rank(); ++i) y[i] = matrix_[i][j];
    return y;
  }

  bool is_zero() const {
    for (const auto& row : matrix_)
      for (auto v : row)
        if (v != 0) return false;
    return true;
  }

  friend bool operator==(const ModuleMap& a, const ModuleMap& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.matrix_ == b.matrix_;
  }

 private:
  FiniteModule source_;
  FiniteModule target_;
  SmallMatrix matrix_;
};

// g o f
inline ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  require(f.target() == g.source(), "compose: target of f must equal source of g");
  std::vector<Element> images;
  for (std::size_t j = 0; j < f.source().rank(); ++j) images.push_back(g.apply(f.image_of_generator(j)));
  return ModuleMap::from_images(f.source(), g.target(), images);
}

inline ModuleMap add_maps(const ModuleMap& f, const ModuleMap& g) {
  require(f.source() == g.source() && f.target() == g.target(), "add_maps: shape mismatch");
  SmallMatrix a = f.matrix();
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] += g.matrix()[i][j];
  return ModuleMap(f.source(), f.target(), std::move(a));
}

// Z^l / R Z^c (with m Z^l added, so the quotient is a Z/m-module) in normal
// form, with the coordinate change in both directions.
struct Presentation {
  FiniteModule module;
  SmallMatrix to_nf;    // module.rank() x l, raw coordinates -> normal form
  SmallMatrix from_nf;  // l x module.rank(), columns are raw lifts of generators

  Element raw_to_nf(const Element& raw) const {
    Element y(module.rank(), 0);
    for (std::size_t i = 0; i < module.rank(); ++i) {
      const std::int64_t d = module.factors()[i];
      std::int64_t acc = 0;
      for (std::size_t j = 0; j < raw.size(); ++j) acc = mod_floor(acc + mod_floor(to_nf[i][j], d) * mod_floor(raw[j], d), d);
      y[i] = acc;
    }
    return y;
  }
  // Integer lift of a normal-form element; callers reduce modulo their own orders.
  std::vector<BigInt> nf_to_raw_lift(const Element& y) const {
    std::vector<BigInt> x(from_nf.size(), 0);
    for (std::size_t r = 0; r < from_nf.size(); ++r)
      for (std::size_t i = 0; i < module.rank(); ++i) x[r] += BigInt(from_nf[r][i]) * y[i];
    return x;
  }
};

inline Presentation present(const FiniteRing& ring, std::size_t raw_rank, const IntMatrix& relations) {
  require(relations.rows() == raw_rank, "present: relation matrix has wrong row count");
  const std::int64_t m = ring.modulus();
  IntMatrix full(raw_rank, relations.cols() + raw_rank);
  for (std::size_t i = 0; i < raw_rank; ++i) {
    for (std::size_t j = 0; j < relations.cols(); ++j) full(i, j) = relations(i, j);
    full(i, relations.cols() + i) = m;
  }
  const SmithDecomposition s = smith_normal_form(full, SmithNeeds{true, true, false, false});
  std::vector<std::int64_t> factors;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < raw_rank; ++i) {
    const BigInt d = s.diagonal(i, i);
    if (d == 0 || m % d.convert_to<std::int64_t>() != 0)
      throw InvariantViolation("present: invariant factor does not divide the modulus");
    if (d != 1) {
      factors.push_back(d.convert_to<std::int64_t>());
      keep.push_back(i);
    }
  }
  Presentation p{FiniteModule(ring), {}, {}};
  p.to_nf.assign(keep.size(), std::vector<std::int64_t>(raw_rank, 0));
  p.from_nf.assign(raw_rank, std::vector<std::int64_t>(keep.size(), 0));
  for (std::size_t a = 0; a < keep.size(); ++a) {
    for (std::size_t j = 0; j < raw_rank; ++j) {
      p.to_nf[a][j] = mod_floor(s.left(keep[a], j), factors[a]);
      p.from_nf[j][a] = mod_floor(s.left_inv(j, keep[a]), m);
    }
  }
  // SNF factors already form a chain, so this does not re-normalize.
  p.module = FiniteModule(ring, factors);
  return p;
}

namespace detail {

inline bool is_chain(const std::vector<std::int64_t>& orders) {
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] <= 1) return false;
    if (i > 0 && orders[i] % orders[i - 1] != 0) return false;
  }
  return true;
}

inline std::vector<std::int64_t> normalized_factors(const FiniteRing& ring, const std::vector<std::int64_t>& orders) {
  for (auto d : orders) {
    require(d >= 1, "FiniteModule: cyclic orders must be positive");
    require(ring.modulus() % d == 0, "FiniteModule: cyclic order " + std::to_string(d) + " does not divide modulus " +
                                         std::to_string(ring.modulus()));
  }
  if (is_chain(orders)) return orders;
  std::vector<std::int64_t> sorted;
  for (auto d : orders)
    if (d > 1) sorted.push_back(d);
  std::sort(sorted.begin(), sorted.end());
  if (sorted.empty() || is_chain(sorted)) return sorted;
  IntMatrix diag(orders.size(), orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) diag(i, i) = orders[i];
  const SmithDecomposition s = smith_normal_form(diag, SmithNeeds{false, false, false, false});
  std::vector<std::int64_t> out;
  for (const auto& d : s.invariants())
    if (d != 1) out.push_back(d.convert_to<std::int64_t>());
  return out;
}

}  // namespace detail

// Normal form of a direct sum of cyclic modules Z/o_1 + ... + Z/o_n, keeping
// raw orders so elements can be moved between coordinates.
struct CyclicSum {
  std::vector<std::int64_t> raw_orders;
  Presentation presentation;

  const FiniteModule& module() const { return presentation.module; }
  Element to_nf(const Element& raw) const { return presentation.raw_to_nf(raw); }
  Element to_raw(const Element& y) const {
    Element x(raw_orders.size(), 0);
    for (std::size_t r = 0; r < x.size(); ++r) {
      const std::int64_t d = raw_orders[r];
      __int128 acc = 0;
      for (std::size_t i = 0; i < y.size(); ++i)
        if (presentation.from_nf[r][i] != 0 && y[i] != 0)
          acc = (acc + static_cast<__int128>(mod_floor(presentation.from_nf[r][i], d)) * mod_floor(y[i], d)) % d;
      x[r] = static_cast<std::int64_t>(acc);
    }
    return x;
  }
};

inline CyclicSum cyclic_sum(const FiniteRing& ring, const std::vector<std::int64_t>& raw_orders) {
  for (auto d : raw_orders) require(d >= 1 && ring.modulus() % d == 0, "cyclic_sum: order must divide modulus");
  CyclicSum cs{raw_orders, Presentation{FiniteModule(ring), {}, {}}};
  // A permutation of the raw orders that is already a divisibility chain
  // (after dropping trivial factors) needs no Smith normal form.
  std::vector<std::size_t> perm;
  for (std::size_t i = 0; i < raw_orders.size(); ++i)
    if (raw_orders[i] > 1) perm.push_back(i);
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return raw_orders[a] < raw_orders[b]; });
  std::vector<std::int64_t> sorted;
  for (auto i : perm) sorted.push_back(raw_orders[i]);
  if (sorted.empty() || detail::is_chain(sorted)) {
    const std::size_t n = raw_orders.size();
    cs.presentation.module = FiniteModule(ring, sorted);
    cs.presentation.to_nf.assign(sorted.size(), std::vector<std::int64_t>(n, 0));
    cs.presentation.from_nf.assign(n, std::vector<std::int64_t>(sorted.size(), 0));
    for (std::size_t k = 0; k < perm.size(); ++k) cs.presentation.to_nf[k][perm[k]] = cs.presentation.from_nf[perm[k]][k] = 1;
    return cs;
  }
  IntMatrix diag(raw_orders.size(), raw_orders.size());
  for (std::size_t i = 0; i < raw_orders.size(); ++i) diag(i, i) = raw_orders[i];
  cs.presentation = present(ring, raw_orders.size(), diag);
  return cs;
}

// ---------------------------------------------------------------------------
// Kernels, images, cokernels

struct SubmoduleResult {
  FiniteModule module;
  ModuleMap inclusion;
};

struct QuotientResult {
  FiniteModule module;
  ModuleMap projection;
};

namespace detail {

inline IntMatrix diag_of(const FiniteModule& m) {
  IntMatrix d(m.rank(), m.rank());
  for (std::size_t i = 0; i < m.rank(); ++i) d(i, i) = m.factors()[i];
  return d;
}

inline IntMatrix to_intmatrix(const SmallMatrix& a, std::size_t rows, std::size_t cols) {
  IntMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = a[i][j];
  return out;
}

}  // namespace detail

namespace detail {

// Rank of a matrix over F_p with entries reduced mod p.
inline std::size_t field_rank(const SmallMatrix& a, std::size_t rows, std::size_t cols, std::int64_t p) {
  std::vector<std::vector<std::int64_t>> m(rows, std::vector<std::int64_t>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m[i][j] = mod_floor(a[i][j], p);
  std::size_t rank = 0;
  for (std::size_t j = 0; j < cols && rank < rows; ++j) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][j] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    std::int64_t inv = 1;
    for (std::int64_t e = p - 2, b = m[rank][j]; e > 0; e >>= 1, b = b * b % p)
      if (e & 1) inv = inv * b % p;
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (m[i][j] == 0) continue;
      const std::int64_t q = m[i][j] * inv % p;
      for (std::size_t k = j; k < cols; ++k) m[i][k] = mod_floor(m[i][k] - q * m[rank][k], p);
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

// Submodule of m generated by the given elements, with its inclusion.
inline SubmoduleResult generated_submodule(const FiniteModule& m, const std::vector<Element>& gens) {
  const std::size_t k = m.rank();
  const std::size_t s = gens.size();
  if (s == 0 || k == 0) {
    const FiniteModule z = FiniteModule::zero(m.ring());
    return {z, ModuleMap::zero(z, m)};
  }
  IntMatrix x(k, s);
  for (std::size_t c = 0; c < s; ++c) {
    const Element g = m.reduce(gens[c]);
    for (std::size_t r = 0; r < k; ++r) x(r, c) = g[r];
  }
  // Relations among the generators: {c : x c in diag(d) Z^k}.
  const IntMatrix ker = integer_kernel(IntMatrix::hcat(x, detail::diag_of(m)));
  const IntMatrix rel = ker.block(0, 0, s, ker.cols());
  const Presentation p = present(m.ring(), s, rel);
  std::vector<Element> images;
  for (std::size_t a = 0; a < p.module.rank(); ++a) {
    Element img(k, 0);
    for (std::size_t r = 0; r < k; ++r) {
      BigInt acc = 0;
      for (std::size_t c = 0; c < s; ++c) acc += x(r, c) * p.from_nf[c][a];
      img[r] = mod_floor(acc, m.factors()[r]);
    }
    images.push_back(img);
  }
  return {p.module, ModuleMap::from_images(p.module, m, images)};
}

// Order of the submodule generated by gens.
inline BigInt submodule_order(const FiniteModule& m, const std::vector<Element>& gens) {
  if (m.ring().is_field()) {
    SmallMatrix cols(m.rank(), std::vector<std::int64_t>(gens.size()));
    for (std::size_t c = 0; c < gens.size(); ++c)
      for (std::size_t r = 0; r < m.rank(); ++r) cols[r][c] = gens[c][r];
    BigInt order = 1;
    for (std::size_t i = detail::field_rank(cols, m.rank(), gens.size(), m.modulus()); i > 0; --i) order *= m.modulus();
    return order;
  }
  return generated_submodule(m, gens).module.order();
}

inline SubmoduleResult kernel(const ModuleMap& f) {
  const FiniteModule& src = f.source();
  const FiniteModule& tgt = f.target();
  const std::size_t k = src.rank();
  if (k == 0) return {src, ModuleMap::identity(src)};
  const IntMatrix a = detail::to_intmatrix(f.matrix(), tgt.rank(), k);
  const IntMatrix ker = integer_kernel(IntMatrix::hcat(a, detail::diag_of(tgt)));
  std::vector<Element> gens;
  for (std::size_t c = 0; c < ker.cols(); ++c) {
    Element g(k);
    for (std::size_t r = 0; r < k; ++r) g[r] = mod_floor(ker(r, c), src.factors()[r]);
    gens.push_back(g);
  }
  return generated_submodule(src, gens);
}

inline SubmoduleResult image(const ModuleMap& f) {
  std::vector<Element> gens;
  for (std::size_t j = 0; j < f.source().rank(); ++j) gens.push_back(f.image_of_generator(j));
  return generated_submodule(f.target(), gens);
}

inline QuotientResult cokernel(const ModuleMap& f) {
  const FiniteModule& tgt = f.target();
  const std::size_t l = tgt.rank();
  const IntMatrix a = detail::to_intmatrix(f.matrix(), l, f.source().rank());
  const Presentation p = present(tgt.ring(), l, IntMatrix::hcat(a, detail::diag_of(tgt)));
  return {p.module, ModuleMap(tgt, p.module, p.to_nf)};
}

// Quotient of m by the submodule generated by gens.
inline QuotientResult quotient(const FiniteModule& m, const std::vector<Element>& gens) {
  const SubmoduleResult sub = generated_submodule(m, gens);
  return cokernel(sub.inclusion);
}


// Over a field both questions are rank conditions.
inline bool is_injective(const ModuleMap& f) {
  if (f.source().ring().is_field())
    return detail::field_rank(f.matrix(), f.target().rank(), f.source().rank(), f.source().modulus()) == f.source().rank();
  return kernel(f).module.is_zero();
}
inline bool is_surjective(const ModuleMap& f) {
  if (f.source().ring().is_field())
    return detail::field_rank(f.matrix(), f.target().rank(), f.source().rank(), f.source().modulus()) == f.target().rank();
  return cokernel(f).module.is_zero();
}
inline bool is_isomorphism(const ModuleMap& f) { return is_injective(f) && is_surjective(f); }

// ---------------------------------------------------------------------------
// Direct sums

struct DirectSum {
  FiniteModule module;
  std::vector<ModuleMap> inclusions;   // summand a -> sum
  std::vector<ModuleMap> projections;  // sum -> summand a
};

inline DirectSum direct_sum(const FiniteRing& ring, const std::vector<FiniteModule>& summands) {
  std::vector<std::int64_t> raw;
  std::vector<std::size_t> offset;
  for (const auto& s : summands) {
    require(s.ring() == ring, "direct_sum: ring mismatch");
    offset.push_back(raw.size());
    raw.insert(raw.end(), s.factors().begin(), s.factors().end());
  }
  const CyclicSum cs = cyclic_sum(ring, raw);
  DirectSum out{cs.module(), {}, {}};
  const Presentation& pr = cs.presentation;
  const auto& nf = out.module.factors();
  // Images of raw unit vectors are columns of to_nf; raw lifts of normal
  // form generators are columns of from_nf.
  for (std::size_t a = 0; a < summands.size(); ++a) {
    const std::size_t len = summands[a].rank();
    SmallMatrix inc(nf.size(), std::vector<std::int64_t>(len));
    for (std::size_t i = 0; i < nf.size(); ++i)
      for (std::size_t j = 0; j < len; ++j) inc[i][j] = mod_floor(pr.to_nf[i][offset[a] + j], nf[i]);
    out.inclusions.emplace_back(summands[a], out.module, std::move(inc));
    SmallMatrix proj(len, std::vector<std::int64_t>(nf.size()));
    for (std::size_t j = 0; j < len; ++j)
      for (std::size_t i = 0; i < nf.size(); ++i) proj[j][i] = mod_floor(pr.from_nf[offset[a] + j][i], raw[offset[a] + j]);
    out.projections.emplace_back(out.module, summands[a], std::move(proj));
  }
  return out;
}

// Block-diagonal map between direct sums.
inline ModuleMap direct_sum_map(const DirectSum& source, const DirectSum& target, const std::vector<ModuleMap>& parts) {
  require(parts.size() == source.inclusions.size() && parts.size() == target.inclusions.size(),
          "direct_sum_map: arity mismatch");
  std::vector<Element> imgs;
  for (std::size_t i = 0; i < source.module.rank(); ++i) {
    Element acc = target.module.zero_element();
    for (std::size_t a = 0; a < parts.size(); ++a) {
      const Element xa = source.projections[a].apply(source.module.generator(i));
      acc = target.module.add(acc, target.inclusions[a].apply(parts[a].apply(xa)));
    }
    imgs.push_back(acc);
  }
  return ModuleMap::from_images(source.module, target.module, imgs);
}

// ---------------------------------------------------------------------------
// Hom and tensor

// Hom(source, target) as a module, with the translation between its elements
// and explicit module maps. Raw generator (i, j) sends source generator j to
// (e_i / g_ij) times target generator i, where g_ij = gcd(d_j, e_i).
class HomSpace {
 public:
  HomSpace(FiniteModule source, FiniteModule target)
      : source_(std::move(source)), target_(std::move(target)), sum_(make_sum()) {}

  const FiniteModule& module() const { return sum_.module(); }
  const FiniteModule& source() const { return source_; }
  const FiniteModule& target() const { return target_; }

  ModuleMap to_map(const Element& h) const {
    const Element raw = sum_.to_raw(h);
    SmallMatrix a(target_.rank(), std::vector<std::int64_t>(source_.rank(), 0));
    for (std::size_t i = 0; i < target_.rank(); ++i)
      for (std::size_t j = 0; j < source_.rank(); ++j) {
        const std::int64_t e = target_.factors()[i];
        const std::int64_t g = std::gcd(source_.factors()[j], e);
        a[i][j] = mod_floor(raw[i * source_.rank() + j] * (e / g), e);
      }
    return ModuleMap(source_, target_, std::move(a));
  }

  Element from_map(const ModuleMap& f) const {
    require(f.source() == source_ && f.target() == target_, "HomSpace::from_map: shape mismatch");
    Element raw(target_.rank() * source_.rank(), 0);
    for (std::size_t i = 0; i < target_.rank(); ++i)
      for (std::size_t j = 0; j < source_.rank(); ++j) {
        const std::int64_t e = target_.factors()[i];
        const std::int64_t g = std::gcd(source_.factors()[j], e);
        raw[i * source_.rank() + j] = mod_floor(f.matrix()[i][j] / (e / g), g);
      }
    return sum_.to_nf(raw);
  }

 private:
  CyclicSum make_sum() const {
    require(source_.ring() == target_.ring(), "hom_module: ring mismatch");
    std::vector<std::int64_t> orders;
    for (std::size_t i = 0; i < target_.rank(); ++i)
      for (std::size_t j = 0; j < source_.rank(); ++j) orders.push_back(std::gcd(source_.factors()[j], target_.factors()[i]));
    return cyclic_sum(source_.ring(), orders);
  }

  FiniteModule source_;
  FiniteModule target_;
  CyclicSum sum_;
};

inline FiniteModule hom_module(const FiniteModule& m, const FiniteModule& n) { return HomSpace(m, n).module(); }

// Tensor product with its universal bilinear map. Raw generator (i, j) is
// gen_i(left) (x) gen_j(right) of order gcd(d_i, e_j).
class TensorProduct {
 public:
  TensorProduct(FiniteModule left, FiniteModule right)
      : left_(std::move(left)), right_(std::move(right)), sum_(make_sum()) {}

  const FiniteModule& module() const { return sum_.module(); }
  const FiniteModule& left() const { return left_; }
  const FiniteModule& right() const { return right_; }

  Element tensor(const Element& x, const Element& y) const {
    Element raw(left_.rank() * right_.rank(), 0);
    for (std::size_t i = 0; i < left_.rank(); ++i)
      for (std::size_t j = 0; j < right_.rank(); ++j) {
        const std::int64_t g = std::gcd(left_.factors()[i], right_.factors()[j]);
        raw[i * right_.rank() + j] = mod_floor(mod_floor(x[i], g) * mod_floor(y[j], g), g);
      }
    return sum_.to_nf(raw);
  }
  // Raw coordinates (i, j) of a tensor element.
  Element coordinates(const Element& t) const { return sum_.to_raw(t); }

 private:
  CyclicSum make_sum() const {
    require(left_.ring() == right_.ring(), "tensor_module: ring mismatch");
    std::vector<std::int64_t> orders;
    for (auto d : left_.factors())
      for (auto e : right_.factors()) orders.push_back(std::gcd(d, e));
    return cyclic_sum(left_.ring(), orders);
  }

  FiniteModule left_;
  FiniteModule right_;
  CyclicSum sum_;
};

inline FiniteModule tensor_module(const FiniteModule& m, const FiniteModule& n) { return TensorProduct(m, n).module(); }

// ---------------------------------------------------------------------------
// Pontryagin duality. The dual of M has the same invariant factors; its j-th
// generator is the character sending generator j of M to m / d_j in Z/m and
// the others to 0.

inline FiniteModule pontryagin_dual(const FiniteModule& m) { return m; }

inline std::int64_t character_value(const FiniteModule& m, const Element& chi, const Element& x) {
  const std::int64_t mod = m.modulus();
  std::int64_t acc = 0;
  for (std::size_t j = 0; j < m.rank(); ++j) acc = mod_floor(acc + chi[j] * x[j] % mod * (mod / m.factors()[j]), mod);
  return acc;
}

// f : M -> N  gives  f^ : N^ -> M^,  chi |-> chi o f.
inline ModuleMap dual_map(const ModuleMap& f) {
  const FiniteModule& src = f.source();
  const FiniteModule& tgt = f.target();
  SmallMatrix b(src.rank(), std::vector<std::int64_t>(tgt.rank(), 0));
  for (std::size_t i = 0; i < tgt.rank(); ++i)
    for (std::size_t j = 0; j < src.rank(); ++j) {
      const std::int64_t d = src.factors()[j];
      const std::int64_t e = tgt.factors()[i];
      b[j][i] = mod_floor(f.matrix()[i][j] * d / e, d);
    }
  return ModuleMap(pontryagin_dual(tgt), pontryagin_dual(src), std::move(b));
}

// Evaluation M -> M^^, x |-> (chi |-> chi(x)), computed by evaluating against
// the dual basis.
inline ModuleMap double_dual_iso(const FiniteModule& m) {
  const FiniteModule dual = pontryagin_dual(m);
  std::vector<Element> imgs;
  for (std::size_t j = 0; j < m.rank(); ++j) {
    const Element x = m.generator(j);
    // ev_x as a character of the dual: coordinates c_i with c_i * (mod / d_i) = chi_i(x).
    Element ev(dual.rank());
    for (std::size_t i = 0; i < dual.rank(); ++i) {
      const std::int64_t v = character_value(m, dual.generator(i), x);
      ev[i] = v / (m.modulus() / dual.factors()[i]);
    }
    imgs.push_back(ev);
  }
  return ModuleMap::from_images(m, pontryagin_dual(dual), imgs);
}

}  // namespace proflq
