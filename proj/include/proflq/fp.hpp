#pragma once

// Dense linear algebra over F_p for small primes: rank, reduced row echelon
// form, kernels, solving, and an incremental subspace. Entries are uint8;
// p = 2 ranks go through packed 64-bit rows.

#include <cstdint>
#include <cstring>
#include <optional>
#include <ostream>
#include <vector>

#include "proflq/error.hpp"
#include "proflq/finring.hpp"

namespace proflq {

using FpVector = std::vector<std::uint8_t>;

class PrimeField {
 public:
  explicit PrimeField(int p) : p_(p) {
    require(p >= 2 && p < 256 && is_prime(p), "PrimeField: p must be a prime below 256");
    inv_.assign(static_cast<std::size_t>(p), 0);
    for (int a = 1; a < p; ++a)
      for (int b = 1; b < p; ++b)
        if (a * b % p == 1) inv_[static_cast<std::size_t>(a)] = static_cast<std::uint8_t>(b);
  }
  int p() const { return p_; }
  std::uint8_t add(std::uint8_t a, std::uint8_t b) const { return static_cast<std::uint8_t>((a + b) % p_); }
  std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return static_cast<std::uint8_t>((a + p_ - b) % p_); }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const { return static_cast<std::uint8_t>(a * b % p_); }
  std::uint8_t neg(std::uint8_t a) const { return static_cast<std::uint8_t>((p_ - a) % p_); }
  std::uint8_t inv(std::uint8_t a) const {
    require(a != 0, "PrimeField: zero has no inverse");
    return inv_[a];
  }
  std::uint8_t from_int(std::int64_t a) const { return static_cast<std::uint8_t>(mod_floor(a, p_)); }
  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  int p_;
  std::vector<std::uint8_t> inv_;
};

class FpMatrix {
 public:
  FpMatrix() : p_(2) {}
  FpMatrix(int p, std::size_t rows, std::size_t cols) : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static FpMatrix identity(int p, std::size_t n) {
    FpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint8_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::uint8_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::uint8_t* row(std::size_t i) { return data_.data() + i * cols_; }
  const std::uint8_t* row(std::size_t i) const { return data_.data() + i * cols_; }

  FpVector row_vector(std::size_t i) const { return FpVector(row(i), row(i) + cols_); }
  FpVector col_vector(std::size_t j) const {
    FpVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void set_col(std::size_t j, const FpVector& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  FpVector apply(const FpVector& v) const {
    require(v.size() == cols_, "FpMatrix::apply: size mismatch");
    FpVector out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      unsigned acc = 0;
      const std::uint8_t* r = row(i);
      for (std::size_t j = 0; j < cols_; ++j) acc += static_cast<unsigned>(r[j]) * v[j];
      out[i] = static_cast<std::uint8_t>(acc % static_cast<unsigned>(p_));
    }
    return out;
  }

  friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
    require(a.cols_ == b.rows_ && a.p_ == b.p_, "FpMatrix product: shape or field mismatch");
    FpMatrix c(a.p_, a.rows_, b.cols_);
    std::vector<unsigned> acc(b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      std::fill(acc.begin(), acc.end(), 0u);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const unsigned x = a(i, k);
        if (x == 0) continue;
        const std::uint8_t* br = b.row(k);
        for (std::size_t j = 0; j < b.cols_; ++j) acc[j] += x * br[j];
      }
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = static_cast<std::uint8_t>(acc[j] % static_cast<unsigned>(a.p_));
    }
    return c;
  }

  bool is_zero() const {
    for (auto x : data_)
      if (x) return false;
    return true;
  }

  friend bool operator==(const FpMatrix& a, const FpMatrix& b) {
    return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend std::ostream& operator<<(std::ostream& os, const FpMatrix& m) {
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << '[';
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << static_cast<int>(m(i, j));
      os << "]\n";
    }
    return os;
  }

 private:
  int p_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> data_;
};

namespace detail {

inline std::size_t rank_f2(const FpMatrix& a) {
  const std::size_t words = (a.cols() + 63) / 64;
  std::vector<std::uint64_t> bits(a.rows() * words, 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const std::uint8_t* r = a.row(i);
    std::uint64_t* b = bits.data() + i * words;
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (r[j] & 1) b[j >> 6] |= std::uint64_t{1} << (j & 63);
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
    const std::size_t w = c >> 6;
    const std::uint64_t mask = std::uint64_t{1} << (c & 63);
    std::size_t piv = rank;
    while (piv < a.rows() && !(bits[piv * words + w] & mask)) ++piv;
    if (piv == a.rows()) continue;
    if (piv != rank)
      for (std::size_t k = w; k < words; ++k) std::swap(bits[piv * words + k], bits[rank * words + k]);
    const std::uint64_t* pr = bits.data() + rank * words;
    for (std::size_t i = rank + 1; i < a.rows(); ++i) {
      std::uint64_t* r = bits.data() + i * words;
      if (r[w] & mask)
        for (std::size_t k = w; k < words; ++k) r[k] ^= pr[k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

// Row-reduces in place to reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref_in_place(FpMatrix& a) {
  const PrimeField f(a.p());
  const unsigned p = static_cast<unsigned>(a.p());
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && a(piv, c) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
    const std::uint8_t inv = f.inv(a(r, c));
    if (inv != 1)
      for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = f.mul(a(r, j), inv);
    const std::uint8_t* pr = a.row(r);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      const unsigned m = p - a(i, c);
      std::uint8_t* ri = a.row(i);
      for (std::size_t j = c; j < a.cols(); ++j) ri[j] = static_cast<std::uint8_t>((ri[j] + m * pr[j]) % p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(const FpMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  if (a.p() == 2) return detail::rank_f2(a);
  FpMatrix b = a;
  return rref_in_place(b).size();
}

// Basis of the null space {x : a x = 0}.
inline std::vector<FpVector> kernel_basis(const FpMatrix& a) {
  FpMatrix b = a;
  const auto pivots = rref_in_place(b);
  const PrimeField f(a.p());
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<FpVector> out;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    FpVector x(a.cols(), 0);
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = f.neg(b(r, free));
    out.push_back(std::move(x));
  }
  return out;
}

// Some solution of a x = z, if one exists.
inline std::optional<FpVector> solve(const FpMatrix& a, const FpVector& z) {
  require(z.size() == a.rows(), "solve: right-hand side has the wrong length");
  FpMatrix aug(a.p(), a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::memcpy(aug.row(i), a.row(i), a.cols());
    aug(i, a.cols()) = z[i];
  }
  const auto pivots = rref_in_place(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  FpVector x(a.cols(), 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
  return x;
}

inline FpMatrix from_columns(int p, std::size_t rows, const std::vector<FpVector>& cols) {
  FpMatrix m(p, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
  return m;
}

inline FpMatrix from_rows(int p, std::size_t cols, const std::vector<FpVector>& rows) {
  FpMatrix m(p, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) std::memcpy(m.row(i), rows[i].data(), cols);
  return m;
}

// Growing subspace of F_p^n kept in echelon form.
class Subspace {
 public:
  Subspace(int p, std::size_t n) : field_(p), n_(n) {}

  int p() const { return field_.p(); }
  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<FpVector>& basis() const { return basis_; }

  FpVector reduce(FpVector v) const {
    const unsigned p = static_cast<unsigned>(field_.p());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const std::size_t c = pivots_[i];
      if (v[c] == 0) continue;
      const unsigned m = p - v[c];
      const FpVector& b = basis_[i];
      for (std::size_t j = c; j < n_; ++j) v[j] = static_cast<std::uint8_t>((v[j] + m * b[j]) % p);
    }
    return v;
  }

  bool contains(const FpVector& v) const {
    const FpVector r = reduce(v);
    for (auto x : r)
      if (x) return false;
    return true;
  }

  // Adds v; returns whether the dimension grew.
  bool add(const FpVector& v) {
    require(v.size() == n_, "Subspace::add: vector has the wrong length");
    FpVector r = reduce(v);
    std::size_t c = 0;
    while (c < n_ && r[c] == 0) ++c;
    if (c == n_) return false;
    const std::uint8_t inv = field_.inv(r[c]);
    for (std::size_t j = c; j < n_; ++j) r[j] = field_.mul(r[j], inv);
    basis_.push_back(std::move(r));
    pivots_.push_back(c);
    return true;
  }

 private:
  PrimeField field_;
  std::size_t n_;
  std::vector<FpVector> basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace proflq
