#pragma once

// Integer matrices with arbitrary-precision entries, Smith normal form and
// integer kernels. Everything homological in finring reduces to these.

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "proflq/error.hpp"

namespace proflq {

using BigInt = boost::multiprecision::cpp_int;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  template <typename T>
  static IntMatrix from_rows(const std::vector<std::vector<T>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      require(rows[i].size() == c, "IntMatrix: ragged rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = BigInt(rows[i][j]);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    require(a.cols_ == b.rows_, "IntMatrix: dimension mismatch in product");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const BigInt& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  // Horizontal concatenation [a | b].
  static IntMatrix hcat(const IntMatrix& a, const IntMatrix& b) {
    require(a.rows_ == b.rows_, "IntMatrix: row mismatch in hcat");
    IntMatrix c(a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < a.cols_; ++j) c(i, j) = a(i, j);
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, a.cols_ + j) = b(i, j);
    }
    return c;
  }

  IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    IntMatrix c(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) c(i, j) = (*this)(r0 + i, c0 + j);
    return c;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[dst] += q * row[src]
  void add_row(std::size_t dst, std::size_t src, const BigInt& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += q * (*this)(src, j);
  }
  // col[dst] += q * col[src]
  void add_col(std::size_t dst, std::size_t src, const BigInt& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += q * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const BigInt& x) { return x == 0; });
  }

  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

// left * input * right == diagonal. left_inv and right_inv are the inverses of
// the unimodular factors, tracked alongside so callers can move generators.
struct SmithDecomposition {
  IntMatrix left;
  IntMatrix left_inv;
  IntMatrix diagonal;
  IntMatrix right;
  IntMatrix right_inv;
  std::size_t rank = 0;

  // Diagonal entries (min(rows, cols) of them), non-negative, forming a
  // divisibility chain with the zeros last.
  std::vector<BigInt> invariants() const {
    std::vector<BigInt> d;
    for (std::size_t i = 0; i < std::min(diagonal.rows(), diagonal.cols()); ++i) d.push_back(diagonal(i, i));
    return d;
  }
};

namespace detail {

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;  // truncates toward zero
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

struct SmithWork {
  IntMatrix a, u, u_inv, v, v_inv;
  bool want_u, want_u_inv, want_v, want_v_inv;

  void row_add(std::size_t dst, std::size_t src, const BigInt& q) {
    a.add_row(dst, src, q);
    if (want_u) u.add_row(dst, src, q);
    if (want_u_inv) u_inv.add_col(src, dst, -q);
  }
  void row_swap(std::size_t x, std::size_t y) {
    a.swap_rows(x, y);
    if (want_u) u.swap_rows(x, y);
    if (want_u_inv) u_inv.swap_cols(x, y);
  }
  void row_negate(std::size_t r) {
    a.negate_row(r);
    if (want_u) u.negate_row(r);
    if (want_u_inv)
      for (std::size_t i = 0; i < u_inv.rows(); ++i) u_inv(i, r) = -u_inv(i, r);
  }
  void col_add(std::size_t dst, std::size_t src, const BigInt& q) {
    a.add_col(dst, src, q);
    if (want_v) v.add_col(dst, src, q);
    if (want_v_inv) v_inv.add_row(src, dst, -q);
  }
  void col_swap(std::size_t x, std::size_t y) {
    a.swap_cols(x, y);
    if (want_v) v.swap_cols(x, y);
    if (want_v_inv) v_inv.swap_rows(x, y);
  }
};

}  // namespace detail

// Which unimodular factors to track; the others come back empty.
struct SmithNeeds {
  bool left = true;
  bool left_inv = true;
  bool right = true;
  bool right_inv = true;
};

inline SmithDecomposition smith_normal_form(const IntMatrix& input, const SmithNeeds& needs = {}) {
  using detail::floor_div;
  const std::size_t r = input.rows();
  const std::size_t c = input.cols();
  auto id = [](bool want, std::size_t n) { return want ? IntMatrix::identity(n) : IntMatrix(); };
  detail::SmithWork w{input,       id(needs.left, r),  id(needs.left_inv, r), id(needs.right, c),
                      id(needs.right_inv, c), needs.left, needs.left_inv, needs.right, needs.right_inv};
  IntMatrix& a = w.a;
  std::size_t t = 0;
  for (; t < std::min(r, c); ++t) {
    // Pivot: smallest nonzero |entry| in the trailing block.
    bool found = false;
    std::size_t pi = t, pj = t;
    BigInt best;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < c; ++j) {
        if (a(i, j) == 0) continue;
        BigInt v = abs(a(i, j));
        if (!found || v < best) {
          found = true;
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (!found) break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);

    for (;;) {
      bool changed = false;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (a(i, t) == 0) continue;
        w.row_add(i, t, -floor_div(a(i, t), a(t, t)));
        if (a(i, t) != 0) {
          w.row_swap(t, i);
          changed = true;
        }
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (a(t, j) == 0) continue;
        w.col_add(j, t, -floor_div(a(t, j), a(t, t)));
        if (a(t, j) != 0) {
          w.col_swap(t, j);
          changed = true;
        }
      }
      if (changed) continue;
      // Row and column t are clear; enforce divisibility of the trailing block.
      bool fixed = false;
      for (std::size_t i = t + 1; i < r && !fixed; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (a(i, j) % a(t, t) != 0) {
            w.row_add(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (a(t, t) < 0) w.row_negate(t);
  }
  return SmithDecomposition{std::move(w.u), std::move(w.u_inv), std::move(w.a), std::move(w.v), std::move(w.v_inv),
                            t};
}

// Columns form a Z-basis of {x : a x = 0}.
inline IntMatrix integer_kernel(const IntMatrix& a) {
  const SmithDecomposition s = smith_normal_form(a, SmithNeeds{false, false, true, false});
  const std::size_t n = a.cols();
  return s.right.block(0, s.rank, n, n - s.rank);
}

}  // namespace proflq
