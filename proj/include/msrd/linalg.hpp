#pragma once

#include <cstddef>
#include <vector>

#include "msrd/gf.hpp"

namespace msrd {

/// Dense row-major matrix over GF(q); entries are subfield codes.
struct FqMatrix {
  u32 rows = 0, cols = 0;
  std::vector<u32> a;

  FqMatrix() = default;
  FqMatrix(u32 r, u32 c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

  u32& at(u32 i, u32 j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  u32 at(u32 i, u32 j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  bool is_zero() const {
    for (u32 v : a)
      if (v != 0) return false;
    return true;
  }
  friend bool operator==(const FqMatrix&, const FqMatrix&) = default;
};

inline FqMatrix fq_transpose(const FqMatrix& m) {
  FqMatrix t(m.cols, m.rows);
  for (u32 i = 0; i < m.rows; ++i)
    for (u32 j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  return t;
}

inline FqMatrix fq_add(const FieldTower& f, const FqMatrix& x, const FqMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw Error("matrix shape mismatch");
  FqMatrix out(x.rows, x.cols);
  for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = f.sub_add(x.a[i], y.a[i]);
  return out;
}

inline FqMatrix fq_sub(const FieldTower& f, const FqMatrix& x, const FqMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw Error("matrix shape mismatch");
  FqMatrix out(x.rows, x.cols);
  for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = f.sub_sub(x.a[i], y.a[i]);
  return out;
}

inline FqMatrix fq_scale(const FieldTower& f, const FqMatrix& x, u32 c) {
  FqMatrix out(x.rows, x.cols);
  for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = f.sub_mul(x.a[i], c);
  return out;
}

inline FqMatrix fq_matmul(const FieldTower& f, const FqMatrix& x, const FqMatrix& y) {
  if (x.cols != y.rows) throw Error("matrix shape mismatch");
  FqMatrix out(x.rows, y.cols);
  for (u32 i = 0; i < x.rows; ++i)
    for (u32 k = 0; k < x.cols; ++k) {
      const u32 v = x.at(i, k);
      if (v == 0) continue;
      for (u32 j = 0; j < y.cols; ++j)
        out.at(i, j) = f.sub_add(out.at(i, j), f.sub_mul(v, y.at(k, j)));
    }
  return out;
}

/// Rank by plain Gaussian elimination.
inline u32 fq_rank(const FieldTower& f, FqMatrix m) {
  u32 rank = 0;
  for (u32 col = 0; col < m.cols && rank < m.rows; ++col) {
    u32 pivot = rank;
    while (pivot < m.rows && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows) continue;
    if (pivot != rank)
      for (u32 j = col; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
    const u32 scale = f.sub_inv(m.at(rank, col));
    for (u32 j = col; j < m.cols; ++j) m.at(rank, j) = f.sub_mul(m.at(rank, j), scale);
    for (u32 r = rank + 1; r < m.rows; ++r) {
      const u32 factor = m.at(r, col);
      if (factor == 0) continue;
      for (u32 j = col; j < m.cols; ++j)
        m.at(r, j) = f.sub_sub(m.at(r, j), f.sub_mul(factor, m.at(rank, j)));
    }
    ++rank;
  }
  return rank;
}

/// Reduced row echelon form with zero rows dropped; canonical per row space.
inline FqMatrix fq_rref(const FieldTower& f, FqMatrix m) {
  u32 rank = 0;
  for (u32 col = 0; col < m.cols && rank < m.rows; ++col) {
    u32 pivot = rank;
    while (pivot < m.rows && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows) continue;
    if (pivot != rank)
      for (u32 j = 0; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
    const u32 scale = f.sub_inv(m.at(rank, col));
    for (u32 j = 0; j < m.cols; ++j) m.at(rank, j) = f.sub_mul(m.at(rank, j), scale);
    for (u32 r = 0; r < m.rows; ++r) {
      if (r == rank) continue;
      const u32 factor = m.at(r, col);
      if (factor == 0) continue;
      for (u32 j = 0; j < m.cols; ++j)
        m.at(r, j) = f.sub_sub(m.at(r, j), f.sub_mul(factor, m.at(rank, j)));
    }
    ++rank;
  }
  m.a.resize(static_cast<std::size_t>(rank) * m.cols);
  m.rows = rank;
  return m;
}

/// Dense row-major matrix over GF(q^m); entries are extension-field codes.
struct FqmMat {
  u32 rows = 0, cols = 0;
  std::vector<u64> a;

  FqmMat() = default;
  FqmMat(u32 r, u32 c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

  u64& at(u32 i, u32 j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  u64 at(u32 i, u32 j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  std::vector<u64> row(u32 i) const {
    return {a.begin() + static_cast<std::size_t>(i) * cols,
            a.begin() + static_cast<std::size_t>(i + 1) * cols};
  }
  friend bool operator==(const FqmMat&, const FqmMat&) = default;
};

inline FqmMat fqm_rref(const FieldTower& f, FqmMat m) {
  u32 rank = 0;
  for (u32 col = 0; col < m.cols && rank < m.rows; ++col) {
    u32 pivot = rank;
    while (pivot < m.rows && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows) continue;
    if (pivot != rank)
      for (u32 j = 0; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
    const u64 scale = f.inv(m.at(rank, col));
    for (u32 j = 0; j < m.cols; ++j) m.at(rank, j) = f.mul(m.at(rank, j), scale);
    for (u32 r = 0; r < m.rows; ++r) {
      if (r == rank) continue;
      const u64 factor = m.at(r, col);
      if (factor == 0) continue;
      for (u32 j = 0; j < m.cols; ++j)
        m.at(r, j) = f.sub(m.at(r, j), f.mul(factor, m.at(rank, j)));
    }
    ++rank;
  }
  m.a.resize(static_cast<std::size_t>(rank) * m.cols);
  m.rows = rank;
  return m;
}

inline u32 fqm_rank(const FieldTower& f, FqmMat m) { return fqm_rref(f, std::move(m)).rows; }

/// Basis of the right null space {x : M x^T = 0}, one vector per row,
/// ordered by ascending free column.
inline FqmMat fqm_nullspace(const FieldTower& f, FqmMat m) {
  const u32 n = m.cols;
  const FqmMat r = fqm_rref(f, std::move(m));
  std::vector<u32> pivot_col(r.rows);
  std::vector<bool> is_pivot(n, false);
  for (u32 i = 0; i < r.rows; ++i) {
    u32 j = 0;
    while (j < n && r.at(i, j) == 0) ++j;
    pivot_col[i] = j;
    is_pivot[j] = true;
  }
  FqmMat null(n - r.rows, n);
  u32 out = 0;
  for (u32 free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    null.at(out, free) = 1;
    for (u32 i = 0; i < r.rows; ++i) null.at(out, pivot_col[i]) = f.neg(r.at(i, free));
    ++out;
  }
  return null;
}

inline bool fqm_same_rowspace(const FieldTower& f, const FqmMat& x, const FqmMat& y) {
  if (x.cols != y.cols) return false;
  return fqm_rref(f, x) == fqm_rref(f, y);
}

}  // namespace msrd
