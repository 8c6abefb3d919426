#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "msrd/gf.hpp"
#include "msrd/linalg.hpp"

namespace msrd {

struct BlockShape {
  u32 rows = 0, cols = 0;
  friend bool operator==(const BlockShape&, const BlockShape&) = default;
};

/// Ordered list of rank-block shapes (rows_i x cols_i) defining the ambient
/// space.  Blocks are kept in construction order; sorting happens only when
/// a bound is evaluated (block permutation is an isometry).
class BlockProfile {
 public:
  BlockProfile() = default;
  explicit BlockProfile(std::vector<BlockShape> blocks) : blocks_(std::move(blocks)) {
    for (const BlockShape& b : blocks_)
      if (b.cols < 1 || b.rows < b.cols)
        throw Error("block shape must satisfy rows >= cols >= 1");
  }

  const std::vector<BlockShape>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  bool empty() const { return blocks_.empty(); }

  u64 total_cols() const {
    u64 n = 0;
    for (const BlockShape& b : blocks_) n += b.cols;
    return n;
  }
  u64 total_area() const {
    u64 n = 0;
    for (const BlockShape& b : blocks_) n += static_cast<u64>(b.rows) * b.cols;
    return n;
  }

  /// Sorted by non-increasing rows, ties by non-increasing cols.
  BlockProfile canonical() const {
    BlockProfile c = *this;
    std::sort(c.blocks_.begin(), c.blocks_.end(), [](const BlockShape& x, const BlockShape& y) {
      return x.rows != y.rows ? x.rows > y.rows : x.cols > y.cols;
    });
    return c;
  }
  bool is_canonical() const { return blocks_ == canonical().blocks_; }

  BlockProfile concat(const BlockProfile& other) const {
    BlockProfile out = *this;
    out.blocks_.insert(out.blocks_.end(), other.blocks_.begin(), other.blocks_.end());
    return out;
  }

  friend bool operator==(const BlockProfile&, const BlockProfile&) = default;

 private:
  std::vector<BlockShape> blocks_;
};

/// One point of the ambient space: a matrix over GF(q) per block.
struct MatrixTuple {
  std::vector<FqMatrix> blocks;

  bool is_zero() const {
    for (const FqMatrix& b : blocks)
      if (!b.is_zero()) return false;
    return true;
  }
  friend bool operator==(const MatrixTuple&, const MatrixTuple&) = default;
};

inline bool shapes_match(const MatrixTuple& t, const BlockProfile& p) {
  if (t.blocks.size() != p.size()) return false;
  for (std::size_t i = 0; i < t.blocks.size(); ++i)
    if (t.blocks[i].rows != p.blocks()[i].rows || t.blocks[i].cols != p.blocks()[i].cols)
      return false;
  return true;
}

inline MatrixTuple zero_tuple(const BlockProfile& p) {
  MatrixTuple t;
  t.blocks.reserve(p.size());
  for (const BlockShape& b : p.blocks()) t.blocks.emplace_back(b.rows, b.cols);
  return t;
}

inline MatrixTuple tuple_add(const FieldTower& f, const MatrixTuple& x, const MatrixTuple& y) {
  if (x.blocks.size() != y.blocks.size()) throw Error("tuple profile mismatch");
  MatrixTuple out;
  out.blocks.reserve(x.blocks.size());
  for (std::size_t i = 0; i < x.blocks.size(); ++i)
    out.blocks.push_back(fq_add(f, x.blocks[i], y.blocks[i]));
  return out;
}

inline void tuple_add_inplace(const FieldTower& f, MatrixTuple& x, const MatrixTuple& y) {
  if (x.blocks.size() != y.blocks.size()) throw Error("tuple profile mismatch");
  for (std::size_t i = 0; i < x.blocks.size(); ++i) {
    FqMatrix& xb = x.blocks[i];
    const FqMatrix& yb = y.blocks[i];
    if (xb.rows != yb.rows || xb.cols != yb.cols) throw Error("tuple profile mismatch");
    for (std::size_t k = 0; k < xb.a.size(); ++k) xb.a[k] = f.sub_add(xb.a[k], yb.a[k]);
  }
}

inline MatrixTuple tuple_sub(const FieldTower& f, const MatrixTuple& x, const MatrixTuple& y) {
  if (x.blocks.size() != y.blocks.size()) throw Error("tuple profile mismatch");
  MatrixTuple out;
  out.blocks.reserve(x.blocks.size());
  for (std::size_t i = 0; i < x.blocks.size(); ++i)
    out.blocks.push_back(fq_sub(f, x.blocks[i], y.blocks[i]));
  return out;
}

inline MatrixTuple tuple_scale(const FieldTower& f, const MatrixTuple& x, u32 c) {
  MatrixTuple out;
  out.blocks.reserve(x.blocks.size());
  for (const FqMatrix& b : x.blocks) out.blocks.push_back(fq_scale(f, b, c));
  return out;
}

/// Flatten a tuple into one row vector (entries block by block, row-major);
/// used for independence checks on sets of tuples.
inline std::vector<u32> tuple_flatten(const MatrixTuple& t) {
  std::vector<u32> out;
  for (const FqMatrix& b : t.blocks) out.insert(out.end(), b.a.begin(), b.a.end());
  return out;
}

/// Sum of blockwise ranks over GF(q).
inline u32 sumrank_weight(const FieldTower& f, const MatrixTuple& t) {
  u32 w = 0;
  for (const FqMatrix& b : t.blocks) w += fq_rank(f, b);
  return w;
}

inline u32 sumrank_distance(const FieldTower& f, const MatrixTuple& x, const MatrixTuple& y) {
  for (std::size_t i = 0; i < std::min(x.blocks.size(), y.blocks.size()); ++i)
    if (x.blocks[i].rows != y.blocks[i].rows || x.blocks[i].cols != y.blocks[i].cols)
      throw Error("tuple profile mismatch");
  return sumrank_weight(f, tuple_sub(f, x, y));
}

/// The split (n_1, ..., n_l) of a vector over GF(q^m) into blocks.
struct LengthPartition {
  std::vector<u32> parts;

  LengthPartition() = default;
  explicit LengthPartition(std::vector<u32> p) : parts(std::move(p)) {}

  u64 total() const { return std::accumulate(parts.begin(), parts.end(), u64{0}); }
  friend bool operator==(const LengthPartition&, const LengthPartition&) = default;
};

/// Ambient profile of the image of the blockwise coordinate map: one
/// m x n_i block per part.
inline BlockProfile profile_from_partition(const FieldTower& f, const LengthPartition& part) {
  std::vector<BlockShape> blocks;
  blocks.reserve(part.parts.size());
  for (u32 ni : part.parts) {
    if (ni < 1 || ni > f.ext_degree()) throw Error("partition entry must satisfy 1 <= n_i <= m");
    blocks.push_back({f.ext_degree(), ni});
  }
  return BlockProfile(std::move(blocks));
}

/// Blockwise coordinate map: block i is the m x n_i matrix whose column j
/// holds the basis coordinates of the corresponding vector entry.
inline MatrixTuple matrix_repr(const FieldTower& f, const std::vector<u64>& codes,
                               const LengthPartition& part) {
  if (codes.size() != part.total()) throw Error("vector length does not match partition");
  MatrixTuple out;
  out.blocks.reserve(part.parts.size());
  std::size_t offset = 0;
  for (u32 ni : part.parts) {
    FqMatrix block(f.ext_degree(), ni);
    for (u32 j = 0; j < ni; ++j) {
      const std::vector<u32> coords = f.gamma_coords(codes[offset + j]);
      for (u32 i = 0; i < f.ext_degree(); ++i) block.at(i, j) = coords[i];
    }
    offset += ni;
    out.blocks.push_back(std::move(block));
  }
  return out;
}

inline MatrixTuple matrix_repr(const FieldTower& f, const std::vector<FieldElement>& v,
                               const LengthPartition& part) {
  std::vector<u64> codes;
  codes.reserve(v.size());
  for (const FieldElement& x : v) {
    if (!x.tower()->same_structure(f)) throw Error("field tower mismatch");
    codes.push_back(x.code());
  }
  return matrix_repr(f, codes, part);
}

/// The unique split d = n_1 + ... + n_(j-1) + delta + 1 with
/// 0 <= delta <= n_j - 1.  `block_index` is 1-based.
struct BoundExpansion {
  u32 block_index = 0;
  u32 delta = 0;
};

inline BoundExpansion expand_distance(const BlockProfile& profile, u64 d) {
  if (!profile.is_canonical()) throw Error("profile must be canonical");
  if (d < 1 || d > profile.total_cols()) throw Error("distance out of range");
  u64 prefix = 0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const u32 ni = profile.blocks()[i].cols;
    if (d <= prefix + ni)
      return {static_cast<u32>(i + 1), static_cast<u32>(d - prefix - 1)};
    prefix += ni;
  }
  throw Error("distance out of range");
}

/// Largest GF(q)-dimension of a code on this profile with minimum sum-rank
/// distance d.  The profile is canonicalized internally.
inline u64 singleton_bound(const BlockProfile& profile, u64 d) {
  const BlockProfile c = profile.canonical();
  const BoundExpansion ex = expand_distance(c, d);
  u64 bound = 0;
  for (std::size_t i = ex.block_index - 1; i < c.size(); ++i)
    bound += static_cast<u64>(c.blocks()[i].rows) * c.blocks()[i].cols;
  bound -= static_cast<u64>(c.blocks()[ex.block_index - 1].rows) * ex.delta;
  return bound;
}

}  // namespace msrd
