#pragma once

#include <algorithm>
#include <bit>
#include <map>
#include <string>
#include <vector>

#include "msrd/codes.hpp"
#include "msrd/msrd_gen.hpp"

namespace msrd {

// ---------------------------------------------------------------------------
// Lattice-based extension
// ---------------------------------------------------------------------------

/// A base code plus everything needed to extend it while keeping its
/// distance: per-step tuple sets B_(i,1..m), extension block shapes grouped
/// by breakpoints, and a coefficient-subspace basis per extension block.
struct LatticeSpec {
  FqLinearCode base;  ///< the unextended code
  u32 distance = 0;   ///< its oracle distance d (d = n+1 for the zero code)
  u32 t = 0;          ///< extension arity
  std::vector<std::vector<MatrixTuple>> step_tuples;  ///< [t][m] tuples on the base profile
  std::vector<u32> breakpoints;                       ///< cumulative block counts l_1 < ... < l_t
  std::vector<BlockShape> ext_blocks;                 ///< appended block shapes, in order
  std::vector<FqMatrix> coeff_bases;  ///< per block j: (rows*cols) x m basis of V_j over GF(q)
};

namespace detail {

/// Row count shared by the trailing run of base blocks, and the first index
/// (0-based) of that run.
inline std::pair<u32, std::size_t> trailing_row_run(const BlockProfile& profile) {
  const auto& blocks = profile.blocks();
  const u32 m = blocks.back().rows;
  std::size_t s = blocks.size();
  while (s > 0 && blocks[s - 1].rows == m) --s;
  return {m, s};
}

}  // namespace detail

/// The code obtained by adjoining the step tuples for the subset given by
/// `mask` (bit i = step i+1) to the base.  Distance drops by one per step
/// when the spec is admissible.
inline FqLinearCode lattice_subset_code(const LatticeSpec& spec, u32 mask) {
  std::vector<MatrixTuple> basis = spec.base.basis();
  for (u32 i = 0; i < spec.t; ++i)
    if (mask & (1u << i))
      basis.insert(basis.end(), spec.step_tuples[i].begin(), spec.step_tuples[i].end());
  return FqLinearCode(spec.base.tower(), spec.base.profile(), std::move(basis));
}

/// Checks every admissibility condition of the spec, including the oracle
/// verification that all 2^t subset codes lose exactly one unit of distance
/// per step.  Throws with the violated condition named.
inline void validate_lattice_spec(const LatticeSpec& spec, u64 guard = kDefaultCodewordGuard) {
  const FieldTower& f = *spec.base.tower();
  if (spec.base.profile().empty()) throw Error("base profile is empty");
  if (spec.t < 1) throw Error("extension arity must be positive");

  const auto [m, s] = detail::trailing_row_run(spec.base.profile());
  u64 lead_cols = 0;
  for (std::size_t i = 0; i < s; ++i) lead_cols += spec.base.profile().blocks()[i].cols;
  if (spec.distance < spec.t + lead_cols + 1)
    throw Error("distance too small for the extension arity");

  if (spec.step_tuples.size() != spec.t) throw Error("need one tuple set per step");
  for (const auto& step : spec.step_tuples) {
    if (step.size() != m) throw Error("each step needs m tuples");
    for (const MatrixTuple& tup : step)
      if (!shapes_match(tup, spec.base.profile()))
        throw Error("step tuple shape does not match the base profile");
  }

  const u64 area = spec.base.profile().total_area();
  if (static_cast<u64>(spec.t) * m + spec.base.dim() > area)
    throw Error("ambient space too small for the step tuples");
  {
    const u32 rows = static_cast<u32>(spec.base.dim() + static_cast<std::size_t>(spec.t) * m);
    FqMatrix flat(rows, static_cast<u32>(area));
    u32 r = 0;
    for (const MatrixTuple& tup : spec.base.basis()) {
      const std::vector<u32> row = tuple_flatten(tup);
      std::copy(row.begin(), row.end(), flat.a.begin() + static_cast<std::size_t>(r++) * area);
    }
    for (const auto& step : spec.step_tuples)
      for (const MatrixTuple& tup : step) {
        const std::vector<u32> row = tuple_flatten(tup);
        std::copy(row.begin(), row.end(), flat.a.begin() + static_cast<std::size_t>(r++) * area);
      }
    if (fq_rank(f, std::move(flat)) != rows)
      throw Error("base and step tuples are not linearly independent");
  }

  if (spec.breakpoints.size() != spec.t || spec.breakpoints.front() < 1)
    throw Error("need t positive breakpoints");
  for (std::size_t i = 1; i < spec.breakpoints.size(); ++i)
    if (spec.breakpoints[i] <= spec.breakpoints[i - 1])
      throw Error("breakpoints must be strictly increasing");
  if (spec.breakpoints.back() != spec.ext_blocks.size())
    throw Error("last breakpoint must cover all extension blocks");
  for (const BlockShape& b : spec.ext_blocks)
    if (b.cols < 1 || b.rows < b.cols)
      throw Error("extension block shape must satisfy rows >= cols >= 1");

  if (spec.coeff_bases.size() != spec.ext_blocks.size())
    throw Error("need one coefficient basis per extension block");
  for (u32 g = 0; g < spec.t; ++g) {
    const u32 from = g == 0 ? 0 : spec.breakpoints[g - 1];
    const u32 to = spec.breakpoints[g];
    u64 group_area = 0;
    for (u32 j = from; j < to; ++j)
      group_area += static_cast<u64>(spec.ext_blocks[j].rows) * spec.ext_blocks[j].cols;
    if (group_area > m)
      throw Error("extension group " + std::to_string(g + 1) + " sizes sum to " +
                  std::to_string(group_area) + ", exceeding m = " + std::to_string(m));
    FqMatrix stacked(static_cast<u32>(group_area), m);
    u32 r = 0;
    for (u32 j = from; j < to; ++j) {
      const FqMatrix& vb = spec.coeff_bases[j];
      const u64 want = static_cast<u64>(spec.ext_blocks[j].rows) * spec.ext_blocks[j].cols;
      if (vb.rows != want || vb.cols != m)
        throw Error("coefficient basis shape must be (rows*cols) x m");
      if (fq_rank(f, vb) != vb.rows) throw Error("coefficient subspace basis is rank-deficient");
      for (u32 i = 0; i < vb.rows; ++i)
        for (u32 c = 0; c < m; ++c) stacked.at(r + i, c) = vb.at(i, c);
      r += vb.rows;
    }
    if (fq_rank(f, std::move(stacked)) != group_area)
      throw Error("coefficient subspaces within group " + std::to_string(g + 1) +
                  " do not form a direct sum");
  }

  // Subset-by-subset oracle check of the distance ladder.
  const u64 n = spec.base.profile().total_cols();
  for (u32 mask = 0; mask < (1u << spec.t); ++mask) {
    const u32 steps = static_cast<u32>(std::popcount(mask));
    const u32 expected = spec.distance - steps;
    const FqLinearCode sub = lattice_subset_code(spec, mask);
    if (sub.dim() == 0) {
      if (expected != n + 1)
        throw Error("empty lattice member needs distance n + 1");
      continue;
    }
    const MsrdCertificate cert = is_msrd(sub, guard);
    if (cert.distance != expected)
      throw Error("lattice member for subset mask " + std::to_string(mask) + " has distance " +
                  std::to_string(cert.distance) + ", expected " + std::to_string(expected));
    if (!cert.msrd)
      throw Error("lattice member for subset mask " + std::to_string(mask) + " is not MSRD");
  }
}

/// Construction: direct sum of the zero-padded base with, per extension
/// block j in group i and per coefficient basis vector alpha of V_j, the
/// tuple (sum_k alpha_k B_(i,k), ..., unit matrix in block j, ...).
/// The result keeps distance d and gains the full area of the new blocks.
inline FqLinearCode extend_lattice(const LatticeSpec& spec, u64 guard = kDefaultCodewordGuard) {
  validate_lattice_spec(spec, guard);
  const FieldTower& f = *spec.base.tower();
  const auto m = detail::trailing_row_run(spec.base.profile()).first;

  BlockProfile profile = spec.base.profile().concat(BlockProfile{spec.ext_blocks});
  const std::size_t base_blocks = spec.base.profile().size();

  std::vector<MatrixTuple> basis;
  for (const MatrixTuple& tup : spec.base.basis()) {
    MatrixTuple padded = tup;
    for (const BlockShape& b : spec.ext_blocks) padded.blocks.emplace_back(b.rows, b.cols);
    basis.push_back(std::move(padded));
  }
  for (u32 g = 0; g < spec.t; ++g) {
    const u32 from = g == 0 ? 0 : spec.breakpoints[g - 1];
    const u32 to = spec.breakpoints[g];
    for (u32 j = from; j < to; ++j) {
      const FqMatrix& vb = spec.coeff_bases[j];
      const BlockShape shape = spec.ext_blocks[j];
      for (u32 z = 0; z < vb.rows; ++z) {
        MatrixTuple tup = zero_tuple(spec.base.profile());
        for (u32 k = 0; k < m; ++k) {
          const u32 coeff = vb.at(z, k);
          if (coeff == 0) continue;
          const MatrixTuple scaled = tuple_scale(f, spec.step_tuples[g][k], coeff);
          tuple_add_inplace(f, tup, scaled);
        }
        for (std::size_t b = 0; b < spec.ext_blocks.size(); ++b)
          tup.blocks.emplace_back(spec.ext_blocks[b].rows, spec.ext_blocks[b].cols);
        // The stored basis of V_j maps to the matrix units of block j in
        // row-major order.
        tup.blocks[base_blocks + j].at(z / shape.cols, z % shape.cols) = 1;
        basis.push_back(std::move(tup));
      }
    }
  }
  return FqLinearCode(spec.base.tower(), std::move(profile), std::move(basis));
}

/// Everything build_lattice_t2/t3 produce: the tall generator rows split
/// into step rows (one per extension step) and base rows, the expanded base
/// code, the step tuples, and the designed distance.
struct LatticeIngredients {
  TowerPtr tower;
  LengthPartition partition;
  u32 t = 0;
  FqmMat step_rows;  ///< t x n
  FqmMat base_rows;  ///< k x n
  FqLinearCode base;
  std::vector<std::vector<MatrixTuple>> step_tuples;
  u32 distance = 0;  ///< n - k + 1
  BetaVector beta;
};

namespace detail {

inline std::vector<MatrixTuple> expand_row(const FieldTower& f, const std::vector<u64>& row,
                                           const LengthPartition& part) {
  std::vector<MatrixTuple> out;
  out.reserve(f.ext_degree());
  for (u32 j = 0; j < f.ext_degree(); ++j) {
    std::vector<u64> scaled(row.size());
    for (std::size_t c = 0; c < row.size(); ++c) scaled[c] = f.mul(f.gamma()[j], row[c]);
    out.push_back(matrix_repr(f, scaled, part));
  }
  return out;
}

inline LatticeIngredients split_ladder_rows(const TowerPtr& tower, const FqmLinearCode& full,
                                            const std::vector<u32>& step_row_idx,
                                            const BetaVector& beta) {
  const FieldTower& f = *tower;
  const u32 t = static_cast<u32>(step_row_idx.size());
  std::vector<bool> is_step(full.dim(), false);
  for (u32 idx : step_row_idx) is_step[idx] = true;

  FqmMat step_rows(t, full.length());
  std::vector<std::vector<MatrixTuple>> step_tuples;
  for (u32 i = 0; i < t; ++i) {
    const std::vector<u64> row = full.genmat().row(step_row_idx[i]);
    std::copy(row.begin(), row.end(),
              step_rows.a.begin() + static_cast<std::size_t>(i) * full.length());
    step_tuples.push_back(expand_row(f, row, full.partition()));
  }

  const u32 k = full.dim() - t;
  FqmMat base_rows(k, full.length());
  u32 out = 0;
  for (u32 i = 0; i < full.dim(); ++i) {
    if (is_step[i]) continue;
    const std::vector<u64> row = full.genmat().row(i);
    std::copy(row.begin(), row.end(),
              base_rows.a.begin() + static_cast<std::size_t>(out++) * full.length());
  }

  FqLinearCode base =
      k == 0 ? FqLinearCode(tower, profile_from_partition(f, full.partition()), {})
             : to_fq_linear(FqmLinearCode(tower, full.partition(), base_rows));
  const u32 distance = full.length() - k + 1;
  return LatticeIngredients{tower,           full.partition(), t,        std::move(step_rows),
                            std::move(base_rows), std::move(base),  std::move(step_tuples),
                            distance,        beta};
}

}  // namespace detail

/// Two-step ladder: the "+2 rows" generator matrix has its first row and
/// last row removed into the steps; the k middle rows span the base.
inline LatticeIngredients build_lattice_t2(const TowerPtr& tower, u32 mu, u32 r, u32 k) {
  const u64 q = tower->subfield_order();
  const u64 n = static_cast<u64>(mu) * (q - 1) * r;
  if (k + 2 > n) throw Error("k + 2 rows exceed the code length");
  const NormClassReps reps = select_norm_reps(tower);
  const BetaVector beta = select_beta(tower, mu, r, k + 2);
  const FqmLinearCode full = build_generator(tower, reps, beta, k + 2);
  return detail::split_ladder_rows(tower, full, {0, k + 1}, beta);
}

/// Three-step ladder with empty base; needs even q and odd m.
inline LatticeIngredients build_lattice_t3(const TowerPtr& tower, u32 mu, u32 r) {
  if (tower->subfield_order() % 2 != 0) throw Error("q must be even");
  if (tower->ext_degree() % 2 != 1) throw Error("m must be odd");
  const u64 q = tower->subfield_order();
  const u64 n = static_cast<u64>(mu) * (q - 1) * r;
  if (n < 3) throw Error("length must be at least 3");
  const NormClassReps reps = select_norm_reps(tower);
  const BetaVector beta = select_beta(tower, mu, r, 3);
  const FqmLinearCode full = build_generator(tower, reps, beta, 3);
  return detail::split_ladder_rows(tower, full, {0, 1, 2}, beta);
}

/// Assemble a LatticeSpec from ladder ingredients with the default
/// coefficient subspaces: within each group, consecutive standard basis
/// vectors of GF(q)^m (a direct sum by construction).
inline LatticeSpec make_lattice_spec(const LatticeIngredients& ing,
                                     std::vector<BlockShape> ext_blocks,
                                     std::vector<u32> breakpoints) {
  LatticeSpec spec{ing.base, ing.distance, ing.t, ing.step_tuples,
                   std::move(breakpoints), std::move(ext_blocks), {}};
  const u32 m = ing.tower->ext_degree();
  if (spec.breakpoints.size() != spec.t) throw Error("need t positive breakpoints");
  if (spec.breakpoints.empty() || spec.breakpoints.back() != spec.ext_blocks.size())
    throw Error("last breakpoint must cover all extension blocks");
  for (u32 g = 0; g < spec.t; ++g) {
    const u32 from = g == 0 ? 0 : spec.breakpoints[g - 1];
    const u32 to = spec.breakpoints[g];
    if (to <= from) throw Error("breakpoints must be strictly increasing");
    u32 offset = 0;
    for (u32 j = from; j < to; ++j) {
      const u64 dim = static_cast<u64>(spec.ext_blocks[j].rows) * spec.ext_blocks[j].cols;
      if (offset + dim > m)
        throw Error("extension group " + std::to_string(g + 1) + " sizes sum to more than m = " +
                    std::to_string(m));
      FqMatrix vb(static_cast<u32>(dim), m);
      for (u32 z = 0; z < dim; ++z) vb.at(z, offset + z) = 1;
      offset += static_cast<u32>(dim);
      spec.coeff_bases.push_back(std::move(vb));
    }
  }
  return spec;
}

/// Criterion-vs-oracle report for the one-weight property of a two-step
/// extension of dimension 2m.
struct OneWeightReport {
  bool criterion = false;   ///< breakpoints (1, 2) and the segment spans cover the field
  bool one_weight = false;  ///< oracle verdict from the weight distribution
  bool agree = false;
  std::map<u32, u64> distribution;
};

inline OneWeightReport check_one_weight(const FqLinearCode& extended, const LatticeSpec& spec,
                                        const BetaVector& beta,
                                        u64 guard = kDefaultCodewordGuard) {
  if (spec.t != 2) throw Error("one-weight criterion applies to two-step extensions");
  const TowerPtr& tower = extended.tower();
  const FieldTower& f = *tower;
  const u32 m = f.ext_degree();
  if (extended.dim() != 2 * static_cast<std::size_t>(m))
    throw Error("one-weight criterion requires dimension 2m");

  bool covers = false;
  {
    std::vector<bool> seen(static_cast<std::size_t>(f.order()), false);
    u64 count = 0;
    const u64 combos = detail::pow_capped(f.subfield_order(), beta.r, f.order() + 1);
    for (u32 seg = 0; seg < beta.mu; ++seg) {
      for (u64 idx = 0; idx < combos; ++idx) {
        u64 v = idx, acc = 0;
        for (u32 j = 0; j < beta.r; ++j) {
          const u32 c = static_cast<u32>(v % f.subfield_order());
          v /= f.subfield_order();
          if (c != 0) acc = f.add(acc, f.mul(beta.beta[seg * beta.r + j].code(), c));
        }
        if (!seen[static_cast<std::size_t>(acc)]) {
          seen[static_cast<std::size_t>(acc)] = true;
          ++count;
        }
      }
    }
    covers = count == f.order();
  }

  OneWeightReport report;
  report.criterion = spec.breakpoints == std::vector<u32>{1, 2} && covers;
  report.distribution = weight_distribution(extended, guard);
  std::size_t nonzero = 0;
  for (const auto& [w, c] : report.distribution)
    if (w != 0) ++nonzero;
  report.one_weight = nonzero == 1;
  report.agree = report.criterion == report.one_weight;
  return report;
}

// ---------------------------------------------------------------------------
// Systematic extension
// ---------------------------------------------------------------------------

/// Generator rows arranged so the final `pivot_count` coordinates carry the
/// identity on the first rows and zeros on the rest; `left` keeps only the
/// leading n columns.
struct SystematicForm {
  FqmMat left;  ///< (pivot_count + free_count) x n
  u32 pivot_count = 0;
  u32 free_count = 0;
};

/// Row-reduce so the last t columns become the identity over the first t
/// rows and vanish below.  Works for any code whose last t columns have
/// full rank (always the case for MSRD input with dim >= t).
inline SystematicForm systematic_form(const FqmLinearCode& code, u32 t) {
  const FieldTower& f = *code.tower();
  if (t < 1 || t > code.dim()) throw Error("pivot count must satisfy 1 <= t <= dim");
  if (code.partition().parts.empty() || code.partition().parts.back() != t)
    throw Error("last partition block must have length t");
  const u32 n = code.length() - t;

  FqmMat g = code.genmat();
  for (u32 j = 0; j < t; ++j) {
    const u32 col = n + j;
    u32 pivot = j;
    while (pivot < g.rows && g.at(pivot, col) == 0) ++pivot;
    if (pivot == g.rows) throw Error("tail columns are rank-deficient");
    if (pivot != j)
      for (u32 c = 0; c < g.cols; ++c) std::swap(g.at(pivot, c), g.at(j, c));
    const u64 scale = f.inv(g.at(j, col));
    if (scale != 1)
      for (u32 c = 0; c < g.cols; ++c) g.at(j, c) = f.mul(g.at(j, c), scale);
    for (u32 r = 0; r < g.rows; ++r) {
      if (r == j) continue;
      const u64 factor = g.at(r, col);
      if (factor == 0) continue;
      for (u32 c = 0; c < g.cols; ++c) g.at(r, c) = f.sub(g.at(r, c), f.mul(factor, g.at(j, c)));
    }
  }

  SystematicForm sf;
  sf.pivot_count = t;
  sf.free_count = g.rows - t;
  sf.left = FqmMat(g.rows, n);
  for (u32 r = 0; r < g.rows; ++r)
    for (u32 c = 0; c < n; ++c) sf.left.at(r, c) = g.at(r, c);
  return sf;
}

/// Disjoint submatrix index sets (X_s, Y_s) of an m x t grid, 0-based.
struct MatrixPiece {
  std::vector<u32> row_set, col_set;
  friend bool operator==(const MatrixPiece&, const MatrixPiece&) = default;
};

struct MatrixPartition {
  std::vector<MatrixPiece> pieces;
  u64 total_size() const {
    u64 n = 0;
    for (const MatrixPiece& p : pieces)
      n += static_cast<u64>(p.row_set.size()) * p.col_set.size();
    return n;
  }
};

inline void validate_partition(const MatrixPartition& part) {
  for (const MatrixPiece& p : part.pieces) {
    if (p.row_set.empty() || p.col_set.empty()) throw Error("piece index sets must be nonempty");
    for (const std::vector<u32>* set : {&p.row_set, &p.col_set})
      for (std::size_t i = 1; i < set->size(); ++i)
        if ((*set)[i - 1] >= (*set)[i]) throw Error("piece index sets must be sorted and unique");
  }
  for (std::size_t i = 0; i < part.pieces.size(); ++i)
    for (std::size_t j = i + 1; j < part.pieces.size(); ++j) {
      const MatrixPiece& a = part.pieces[i];
      const MatrixPiece& b = part.pieces[j];
      const bool rows_meet = std::find_first_of(a.row_set.begin(), a.row_set.end(),
                                                b.row_set.begin(), b.row_set.end()) != a.row_set.end();
      const bool cols_meet = std::find_first_of(a.col_set.begin(), a.col_set.end(),
                                                b.col_set.begin(), b.col_set.end()) != a.col_set.end();
      if (rows_meet && cols_meet) throw Error("pieces overlap");
    }
}

/// The weight-compatible reshaping of vectors in GF(q^m)^t into tuples of
/// submatrix blocks: the coefficient matrix of a vector is cut along the
/// pieces, and pieces with more columns than rows are emitted transposed so
/// every block keeps rows >= cols.
struct PieceMap {
  TowerPtr tower;
  MatrixPartition part;
  u32 width = 0;  ///< t
  std::vector<BlockShape> ext_shapes;
  std::vector<bool> transposed;
  FqmMat coeff_basis;  ///< dim(V) x t basis of the admissible vectors
};

inline PieceMap build_piece_map(const TowerPtr& tower, MatrixPartition part, u32 t) {
  validate_partition(part);
  const FieldTower& f = *tower;
  PieceMap map;
  map.tower = tower;
  map.width = t;
  for (const MatrixPiece& p : part.pieces) {
    if (p.row_set.back() >= f.ext_degree()) throw Error("piece row index exceeds m");
    if (p.col_set.back() >= t) throw Error("piece column index exceeds t");
    const u32 rows = static_cast<u32>(p.row_set.size());
    const u32 cols = static_cast<u32>(p.col_set.size());
    const bool flip = cols > rows;
    map.transposed.push_back(flip);
    map.ext_shapes.push_back(flip ? BlockShape{cols, rows} : BlockShape{rows, cols});
  }
  map.coeff_basis = FqmMat(static_cast<u32>(part.total_size()), t);
  u32 r = 0;
  for (const MatrixPiece& p : part.pieces)
    for (u32 x : p.row_set)
      for (u32 y : p.col_set) map.coeff_basis.at(r++, y) = f.gamma()[x];
  map.part = std::move(part);
  return map;
}

/// Cut the coefficient matrix of `lambda` along the pieces.
inline MatrixTuple apply_piece_map(const PieceMap& map, const std::vector<u64>& lambda) {
  const FieldTower& f = *map.tower;
  if (lambda.size() != map.width) throw Error("vector length does not match the piece map");
  FqMatrix coeff(f.ext_degree(), map.width);
  for (u32 y = 0; y < map.width; ++y) {
    const std::vector<u32> coords = f.gamma_coords(lambda[y]);
    for (u32 x = 0; x < f.ext_degree(); ++x) coeff.at(x, y) = coords[x];
  }
  MatrixTuple out;
  for (std::size_t s = 0; s < map.part.pieces.size(); ++s) {
    const MatrixPiece& p = map.part.pieces[s];
    FqMatrix block(static_cast<u32>(p.row_set.size()), static_cast<u32>(p.col_set.size()));
    for (u32 i = 0; i < block.rows; ++i)
      for (u32 j = 0; j < block.cols; ++j) block.at(i, j) = coeff.at(p.row_set[i], p.col_set[j]);
    out.blocks.push_back(map.transposed[s] ? fq_transpose(block) : block);
  }
  return out;
}

/// Construction: from an MSRD code on (n_1, ..., n_l, t) in tail-systematic
/// form, emit codewords (coords of sum lambda_i g_i, pieces of lambda's
/// tail) with the tail coefficients restricted to the piece-supported
/// subspace.  The result keeps the input's oracle distance.
inline FqLinearCode extend_systematic(const FqmLinearCode& d0_code, u32 t,
                                      const MatrixPartition& part,
                                      u64 guard = kDefaultCodewordGuard) {
  const TowerPtr& tower = d0_code.tower();
  const FieldTower& f = *tower;
  const u32 m = f.ext_degree();
  if (t < 1 || t > m) throw Error("pivot count must satisfy 1 <= t <= m");
  if (d0_code.partition().parts.size() < 2 || d0_code.partition().parts.back() != t)
    throw Error("last partition block must have length t");
  if (d0_code.dim() < t) throw Error("input dimension must be at least t");
  validate_partition(part);
  if (part.total_size() > static_cast<u64>(t) * m)
    throw Error("necessary condition violated: extension sizes exceed t*m");

  const MsrdCertificate cert = is_msrd(to_fq_linear(d0_code), guard);
  if (!cert.msrd)
    throw Error("input code is not MSRD (d=" + std::to_string(cert.distance) +
                ", dim=" + std::to_string(cert.dimension) +
                ", bound=" + std::to_string(cert.bound) + ")");

  const SystematicForm sf = systematic_form(d0_code, t);
  const PieceMap map = build_piece_map(tower, part, t);
  const u32 k = sf.free_count;

  LengthPartition head(std::vector<u32>(d0_code.partition().parts.begin(),
                                        d0_code.partition().parts.end() - 1));
  const BlockProfile head_profile = profile_from_partition(f, head);
  const BlockProfile profile = head_profile.concat(BlockProfile{map.ext_shapes});
  const u32 n = static_cast<u32>(head.total());

  std::vector<MatrixTuple> basis;
  for (u32 z = 0; z < map.coeff_basis.rows; ++z) {
    const std::vector<u64> lambda = map.coeff_basis.row(z);
    std::vector<u64> word(n, 0);
    for (u32 i = 0; i < t; ++i) {
      if (lambda[i] == 0) continue;
      for (u32 c = 0; c < n; ++c)
        word[c] = f.add(word[c], f.mul(lambda[i], sf.left.at(i, c)));
    }
    MatrixTuple tup = matrix_repr(f, word, head);
    const MatrixTuple tail = apply_piece_map(map, lambda);
    tup.blocks.insert(tup.blocks.end(), tail.blocks.begin(), tail.blocks.end());
    basis.push_back(std::move(tup));
  }
  for (u32 i = 0; i < k; ++i) {
    const std::vector<u64> row = sf.left.row(t + i);
    for (u32 j = 0; j < m; ++j) {
      std::vector<u64> scaled(row.size());
      for (std::size_t c = 0; c < row.size(); ++c) scaled[c] = f.mul(f.gamma()[j], row[c]);
      MatrixTuple tup = matrix_repr(f, scaled, head);
      for (const BlockShape& b : map.ext_shapes) tup.blocks.emplace_back(b.rows, b.cols);
      basis.push_back(std::move(tup));
    }
  }
  return FqLinearCode(tower, profile, std::move(basis));
}

}  // namespace msrd
