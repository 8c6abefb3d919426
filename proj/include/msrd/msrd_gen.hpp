#pragma once

#include <bit>
#include <string>
#include <vector>

#include "msrd/codes.hpp"
#include "msrd/gf.hpp"

namespace msrd {

/// Nonzero elements a_1, ..., a_(q-1) with pairwise distinct norms down to
/// GF(q); one representative per norm class, chosen in canonical code order.
struct NormClassReps {
  std::vector<FieldElement> a;
};

inline NormClassReps select_norm_reps(const TowerPtr& tower, u64 guard = kDefaultEnumGuard) {
  if (tower->order() > guard) throw GuardError("field enumeration guard exceeded");
  const u64 wanted = tower->subfield_order() - 1;
  NormClassReps reps;
  std::vector<bool> seen(static_cast<std::size_t>(tower->subfield_order()), false);
  for (u64 c = 1; c < tower->order() && reps.a.size() < wanted; ++c) {
    const u64 n = tower->norm_to_subfield(c);
    if (!seen[static_cast<std::size_t>(n)]) {
      seen[static_cast<std::size_t>(n)] = true;
      reps.a.push_back(tower->element(c));
    }
  }
  if (reps.a.size() != wanted) throw Error("norm map is not surjective; tower is inconsistent");
  return reps;
}

/// The column supports beta_1, ..., beta_(mu*r), nonzero, grouped into mu
/// segments of length r.  Each segment must span an r-dimensional GF(q)
/// subspace, and a segment's span must meet the sum of any other
/// min(k, mu) - 1 segment spans only in zero.
struct BetaVector {
  std::vector<FieldElement> beta;
  u32 mu = 1, r = 1;
  u32 k_context = 1;  // dimension the segment conditions were checked against
};

namespace detail {

/// dim over GF(q) of the span of the given element codes.
inline u32 span_dim(const FieldTower& f, const std::vector<u64>& codes) {
  FqMatrix mat(static_cast<u32>(codes.size()), f.ext_degree());
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const std::vector<u32> c = f.ext_coeffs(codes[i]);
    for (u32 j = 0; j < f.ext_degree(); ++j) mat.at(static_cast<u32>(i), j) = c[j];
  }
  return fq_rank(f, std::move(mat));
}

/// Check every segment-span condition over completed segments only; used
/// both as the final validation and as the backtracking pruning step.
inline bool beta_segments_admissible(const FieldTower& f, const std::vector<u64>& codes,
                                     u32 mu, u32 r, u32 k, u32 completed) {
  std::vector<std::vector<u64>> segments(completed);
  for (u32 i = 0; i < completed; ++i)
    segments[i] = {codes.begin() + static_cast<std::size_t>(i) * r,
                   codes.begin() + static_cast<std::size_t>(i + 1) * r};
  for (u32 i = 0; i < completed; ++i)
    if (span_dim(f, segments[i]) != r) return false;
  const u32 max_gamma = std::min(k, mu) - 1;
  if (max_gamma == 0 || completed < 2) return true;
  for (u32 i = 0; i < completed; ++i) {
    // All subsets of the other completed segments with size <= max_gamma.
    std::vector<u32> others;
    for (u32 j = 0; j < completed; ++j)
      if (j != i) others.push_back(j);
    const u32 n = static_cast<u32>(others.size());
    for (u32 mask = 1; mask < (1u << n); ++mask) {
      if (static_cast<u32>(std::popcount(mask)) > max_gamma) continue;
      std::vector<u64> sum_codes;
      for (u32 b = 0; b < n; ++b)
        if (mask & (1u << b))
          sum_codes.insert(sum_codes.end(), segments[others[b]].begin(),
                           segments[others[b]].end());
      const u32 sum_dim = span_dim(f, sum_codes);
      std::vector<u64> joint = sum_codes;
      joint.insert(joint.end(), segments[i].begin(), segments[i].end());
      if (span_dim(f, joint) != sum_dim + r) return false;  // nonzero intersection
    }
  }
  return true;
}

}  // namespace detail

/// Recheck the segment conditions exhaustively; throws with the failed
/// condition named.
inline void validate_beta(const BetaVector& bv) {
  if (bv.beta.size() != static_cast<std::size_t>(bv.mu) * bv.r)
    throw Error("beta must have mu*r entries");
  const FieldTower& f = *bv.beta.front().tower();
  std::vector<u64> codes;
  for (const FieldElement& b : bv.beta) {
    if (b.is_zero()) throw Error("beta entries must be nonzero");
    codes.push_back(b.code());
  }
  if (!detail::beta_segments_admissible(f, codes, bv.mu, bv.r, bv.k_context, bv.mu))
    throw Error("beta segment spans violate the independence conditions");
}

/// Deterministic choice of beta.  mu = 1 takes the polynomial-basis prefix
/// (1, x, ..., x^(r-1)); mu > 1 backtracks over element codes in canonical
/// order and returns the lexicographically first admissible vector.
inline BetaVector select_beta(const TowerPtr& tower, u32 mu, u32 r, u32 k) {
  if (mu < 1 || r < 1 || k < 1) throw Error("mu, r and k must be positive");
  if (r > tower->ext_degree()) throw Error("segment length r exceeds m");
  BetaVector bv;
  bv.mu = mu;
  bv.r = r;
  bv.k_context = k;
  if (mu == 1) {
    for (u32 j = 0; j < r; ++j)
      bv.beta.push_back(tower->element(detail::pow_capped(tower->subfield_order(), j,
                                                          tower->order())));
    validate_beta(bv);
    return bv;
  }
  if (std::min(k, mu) >= 2 && 2 * static_cast<u64>(r) > tower->ext_degree())
    throw Error("segment spans cannot be disjoint: 2r exceeds m");

  const FieldTower& f = *tower;
  const std::size_t len = static_cast<std::size_t>(mu) * r;
  std::vector<u64> codes(len, 0);
  std::size_t pos = 0;
  while (true) {
    ++codes[pos];
    if (codes[pos] >= f.order()) {
      if (pos == 0) throw Error("no admissible beta found at this field size");
      codes[pos] = 0;
      --pos;
      continue;
    }
    // Within the current segment the prefix must stay independent; when a
    // segment completes, all conditions over completed segments must hold.
    const u32 seg = static_cast<u32>(pos / r);
    const std::vector<u64> prefix(codes.begin() + static_cast<std::size_t>(seg) * r,
                                  codes.begin() + pos + 1);
    if (detail::span_dim(f, prefix) != prefix.size()) continue;
    if ((pos + 1) % r == 0 &&
        !detail::beta_segments_admissible(f, codes, mu, r, k, seg + 1))
      continue;
    if (pos + 1 == len) break;
    ++pos;
  }
  for (u64 c : codes) bv.beta.push_back(tower->element(c));
  validate_beta(bv);
  return bv;
}

/// The k x n base generator matrix over GF(q^m) on the partition
/// (r, ..., r) with mu*(q-1) blocks: entry at row i, norm-class block u,
/// column j is beta_j^(q^i) * a_u^((q^i - 1)/(q - 1)).
inline FqmLinearCode build_generator(const TowerPtr& tower, const NormClassReps& reps,
                                     const BetaVector& beta, u32 k) {
  const FieldTower& f = *tower;
  const u64 q = f.subfield_order();
  if (reps.a.size() != q - 1) throw Error("need one norm representative per class");
  for (std::size_t i = 0; i < reps.a.size(); ++i)
    for (std::size_t j = i + 1; j < reps.a.size(); ++j)
      if (f.norm_to_subfield(reps.a[i].code()) == f.norm_to_subfield(reps.a[j].code()))
        throw Error("norm representatives collide");
  const u32 seg_cols = beta.mu * beta.r;
  const u64 n = static_cast<u64>(seg_cols) * (q - 1);
  if (k < 1 || k > n) throw Error("dimension k out of range");
  if (std::min<u64>(k, beta.mu) > std::min<u64>(beta.k_context, beta.mu))
    throw Error("beta was selected for a smaller dimension");

  FqmMat gen(k, static_cast<u32>(n));
  // The a-exponent of row i is the geometric sum 1 + q + ... + q^(i-1),
  // kept reduced modulo the multiplicative group order via e -> e*q + 1;
  // this keeps the integral form (q^i - 1)/(q - 1) exact for every i.
  const u64 group_order = f.order() - 1;
  u64 exp = 0;
  for (u32 i = 0; i < k; ++i) {
    for (u32 u = 0; u < q - 1; ++u) {
      const u64 au = f.power(reps.a[u].code(), exp);
      for (u32 j = 0; j < seg_cols; ++j)
        gen.at(i, u * seg_cols + j) = f.mul(f.frobenius_power(beta.beta[j].code(), i), au);
    }
    exp = (exp * q + 1) % group_order;
  }
  LengthPartition part(std::vector<u32>(static_cast<std::size_t>(beta.mu) * (q - 1), beta.r));
  return FqmLinearCode(tower, std::move(part), std::move(gen));
}

/// The mu = 1 family with default selections.
inline FqmLinearCode build_lrs(const TowerPtr& tower, u32 r, u32 k) {
  const NormClassReps reps = select_norm_reps(tower);
  const BetaVector beta = select_beta(tower, 1, r, k);
  return build_generator(tower, reps, beta, k);
}

}  // namespace msrd
