#pragma once

#include <map>
#include <utility>
#include <vector>

#include "msrd/gf.hpp"
#include "msrd/linalg.hpp"
#include "msrd/sumrank.hpp"

namespace msrd {

/// Default cap on the number of codewords an exhaustive oracle may walk.
inline constexpr u64 kDefaultCodewordGuard = 1'000'000;

/// A GF(q)-linear sum-rank code given by a basis of matrix tuples.
/// Only the subfield level of the tower is used for arithmetic.
class FqLinearCode {
 public:
  FqLinearCode(TowerPtr tower, BlockProfile profile, std::vector<MatrixTuple> basis)
      : tower_(std::move(tower)), profile_(std::move(profile)), basis_(std::move(basis)) {
    if (!tower_) throw Error("code needs a tower");
    const u64 q = tower_->subfield_order();
    for (const MatrixTuple& t : basis_) {
      if (!shapes_match(t, profile_)) throw Error("basis tuple shape does not match profile");
      for (const FqMatrix& b : t.blocks)
        for (u32 v : b.a)
          if (v >= q) throw Error("basis entry out of range");
    }
    if (!basis_.empty()) {
      FqMatrix flat(static_cast<u32>(basis_.size()), static_cast<u32>(profile_.total_area()));
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        const std::vector<u32> row = tuple_flatten(basis_[i]);
        std::copy(row.begin(), row.end(), flat.a.begin() + i * row.size());
      }
      if (fq_rank(*tower_, std::move(flat)) != basis_.size())
        throw Error("basis tuples are not linearly independent");
    }
  }

  const TowerPtr& tower() const { return tower_; }
  const BlockProfile& profile() const { return profile_; }
  const std::vector<MatrixTuple>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }

  /// q^dim, saturating at guard+1.
  u64 codeword_count_capped(u64 guard) const {
    return detail::pow_capped(tower_->subfield_order(), basis_.size(), guard);
  }

  friend bool operator==(const FqLinearCode& a, const FqLinearCode& b) {
    return a.tower_->same_subfield(*b.tower_) && a.profile_ == b.profile_ &&
           a.basis_ == b.basis_;
  }

 private:
  TowerPtr tower_;
  BlockProfile profile_;
  std::vector<MatrixTuple> basis_;
};

/// A GF(q^m)-linear code in GF(q^m)^n with a length partition, given by a
/// full-row-rank generator matrix.
class FqmLinearCode {
 public:
  FqmLinearCode(TowerPtr tower, LengthPartition partition, FqmMat genmat)
      : tower_(std::move(tower)), partition_(std::move(partition)), genmat_(std::move(genmat)) {
    if (!tower_) throw Error("code needs a tower");
    if (genmat_.cols != partition_.total()) throw Error("generator width does not match partition");
    profile_from_partition(*tower_, partition_);  // validates n_i <= m
    for (u64 v : genmat_.a)
      if (v >= tower_->order()) throw Error("generator entry out of range");
    if (genmat_.rows > 0 && fqm_rank(*tower_, genmat_) != genmat_.rows)
      throw Error("generator matrix does not have full row rank");
  }

  const TowerPtr& tower() const { return tower_; }
  const LengthPartition& partition() const { return partition_; }
  const FqmMat& genmat() const { return genmat_; }
  u32 dim() const { return genmat_.rows; }
  u32 length() const { return genmat_.cols; }

  friend bool operator==(const FqmLinearCode& a, const FqmLinearCode& b) {
    return a.tower_->same_structure(*b.tower_) && a.partition_ == b.partition_ &&
           a.genmat_ == b.genmat_;
  }

 private:
  TowerPtr tower_;
  LengthPartition partition_;
  FqmMat genmat_;
};

/// Expand to the GF(q)-linear view: basis {repr(gamma_j * row_i)} for
/// i in [k], j in [m]; dimension m*k, weights preserved elementwise.
inline FqLinearCode to_fq_linear(const FqmLinearCode& code) {
  const FieldTower& f = *code.tower();
  std::vector<MatrixTuple> basis;
  basis.reserve(static_cast<std::size_t>(code.dim()) * f.ext_degree());
  for (u32 i = 0; i < code.dim(); ++i) {
    const std::vector<u64> row = code.genmat().row(i);
    for (u32 j = 0; j < f.ext_degree(); ++j) {
      std::vector<u64> scaled(row.size());
      for (std::size_t c = 0; c < row.size(); ++c) scaled[c] = f.mul(f.gamma()[j], row[c]);
      basis.push_back(matrix_repr(f, scaled, code.partition()));
    }
  }
  return FqLinearCode(code.tower(), profile_from_partition(f, code.partition()),
                      std::move(basis));
}

/// Walks all q^dim codewords in canonical coefficient order (coefficient of
/// basis element i = digit i of the codeword index, base q) and calls
/// fn(tuple) for each.  Deterministic; index 0 is the zero tuple.
template <class Fn>
void for_each_codeword(const FqLinearCode& code, u64 guard, Fn&& fn) {
  const FieldTower& f = *code.tower();
  const u64 q = f.subfield_order();
  const u64 total = code.codeword_count_capped(guard);
  if (total > guard) throw GuardError("codeword enumeration guard exceeded");

  // Odometer over coefficient codes.  Stepping a digit from code c to code
  // c+1 (or back to 0) changes the word by (next - c) * basis[j], so each
  // scalar multiple of each basis tuple is precomputed once.
  std::vector<std::vector<MatrixTuple>> scaled(code.dim());
  for (std::size_t j = 0; j < code.dim(); ++j) {
    scaled[j].reserve(static_cast<std::size_t>(q));
    for (u64 v = 0; v < q; ++v)
      scaled[j].push_back(tuple_scale(f, code.basis()[j], static_cast<u32>(v)));
  }

  MatrixTuple current = zero_tuple(code.profile());
  std::vector<u32> digits(code.dim(), 0);
  fn(static_cast<const MatrixTuple&>(current));
  for (u64 idx = 1; idx < total; ++idx) {
    for (std::size_t j = 0;; ++j) {
      const u32 cur = digits[j];
      const u32 next = cur + 1 < q ? cur + 1 : 0;
      tuple_add_inplace(f, current, scaled[j][f.sub_sub(next, cur)]);
      digits[j] = next;
      if (next != 0) break;
    }
    fn(static_cast<const MatrixTuple&>(current));
  }
}

/// All codewords, materialized in enumeration order.
inline std::vector<MatrixTuple> enumerate_codewords(const FqLinearCode& code,
                                                    u64 guard = kDefaultCodewordGuard) {
  std::vector<MatrixTuple> out;
  out.reserve(static_cast<std::size_t>(code.codeword_count_capped(guard)));
  for_each_codeword(code, guard, [&](const MatrixTuple& t) { out.push_back(t); });
  return out;
}

/// Ground-truth oracle: minimum weight over all nonzero codewords, by
/// exhaustive enumeration.
inline u32 min_sumrank_distance(const FqLinearCode& code, u64 guard = kDefaultCodewordGuard) {
  if (code.dim() == 0) throw Error("zero code has no minimum distance");
  const FieldTower& f = *code.tower();
  u32 best = static_cast<u32>(code.profile().total_cols()) + 1;
  u64 idx = 0;
  for_each_codeword(code, guard, [&](const MatrixTuple& t) {
    if (idx++ == 0 || best == 1) return;
    const u32 w = sumrank_weight(f, t);
    if (w < best) best = w;
  });
  return best;
}

struct MsrdCertificate {
  bool msrd = false;
  u32 distance = 0;
  u64 dimension = 0;
  u64 bound = 0;
};

/// Oracle distance vs. the Singleton bound on the canonical profile.
inline MsrdCertificate is_msrd(const FqLinearCode& code, u64 guard = kDefaultCodewordGuard) {
  MsrdCertificate cert;
  cert.distance = min_sumrank_distance(code, guard);
  cert.dimension = code.dim();
  cert.bound = singleton_bound(code.profile(), cert.distance);
  cert.msrd = cert.dimension == cert.bound;
  if (cert.dimension > cert.bound)
    throw Error("Singleton bound violated; this indicates a defect in the oracle");
  return cert;
}

/// Exact weight -> count table over all codewords.
inline std::map<u32, u64> weight_distribution(const FqLinearCode& code,
                                              u64 guard = kDefaultCodewordGuard) {
  const FieldTower& f = *code.tower();
  std::map<u32, u64> dist;
  for_each_codeword(code, guard, [&](const MatrixTuple& t) { ++dist[sumrank_weight(f, t)]; });
  return dist;
}

inline bool is_one_weight(const FqLinearCode& code, u64 guard = kDefaultCodewordGuard) {
  if (code.dim() == 0) throw Error("zero code has no nonzero weights");
  const std::map<u32, u64> dist = weight_distribution(code, guard);
  std::size_t nonzero = 0;
  for (const auto& [w, count] : dist)
    if (w != 0) ++nonzero;
  return nonzero == 1;
}

/// Dual under the standard coordinatewise bilinear form over GF(q^m);
/// dimension n - k, same partition.
inline FqmLinearCode dual_code(const FqmLinearCode& code) {
  return FqmLinearCode(code.tower(), code.partition(),
                       fqm_nullspace(*code.tower(), code.genmat()));
}

/// Second oracle route for GF(q^m)-linear codes: minimum weight over all
/// q^(m*k) message combinations of the generator rows.
inline u32 min_distance_via_messages(const FqmLinearCode& code,
                                     u64 guard = kDefaultCodewordGuard) {
  if (code.dim() == 0) throw Error("zero code has no minimum distance");
  const FieldTower& f = *code.tower();
  const u64 total = detail::pow_capped(f.order(), code.dim(), guard);
  if (total > guard) throw GuardError("message enumeration guard exceeded");
  u32 best = static_cast<u32>(code.length()) + 1;
  std::vector<u64> word(code.length(), 0);
  for (u64 idx = 1; idx < total; ++idx) {
    u64 v = idx;
    std::fill(word.begin(), word.end(), 0);
    for (u32 i = 0; i < code.dim(); ++i) {
      const u64 coeff = v % f.order();
      v /= f.order();
      if (coeff == 0) continue;
      for (u32 c = 0; c < code.length(); ++c)
        word[c] = f.add(word[c], f.mul(coeff, code.genmat().at(i, c)));
    }
    const u32 w = sumrank_weight(f, matrix_repr(f, word, code.partition()));
    if (w < best) best = w;
    if (best == 1) break;
  }
  return best;
}

}  // namespace msrd
