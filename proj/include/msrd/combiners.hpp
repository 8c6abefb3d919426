#pragma once

#include <string>
#include <vector>

#include "msrd/codes.hpp"

namespace msrd {

/// Component codes for the stacked cartesian product.  All must live on one
/// common square-block profile over the same field.
struct StackSpec {
  std::vector<FqLinearCode> components;
};

namespace detail {

inline void validate_stack_spec(const StackSpec& spec) {
  if (spec.components.empty()) throw Error("stack needs at least one component");
  const FqLinearCode& first = spec.components.front();
  for (const BlockShape& b : first.profile().blocks())
    if (b.rows != b.cols) throw Error("stack components must have square blocks");
  for (const FqLinearCode& c : spec.components) {
    if (!c.tower()->same_subfield(*first.tower())) throw Error("stack components on mixed fields");
    if (!(c.profile() == first.profile())) throw Error("stack components on mixed profiles");
  }
}

}  // namespace detail

/// Stacked cartesian product: block i of the result is (t*m_i) x m_i, with
/// component c occupying row band c.  Dimension is additive; the distance is
/// the minimum of the component distances.
inline FqLinearCode stack_product(const StackSpec& spec) {
  detail::validate_stack_spec(spec);
  const FqLinearCode& first = spec.components.front();
  const u32 t = static_cast<u32>(spec.components.size());

  std::vector<BlockShape> shapes;
  for (const BlockShape& b : first.profile().blocks()) shapes.push_back({t * b.rows, b.cols});
  const BlockProfile profile{shapes};

  std::vector<MatrixTuple> basis;
  for (u32 band = 0; band < t; ++band) {
    for (const MatrixTuple& src : spec.components[band].basis()) {
      MatrixTuple stacked = zero_tuple(profile);
      for (std::size_t i = 0; i < src.blocks.size(); ++i) {
        const FqMatrix& blk = src.blocks[i];
        for (u32 r = 0; r < blk.rows; ++r)
          for (u32 c = 0; c < blk.cols; ++c)
            stacked.blocks[i].at(band * blk.rows + r, c) = blk.at(r, c);
      }
      basis.push_back(std::move(stacked));
    }
  }
  return FqLinearCode(first.tower(), profile, std::move(basis));
}

struct CombineCertificate {
  bool ok = false;
  std::string reason;
  u32 distance = 0;
  u64 dimension = 0;
  u64 bound = 0;
};

/// Verifies the stacking premises (components MSRD, equal sizes, equal
/// distances) and then oracle-checks that the stack is MSRD.
inline CombineCertificate check_stack_msrd(const StackSpec& spec,
                                           u64 guard = kDefaultCodewordGuard) {
  detail::validate_stack_spec(spec);
  CombineCertificate cert;
  u32 common_d = 0;
  for (std::size_t i = 0; i < spec.components.size(); ++i) {
    const MsrdCertificate c = is_msrd(spec.components[i], guard);
    if (!c.msrd) {
      cert.reason = "component not MSRD";
      return cert;
    }
    if (i == 0) {
      common_d = c.distance;
    } else if (c.distance != common_d) {
      cert.reason = "distance mismatch";
      return cert;
    } else if (spec.components[i].dim() != spec.components[0].dim()) {
      cert.reason = "size mismatch";
      return cert;
    }
  }
  const FqLinearCode stacked = stack_product(spec);
  const MsrdCertificate c = is_msrd(stacked, guard);
  cert.distance = c.distance;
  cert.dimension = c.dimension;
  cert.bound = c.bound;
  if (c.distance != common_d) {
    cert.reason = "stacked distance differs from component distance";
    return cert;
  }
  if (!c.msrd) {
    cert.reason = "stacked code misses the bound";
    return cert;
  }
  cert.ok = true;
  return cert;
}

/// Two codes to be glued basis-vector by basis-vector, in stored basis
/// order (reorder a basis before gluing to change the pairing).  The
/// concatenated profile must keep non-increasing row counts.
struct GlueSpec {
  FqLinearCode c1;
  FqLinearCode c2;
};

namespace detail {

inline void validate_glue_spec(const GlueSpec& spec) {
  if (!spec.c1.tower()->same_subfield(*spec.c2.tower()))
    throw Error("glue components on mixed fields");
  if (spec.c1.dim() == 0 || spec.c2.dim() == 0)
    throw Error("glue components must have positive dimension");
  const BlockProfile joined = spec.c1.profile().concat(spec.c2.profile());
  for (std::size_t i = 1; i < joined.size(); ++i)
    if (joined.blocks()[i - 1].rows < joined.blocks()[i].rows)
      throw Error("concatenated profile rows must be non-increasing");
}

}  // namespace detail

/// Basis glueing: dimension min(k1, k2); the distance is at least d1 + d2
/// (equal under the MSRD premises checked by check_glue_msrd).
inline FqLinearCode glue_bases(const GlueSpec& spec) {
  detail::validate_glue_spec(spec);
  const std::size_t k = std::min(spec.c1.dim(), spec.c2.dim());
  std::vector<MatrixTuple> basis;
  basis.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    MatrixTuple joined = spec.c1.basis()[i];
    for (const FqMatrix& b : spec.c2.basis()[i].blocks) joined.blocks.push_back(b);
    basis.push_back(std::move(joined));
  }
  return FqLinearCode(spec.c1.tower(), spec.c1.profile().concat(spec.c2.profile()),
                      std::move(basis));
}

/// Verifies the gluing premises (both MSRD, c1 at full distance with
/// dimension equal to its smallest row count, which also dominates dim c2)
/// and then oracle-checks that the glue is MSRD at distance d1 + d2.
inline CombineCertificate check_glue_msrd(const GlueSpec& spec,
                                          u64 guard = kDefaultCodewordGuard) {
  detail::validate_glue_spec(spec);
  CombineCertificate cert;
  const MsrdCertificate c1 = is_msrd(spec.c1, guard);
  const MsrdCertificate c2 = is_msrd(spec.c2, guard);
  if (!c1.msrd) {
    cert.reason = "c1 not MSRD";
    return cert;
  }
  if (!c2.msrd) {
    cert.reason = "c2 not MSRD";
    return cert;
  }
  if (c1.distance != spec.c1.profile().total_cols()) {
    cert.reason = "c1 not full-distance";
    return cert;
  }
  const u32 last_rows = spec.c1.profile().blocks().back().rows;
  if (spec.c1.dim() != last_rows) {
    cert.reason = "c1 dimension must equal its last row count";
    return cert;
  }
  if (spec.c2.dim() > last_rows) {
    cert.reason = "c2 dimension exceeds m_l";
    return cert;
  }
  const FqLinearCode glued = glue_bases(spec);
  const MsrdCertificate g = is_msrd(glued, guard);
  cert.distance = g.distance;
  cert.dimension = g.dimension;
  cert.bound = g.bound;
  if (g.distance != c1.distance + c2.distance) {
    cert.reason = "glued distance differs from d1 + d2";
    return cert;
  }
  if (!g.msrd) {
    cert.reason = "glued code misses the bound";
    return cert;
  }
  cert.ok = true;
  return cert;
}

}  // namespace msrd
