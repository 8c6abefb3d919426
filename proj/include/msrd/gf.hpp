#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "msrd/error.hpp"

namespace msrd {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

/// Largest field that enumerate_elements() will walk by default.
inline constexpr u64 kDefaultEnumGuard = u64{1} << 20;

namespace detail {

/// base^exp, saturating at cap+1 so callers can test "> cap" without overflow.
inline u64 pow_capped(u64 base, u64 exp, u64 cap) {
  u64 v = 1;
  for (u64 i = 0; i < exp; ++i) {
    if (base != 0 && v > cap / base) return cap + 1;
    v *= base;
  }
  return v;
}

inline bool is_prime(u32 n) {
  if (n < 2) return false;
  for (u32 d = 2; static_cast<u64>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Polynomials are dense little-endian coefficient-code vectors, trimmed so
// that the back entry is the (nonzero) leading coefficient.  All arithmetic
// on the coefficients goes through an Ops object providing
// add/sub/mul/inv on codes, with 0 and 1 the neutral codes.

inline void poly_trim(std::vector<u32>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

template <class Ops>
std::vector<u32> poly_add(std::vector<u32> a, const std::vector<u32>& b, const Ops& f) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.add(a[i], b[i]);
  poly_trim(a);
  return a;
}

template <class Ops>
std::vector<u32> poly_sub(std::vector<u32> a, const std::vector<u32>& b, const Ops& f) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.sub(a[i], b[i]);
  poly_trim(a);
  return a;
}

template <class Ops>
std::vector<u32> poly_mul(const std::vector<u32>& a, const std::vector<u32>& b, const Ops& f) {
  if (a.empty() || b.empty()) return {};
  std::vector<u32> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
  }
  poly_trim(out);
  return out;
}

template <class Ops>
std::pair<std::vector<u32>, std::vector<u32>> poly_divmod(std::vector<u32> a,
                                                          const std::vector<u32>& den,
                                                          const Ops& f) {
  if (den.empty()) throw Error("polynomial division by zero");
  const u32 lead_inv = f.inv(den.back());
  std::vector<u32> quot;
  if (a.size() >= den.size()) quot.assign(a.size() - den.size() + 1, 0);
  while (a.size() >= den.size()) {
    const std::size_t shift = a.size() - den.size();
    const u32 factor = f.mul(a.back(), lead_inv);
    quot[shift] = factor;
    if (factor != 0)
      for (std::size_t k = 0; k + 1 < den.size(); ++k)
        a[shift + k] = f.sub(a[shift + k], f.mul(factor, den[k]));
    a.pop_back();
    poly_trim(a);
  }
  poly_trim(quot);
  return {std::move(quot), std::move(a)};
}

template <class Ops>
std::vector<u32> poly_rem(std::vector<u32> a, const std::vector<u32>& den, const Ops& f) {
  return poly_divmod(std::move(a), den, f).second;
}

/// Inverse of a modulo an irreducible modulus, by extended Euclid.
template <class Ops>
std::vector<u32> poly_mod_inverse(std::vector<u32> a, const std::vector<u32>& modulus,
                                  const Ops& f) {
  poly_trim(a);
  if (a.empty()) throw Error("zero element has no inverse");
  std::vector<u32> r0 = modulus, r1 = std::move(a);
  std::vector<u32> t0, t1 = {1};
  while (!r1.empty()) {
    auto [quot, rem] = poly_divmod(std::move(r0), r1, f);
    r0 = std::move(r1);
    r1 = std::move(rem);
    std::vector<u32> t2 = poly_sub(std::move(t0), poly_mul(quot, t1, f), f);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) throw Error("element has no inverse modulo a reducible modulus");
  const u32 scale = f.inv(r0[0]);
  for (u32& c : t0) c = f.mul(c, scale);
  return poly_rem(std::move(t0), modulus, f);
}

/// Trial division by every monic polynomial of degree up to deg/2.
template <class Ops>
bool poly_is_irreducible(const std::vector<u32>& poly, u64 field_size, const Ops& f) {
  if (poly.size() < 2) return false;
  const std::size_t deg = poly.size() - 1;
  if (poly.back() != 1) return false;
  if (deg == 1) return true;
  if (poly[0] == 0) return false;  // divisible by x
  for (std::size_t d = 1; 2 * d <= deg; ++d) {
    const u64 count = pow_capped(field_size, d, u64{1} << 22);
    if (count > (u64{1} << 22)) throw GuardError("irreducibility trial division too large");
    std::vector<u32> div(d + 1, 0);
    div[d] = 1;
    for (u64 idx = 0; idx < count; ++idx) {
      u64 v = idx;
      for (std::size_t i = 0; i < d; ++i) {
        div[i] = static_cast<u32>(v % field_size);
        v /= field_size;
      }
      if (poly_rem(poly, div, f).empty()) return false;
    }
  }
  return true;
}

/// The monic irreducible polynomial of the given degree whose non-leading
/// coefficient tuple has the smallest integer code.
template <class Ops>
std::vector<u32> canonical_irreducible(u32 degree, u64 field_size, const Ops& f) {
  std::vector<u32> poly(degree + 1, 0);
  poly[degree] = 1;
  const u64 count = pow_capped(field_size, degree, u64{1} << 40);
  for (u64 code = 0; code < count; ++code) {
    u64 v = code;
    for (u32 i = 0; i < degree; ++i) {
      poly[i] = static_cast<u32>(v % field_size);
      v /= field_size;
    }
    if (poly_is_irreducible(poly, field_size, f)) return poly;
  }
  throw Error("no irreducible polynomial of the requested degree");
}

}  // namespace detail

class FieldTower;
using TowerPtr = std::shared_ptr<const FieldTower>;

class FieldElement;

/// The tower GF(p) < GF(q = p^e) < GF(q^m).
///
/// Elements of GF(q) are handled as integer codes in [0, q): the code of
/// c_0 + c_1 x + ... is sum c_i p^i.  Elements of GF(q^m) are codes in
/// [0, q^m) built the same way from their m GF(q) coefficient codes.  The
/// code order is the canonical element order used everywhere for
/// deterministic selection.
///
/// Towers are immutable; every operation is pure and safe to call
/// concurrently.
class FieldTower : public std::enable_shared_from_this<FieldTower> {
 public:
  /// Tower with canonical moduli (smallest-code monic irreducibles) and the
  /// polynomial basis (1, x, ..., x^(m-1)).
  static TowerPtr make(u32 p, u32 e, u32 m) {
    auto tw = std::shared_ptr<FieldTower>(new FieldTower(p, e, m, {}, {}));
    return tw;
  }

  /// Tower with explicit moduli (validated: monic, irreducible, in range).
  static TowerPtr make(u32 p, u32 e, u32 m, std::vector<u32> sub_modulus,
                       std::vector<u32> ext_modulus) {
    auto tw = std::shared_ptr<FieldTower>(
        new FieldTower(p, e, m, std::move(sub_modulus), std::move(ext_modulus)));
    return tw;
  }

  /// Same structure as `base` but with the given ordered basis of GF(q^m)
  /// over GF(q) (element codes).  Throws if the vectors are dependent.
  static TowerPtr with_basis(const TowerPtr& base, std::vector<u64> gamma_codes) {
    auto tw = std::shared_ptr<FieldTower>(new FieldTower(*base));
    tw->set_gamma(std::move(gamma_codes));
    return tw;
  }

  u32 characteristic() const { return p_; }
  u32 sub_degree() const { return e_; }
  u32 ext_degree() const { return m_; }
  u64 subfield_order() const { return q_; }
  u64 order() const { return order_; }
  const std::vector<u32>& sub_modulus() const { return sub_mod_; }
  const std::vector<u32>& ext_modulus() const { return ext_mod_; }
  const std::vector<u64>& gamma() const { return gamma_; }

  /// Structural identity: same p, e, m and moduli.  The basis gamma is a
  /// convention on top of the structure, not part of it.
  bool same_structure(const FieldTower& o) const {
    return p_ == o.p_ && e_ == o.e_ && m_ == o.m_ && sub_mod_ == o.sub_mod_ &&
           ext_mod_ == o.ext_mod_;
  }

  /// Agreement at the GF(q) level only; all a subfield-linear code needs.
  bool same_subfield(const FieldTower& o) const {
    return p_ == o.p_ && e_ == o.e_ && sub_mod_ == o.sub_mod_;
  }

  // ----- GF(q) arithmetic on codes in [0, q) -----

  u32 sub_add(u32 a, u32 b) const {
    return sub_add_tab_.empty() ? sub_add_slow(a, b) : sub_add_tab_[a * q_ + b];
  }
  u32 sub_sub(u32 a, u32 b) const { return sub_add(a, sub_neg(b)); }
  u32 sub_neg(u32 a) const { return sub_neg_tab_.empty() ? sub_neg_slow(a) : sub_neg_tab_[a]; }
  u32 sub_mul(u32 a, u32 b) const {
    return sub_mul_tab_.empty() ? sub_mul_slow(a, b) : sub_mul_tab_[a * q_ + b];
  }
  u32 sub_inv(u32 a) const {
    if (a == 0) throw Error("zero element has no inverse");
    return sub_inv_tab_.empty() ? sub_inv_slow(a) : sub_inv_tab_[a];
  }
  u32 sub_div(u32 a, u32 b) const { return sub_mul(a, sub_inv(b)); }

  // ----- GF(q^m) arithmetic on codes in [0, q^m) -----

  u64 add(u64 a, u64 b) const {
    return ext_add_tab_.empty() ? add_slow(a, b) : ext_add_tab_[a * order_ + b];
  }
  u64 sub(u64 a, u64 b) const { return add(a, neg(b)); }
  u64 neg(u64 a) const { return ext_neg_tab_.empty() ? neg_slow(a) : ext_neg_tab_[a]; }
  u64 mul(u64 a, u64 b) const {
    return ext_mul_tab_.empty() ? mul_slow(a, b) : ext_mul_tab_[a * order_ + b];
  }
  u64 inv(u64 a) const {
    if (a == 0) throw Error("zero element has no inverse");
    return ext_inv_tab_.empty() ? inv_slow(a) : ext_inv_tab_[a];
  }
  u64 div(u64 a, u64 b) const { return mul(a, inv(b)); }

  /// a^exp by square-and-multiply.
  u64 power(u64 a, u64 exp) const {
    u64 result = 1, base = a;
    while (exp != 0) {
      if (exp & 1) result = mul(result, base);
      base = mul(base, base);
      exp >>= 1;
    }
    return result;
  }

  /// a^(q^i); the i = 1 case is the GF(q)-automorphism generating the
  /// Galois group, so exponents are taken mod m.
  u64 frobenius_power(u64 a, u64 i) const {
    u64 result = a;
    for (u64 s = 0; s < i % m_; ++s) result = power(result, q_);
    return result;
  }

  /// Norm down to GF(q): a^((q^m - 1)/(q - 1)).  The result code is always
  /// < q (a subfield element); norm(0) = 0.
  u64 norm_to_subfield(u64 a) const {
    if (a == 0) return 0;
    return power(a, (order_ - 1) / (q_ - 1));
  }

  bool in_subfield(u64 code) const { return code < q_; }

  // ----- coefficients and basis coordinates -----

  /// The m GF(q) coefficient codes of an element, little-endian.
  std::vector<u32> ext_coeffs(u64 code) const {
    std::vector<u32> c(m_);
    for (u32 i = 0; i < m_; ++i) {
      c[i] = static_cast<u32>(code % q_);
      code /= q_;
    }
    return c;
  }

  u64 ext_from_coeffs(const std::vector<u32>& c) const {
    u64 code = 0;
    for (std::size_t i = c.size(); i-- > 0;) code = code * q_ + c[i];
    return code;
  }

  /// Coordinates of an element in the tower's ordered basis gamma.
  std::vector<u32> gamma_coords(u64 code) const {
    const std::vector<u32> c = ext_coeffs(code);
    if (gamma_is_polynomial_) return c;
    std::vector<u32> x(m_, 0);
    for (u32 i = 0; i < m_; ++i)
      for (u32 j = 0; j < m_; ++j)
        x[i] = sub_add(x[i], sub_mul(gamma_inv_[i * m_ + j], c[j]));
    return x;
  }

  u64 from_gamma_coords(const std::vector<u32>& x) const {
    u64 acc = 0;
    for (u32 i = 0; i < m_ && i < x.size(); ++i)
      if (x[i] != 0) acc = add(acc, mul(gamma_[i], x[i]));
    return acc;
  }

  // ----- element factory -----

  FieldElement element(u64 code) const;
  FieldElement zero() const;
  FieldElement one() const;
  /// The i-th basis element gamma_i (0-based index).
  FieldElement gamma_element(u32 i) const;

 private:
  struct PrimeOps {
    u32 p;
    u32 add(u32 a, u32 b) const { return (a + b) % p; }
    u32 sub(u32 a, u32 b) const { return (a + p - b) % p; }
    u32 mul(u32 a, u32 b) const { return static_cast<u32>((static_cast<u64>(a) * b) % p); }
    u32 inv(u32 a) const {
      if (a == 0) throw Error("zero element has no inverse");
      u32 r = 1;
      for (u32 e = p - 2; e != 0; e >>= 1) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
      }
      return r;
    }
  };
  struct SubOps {
    const FieldTower* tw;
    u32 add(u32 a, u32 b) const { return tw->sub_add(a, b); }
    u32 sub(u32 a, u32 b) const { return tw->sub_sub(a, b); }
    u32 mul(u32 a, u32 b) const { return tw->sub_mul(a, b); }
    u32 inv(u32 a) const { return tw->sub_inv(a); }
  };

  static constexpr u64 kSubTableLimit = 512;
  static constexpr u64 kExtTableLimit = 512;

  FieldTower(u32 p, u32 e, u32 m, std::vector<u32> sub_modulus, std::vector<u32> ext_modulus)
      : p_(p), e_(e), m_(m) {
    if (!detail::is_prime(p_)) throw Error("p must be prime");
    if (e_ < 1 || m_ < 1) throw Error("extension degrees must be positive");
    q_ = detail::pow_capped(p_, e_, u64{1} << 20);
    if (q_ > (u64{1} << 20)) throw Error("subfield order too large");
    order_ = detail::pow_capped(q_, m_, u64{1} << 40);
    if (order_ > (u64{1} << 40)) throw Error("field order too large");

    const PrimeOps pops{p_};
    if (sub_modulus.empty()) {
      sub_mod_ = detail::canonical_irreducible(e_, p_, pops);
    } else {
      sub_mod_ = std::move(sub_modulus);
      if (sub_mod_.size() != e_ + 1 || sub_mod_.back() != 1)
        throw Error("sub modulus must be monic of degree e");
      for (u32 c : sub_mod_)
        if (c >= p_) throw Error("sub modulus coefficient out of range");
      if (!detail::poly_is_irreducible(sub_mod_, p_, pops))
        throw Error("sub modulus is not irreducible");
    }
    build_sub_tables();

    const SubOps sops{this};
    if (ext_modulus.empty()) {
      ext_mod_ = detail::canonical_irreducible(m_, q_, sops);
    } else {
      ext_mod_ = std::move(ext_modulus);
      if (ext_mod_.size() != m_ + 1 || ext_mod_.back() != 1)
        throw Error("ext modulus must be monic of degree m");
      for (u32 c : ext_mod_)
        if (c >= q_) throw Error("ext modulus coefficient out of range");
      if (!detail::poly_is_irreducible(ext_mod_, q_, sops))
        throw Error("ext modulus is not irreducible");
    }
    build_ext_tables();

    gamma_.resize(m_);
    for (u32 i = 0; i < m_; ++i) gamma_[i] = detail::pow_capped(q_, i, order_);
    gamma_is_polynomial_ = true;
  }

  void set_gamma(std::vector<u64> gamma_codes) {
    if (gamma_codes.size() != m_) throw Error("gamma must have exactly m entries");
    for (u64 g : gamma_codes)
      if (g >= order_) throw Error("gamma entry out of range");
    gamma_ = std::move(gamma_codes);
    gamma_is_polynomial_ = true;
    for (u32 i = 0; i < m_; ++i)
      if (gamma_[i] != detail::pow_capped(q_, i, order_)) gamma_is_polynomial_ = false;
    if (gamma_is_polynomial_) return;

    // Invert the coordinate matrix (column i = coefficients of gamma_i)
    // by Gauss-Jordan over GF(q).
    std::vector<u32> mat(static_cast<std::size_t>(m_) * m_, 0);
    std::vector<u32> inv(static_cast<std::size_t>(m_) * m_, 0);
    for (u32 i = 0; i < m_; ++i) {
      const std::vector<u32> c = ext_coeffs(gamma_[i]);
      for (u32 r = 0; r < m_; ++r) mat[r * m_ + i] = c[r];
      inv[i * m_ + i] = 1;
    }
    for (u32 col = 0; col < m_; ++col) {
      u32 pivot = col;
      while (pivot < m_ && mat[pivot * m_ + col] == 0) ++pivot;
      if (pivot == m_) throw Error("gamma is not a basis");
      if (pivot != col)
        for (u32 j = 0; j < m_; ++j) {
          std::swap(mat[pivot * m_ + j], mat[col * m_ + j]);
          std::swap(inv[pivot * m_ + j], inv[col * m_ + j]);
        }
      const u32 scale = sub_inv(mat[col * m_ + col]);
      for (u32 j = 0; j < m_; ++j) {
        mat[col * m_ + j] = sub_mul(mat[col * m_ + j], scale);
        inv[col * m_ + j] = sub_mul(inv[col * m_ + j], scale);
      }
      for (u32 r = 0; r < m_; ++r) {
        if (r == col) continue;
        const u32 factor = mat[r * m_ + col];
        if (factor == 0) continue;
        for (u32 j = 0; j < m_; ++j) {
          mat[r * m_ + j] = sub_sub(mat[r * m_ + j], sub_mul(factor, mat[col * m_ + j]));
          inv[r * m_ + j] = sub_sub(inv[r * m_ + j], sub_mul(factor, inv[col * m_ + j]));
        }
      }
    }
    gamma_inv_ = std::move(inv);
  }

  // --- slow paths (polynomial arithmetic on decoded digit vectors) ---

  std::vector<u32> sub_digits(u32 code) const {
    std::vector<u32> d(e_);
    for (u32 i = 0; i < e_; ++i) {
      d[i] = code % p_;
      code /= p_;
    }
    return d;
  }
  u32 sub_from_digits(const std::vector<u32>& d) const {
    u32 code = 0;
    for (std::size_t i = d.size(); i-- > 0;) code = code * p_ + d[i];
    return code;
  }

  u32 sub_add_slow(u32 a, u32 b) const {
    if (e_ == 1) return (a + b) % p_;
    auto da = sub_digits(a), db = sub_digits(b);
    for (u32 i = 0; i < e_; ++i) da[i] = (da[i] + db[i]) % p_;
    return sub_from_digits(da);
  }
  u32 sub_neg_slow(u32 a) const {
    if (e_ == 1) return (p_ - a) % p_;
    auto d = sub_digits(a);
    for (u32 i = 0; i < e_; ++i) d[i] = (p_ - d[i]) % p_;
    return sub_from_digits(d);
  }
  u32 sub_mul_slow(u32 a, u32 b) const {
    if (e_ == 1) return static_cast<u32>((static_cast<u64>(a) * b) % p_);
    const PrimeOps pops{p_};
    auto prod = detail::poly_mul(sub_digits(a), sub_digits(b), pops);
    prod = detail::poly_rem(std::move(prod), sub_mod_, pops);
    prod.resize(e_, 0);
    return sub_from_digits(prod);
  }
  u32 sub_inv_slow(u32 a) const {
    if (e_ == 1) return PrimeOps{p_}.inv(a);
    const PrimeOps pops{p_};
    auto r = detail::poly_mod_inverse(sub_digits(a), sub_mod_, pops);
    r.resize(e_, 0);
    return sub_from_digits(r);
  }

  u64 ext_from_poly(std::vector<u32> c) const {
    c.resize(m_, 0);
    u64 code = 0;
    for (std::size_t i = c.size(); i-- > 0;) code = code * q_ + c[i];
    return code;
  }

  u64 add_slow(u64 a, u64 b) const {
    auto ca = ext_coeffs(a), cb = ext_coeffs(b);
    for (u32 i = 0; i < m_; ++i) ca[i] = sub_add(ca[i], cb[i]);
    return ext_from_poly(std::move(ca));
  }
  u64 neg_slow(u64 a) const {
    auto c = ext_coeffs(a);
    for (u32 i = 0; i < m_; ++i) c[i] = sub_neg(c[i]);
    return ext_from_poly(std::move(c));
  }
  u64 mul_slow(u64 a, u64 b) const {
    const SubOps sops{this};
    auto prod = detail::poly_mul(ext_coeffs(a), ext_coeffs(b), sops);
    prod = detail::poly_rem(std::move(prod), ext_mod_, sops);
    return ext_from_poly(std::move(prod));
  }
  u64 inv_slow(u64 a) const {
    const SubOps sops{this};
    return ext_from_poly(detail::poly_mod_inverse(ext_coeffs(a), ext_mod_, sops));
  }

  void build_sub_tables() {
    if (q_ > kSubTableLimit) return;
    sub_add_tab_.resize(q_ * q_);
    sub_mul_tab_.resize(q_ * q_);
    sub_neg_tab_.resize(q_);
    sub_inv_tab_.assign(q_, 0);
    for (u64 a = 0; a < q_; ++a) {
      sub_neg_tab_[a] = sub_neg_slow(static_cast<u32>(a));
      for (u64 b = 0; b < q_; ++b) {
        sub_add_tab_[a * q_ + b] = sub_add_slow(static_cast<u32>(a), static_cast<u32>(b));
        sub_mul_tab_[a * q_ + b] = sub_mul_slow(static_cast<u32>(a), static_cast<u32>(b));
      }
    }
    for (u64 a = 1; a < q_; ++a) sub_inv_tab_[a] = sub_inv_slow(static_cast<u32>(a));
  }

  void build_ext_tables() {
    if (order_ > kExtTableLimit) return;
    ext_add_tab_.resize(order_ * order_);
    ext_mul_tab_.resize(order_ * order_);
    ext_neg_tab_.resize(order_);
    ext_inv_tab_.assign(order_, 0);
    for (u64 a = 0; a < order_; ++a) {
      ext_neg_tab_[a] = neg_slow(a);
      for (u64 b = 0; b < order_; ++b) {
        ext_add_tab_[a * order_ + b] = static_cast<u32>(add_slow(a, b));
        ext_mul_tab_[a * order_ + b] = static_cast<u32>(mul_slow(a, b));
      }
    }
    for (u64 a = 1; a < order_; ++a) ext_inv_tab_[a] = inv_slow(a);
  }

  u32 p_ = 2, e_ = 1, m_ = 1;
  u64 q_ = 2, order_ = 2;
  std::vector<u32> sub_mod_, ext_mod_;
  std::vector<u64> gamma_;
  std::vector<u32> gamma_inv_;  // m x m coordinate-change matrix, row-major
  bool gamma_is_polynomial_ = true;

  std::vector<u32> sub_add_tab_, sub_mul_tab_, sub_neg_tab_, sub_inv_tab_;
  std::vector<u32> ext_add_tab_, ext_mul_tab_;
  std::vector<u64> ext_neg_tab_, ext_inv_tab_;
};

/// One element of GF(q^m), as its canonical integer code plus the tower it
/// lives in.  Value type; all operators check that both operands share the
/// same tower structure.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(TowerPtr tower, u64 code) : tower_(std::move(tower)), code_(code) {
    if (!tower_) throw Error("field element needs a tower");
    if (code_ >= tower_->order()) throw Error("element code out of range");
  }

  const TowerPtr& tower() const { return tower_; }
  u64 code() const { return code_; }
  bool is_zero() const { return code_ == 0; }
  std::vector<u32> coeffs() const { return require()->ext_coeffs(code_); }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    return {a.joint(b), a.require()->add(a.code_, b.code_)};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    return {a.joint(b), a.require()->sub(a.code_, b.code_)};
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    return {a.joint(b), a.require()->mul(a.code_, b.code_)};
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    return {a.joint(b), a.require()->div(a.code_, b.code_)};
  }
  FieldElement operator-() const { return {tower_, require()->neg(code_)}; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    if (!a.tower_ || !b.tower_) return !a.tower_ && !b.tower_;
    return a.tower_->same_structure(*b.tower_) && a.code_ == b.code_;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

 private:
  const FieldTower* require() const {
    if (!tower_) throw Error("uninitialized field element");
    return tower_.get();
  }
  TowerPtr joint(const FieldElement& other) const {
    require();
    other.require();
    if (tower_.get() != other.tower_.get() && !tower_->same_structure(*other.tower_))
      throw Error("field tower mismatch");
    return tower_;
  }

  TowerPtr tower_;
  u64 code_ = 0;
};

inline FieldElement FieldTower::element(u64 code) const {
  return FieldElement(shared_from_this(), code);
}
inline FieldElement FieldTower::zero() const { return element(0); }
inline FieldElement FieldTower::one() const { return element(1); }
inline FieldElement FieldTower::gamma_element(u32 i) const {
  if (i >= m_) throw Error("basis index out of range");
  return element(gamma_[i]);
}

inline FieldElement inv(const FieldElement& a) {
  return a.tower()->element(a.tower()->inv(a.code()));
}
inline FieldElement power(const FieldElement& a, u64 exp) {
  return a.tower()->element(a.tower()->power(a.code(), exp));
}
inline FieldElement frobenius(const FieldElement& a, u64 i) {
  return a.tower()->element(a.tower()->frobenius_power(a.code(), i));
}
inline FieldElement norm(const FieldElement& a) {
  return a.tower()->element(a.tower()->norm_to_subfield(a.code()));
}

/// All q^m elements in increasing canonical code order.
inline std::vector<FieldElement> enumerate_elements(const TowerPtr& tower,
                                                    u64 guard = kDefaultEnumGuard) {
  if (tower->order() > guard) throw GuardError("field enumeration guard exceeded");
  std::vector<FieldElement> out;
  out.reserve(static_cast<std::size_t>(tower->order()));
  for (u64 c = 0; c < tower->order(); ++c) out.push_back(tower->element(c));
  return out;
}

}  // namespace msrd
