#pragma once

// Finite fields F_p ⊂ F_l ⊂ F_{l^k} with l = q^3, q = p^m.
//
// An element is identified by its canonical index: the base-p digits of the
// index, least significant first, are the coordinates of the element in the
// two-step tower (k blocks of 3m digits, block j holding the F_l-coordinate
// of x^j). Index order is the canonical enumeration order, so 0 is zero,
// 1 is one and 2 is the inner generator t when p = 2.

#include <compare>
#include <cstdint>
#include <memory>
#include <ranges>
#include <span>
#include <string>
#include <vector>

#include "towerlab/errors.hpp"

namespace towerlab {

/// 3^12: the largest field the workbench builds unless told otherwise.
inline constexpr std::uint64_t kDefaultSizeCap = 531441;

class FieldCtx {
 public:
  using Code = std::uint32_t;

  /// Builds F_{l^k} with l = (p^m)^3. The inner and outer moduli are the
  /// lexicographically least monic irreducibles (c0 compared first).
  static std::shared_ptr<const FieldCtx> make(unsigned p, unsigned m, unsigned k,
                                              std::uint64_t size_cap = kDefaultSizeCap);

  FieldCtx(const FieldCtx&) = delete;
  FieldCtx& operator=(const FieldCtx&) = delete;

  unsigned p() const { return p_; }
  unsigned m() const { return m_; }
  unsigned k() const { return k_; }
  std::uint64_t q() const { return q_; }
  std::uint64_t ell() const { return ell_; }
  std::uint64_t size() const { return size_; }
  unsigned inner_degree() const { return 3 * m_; }
  /// Dimension over F_p.
  unsigned degree() const { return 3 * m_ * k_; }

  /// Coefficients c0..c_{3m} of the inner modulus over F_p (monic).
  const std::vector<unsigned>& inner_modulus() const { return inner_modulus_; }
  /// Coefficients c0..c_k of the outer modulus over F_l, as F_l indices (monic).
  const std::vector<Code>& outer_modulus() const { return outer_modulus_; }
  /// The subfield F_l (this context itself when k = 1).
  const FieldCtx& base() const { return base_ ? *base_ : *this; }

  Code zero() const { return 0; }
  Code one() const { return 1; }
  Code from_integer(long long n) const;

  Code add(Code x, Code y) const;
  Code neg(Code x) const { return neg_[x]; }
  Code sub(Code x, Code y) const { return add(x, neg_[y]); }
  Code mul(Code x, Code y) const;
  Code inv(Code x) const;
  Code pow(Code x, std::uint64_t e) const;
  Code frobenius(Code x) const { return pow(x, p_); }

  /// Multiplication straight from the tower definition (polynomial products
  /// reduced by the two moduli), bypassing the log tables.
  Code mul_structural(Code x, Code y) const;

  /// The primitive element the log tables are built on.
  Code generator() const { return generator_; }
  /// Discrete log base generator(); x must be nonzero.
  std::uint32_t log(Code x) const;

  std::vector<unsigned> digits(Code x) const;
  Code from_digits(std::span<const unsigned> digits) const;
  /// k blocks of 3m integers mod p, little-endian at both levels.
  std::vector<std::vector<unsigned>> coordinates(Code x) const;

 private:
  FieldCtx() = default;
  void build_tables();
  Code inner_mul_structural(Code x, Code y) const;

  unsigned p_ = 0, m_ = 0, k_ = 0;
  std::uint64_t q_ = 0, ell_ = 0, size_ = 0;
  std::vector<unsigned> inner_modulus_;
  std::vector<Code> outer_modulus_;
  std::shared_ptr<const FieldCtx> base_;
  std::vector<Code> pow_p_;  // p^i for i < degree()

  Code generator_ = 0;
  std::vector<Code> exp_;           // exp_[i] = g^i, i < size-1
  std::vector<std::uint32_t> log_;  // log_[0] unused
  std::vector<std::int32_t> zech_;  // log(1 + g^i), -1 when 1 + g^i = 0
  std::vector<Code> neg_;
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

/// Convenience wrapper around FieldCtx::make.
FieldPtr make_field(unsigned p, unsigned m, unsigned k, std::uint64_t size_cap = kDefaultSizeCap);

/// A field element. Refers to, but does not own, its context.
class Element {
 public:
  using Code = FieldCtx::Code;

  Element(const FieldCtx& ctx, Code code) : ctx_(&ctx), code_(code) {}
  static Element zero(const FieldCtx& ctx) { return {ctx, 0}; }
  static Element one(const FieldCtx& ctx) { return {ctx, 1}; }
  static Element from_integer(const FieldCtx& ctx, long long n) { return {ctx, ctx.from_integer(n)}; }

  const FieldCtx& ctx() const { return *ctx_; }
  Code code() const { return code_; }
  bool is_zero() const { return code_ == 0; }
  bool is_one() const { return code_ == 1; }
  std::vector<std::vector<unsigned>> coordinates() const { return ctx_->coordinates(code_); }
  std::string to_string() const;

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Element& o);
  Element& operator/=(const Element& o);

  friend Element operator+(Element x, const Element& y) { return x += y; }
  friend Element operator-(Element x, const Element& y) { return x -= y; }
  friend Element operator*(Element x, const Element& y) { return x *= y; }
  friend Element operator/(Element x, const Element& y) { return x /= y; }
  friend Element operator-(const Element& x) { return {*x.ctx_, x.ctx_->neg(x.code_)}; }

  friend bool operator==(const Element& x, const Element& y) {
    return x.ctx_ == y.ctx_ && x.code_ == y.code_;
  }
  /// Canonical order; only meaningful within one context.
  friend std::strong_ordering operator<=>(const Element& x, const Element& y) {
    return x.code_ <=> y.code_;
  }

 private:
  void check_same(const Element& o) const {
    if (ctx_ != o.ctx_) throw ContextMismatch();
  }

  const FieldCtx* ctx_;
  Code code_;
};

Element inverse(const Element& x);
Element pow(const Element& x, std::uint64_t e);
Element frobenius(const Element& x);

/// All elements in canonical order (zero first); a lazy view of size() items.
inline auto enumerate_elements(const FieldCtx& ctx) {
  return std::views::iota(FieldCtx::Code{0}, static_cast<FieldCtx::Code>(ctx.size())) |
         std::views::transform([&ctx](FieldCtx::Code c) { return Element(ctx, c); });
}

bool is_prime(std::uint64_t n);

}  // namespace towerlab
