#pragma once

// Formal fractions whose denominators are products of a fixed set of
// factors, plus Euclidean (pseudo-)division with respect to one variable.

#include <cstdint>
#include <optional>
#include <vector>

#include "towerlab/poly.hpp"

namespace towerlab {

/// One denominator factor raised to a positive power. Factors are stored
/// monic (leading coefficient 1 in the term order).
struct DenFactor {
  SparsePoly poly;
  std::uint32_t exp;
};

class RatExpr {
 public:
  RatExpr(SparsePoly num);  // NOLINT(google-explicit-constructor): polynomials are fractions
  RatExpr(SparsePoly num, const std::vector<DenFactor>& den);
  /// num / factor^exp
  static RatExpr over(SparsePoly num, const SparsePoly& factor, std::uint32_t exp = 1);

  const FieldCtx& ctx() const { return num_.ctx(); }
  const SparsePoly& num() const { return num_; }
  const std::vector<DenFactor>& den() const { return den_; }
  bool is_polynomial() const { return den_.empty(); }
  /// Expanded product of all denominator factors.
  SparsePoly den_product() const;

  RatExpr& operator+=(const RatExpr& o);
  RatExpr& operator-=(const RatExpr& o);
  RatExpr& operator*=(const RatExpr& o);

  friend RatExpr operator+(RatExpr x, const RatExpr& y) { return x += y; }
  friend RatExpr operator-(RatExpr x, const RatExpr& y) { return x -= y; }
  friend RatExpr operator*(RatExpr x, const RatExpr& y) { return x *= y; }
  friend RatExpr operator-(RatExpr x) {
    x.num_ = -x.num_;
    return x;
  }

  /// nullopt when the denominator vanishes at the point.
  std::optional<Element> try_evaluate(const Assignment& at) const;
  Element evaluate(const Assignment& at) const;

  std::string to_string() const;

 private:
  void add_factor(SparsePoly factor, std::uint32_t exp);

  SparsePoly num_;
  std::vector<DenFactor> den_;  // sorted by SparsePoly::compare, distinct
};

RatExpr pow(const RatExpr& x, std::uint32_t e);

enum class FactorKind { A, AMinusOne, ALambda, CKummer };

/// a_i, a_i - 1, a_i^q + a_i - 1 or c_i^(q-1) - 1.
struct DeclaredFactor {
  FactorKind kind;
  unsigned index;
  friend bool operator==(const DeclaredFactor&, const DeclaredFactor&) = default;
};

SparsePoly declared_factor_poly(const FieldCtx& ctx, DeclaredFactor f, std::uint64_t q);

/// Identifies a monic factor with a member of the declared set.
std::optional<DeclaredFactor> classify_factor(const SparsePoly& factor, std::uint64_t q);

/// Polynomial that vanishes wherever e does and the denominator does not:
/// the numerator over the common denominator. Throws UndeclaredDenominator
/// if any factor is outside the declared set.
SparsePoly clear_denominators(const RatExpr& e, std::uint64_t q);

/// Division in K(other variables)[var]. With lc = leading coefficient of the
/// divisor in var and e = lc_power:
///   lc^e * P = pseudo_quotient * R + pseudo_remainder,
/// quotient = pseudo_quotient / lc^e and remainder = pseudo_remainder / lc^e.
/// Steps whose leading coefficient is an exact multiple of lc use plain
/// division, so e stays 0 whenever no fraction is needed.
struct EuclidResult {
  RatExpr quotient;
  RatExpr remainder;
  SparsePoly lc;
  std::uint32_t lc_power;
  SparsePoly pseudo_quotient;
  SparsePoly pseudo_remainder;
};

EuclidResult euclid_reduce(const SparsePoly& p, const SparsePoly& r, Var var);

}  // namespace towerlab
