#pragma once

// Exact sparse multivariate polynomials over F_{l^k} in the indexed tower
// variables a_i, b_i, c_i.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "towerlab/field.hpp"

namespace towerlab {

enum class VarKind : std::uint8_t { A = 0, B = 1, C = 2 };

/// An indexed symbol a_i, b_i or c_i (i >= 1). Ordered by kind, then index.
struct Var {
  VarKind kind;
  unsigned index;

  friend auto operator<=>(const Var&, const Var&) = default;
  std::string name() const;
  /// Parses "a3", "b1", ...
  static std::optional<Var> parse(std::string_view text);
};

inline Var var_a(unsigned i) { return {VarKind::A, i}; }
inline Var var_b(unsigned i) { return {VarKind::B, i}; }
inline Var var_c(unsigned i) { return {VarKind::C, i}; }

/// Sparse monomial: (variable, exponent) pairs sorted by variable, exponents > 0.
using Monomial = std::vector<std::pair<Var, std::uint32_t>>;

/// Graded lexicographic order, leading term first: higher total degree wins,
/// ties go to the larger exponent at the first differing variable in
/// (a_1, a_2, ..., b_1, ..., c_1, ...) order.
struct TermOrder {
  bool operator()(const Monomial& x, const Monomial& y) const;
};

std::uint32_t total_degree(const Monomial& m);

/// Variable lookup used by evaluation; nullopt means the coordinate is missing.
using Assignment = std::function<std::optional<Element>(Var)>;

class SparsePoly {
 public:
  using Terms = std::map<Monomial, Element, TermOrder>;
  using Exponents = std::vector<std::uint32_t>;

  explicit SparsePoly(const FieldCtx& ctx) : ctx_(&ctx) {}
  static SparsePoly constant(const Element& c);
  static SparsePoly constant(const FieldCtx& ctx, long long n);
  static SparsePoly variable(const FieldCtx& ctx, Var v, std::uint32_t exp = 1);
  static SparsePoly term(const Element& coeff, Monomial m);

  const FieldCtx& ctx() const { return *ctx_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t size() const { return terms_.size(); }
  const Element& leading_coefficient() const;
  const Monomial& leading_monomial() const;

  /// Every variable that occurs, in canonical variable order.
  std::vector<Var> variables() const;
  /// Exponent sequence of a monomial relative to variables().
  static Exponents dense_exponents(const Monomial& m, const std::vector<Var>& vars);

  std::uint32_t degree_in(Var v) const;
  std::uint32_t total_degree() const;
  /// deg -> coefficient polynomial in the remaining variables.
  std::map<std::uint32_t, SparsePoly> collect(Var v) const;
  SparsePoly coefficient_of(Var v, std::uint32_t deg) const;

  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  SparsePoly& operator*=(const SparsePoly& o);
  SparsePoly& operator*=(const Element& c);

  friend SparsePoly operator+(SparsePoly x, const SparsePoly& y) { return x += y; }
  friend SparsePoly operator-(SparsePoly x, const SparsePoly& y) { return x -= y; }
  friend SparsePoly operator*(const SparsePoly& x, const SparsePoly& y);
  friend SparsePoly operator*(SparsePoly x, const Element& c) { return x *= c; }
  friend SparsePoly operator-(SparsePoly x);
  friend bool operator==(const SparsePoly& x, const SparsePoly& y);

  /// Multiplies every term by a monomial.
  SparsePoly shifted(const Monomial& m) const;

  Element evaluate(const Assignment& at) const;

  /// Quotient if divisor divides *this exactly, nullopt otherwise.
  std::optional<SparsePoly> divide_exact(const SparsePoly& divisor) const;

  std::string to_string() const;

  /// Total order on polynomials of one context (used to key factors).
  static std::strong_ordering compare(const SparsePoly& x, const SparsePoly& y);

 private:
  void add_term(const Monomial& m, const Element& c);
  void check_same(const SparsePoly& o) const {
    if (ctx_ != o.ctx_) throw ContextMismatch();
  }

  const FieldCtx* ctx_;
  Terms terms_;
};

SparsePoly pow(const SparsePoly& x, std::uint32_t e);

/// Product of two monomials.
Monomial monomial_mul(const Monomial& x, const Monomial& y);
/// x / y when y divides x.
std::optional<Monomial> monomial_div(const Monomial& x, const Monomial& y);
std::string monomial_to_string(const Monomial& m);

}  // namespace towerlab
