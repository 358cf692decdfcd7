#include "towerlab/ratexpr.hpp"

#include <algorithm>

namespace towerlab {

RatExpr::RatExpr(SparsePoly num) : num_(std::move(num)) {}

RatExpr::RatExpr(SparsePoly num, const std::vector<DenFactor>& den) : num_(std::move(num)) {
  for (const auto& f : den) add_factor(f.poly, f.exp);
}

RatExpr RatExpr::over(SparsePoly num, const SparsePoly& factor, std::uint32_t exp) {
  RatExpr out(std::move(num));
  out.add_factor(factor, exp);
  return out;
}

void RatExpr::add_factor(SparsePoly factor, std::uint32_t exp) {
  if (exp == 0) return;
  if (factor.is_zero()) throw DomainError("zero denominator factor");
  const Element lc_inv = inverse(factor.leading_coefficient());
  // 1/(lc*f)^e = lc^-e / f^e
  num_ *= pow(lc_inv, exp);
  if (factor.is_constant()) return;
  factor *= lc_inv;
  auto it = std::lower_bound(den_.begin(), den_.end(), factor, [](const DenFactor& d, const SparsePoly& f) {
    return SparsePoly::compare(d.poly, f) < 0;
  });
  if (it != den_.end() && it->poly == factor) {
    it->exp += exp;
  } else {
    den_.insert(it, DenFactor{std::move(factor), exp});
  }
}

SparsePoly RatExpr::den_product() const {
  SparsePoly out = SparsePoly::constant(ctx(), 1);
  for (const auto& f : den_) out *= pow(f.poly, f.exp);
  return out;
}

namespace {

std::uint32_t exponent_of(const std::vector<DenFactor>& den, const SparsePoly& f) {
  for (const auto& d : den) {
    if (d.poly == f) return d.exp;
  }
  return 0;
}

}  // namespace

RatExpr& RatExpr::operator+=(const RatExpr& o) {
  if (&o.ctx() != &ctx()) throw ContextMismatch();
  // common denominator: factor-wise maximum, numerators scaled by cofactors
  std::vector<DenFactor> lcm = den_;
  for (const auto& f : o.den_) {
    auto it = std::find_if(lcm.begin(), lcm.end(), [&](const DenFactor& d) { return d.poly == f.poly; });
    if (it == lcm.end()) {
      lcm.push_back(f);
    } else {
      it->exp = std::max(it->exp, f.exp);
    }
  }
  SparsePoly left = num_;
  SparsePoly right = o.num_;
  for (const auto& f : lcm) {
    if (auto e = f.exp - exponent_of(den_, f.poly)) left *= pow(f.poly, e);
    if (auto e = f.exp - exponent_of(o.den_, f.poly)) right *= pow(f.poly, e);
  }
  num_ = left + right;
  den_.clear();
  for (const auto& f : lcm) add_factor(f.poly, f.exp);
  return *this;
}

RatExpr& RatExpr::operator-=(const RatExpr& o) { return *this += -o; }

RatExpr& RatExpr::operator*=(const RatExpr& o) {
  if (&o.ctx() != &ctx()) throw ContextMismatch();
  num_ *= o.num_;
  for (const auto& f : o.den_) add_factor(f.poly, f.exp);
  return *this;
}

RatExpr pow(const RatExpr& x, std::uint32_t e) {
  std::vector<DenFactor> den;
  for (const auto& f : x.den()) den.push_back({f.poly, f.exp * e});
  return RatExpr(pow(x.num(), e), den);
}

std::optional<Element> RatExpr::try_evaluate(const Assignment& at) const {
  Element d = Element::one(ctx());
  for (const auto& f : den_) d *= pow(f.poly.evaluate(at), f.exp);
  if (d.is_zero()) return std::nullopt;
  return num_.evaluate(at) / d;
}

Element RatExpr::evaluate(const Assignment& at) const {
  auto v = try_evaluate(at);
  if (!v) throw DomainError("denominator vanishes at the evaluation point");
  return *v;
}

std::string RatExpr::to_string() const {
  if (den_.empty()) return num_.to_string();
  std::string s = "(" + num_.to_string() + ") / (";
  for (std::size_t i = 0; i < den_.size(); ++i) {
    if (i) s += " * ";
    s += "(" + den_[i].poly.to_string() + ")";
    if (den_[i].exp != 1) s += "^" + std::to_string(den_[i].exp);
  }
  return s + ")";
}

SparsePoly declared_factor_poly(const FieldCtx& ctx, DeclaredFactor f, std::uint64_t q) {
  const auto qq = static_cast<std::uint32_t>(q);
  const auto one = SparsePoly::constant(ctx, 1);
  switch (f.kind) {
    case FactorKind::A:
      return SparsePoly::variable(ctx, var_a(f.index));
    case FactorKind::AMinusOne:
      return SparsePoly::variable(ctx, var_a(f.index)) - one;
    case FactorKind::ALambda:
      return SparsePoly::variable(ctx, var_a(f.index), qq) + SparsePoly::variable(ctx, var_a(f.index)) - one;
    case FactorKind::CKummer:
      return SparsePoly::variable(ctx, var_c(f.index), qq - 1) - one;
  }
  throw InvalidArgument("unknown factor kind");
}

std::optional<DeclaredFactor> classify_factor(const SparsePoly& factor, std::uint64_t q) {
  const auto vars = factor.variables();
  if (vars.size() != 1) return std::nullopt;
  const Var v = vars.front();
  std::vector<FactorKind> kinds;
  if (v.kind == VarKind::A) kinds = {FactorKind::A, FactorKind::AMinusOne, FactorKind::ALambda};
  if (v.kind == VarKind::C) kinds = {FactorKind::CKummer};
  for (auto kind : kinds) {
    DeclaredFactor cand{kind, v.index};
    if (declared_factor_poly(factor.ctx(), cand, q) == factor) return cand;
  }
  return std::nullopt;
}

SparsePoly clear_denominators(const RatExpr& e, std::uint64_t q) {
  for (const auto& f : e.den()) {
    if (!classify_factor(f.poly, q)) {
      throw UndeclaredDenominator("denominator factor " + f.poly.to_string() + " is not in the declared set");
    }
  }
  return e.num();
}

EuclidResult euclid_reduce(const SparsePoly& p, const SparsePoly& r, Var var) {
  const std::uint32_t dr = r.degree_in(var);
  if (dr == 0) throw InvalidArgument(var.name() + " does not occur in the divisor");
  const SparsePoly lc = r.coefficient_of(var, dr);
  SparsePoly rem = p;
  SparsePoly quot(p.ctx());
  std::uint32_t e = 0;
  while (!rem.is_zero()) {
    const std::uint32_t d = rem.degree_in(var);
    if (d < dr) break;
    auto t = rem.coefficient_of(var, d).divide_exact(lc);
    if (!t) {
      rem *= lc;
      quot *= lc;
      ++e;
      continue;
    }
    SparsePoly step = t->shifted(d > dr ? Monomial{{var, d - dr}} : Monomial{});
    quot += step;
    rem -= step * r;
  }
  return EuclidResult{RatExpr::over(quot, lc, e), RatExpr::over(rem, lc, e), lc, e, quot, rem};
}

}  // namespace towerlab
