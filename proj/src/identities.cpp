#include <algorithm>
#include <set>

#include "towerlab/verify.hpp"

namespace towerlab {

namespace {

SparsePoly var(const FieldCtx& ctx, Var v, std::uint32_t e = 1) { return SparsePoly::variable(ctx, v, e); }
SparsePoly lit(const FieldCtx& ctx, long long n) { return SparsePoly::constant(ctx, n); }

SparsePoly lambda(const FieldCtx& ctx, unsigned i, std::uint32_t q) {
  return var(ctx, var_a(i), q) + var(ctx, var_a(i)) - lit(ctx, 1);
}

}  // namespace

const std::vector<std::string>& core_identity_ids() {
  static const std::vector<std::string> ids = {"ID-CPROD", "ID-BPROD", "ID-CREC", "ID-ASREC",
                                               "ID-AINV",  "WZ",       "WX"};
  return ids;
}

bool is_core_identity(std::string_view id) {
  const auto& ids = core_identity_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

IdentitySpec make_identity(const FieldCtx& ctx, std::string_view id, unsigned n) {
  if (n < 2) throw InvalidArgument("identities need level n >= 2");
  const auto q = static_cast<std::uint32_t>(ctx.q());
  const unsigned m = n - 1;
  auto a = [&](unsigned i, std::uint32_t e = 1) { return var(ctx, var_a(i), e); };
  auto b = [&](unsigned i, std::uint32_t e = 1) { return var(ctx, var_b(i), e); };
  auto c = [&](unsigned i, std::uint32_t e = 1) { return var(ctx, var_c(i), e); };
  const auto one = lit(ctx, 1);

  if (id == "ID-CPROD") {
    return {std::string(id), RatExpr(c(n, q - 1) - a(n, q - 1) * b(m, q - 1)), n, n, "c_n, a_n, b_{n-1}",
            "c_n^{q-1} = a_n^{q-1} b_{n-1}^{q-1}"};
  }
  if (id == "ID-BPROD") {
    return {std::string(id), RatExpr(b(n, q - 1) - a(n, q - 1) * pow(a(m) - one, q - 1) * c(m, q - 1)), n, n,
            "b_n, a_n, a_{n-1}, c_{n-1}", "b_n^{q-1} = a_n^{q-1} (a_{n-1}-1)^{q-1} c_{n-1}^{q-1}"};
  }
  if (id == "ID-CREC") {
    // (c_{m+1}^q - c_{m+1})^{q-1} + 1 + c_m^{q^2-q} / (c_m^{q-1} - 1)^{q-1}
    RatExpr lhs(pow(c(n, q) - c(n), q - 1) + one);
    RatExpr rhs = RatExpr::over(c(m, q * q - q), c(m, q - 1) - one, q - 1);
    return {std::string(id), lhs + rhs, m, n, "c_{n+1}, c_n",
            "(c_{n+1}^q - c_{n+1})^{q-1} + 1 = -c_n^{q^2-q} / (c_n^{q-1} - 1)^{q-1}"};
  }
  if (id == "ID-ASREC") {
    const auto z = a(n) * b(m);
    return {std::string(id), RatExpr(pow(z, q) - z + b(m)), m, n, "a_{n+1}, b_n",
            "(a_{n+1} b_n)^q - (a_{n+1} b_n) = -b_n"};
  }
  if (id == "ID-AINV") {
    // a_n = 1 / (1 - c_n^{q-1})
    return {std::string(id), RatExpr(a(n)) + RatExpr::over(one, c(n, q - 1) - one), n, n, "a_n, c_n",
            "a_n = 1 / (1 - c_n^{q-1})"};
  }
  if (id == "WZ") {
    // c_n^{q-1} / a_n^{q-1} = b_{n-1}^{q-1}, so c_n / (a_n b_{n-1}) is a (q-1)-th root of unity
    return {std::string(id), RatExpr::over(c(n, q - 1), a(n), q - 1) - RatExpr(b(m, q - 1)), n, n,
            "c_n, a_n, b_{n-1}", "(c_n / (a_n b_{n-1}))^{q-1} = 1"};
  }
  if (id == "WX") {
    RatExpr ratio = RatExpr(b(n, q - 1), {{a(n), q - 1}, {a(m) - one, q - 1}});
    return {std::string(id), ratio - RatExpr(c(m, q - 1)), n, n, "b_n, a_n, a_{n-1}, c_{n-1}",
            "(b_n / (a_n (a_{n-1}-1) c_{n-1}))^{q-1} = 1"};
  }
  throw InvalidArgument("unknown identity '" + std::string(id) + "'");
}

std::vector<IdentitySpec> builtin_identities(const FieldCtx& ctx, unsigned n) {
  std::vector<IdentitySpec> out;
  for (const auto& id : core_identity_ids()) out.push_back(make_identity(ctx, id, n));
  return out;
}

IdentitySpec corrupt_sign(const IdentitySpec& spec) {
  const auto& num = spec.expr.num();
  if (num.is_zero()) throw InvalidArgument("cannot corrupt an empty numerator");
  const auto& ctx = num.ctx();
  const Monomial lead = num.leading_monomial();
  const Element coeff = num.leading_coefficient();
  const SparsePoly lead_term = SparsePoly::term(coeff, lead);
  // u -> -u, i.e. subtract 2u; in characteristic 2 subtract u instead
  SparsePoly corrupted = ctx.p() == 2 ? num - lead_term : num - lead_term - lead_term;
  IdentitySpec out = spec;
  out.id = spec.id + "~sign";
  out.expr = RatExpr(corrupted, spec.expr.den());
  out.anchor = "corrupted: " + spec.anchor;
  return out;
}

IdentitySpec custom_identity(std::string id, RatExpr expr) {
  unsigned level = 0;
  for (const auto& v : expr.num().variables()) level = std::max(level, v.index);
  for (const auto& f : expr.den()) {
    for (const auto& v : f.poly.variables()) level = std::max(level, v.index);
  }
  return {std::move(id), std::move(expr), level, level, "custom", "custom"};
}

RewriteResult rewrite_to_base(const RatExpr& expr, std::uint64_t q) {
  const auto& ctx = expr.ctx();
  const auto qq = static_cast<std::uint32_t>(q);
  const auto& num = expr.num();
  const SparsePoly one = lit(ctx, 1);

  Monomial common;
  if (num.size() >= 2) {
    for (const auto& v : num.variables()) {
      if (v.kind == VarKind::A) continue;
      std::uint32_t low = UINT32_MAX;
      for (const auto& [m, c] : num.terms()) {
        std::uint32_t e = 0;
        for (const auto& [w, x] : m) {
          if (w == v) e = x;
        }
        low = std::min(low, e);
      }
      if (low > 0) common.emplace_back(v, low);
    }
  }

  std::set<std::string> log;
  RatExpr acc{SparsePoly(ctx)};
  for (const auto& [m, coeff] : num.terms()) {
    const Monomial rest = *monomial_div(m, common);
    Monomial a_part;
    RatExpr t{SparsePoly::constant(coeff)};
    for (const auto& [v, e] : rest) {
      if (v.kind == VarKind::A) {
        a_part.emplace_back(v, e);
        continue;
      }
      if (e % (qq - 1) != 0) {
        throw NonReducibleExponent(v.name() + "^" + std::to_string(e) + " is not a power of " + v.name() +
                                   "^" + std::to_string(qq - 1));
      }
      const std::uint32_t s = e / (qq - 1);
      const unsigned j = v.index;
      RatExpr sub = v.kind == VarKind::B ? RatExpr::over(-lambda(ctx, j, qq), var(ctx, var_a(j)))
                                         : RatExpr::over(var(ctx, var_a(j)) - one, var(ctx, var_a(j)));
      log.insert(v.name() + "^" + std::to_string(e) + " -> (" + sub.to_string() + ")^" + std::to_string(s));
      t *= pow(sub, s);
    }
    t *= RatExpr(SparsePoly::term(Element::one(ctx), a_part));
    acc += t;
  }

  for (const auto& f : expr.den()) {
    auto cls = classify_factor(f.poly, q);
    if (!cls) throw UndeclaredDenominator("denominator factor " + f.poly.to_string() + " is not declared");
    if (cls->kind == FactorKind::CKummer) {
      // c^(q-1) - 1 = (a - 1)/a - 1 = -1/a
      const auto neg_a = -var(ctx, var_a(cls->index));
      log.insert("1/(" + f.poly.to_string() + ") -> " + neg_a.to_string());
      acc *= RatExpr(pow(neg_a, f.exp));
    } else {
      acc *= RatExpr::over(one, f.poly, f.exp);
    }
  }
  return {SparsePoly::term(Element::one(ctx), common), std::move(acc), {log.begin(), log.end()}};
}

}  // namespace towerlab
