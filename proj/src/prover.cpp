#include "towerlab/verify.hpp"

namespace towerlab {

std::string to_string(ProofVerdict v) { return v == ProofVerdict::Proved ? "PROVED" : "FAILED"; }

ProofTrace prove_identity(const IdentitySpec& spec, std::uint64_t q) {
  const auto& ctx = spec.expr.ctx();
  if (q != ctx.q()) throw InvalidArgument("q does not match the coefficient field");
  auto rewritten = rewrite_to_base(spec.expr, q);
  SparsePoly cleared = clear_denominators(rewritten.base, q);

  ProofTrace trace{spec.id, rewritten.log, rewritten.monomial, cleared, {}, SparsePoly(ctx), ProofVerdict::Failed};
  for (const auto& v : cleared.variables()) {
    if (v.kind != VarKind::A) throw Error("rewrite left " + v.name() + " in the cleared numerator");
  }

  unsigned top = 0;
  for (const auto& v : cleared.variables()) top = std::max(top, v.index);

  SparsePoly current = cleared;
  for (unsigned i = top; i >= 2; --i) {
    const Var x = var_a(i);
    if (current.degree_in(x) < q) continue;
    const SparsePoly divisor = rel_a(ctx, i - 1);
    auto r = euclid_reduce(current, divisor, x);
    trace.steps.push_back(ReductionStep{x, "REL-A(" + std::to_string(i - 1) + ")", current, divisor, r.lc,
                                        r.lc_power, r.pseudo_quotient.degree_in(x), r.pseudo_quotient,
                                        r.pseudo_remainder});
    current = r.pseudo_remainder;
  }
  trace.final_remainder = current;
  trace.verdict = current.is_zero() ? ProofVerdict::Proved : ProofVerdict::Failed;
  return trace;
}

bool check_trace(const ProofTrace& trace) {
  for (const auto& s : trace.steps) {
    if (pow(s.lc, s.lc_power) * s.input != s.pseudo_quotient * s.divisor + s.remainder) return false;
    if (s.remainder.degree_in(s.var) >= s.divisor.degree_in(s.var) && !s.remainder.is_zero()) return false;
  }
  if (!trace.steps.empty() && trace.steps.back().remainder != trace.final_remainder) return false;
  return (trace.verdict == ProofVerdict::Proved) == trace.final_remainder.is_zero();
}

}  // namespace towerlab
