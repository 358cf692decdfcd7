#include "towerlab/solvers.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace towerlab {

namespace {

void check_ctx(const FieldCtx& ctx, const Element& x) {
  if (&x.ctx() != &ctx) throw ContextMismatch();
}

bool is_power_of(std::uint64_t q, unsigned p) {
  if (q == 0) return false;
  while (q % p == 0) q /= p;
  return q == 1;
}

unsigned inv_mod_p(unsigned x, unsigned p) {
  unsigned r = 1;
  for (unsigned e = p - 2, b = x % p; e; e >>= 1, b = b * b % p) {
    if (e & 1) r = r * b % p;
  }
  return r;
}

// Inverse of a modulo n for gcd(a, n) = 1.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t n) {
  if (n == 1) return 0;
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(n), new_r = static_cast<std::int64_t>(a % n);
  while (new_r != 0) {
    std::int64_t quot = r / new_r;
    t = std::exchange(new_t, t - quot * new_t);
    r = std::exchange(new_r, r - quot * new_r);
  }
  if (t < 0) t += static_cast<std::int64_t>(n);
  return static_cast<std::uint64_t>(t);
}

std::vector<Element> sorted_elements(const FieldCtx& ctx, std::vector<FieldCtx::Code> codes) {
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  std::vector<Element> out;
  out.reserve(codes.size());
  for (auto c : codes) out.emplace_back(ctx, c);
  return out;
}

std::vector<std::vector<unsigned>> additive_matrix(const FieldCtx& ctx, const Element& v, std::uint64_t q) {
  check_ctx(ctx, v);
  if (!is_power_of(q, ctx.p())) throw InvalidArgument("q must be a power of p");
  const unsigned D = ctx.degree();
  std::vector<std::vector<unsigned>> columns(D);
  FieldCtx::Code basis = 1;
  for (unsigned j = 0; j < D; ++j, basis *= ctx.p()) {
    auto image = ctx.add(ctx.mul(v.code(), ctx.pow(basis, q)), basis);
    columns[j] = ctx.digits(image);
  }
  return columns;
}

std::vector<FieldCtx::Code> span_codes(const FieldCtx& ctx, const std::vector<unsigned>& offset,
                                       const std::vector<std::vector<unsigned>>& basis) {
  const unsigned p = ctx.p();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) count *= p;
  std::vector<FieldCtx::Code> out;
  out.reserve(count);
  std::vector<unsigned> coeff(basis.size(), 0);
  std::vector<unsigned> acc(offset.size());
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t r = idx;
    for (auto& c : coeff) {
      c = r % p;
      r /= p;
    }
    acc = offset;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (!coeff[b]) continue;
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = (acc[i] + coeff[b] * basis[b][i]) % p;
    }
    out.push_back(ctx.from_digits(acc));
  }
  return out;
}

}  // namespace

ModPSolution solve_mod_p(const std::vector<std::vector<unsigned>>& columns, const std::vector<unsigned>& rhs,
                         unsigned p) {
  const std::size_t rows = rhs.size();
  const std::size_t cols = columns.size();
  // augmented, row-major
  std::vector<std::vector<unsigned>> a(rows, std::vector<unsigned>(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = columns[j][i] % p;
    a[i][cols] = rhs[i] % p;
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const unsigned s = inv_mod_p(a[r][c], p);
    for (auto& x : a[r]) x = x * s % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const unsigned f = a[i][c];
      for (std::size_t j = 0; j <= cols; ++j) a[i][j] = (a[i][j] + p * p - f * a[r][j]) % p;
    }
    pivot_col.push_back(c);
    ++r;
  }

  ModPSolution out;
  bool consistent = true;
  for (std::size_t i = r; i < rows; ++i) {
    if (a[i][cols] != 0) consistent = false;
  }
  if (consistent) {
    std::vector<unsigned> x(cols, 0);
    for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = a[i][cols];
    out.particular = std::move(x);
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<unsigned> k(cols, 0);
    k[f] = 1;
    for (std::size_t i = 0; i < r; ++i) k[pivot_col[i]] = (p - a[i][f]) % p;
    out.kernel_basis.push_back(std::move(k));
  }
  return out;
}

bool is_kummer_solvable(const FieldCtx& ctx, std::uint64_t r, const Element& rhs) {
  check_ctx(ctx, rhs);
  if (rhs.is_zero()) return true;
  const std::uint64_t order = ctx.size() - 1;
  const std::uint64_t d = std::gcd(r, order);
  return ctx.pow(rhs.code(), order / d) == ctx.one();
}

std::vector<Element> kummer_solve(const FieldCtx& ctx, std::uint64_t r, const Element& rhs) {
  check_ctx(ctx, rhs);
  if (r == 0) throw InvalidArgument("r >= 1 required");
  if (rhs.is_zero()) return {Element::zero(ctx)};
  const std::uint64_t order = ctx.size() - 1;
  const std::uint64_t d = std::gcd(r, order);
  const std::uint64_t l = ctx.log(rhs.code());
  if (l % d != 0) return {};
  // x = g^y with r*y = l (mod order)
  const std::uint64_t step = order / d;
  const std::uint64_t y0 = (l / d) % step * inv_mod((r / d) % step, step) % step;
  std::vector<FieldCtx::Code> codes;
  codes.reserve(d);
  for (std::uint64_t j = 0; j < d; ++j) codes.push_back(ctx.pow(ctx.generator(), y0 + j * step));
  return sorted_elements(ctx, std::move(codes));
}

std::vector<Element> roots_of_unity(const FieldCtx& ctx, std::uint64_t r) {
  if (r == 0 || (ctx.size() - 1) % r != 0) {
    throw InvalidArgument("r = " + std::to_string(r) + " does not divide the multiplicative group order");
  }
  return kummer_solve(ctx, r, Element::one(ctx));
}

std::vector<Element> additive_affine_solve(const FieldCtx& ctx, const Element& v, const Element& w,
                                           std::uint64_t q) {
  check_ctx(ctx, w);
  auto columns = additive_matrix(ctx, v, q);
  auto sol = solve_mod_p(columns, ctx.digits(w.code()), ctx.p());
  if (!sol.particular) return {};
  return sorted_elements(ctx, span_codes(ctx, *sol.particular, sol.kernel_basis));
}

std::vector<Element> additive_kernel(const FieldCtx& ctx, const Element& v, std::uint64_t q) {
  auto columns = additive_matrix(ctx, v, q);
  auto sol = solve_mod_p(columns, std::vector<unsigned>(ctx.degree(), 0), ctx.p());
  return sorted_elements(ctx, span_codes(ctx, *sol.particular, sol.kernel_basis));
}

}  // namespace towerlab
