#pragma once

// Special-equation solvers over F_{l^k}: r-th roots (Kummer steps) and the
// F_p-linear equation v*y^q + y = w (Artin-Schreier-type steps).

#include <cstdint>
#include <optional>
#include <vector>

#include "towerlab/field.hpp"

namespace towerlab {

/// All x with x^r = 1, in canonical order. r must divide |F*|.
std::vector<Element> roots_of_unity(const FieldCtx& ctx, std::uint64_t r);

/// All x with x^r = rhs, in canonical order. {0} for rhs = 0; otherwise the
/// set is empty or a coset of the gcd(r, |F*|)-th roots of unity.
std::vector<Element> kummer_solve(const FieldCtx& ctx, std::uint64_t r, const Element& rhs);

/// True iff rhs is a nonzero r-th power, decided by rhs^(|F*|/gcd) = 1.
bool is_kummer_solvable(const FieldCtx& ctx, std::uint64_t r, const Element& rhs);

/// All y with v*y^q + y = w, in canonical order, by linear algebra over F_p
/// on the additive map y -> v*y^q + y. q must be a power of p.
std::vector<Element> additive_affine_solve(const FieldCtx& ctx, const Element& v, const Element& w,
                                           std::uint64_t q);

/// Kernel of y -> v*y^q + y, in canonical order (always contains 0).
std::vector<Element> additive_kernel(const FieldCtx& ctx, const Element& v, std::uint64_t q);

/// Result of solving M x = b over F_p.
struct ModPSolution {
  std::optional<std::vector<unsigned>> particular;  // nullopt when inconsistent
  std::vector<std::vector<unsigned>> kernel_basis;
};

/// Gaussian elimination over F_p. `columns` holds the matrix column by column.
ModPSolution solve_mod_p(const std::vector<std::vector<unsigned>>& columns, const std::vector<unsigned>& rhs,
                         unsigned p);

}  // namespace towerlab
