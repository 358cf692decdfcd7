#pragma once

// Identity registry, symbolic prover and point-based checks (degrees and
// field equalities) for the towers.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "towerlab/ratexpr.hpp"
#include "towerlab/towers.hpp"

namespace towerlab {

// ---------------------------------------------------------------------------
// Identity registry

/// An expression asserted to vanish on the tower.
struct IdentitySpec {
  std::string id;
  RatExpr expr;
  unsigned index;       // instantiation index of the defining formula
  unsigned level;       // highest variable index that occurs
  std::string pattern;  // index pattern, e.g. "c_n, a_n, b_{n-1}"
  std::string anchor;   // the identity as a displayed formula
};

/// ID-CPROD, ID-BPROD, ID-CREC, ID-ASREC, ID-AINV, WZ, WX.
const std::vector<std::string>& core_identity_ids();
bool is_core_identity(std::string_view id);

/// The identity `id` instantiated so that its variables live at levels <= n
/// and reach level n. Requires n >= 2.
IdentitySpec make_identity(const FieldCtx& ctx, std::string_view id, unsigned n);

/// All core identities at level n, in registry order.
std::vector<IdentitySpec> builtin_identities(const FieldCtx& ctx, unsigned n);

/// Negative control: the leading numerator term gets its sign flipped. In
/// characteristic 2, where a sign flip is the identity map, the term is
/// dropped instead (coefficient u -> u - u).
IdentitySpec corrupt_sign(const IdentitySpec& spec);

/// Wraps an arbitrary expression as a user-supplied identity.
IdentitySpec custom_identity(std::string id, RatExpr expr);

// ---------------------------------------------------------------------------
// Symbolic prover

struct RewriteResult {
  SparsePoly monomial;   // common b/c monomial factored out (1 if none)
  RatExpr base;          // rewritten cofactor, a-variables only
  std::vector<std::string> log;
};

/// Substitutes b_j^(q-1) -> -(a_j^q + a_j - 1)/a_j, c_j^(q-1) -> (a_j - 1)/a_j
/// and 1/(c_j^(q-1) - 1) -> -a_j. Expressions with two or more terms first
/// lose their common b/c monomial. Throws NonReducibleExponent when a
/// remaining b/c exponent is not a multiple of q-1.
RewriteResult rewrite_to_base(const RatExpr& expr, std::uint64_t q);

struct ReductionStep {
  Var var;               // eliminated variable a_i
  std::string relation;  // "REL-A(i-1)"
  SparsePoly input;
  SparsePoly divisor;
  SparsePoly lc;
  std::uint32_t lc_power;
  std::uint32_t quotient_degree;
  SparsePoly pseudo_quotient;
  SparsePoly remainder;
};

enum class ProofVerdict { Proved, Failed };

struct ProofTrace {
  std::string id;
  std::vector<std::string> rewrite_log;
  SparsePoly monomial;
  SparsePoly cleared;
  std::vector<ReductionStep> steps;
  SparsePoly final_remainder;
  ProofVerdict verdict;
};

std::string to_string(ProofVerdict v);

/// Clears denominators of the rewritten cofactor, then reduces by REL-A
/// from the highest a-index down. PROVED iff the final remainder is zero.
ProofTrace prove_identity(const IdentitySpec& spec, std::uint64_t q);

/// Re-expands every step: lc^e * input == pseudo_quotient * divisor + remainder.
bool check_trace(const ProofTrace& trace);

// ---------------------------------------------------------------------------
// Point oracle

struct BezoutMargin {
  Var x, y;                    // the curve REL-A relates x = a_i and y = a_{i+1}
  std::uint64_t curve_points;  // distinct (x, y) where the cleared numerator vanishes
  std::uint64_t bound;         // deg(numerator) * deg(REL-A)
  bool certified;              // curve_points > bound
};

struct PointTestReport {
  std::string id;
  unsigned level;
  unsigned k;
  Model model;
  std::uint64_t tested = 0;
  std::uint64_t skipped_degenerate = 0;
  std::uint64_t skipped_denominator = 0;
  std::uint64_t failures = 0;
  std::vector<TowerPoint> failing_examples;  // at most 5
  std::optional<BezoutMargin> bezout;
};

/// Evaluates the original expression at every non-degenerate point of the
/// given level-n point set.
PointTestReport test_identity_points(const IdentitySpec& spec, const FieldCtx& ctx,
                                     std::span<const TowerPoint> points, Model model);
PointTestReport test_identity_points(const IdentitySpec& spec, const FieldCtx& ctx, unsigned n,
                                     Model model = Model::Free, const EnumerateOptions& opts = {});

// ---------------------------------------------------------------------------
// Degrees

enum class StepLetter { A, C, H, G };

std::string to_string(StepLetter s);
std::optional<StepLetter> parse_step(std::string_view text);

/// Coordinates generating the named field at level n:
/// A_n = a_1..a_n, C_n = c_1..c_n, H_n = a_1..a_n, b_1..b_n, G_n = a_1..a_n, b_1..b_{n-1}.
std::vector<Var> generators(StepLetter letter, unsigned n);

/// Parses "A", "C", "H", "G", "A+C2" (A_n with c_1, c_2) and "A+H2" (A_n with H_2).
std::optional<std::vector<Var>> parse_generators(std::string_view text, unsigned n);

inline constexpr std::uint64_t kMinBaseTuples = 10;

struct DegreeReport {
  StepLetter letter;
  unsigned from_level;
  unsigned k;
  std::map<std::uint64_t, std::uint64_t> histogram;  // fiber size -> base tuples
  std::uint64_t base_tuples = 0;
  std::uint64_t degenerate_points = 0;  // level n+1 points left out
  std::optional<std::uint64_t> modal;   // nullopt = INCONCLUSIVE
  std::optional<std::uint64_t> modal_next_k;
  std::optional<bool> stable;           // set when k+1 was run
};

struct DegreeOptions {
  bool check_stability = true;
  std::uint64_t size_cap = kDefaultSizeCap;
  EnumerateOptions enumerate;
};

/// Fiber sizes of the canonical-model projection from level n+1 to level n of
/// the named tower, over base tuples that lift to non-degenerate points.
DegreeReport fiber_histogram(const FieldCtx& ctx, StepLetter letter, unsigned from_level,
                             const DegreeOptions& opts = {});

/// Value the tower theory predicts for a step, when it is known.
std::optional<std::uint64_t> expected_degree(StepLetter letter, unsigned from_level, std::uint64_t q);

// ---------------------------------------------------------------------------
// Field equality

enum class EqualityVerdict { Equal, Unequal, Inconclusive };

std::string to_string(EqualityVerdict v);

struct EqualityReport {
  std::vector<Var> left, right;
  unsigned level;
  unsigned k;
  EqualityVerdict verdict;
  std::uint64_t points = 0;
  std::uint64_t left_classes = 0;
  std::uint64_t right_classes = 0;
  std::uint64_t joint_classes = 0;
  std::optional<std::pair<TowerPoint, TowerPoint>> witness;
};

/// Compares the partitions of the non-degenerate canonical points that the
/// two coordinate selections induce.
EqualityReport partition_compare(const FieldCtx& ctx, std::span<const TowerPoint> points, unsigned n,
                                 const std::vector<Var>& left, const std::vector<Var>& right);
EqualityReport partition_compare(const FieldCtx& ctx, unsigned n, const std::vector<Var>& left,
                                 const std::vector<Var>& right, const EnumerateOptions& opts = {});

struct WitnessReport {
  unsigned level;
  unsigned k;
  std::uint64_t points = 0;
  std::uint64_t skipped_degenerate = 0;
  std::map<std::string, std::uint64_t> checks;    // W0, WZ, WX -> evaluations
  std::map<std::string, std::uint64_t> failures;  // W0, WZ, WX -> failures
  bool passed() const;
};

/// Pointwise membership witnesses on the free model:
///   W0: a_i (1 - c_i^(q-1)) = 1
///   WZ: (c_i / (a_i b_{i-1}))^(q-1) = 1
///   WX: (b_i / (a_i (a_{i-1} - 1) c_{i-1}))^(q-1) = 1
WitnessReport witness_suite(const FieldCtx& ctx, std::span<const TowerPoint> points);
WitnessReport witness_suite(const FieldCtx& ctx, unsigned n, const EnumerateOptions& opts = {});

// ---------------------------------------------------------------------------
// Consolidated remark checks

struct EqualityCheck {
  std::string name;
  EqualityReport report;
  EqualityVerdict expected;
  bool passed() const { return report.verdict == expected; }
};

struct DegreeRow {
  std::string name;
  DegreeReport report;
  std::optional<std::uint64_t> expected;       // tower-theory value
  std::optional<std::uint64_t> literature;     // value asserted in earlier literature
  std::string literature_verdict;              // CONFIRMED / REFUTED / n/a
  bool passed() const;
};

struct RemarkReport {
  std::uint64_t q;
  unsigned k;
  std::vector<EqualityCheck> equalities;
  std::vector<DegreeRow> degrees;
  bool passed() const;
};

RemarkReport remark_suite(const FieldCtx& ctx, const DegreeOptions& opts = {});

}  // namespace towerlab
