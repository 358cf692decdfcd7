#pragma once

// Relation systems for the towers A (a_i), B (a_i, b_i) and C (c_i), and
// enumeration of their points over F_{l^k}.
//
//   REL-A(i): a_i (1 - a_{i+1}) - a_{i+1}^q (a_i^q + a_i - 1)
//   REL-B(i): a_i b_i^(q-1) + (a_i^q + a_i - 1)
//   REL-C(i): a_i c_i^(q-1) - (a_i - 1)
//
// The canonical model replaces REL-C(i), REL-B(i) for i >= 2 by the pinned
// branch c_i = a_i b_{i-1}, b_i = a_i (a_{i-1} - 1) c_{i-1}.

#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "towerlab/poly.hpp"

namespace towerlab {

enum class Model { Free, Canonical };

std::string to_string(Model m);
std::optional<Model> parse_model(std::string_view text);

struct Relation {
  std::string name;  // "REL-A(1)", "PIN-C(2)", ...
  SparsePoly poly;
};

struct TowerSpec {
  std::uint64_t q;
  Model model;
  unsigned level;
  std::vector<Relation> relations;
};

SparsePoly rel_a(const FieldCtx& ctx, unsigned i);
SparsePoly rel_b(const FieldCtx& ctx, unsigned i);
SparsePoly rel_c(const FieldCtx& ctx, unsigned i);
SparsePoly pin_c(const FieldCtx& ctx, unsigned i);
SparsePoly pin_b(const FieldCtx& ctx, unsigned i);

/// Complete relation list for levels 1..n; q is taken from the context.
TowerSpec relations(const FieldCtx& ctx, Model model, unsigned n);

enum DegeneracyFlag : std::uint32_t {
  kZeroCoordinate = 1u << 0,
  kAEqualsOne = 1u << 1,
  kALambdaZero = 1u << 2,  // a_i^q + a_i - 1 = 0
};

std::string degeneracy_string(std::uint32_t flags);

struct TowerPoint {
  std::vector<Element> a, b, c;  // index 0 holds level 1
  std::uint32_t degenerate = 0;

  unsigned level() const { return static_cast<unsigned>(a.size()); }
  bool is_degenerate() const { return degenerate != 0; }
  std::optional<Element> coordinate(Var v) const;
  Assignment assignment() const;
};

std::uint32_t degeneracy_flags(const TowerPoint& pt, std::uint64_t q);

/// True iff every relation of the spec vanishes at the point.
bool satisfies(const TowerSpec& spec, const TowerPoint& pt);

/// Level-1 points above the seed a_1 (empty for a_1 = 0, where no b_1, c_1 exist).
std::vector<TowerPoint> seed_points(const FieldCtx& ctx, const Element& a1);

/// All one-step extensions of pt. Requires a_n != 0.
std::vector<TowerPoint> extend_point(const FieldCtx& ctx, const TowerPoint& pt, Model model);

inline constexpr std::uint64_t kDefaultMaxPoints = 10'000'000;
inline constexpr unsigned kDefaultMaxLevel = 4;

struct EnumerateOptions {
  unsigned workers = 1;
  std::uint64_t max_points = kDefaultMaxPoints;
  /// Half-open range of a_1 indices; defaults to the whole field.
  std::optional<std::pair<FieldCtx::Code, FieldCtx::Code>> seed_range;
};

/// Points at exactly spec.level, ordered by a_1 index, then solver order.
/// Partitioned runs over disjoint a_1 ranges concatenate to the serial run.
std::vector<TowerPoint> enumerate_points(const FieldCtx& ctx, const TowerSpec& spec,
                                         const EnumerateOptions& opts = {});

/// Points at every level 1..spec.level (index 0 holds level 1).
std::vector<std::vector<TowerPoint>> enumerate_levels(const FieldCtx& ctx, const TowerSpec& spec,
                                                      const EnumerateOptions& opts = {});

struct Rational {
  std::int64_t num;
  std::int64_t den;
  std::string to_string() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// 2(q^2 - 1)/(q + 2) in lowest terms; display-only reference constant.
Rational reference_ratio(std::uint64_t q);

struct LevelCount {
  unsigned level;
  std::uint64_t points;
  std::uint64_t nondegenerate;
  /// children per parent -> number of parents (level 1: points per seed a_1)
  std::map<std::uint64_t, std::uint64_t> branching;
  /// distinct a_level values per parent (level >= 2)
  std::map<std::uint64_t, std::uint64_t> a_step;
};

struct CountReport {
  std::uint64_t q;
  unsigned k;
  unsigned n;
  Model model;
  std::vector<LevelCount> levels;
  Rational reference_ratio;
};

CountReport count_points(const FieldCtx& ctx, const TowerSpec& spec, const EnumerateOptions& opts = {});

}  // namespace towerlab
