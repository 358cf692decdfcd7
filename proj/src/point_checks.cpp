#include <algorithm>
#include <set>

#include "towerlab/verify.hpp"

namespace towerlab {

namespace {

using Tuple = std::vector<FieldCtx::Code>;

Tuple project(const TowerPoint& pt, const std::vector<Var>& gens) {
  Tuple t;
  t.reserve(gens.size());
  for (const auto& v : gens) t.push_back(pt.coordinate(v)->code());
  return t;
}

void check_within(const std::vector<Var>& gens, unsigned n) {
  for (const auto& v : gens) {
    if (v.index < 1 || v.index > n) throw InvalidArgument(v.name() + " is not a level-" + std::to_string(n) + " coordinate");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Point oracle

PointTestReport test_identity_points(const IdentitySpec& spec, const FieldCtx& ctx,
                                     std::span<const TowerPoint> points, Model model) {
  if (&spec.expr.ctx() != &ctx) throw ContextMismatch();
  PointTestReport report{spec.id, points.empty() ? spec.level : points.front().level(), ctx.k(), model};
  for (const auto& pt : points) {
    if (pt.is_degenerate()) {
      ++report.skipped_degenerate;
      continue;
    }
    auto value = spec.expr.try_evaluate(pt.assignment());
    if (!value) {
      ++report.skipped_denominator;
      continue;
    }
    ++report.tested;
    if (!value->is_zero()) {
      ++report.failures;
      if (report.failing_examples.size() < 5) report.failing_examples.push_back(pt);
    }
  }

  // Bezout margin for numerators that live on a single REL-A curve
  SparsePoly cleared(ctx);
  try {
    cleared = clear_denominators(rewrite_to_base(spec.expr, ctx.q()).base, ctx.q());
  } catch (const Error&) {
    return report;
  }
  const auto vars = cleared.variables();
  unsigned top = report.level;
  if (!vars.empty()) {
    top = 0;
    for (const auto& v : vars) top = std::max(top, v.index);
  }
  if (top < 2 || top > report.level) return report;
  const Var x = var_a(top - 1), y = var_a(top);
  if (!std::all_of(vars.begin(), vars.end(), [&](const Var& v) { return v == x || v == y; })) return report;

  std::set<std::pair<FieldCtx::Code, FieldCtx::Code>> on_curve;
  for (const auto& pt : points) {
    if (pt.is_degenerate()) continue;
    if (cleared.evaluate(pt.assignment()).is_zero()) on_curve.emplace(pt.coordinate(x)->code(), pt.coordinate(y)->code());
  }
  const std::uint64_t bound = std::uint64_t{cleared.total_degree()} * 2 * ctx.q();
  report.bezout = BezoutMargin{x, y, on_curve.size(), bound, on_curve.size() > bound};
  return report;
}

PointTestReport test_identity_points(const IdentitySpec& spec, const FieldCtx& ctx, unsigned n, Model model,
                                     const EnumerateOptions& opts) {
  if (spec.level > n) throw InvalidArgument("identity needs level " + std::to_string(spec.level));
  auto points = enumerate_points(ctx, relations(ctx, model, n), opts);
  return test_identity_points(spec, ctx, points, model);
}

// ---------------------------------------------------------------------------
// Degrees

std::string to_string(StepLetter s) {
  switch (s) {
    case StepLetter::A: return "A";
    case StepLetter::C: return "C";
    case StepLetter::H: return "H";
    case StepLetter::G: return "G";
  }
  return "?";
}

std::optional<StepLetter> parse_step(std::string_view text) {
  if (text == "A") return StepLetter::A;
  if (text == "C") return StepLetter::C;
  if (text == "H") return StepLetter::H;
  if (text == "G") return StepLetter::G;
  return std::nullopt;
}

std::vector<Var> generators(StepLetter letter, unsigned n) {
  std::vector<Var> out;
  const bool with_a = letter != StepLetter::C;
  if (with_a) {
    for (unsigned i = 1; i <= n; ++i) out.push_back(var_a(i));
  }
  if (letter == StepLetter::H || letter == StepLetter::G) {
    const unsigned top = letter == StepLetter::H ? n : n - 1;
    for (unsigned i = 1; i <= top; ++i) out.push_back(var_b(i));
  }
  if (letter == StepLetter::C) {
    for (unsigned i = 1; i <= n; ++i) out.push_back(var_c(i));
  }
  return out;
}

std::optional<std::vector<Var>> parse_generators(std::string_view text, unsigned n) {
  if (auto s = parse_step(text)) return generators(*s, n);
  std::vector<Var> extra;
  if (text == "A+C2") {
    extra = {var_c(1), var_c(2)};
  } else if (text == "A+H2") {
    extra = generators(StepLetter::H, 2);
  } else {
    return std::nullopt;
  }
  auto out = generators(StepLetter::A, n);
  out.insert(out.end(), extra.begin(), extra.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<std::uint64_t> expected_degree(StepLetter letter, unsigned from_level, std::uint64_t q) {
  switch (letter) {
    case StepLetter::A:
      return q;
    case StepLetter::C:
      if (from_level >= 2) return q;
      return std::nullopt;
    case StepLetter::H:
      return from_level >= 2 ? q : q * (q - 1);
    case StepLetter::G:
      return from_level >= 3 ? q : q * (q - 1);
  }
  return std::nullopt;
}

namespace {

void fill_histogram(const FieldCtx& ctx, StepLetter letter, unsigned n, const EnumerateOptions& opts,
                    DegreeReport& report) {
  const auto points = enumerate_points(ctx, relations(ctx, Model::Canonical, n + 1), opts);
  const auto base_gens = generators(letter, n);
  const auto top_gens = generators(letter, n + 1);
  std::map<Tuple, std::set<Tuple>> fibers;
  for (const auto& pt : points) {
    if (pt.is_degenerate()) {
      ++report.degenerate_points;
      continue;
    }
    fibers[project(pt, base_gens)].insert(project(pt, top_gens));
  }
  for (const auto& [base, tops] : fibers) ++report.histogram[tops.size()];
  report.base_tuples = fibers.size();
  if (report.base_tuples < kMinBaseTuples) return;
  std::uint64_t best = 0;
  for (const auto& [size, freq] : report.histogram) {
    if (freq > best) {
      best = freq;
      report.modal = size;
    }
  }
}

}  // namespace

DegreeReport fiber_histogram(const FieldCtx& ctx, StepLetter letter, unsigned from_level, const DegreeOptions& opts) {
  if (from_level < 1) throw InvalidArgument("from_level >= 1 required");
  DegreeReport report{letter, from_level, ctx.k()};
  fill_histogram(ctx, letter, from_level, opts.enumerate, report);
  if (opts.check_stability) {
    FieldPtr next;
    try {
      next = make_field(ctx.p(), ctx.m(), ctx.k() + 1, opts.size_cap);
    } catch (const CapExceeded&) {
      return report;
    }
    DegreeReport other{letter, from_level, next->k()};
    fill_histogram(*next, letter, from_level, opts.enumerate, other);
    report.modal_next_k = other.modal;
    report.stable = report.modal && other.modal && *report.modal == *other.modal;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Field equality

std::string to_string(EqualityVerdict v) {
  switch (v) {
    case EqualityVerdict::Equal: return "EQUAL";
    case EqualityVerdict::Unequal: return "UNEQUAL";
    case EqualityVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

EqualityReport partition_compare(const FieldCtx& ctx, std::span<const TowerPoint> points, unsigned n,
                                 const std::vector<Var>& left, const std::vector<Var>& right) {
  check_within(left, n);
  check_within(right, n);
  EqualityReport report{left, right, n, ctx.k(), EqualityVerdict::Inconclusive};
  std::vector<const TowerPoint*> used;
  for (const auto& pt : points) {
    if (pt.level() != n) throw InvalidArgument("point set is not at level " + std::to_string(n));
    if (!pt.is_degenerate()) used.push_back(&pt);
  }
  report.points = used.size();

  std::map<Tuple, const TowerPoint*> first_left, first_right;
  std::set<std::pair<Tuple, Tuple>> joint;
  for (const auto* pt : used) {
    auto l = project(*pt, left);
    auto r = project(*pt, right);
    first_left.try_emplace(l, pt);
    first_right.try_emplace(r, pt);
    joint.emplace(std::move(l), std::move(r));
  }
  report.left_classes = first_left.size();
  report.right_classes = first_right.size();
  report.joint_classes = joint.size();

  if (report.joint_classes == report.left_classes && report.joint_classes == report.right_classes) {
    report.verdict = std::min(report.left_classes, report.right_classes) < kMinBaseTuples
                         ? EqualityVerdict::Inconclusive
                         : EqualityVerdict::Equal;
    return report;
  }
  report.verdict = EqualityVerdict::Unequal;
  for (const auto* pt : used) {
    const auto* other = first_left.at(project(*pt, left));
    if (project(*other, right) != project(*pt, right)) {
      report.witness.emplace(*other, *pt);
      return report;
    }
    other = first_right.at(project(*pt, right));
    if (project(*other, left) != project(*pt, left)) {
      report.witness.emplace(*other, *pt);
      return report;
    }
  }
  return report;
}

EqualityReport partition_compare(const FieldCtx& ctx, unsigned n, const std::vector<Var>& left,
                                 const std::vector<Var>& right, const EnumerateOptions& opts) {
  auto points = enumerate_points(ctx, relations(ctx, Model::Canonical, n), opts);
  return partition_compare(ctx, points, n, left, right);
}

bool WitnessReport::passed() const {
  return std::all_of(failures.begin(), failures.end(), [](const auto& kv) { return kv.second == 0; });
}

WitnessReport witness_suite(const FieldCtx& ctx, std::span<const TowerPoint> points) {
  WitnessReport report{points.empty() ? 0u : points.front().level(), ctx.k()};
  const std::uint64_t e = ctx.q() - 1;
  const Element one = Element::one(ctx);
  for (const char* w : {"W0", "WZ", "WX"}) {
    report.checks[w] = 0;
    report.failures[w] = 0;
  }
  auto tally = [&](const char* w, bool ok) {
    ++report.checks[w];
    if (!ok) ++report.failures[w];
  };
  for (const auto& pt : points) {
    if (pt.is_degenerate()) {
      ++report.skipped_degenerate;
      continue;
    }
    ++report.points;
    for (unsigned i = 0; i < pt.level(); ++i) {
      const auto& a = pt.a[i];
      const auto& b = pt.b[i];
      const auto& c = pt.c[i];
      tally("W0", a * (one - pow(c, e)) == one);
      if (i == 0) continue;
      tally("WZ", pow(c / (a * pt.b[i - 1]), e) == one);
      tally("WX", pow(b / (a * (pt.a[i - 1] - one) * pt.c[i - 1]), e) == one);
    }
  }
  return report;
}

WitnessReport witness_suite(const FieldCtx& ctx, unsigned n, const EnumerateOptions& opts) {
  auto points = enumerate_points(ctx, relations(ctx, Model::Free, n), opts);
  auto report = witness_suite(ctx, points);
  report.level = n;
  return report;
}

// ---------------------------------------------------------------------------
// Remarks

bool DegreeRow::passed() const {
  if (!report.modal) return false;
  if (report.stable && !*report.stable) return false;
  return !expected || *report.modal == *expected;
}

bool RemarkReport::passed() const {
  return std::all_of(equalities.begin(), equalities.end(), [](const auto& c) { return c.passed(); }) &&
         std::all_of(degrees.begin(), degrees.end(), [](const auto& d) { return d.passed(); });
}

RemarkReport remark_suite(const FieldCtx& ctx, const DegreeOptions& opts) {
  const std::uint64_t q = ctx.q();
  RemarkReport report{q, ctx.k(), {}, {}};
  constexpr unsigned kTop = 4;
  const auto levels = enumerate_levels(ctx, relations(ctx, Model::Canonical, kTop), opts.enumerate);

  auto check = [&](std::string name, unsigned n, std::vector<Var> left, std::vector<Var> right,
                   EqualityVerdict expected) {
    report.equalities.push_back(
        {std::move(name), partition_compare(ctx, levels[n - 1], n, left, right), expected});
  };
  const auto gens = [](StepLetter s, unsigned n) { return generators(s, n); };
  const std::string qs = std::to_string(q);

  // H_n = C_n for n >= 2; at n = 1 c_1 carries an independent Kummer choice
  for (unsigned n : {2u, 3u}) {
    check("H" + std::to_string(n) + " = C" + std::to_string(n), n, gens(StepLetter::H, n), gens(StepLetter::C, n),
          EqualityVerdict::Equal);
  }
  check("H1 vs C1", 1, gens(StepLetter::H, 1), gens(StepLetter::C, 1),
        q == 2 ? EqualityVerdict::Equal : EqualityVerdict::Unequal);

  if (q == 2) {
    for (unsigned n = 1; n <= kTop; ++n) {
      const auto ns = std::to_string(n);
      check("A" + ns + " = C" + ns, n, gens(StepLetter::A, n), gens(StepLetter::C, n), EqualityVerdict::Equal);
      check("G" + ns + " = H" + ns, n, gens(StepLetter::G, n), gens(StepLetter::H, n), EqualityVerdict::Equal);
    }
  } else {
    check("G1 vs H1", 1, gens(StepLetter::G, 1), gens(StepLetter::H, 1), EqualityVerdict::Unequal);
    for (unsigned n : {3u, 4u}) {
      const auto ns = std::to_string(n);
      check("G" + ns + " = H" + ns, n, gens(StepLetter::G, n), gens(StepLetter::H, n), EqualityVerdict::Equal);
    }
  }
  for (unsigned n : {3u, 4u}) {
    const auto ns = std::to_string(n);
    check("A" + ns + "*C2 = C" + ns, n, *parse_generators("A+C2", n), gens(StepLetter::C, n), EqualityVerdict::Equal);
    check("A" + ns + "*H2 = H" + ns, n, *parse_generators("A+H2", n), gens(StepLetter::H, n), EqualityVerdict::Equal);
  }

  auto row = [&](StepLetter s, unsigned n, std::optional<std::uint64_t> literature) {
    DegreeRow r{to_string(s) + "-step n=" + std::to_string(n), fiber_histogram(ctx, s, n, opts),
                expected_degree(s, n, q), literature, "n/a"};
    if (literature && r.report.modal) r.literature_verdict = *r.report.modal == *literature ? "CONFIRMED" : "REFUTED";
    report.degrees.push_back(std::move(r));
  };
  row(StepLetter::C, 2, q);
  row(StepLetter::H, 2, q * q - q);
  row(StepLetter::H, 1, std::nullopt);
  row(StepLetter::A, 2, std::nullopt);
  return report;
}

}  // namespace towerlab
