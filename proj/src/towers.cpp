#include "towerlab/towers.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <thread>

#include "towerlab/solvers.hpp"

namespace towerlab {

std::string to_string(Model m) { return m == Model::Free ? "free" : "canonical"; }

std::optional<Model> parse_model(std::string_view text) {
  if (text == "free") return Model::Free;
  if (text == "canonical") return Model::Canonical;
  return std::nullopt;
}

namespace {

SparsePoly var(const FieldCtx& ctx, Var v, std::uint32_t e = 1) { return SparsePoly::variable(ctx, v, e); }
SparsePoly lit(const FieldCtx& ctx, long long n) { return SparsePoly::constant(ctx, n); }

// a^q + a - 1
SparsePoly lambda(const FieldCtx& ctx, unsigned i) {
  const auto q = static_cast<std::uint32_t>(ctx.q());
  return var(ctx, var_a(i), q) + var(ctx, var_a(i)) - lit(ctx, 1);
}

Element lambda_value(const Element& a, std::uint64_t q) { return pow(a, q) + a - Element::one(a.ctx()); }

}  // namespace

SparsePoly rel_a(const FieldCtx& ctx, unsigned i) {
  const auto q = static_cast<std::uint32_t>(ctx.q());
  return var(ctx, var_a(i)) * (lit(ctx, 1) - var(ctx, var_a(i + 1))) - var(ctx, var_a(i + 1), q) * lambda(ctx, i);
}

SparsePoly rel_b(const FieldCtx& ctx, unsigned i) {
  const auto q = static_cast<std::uint32_t>(ctx.q());
  return var(ctx, var_a(i)) * var(ctx, var_b(i), q - 1) + lambda(ctx, i);
}

SparsePoly rel_c(const FieldCtx& ctx, unsigned i) {
  const auto q = static_cast<std::uint32_t>(ctx.q());
  return var(ctx, var_a(i)) * var(ctx, var_c(i), q - 1) - (var(ctx, var_a(i)) - lit(ctx, 1));
}

SparsePoly pin_c(const FieldCtx& ctx, unsigned i) {
  return var(ctx, var_c(i)) - var(ctx, var_a(i)) * var(ctx, var_b(i - 1));
}

SparsePoly pin_b(const FieldCtx& ctx, unsigned i) {
  return var(ctx, var_b(i)) - var(ctx, var_a(i)) * (var(ctx, var_a(i - 1)) - lit(ctx, 1)) * var(ctx, var_c(i - 1));
}

TowerSpec relations(const FieldCtx& ctx, Model model, unsigned n) {
  if (n < 1) throw InvalidArgument("level n >= 1 required");
  TowerSpec spec{ctx.q(), model, n, {}};
  for (unsigned i = 1; i <= n; ++i) {
    const std::string idx = "(" + std::to_string(i) + ")";
    if (i >= 2) spec.relations.push_back({"REL-A(" + std::to_string(i - 1) + ")", rel_a(ctx, i - 1)});
    if (model == Model::Canonical && i >= 2) {
      spec.relations.push_back({"PIN-B" + idx, pin_b(ctx, i)});
      spec.relations.push_back({"PIN-C" + idx, pin_c(ctx, i)});
    } else {
      spec.relations.push_back({"REL-B" + idx, rel_b(ctx, i)});
      spec.relations.push_back({"REL-C" + idx, rel_c(ctx, i)});
    }
  }
  return spec;
}

std::string degeneracy_string(std::uint32_t flags) {
  std::string s;
  auto add = [&](std::uint32_t bit, const char* name) {
    if (!(flags & bit)) return;
    if (!s.empty()) s += '|';
    s += name;
  };
  add(kZeroCoordinate, "zero");
  add(kAEqualsOne, "a_one");
  add(kALambdaZero, "a_lambda");
  return s.empty() ? "ok" : s;
}

std::optional<Element> TowerPoint::coordinate(Var v) const {
  const auto& coords = v.kind == VarKind::A ? a : v.kind == VarKind::B ? b : c;
  if (v.index < 1 || v.index > coords.size()) return std::nullopt;
  return coords[v.index - 1];
}

Assignment TowerPoint::assignment() const {
  return [this](Var v) { return coordinate(v); };
}

std::uint32_t degeneracy_flags(const TowerPoint& pt, std::uint64_t q) {
  std::uint32_t flags = 0;
  for (const auto* coords : {&pt.a, &pt.b, &pt.c}) {
    for (const auto& x : *coords) {
      if (x.is_zero()) flags |= kZeroCoordinate;
    }
  }
  for (const auto& x : pt.a) {
    if (x.is_one()) flags |= kAEqualsOne;
    if (lambda_value(x, q).is_zero()) flags |= kALambdaZero;
  }
  return flags;
}

bool satisfies(const TowerSpec& spec, const TowerPoint& pt) {
  const auto at = pt.assignment();
  return std::all_of(spec.relations.begin(), spec.relations.end(),
                     [&](const Relation& r) { return r.poly.evaluate(at).is_zero(); });
}

namespace {

// b^(q-1) = -(a^q + a - 1)/a and c^(q-1) = (a - 1)/a
std::vector<Element> b_roots(const FieldCtx& ctx, const Element& a) {
  return kummer_solve(ctx, ctx.q() - 1, -lambda_value(a, ctx.q()) / a);
}

std::vector<Element> c_roots(const FieldCtx& ctx, const Element& a) {
  return kummer_solve(ctx, ctx.q() - 1, (a - Element::one(ctx)) / a);
}

}  // namespace

std::vector<TowerPoint> seed_points(const FieldCtx& ctx, const Element& a1) {
  if (a1.is_zero()) return {};
  std::vector<TowerPoint> out;
  const auto bs = b_roots(ctx, a1);
  const auto cs = c_roots(ctx, a1);
  for (const auto& b : bs) {
    for (const auto& c : cs) {
      TowerPoint pt{{a1}, {b}, {c}, 0};
      pt.degenerate = degeneracy_flags(pt, ctx.q());
      out.push_back(std::move(pt));
    }
  }
  return out;
}

std::vector<TowerPoint> extend_point(const FieldCtx& ctx, const TowerPoint& pt, Model model) {
  if (pt.level() == 0) throw InvalidArgument("empty point");
  const Element& an = pt.a.back();
  if (an.is_zero()) throw DomainError("cannot extend a point with a_n = 0");
  const std::uint64_t q = ctx.q();
  // a_n (1 - y) = y^q (a_n^q + a_n - 1)  <=>  v y^q + y = 1
  const Element v = lambda_value(an, q) / an;
  const auto ys = additive_affine_solve(ctx, v, Element::one(ctx), q);

  std::vector<TowerPoint> out;
  for (const auto& y : ys) {
    std::vector<Element> bs, cs;
    if (model == Model::Free) {
      bs = b_roots(ctx, y);
      cs = c_roots(ctx, y);
    } else {
      bs = {y * (an - Element::one(ctx)) * pt.c.back()};
      cs = {y * pt.b.back()};
    }
    for (const auto& b : bs) {
      for (const auto& c : cs) {
        TowerPoint next = pt;
        next.a.push_back(y);
        next.b.push_back(b);
        next.c.push_back(c);
        next.degenerate = degeneracy_flags(next, q);
        out.push_back(std::move(next));
      }
    }
  }
  return out;
}

namespace {

using Levels = std::vector<std::vector<TowerPoint>>;

void enumerate_chunk(const FieldCtx& ctx, const TowerSpec& spec, FieldCtx::Code begin, FieldCtx::Code end,
                     std::uint64_t max_points, std::atomic<std::uint64_t>& total, Levels& out) {
  out.assign(spec.level, {});
  auto bump = [&](std::size_t n) {
    if (total.fetch_add(n) + n > max_points) {
      throw CapExceeded("enumeration exceeds the point cap of " + std::to_string(max_points));
    }
  };
  for (FieldCtx::Code s = begin; s < end; ++s) {
    auto level1 = seed_points(ctx, Element(ctx, s));
    bump(level1.size());
    std::vector<TowerPoint> frontier = std::move(level1);
    for (unsigned lev = 1;; ++lev) {
      auto& bucket = out[lev - 1];
      if (lev == spec.level) {
        bucket.insert(bucket.end(), std::make_move_iterator(frontier.begin()),
                      std::make_move_iterator(frontier.end()));
        break;
      }
      std::vector<TowerPoint> next;
      for (const auto& pt : frontier) {
        auto ext = extend_point(ctx, pt, spec.model);
        bump(ext.size());
        next.insert(next.end(), std::make_move_iterator(ext.begin()), std::make_move_iterator(ext.end()));
      }
      bucket.insert(bucket.end(), std::make_move_iterator(frontier.begin()), std::make_move_iterator(frontier.end()));
      frontier = std::move(next);
    }
  }
}

}  // namespace

std::vector<std::vector<TowerPoint>> enumerate_levels(const FieldCtx& ctx, const TowerSpec& spec,
                                                      const EnumerateOptions& opts) {
  if (spec.q != ctx.q()) throw InvalidArgument("tower spec and field disagree on q");
  if (spec.level < 1) throw InvalidArgument("level n >= 1 required");
  auto [begin, end] = opts.seed_range.value_or(std::pair<FieldCtx::Code, FieldCtx::Code>{
      0, static_cast<FieldCtx::Code>(ctx.size())});
  end = std::min<FieldCtx::Code>(end, static_cast<FieldCtx::Code>(ctx.size()));
  begin = std::min(begin, end);

  const unsigned workers = std::max(1u, std::min<unsigned>(opts.workers, end - begin));
  std::vector<Levels> parts(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::atomic<std::uint64_t> total{0};
  const FieldCtx::Code span = end - begin;
  auto chunk_begin = [&](unsigned w) { return begin + static_cast<FieldCtx::Code>(std::uint64_t{span} * w / workers); };

  auto run = [&](unsigned w) {
    try {
      enumerate_chunk(ctx, spec, chunk_begin(w), chunk_begin(w + 1), opts.max_points, total, parts[w]);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  Levels merged(spec.level);
  for (auto& part : parts) {
    if (part.empty()) continue;
    for (unsigned l = 0; l < spec.level; ++l) {
      merged[l].insert(merged[l].end(), std::make_move_iterator(part[l].begin()),
                       std::make_move_iterator(part[l].end()));
    }
  }
  return merged;
}

std::vector<TowerPoint> enumerate_points(const FieldCtx& ctx, const TowerSpec& spec, const EnumerateOptions& opts) {
  auto levels = enumerate_levels(ctx, spec, opts);
  return std::move(levels.back());
}

std::string Rational::to_string() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational reference_ratio(std::uint64_t q) {
  const auto n = static_cast<std::int64_t>(2 * (q * q - 1));
  const auto d = static_cast<std::int64_t>(q + 2);
  const auto g = std::gcd(n, d);
  return {n / g, d / g};
}

namespace {

bool is_prefix(const TowerPoint& parent, const TowerPoint& child) {
  const auto n = parent.level();
  return child.level() == n + 1 && std::equal(parent.a.begin(), parent.a.end(), child.a.begin()) &&
         std::equal(parent.b.begin(), parent.b.end(), child.b.begin()) &&
         std::equal(parent.c.begin(), parent.c.end(), child.c.begin());
}

}  // namespace

CountReport count_points(const FieldCtx& ctx, const TowerSpec& spec, const EnumerateOptions& opts) {
  auto levels = enumerate_levels(ctx, spec, opts);
  CountReport report{spec.q, ctx.k(), spec.level, spec.model, {}, reference_ratio(spec.q)};
  for (unsigned l = 0; l < spec.level; ++l) {
    LevelCount lc{l + 1, levels[l].size(), 0, {}, {}};
    for (const auto& pt : levels[l]) {
      if (!pt.is_degenerate()) ++lc.nondegenerate;
    }
    if (l == 0) {
      // points per seed a_1, all seeds (including those without points)
      std::map<FieldCtx::Code, std::uint64_t> per_seed;
      for (const auto& pt : levels[0]) ++per_seed[pt.a[0].code()];
      const std::uint64_t seeds = opts.seed_range ? opts.seed_range->second - opts.seed_range->first : ctx.size();
      lc.branching[0] = seeds - per_seed.size();
      for (const auto& [s, n] : per_seed) ++lc.branching[n];
      if (lc.branching[0] == 0) lc.branching.erase(0);
    } else {
      std::size_t j = 0;
      for (const auto& parent : levels[l - 1]) {
        std::set<FieldCtx::Code> a_values;
        std::uint64_t children = 0;
        while (j < levels[l].size() && is_prefix(parent, levels[l][j])) {
          a_values.insert(levels[l][j].a.back().code());
          ++children;
          ++j;
        }
        ++lc.branching[children];
        ++lc.a_step[a_values.size()];
      }
    }
    report.levels.push_back(std::move(lc));
  }
  return report;
}

}  // namespace towerlab
