// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "towerlab/cli.hpp"
#include "towerlab/solvers.hpp"

using namespace towerlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail = what;
    pass = false;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

constexpr double kSymbolicBudget = 60.0;
constexpr double kOracleBudget = 300.0;

// 1. Symbolic proofs for q in {2, 3, 4, 5, 8}, n in {2, 3}, under 60 s.
Outcome symbolic_suite() {
  Outcome o;
  const auto t0 = Clock::now();
  int proved = 0;
  for (auto [p, m] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}, {2u, 3u}}) {
    auto f = make_field(p, m, 1);
    for (unsigned n : {2u, 3u}) {
      for (const auto& spec : builtin_identities(*f, n)) {
        auto t = prove_identity(spec, f->q());
        o.require(t.verdict == ProofVerdict::Proved && t.final_remainder.is_zero() && check_trace(t),
                  spec.id + " q=" + std::to_string(f->q()) + " n=" + std::to_string(n) + " not proved");
        proved += t.verdict == ProofVerdict::Proved;
      }
    }
  }
  const double dt = seconds_since(t0);
  o.require(dt < kSymbolicBudget, "runtime over budget");
  if (o.pass) o.detail = std::to_string(proved) + "/70 PROVED in " + std::to_string(dt) + " s";
  return o;
}

// 2. Sign-corrupted ID-CPROD fails both ways.
Outcome negative_control() {
  Outcome o;
  for (unsigned p : {2u, 3u}) {
    auto sym = make_field(p, 1, 1);
    auto pts = make_field(p, 1, 2);
    auto t = prove_identity(corrupt_sign(make_identity(*sym, "ID-CPROD", 2)), p);
    o.require(t.verdict == ProofVerdict::Failed, "corrupted identity proved at q=" + std::to_string(p));
    auto r = test_identity_points(corrupt_sign(make_identity(*pts, "ID-CPROD", 2)), *pts, 2);
    o.require(r.failures >= 1 && !r.failing_examples.empty(), "no failing point at q=" + std::to_string(p));
    if (o.pass) o.detail += "q=" + std::to_string(p) + ": FAILED, " + std::to_string(r.failures) + " failing points; ";
  }
  return o;
}

// 3. Point oracle agrees, Bezout margin certified at k = 2, under 5 min.
Outcome oracle_agreement() {
  Outcome o;
  const auto t0 = Clock::now();
  std::uint64_t tested = 0;
  for (unsigned p : {2u, 3u}) {
    for (unsigned k : {1u, 2u}) {
      auto f = make_field(p, 1, k);
      auto levels = enumerate_levels(*f, relations(*f, Model::Free, 3));
      for (unsigned n : {2u, 3u}) {
        for (const auto& spec : builtin_identities(*f, n)) {
          auto r = test_identity_points(spec, *f, levels[n - 1], Model::Free);
          const std::string tag = spec.id + " q=" + std::to_string(p) + " k=" + std::to_string(k) + " n=" +
                                  std::to_string(n);
          o.require(r.failures == 0, tag + ": violations");
          o.require(r.tested > 0, tag + ": nothing tested");
          if (k == 2) o.require(r.bezout && r.bezout->certified, tag + ": Bezout margin not certified");
          tested += r.tested;
        }
      }
    }
  }
  const double dt = seconds_since(t0);
  o.require(dt < kOracleBudget, "runtime over budget");
  if (o.pass) o.detail = std::to_string(tested) + " evaluations, 0 violations in " + std::to_string(dt) + " s";
  return o;
}

// 4. Degrees on the canonical model at k = 2 with the k = 3 stability run.
Outcome degrees() {
  Outcome o;
  auto check = [&](unsigned p, StepLetter s, unsigned n, std::uint64_t expected) {
    auto f = make_field(p, 1, 2);
    auto r = fiber_histogram(*f, s, n);
    const std::string tag = to_string(s) + std::to_string(n) + " q=" + std::to_string(p);
    o.require(r.base_tuples >= kMinBaseTuples, tag + ": too few base tuples");
    o.require(r.modal && *r.modal == expected, tag + ": modal " + (r.modal ? std::to_string(*r.modal) : "none"));
    o.require(r.stable == true, tag + ": not stable");
    return r;
  };
  check(3, StepLetter::C, 2, 3);
  auto h = check(3, StepLetter::H, 2, 3);
  o.require(h.modal && *h.modal != 6, "H-step literature value 6 not refuted");
  check(3, StepLetter::A, 2, 3);
  check(3, StepLetter::H, 1, 6);
  for (auto s : {StepLetter::A, StepLetter::C, StepLetter::H, StepLetter::G}) {
    for (unsigned n : {1u, 2u}) check(2, s, n, 2);
  }
  if (o.pass) o.detail = "q=3: C2 3, H2 3 (literature 6 REFUTED), A2 3, H1 6; q=2: all steps 2; stable at k=3";
  return o;
}

bool equal_with_witnesses(const FieldCtx& ctx, const std::vector<std::vector<TowerPoint>>& levels, unsigned n,
                          const std::vector<Var>& l, const std::vector<Var>& r) {
  auto eq = partition_compare(ctx, levels[n - 1], n, l, r);
  return eq.verdict == EqualityVerdict::Equal && witness_suite(ctx, n).passed();
}

// 5. Field equalities.
Outcome field_equality() {
  Outcome o;
  using S = StepLetter;
  for (unsigned p : {2u, 3u}) {
    auto f = make_field(p, 1, 2);
    auto levels = enumerate_levels(*f, relations(*f, Model::Canonical, 4));
    const std::string qs = " q=" + std::to_string(p);
    for (unsigned n : {2u, 3u}) {
      o.require(equal_with_witnesses(*f, levels, n, generators(S::H, n), generators(S::C, n)),
                "H" + std::to_string(n) + " = C" + std::to_string(n) + qs);
    }
    if (p == 3) {
      auto r = partition_compare(*f, levels[0], 1, generators(S::H, 1), generators(S::C, 1));
      o.require(r.verdict == EqualityVerdict::Unequal && r.witness.has_value(), "H1 vs C1 not separated");
      for (unsigned n : {3u, 4u}) {
        o.require(equal_with_witnesses(*f, levels, n, generators(S::G, n), generators(S::H, n)),
                  "G" + std::to_string(n) + " = H" + std::to_string(n) + qs);
      }
    } else {
      for (unsigned n = 1; n <= 4; ++n) {
        o.require(partition_compare(*f, levels[n - 1], n, generators(S::A, n), generators(S::C, n)).verdict ==
                      EqualityVerdict::Equal,
                  "A" + std::to_string(n) + " = C" + std::to_string(n) + qs);
        o.require(partition_compare(*f, levels[n - 1], n, generators(S::G, n), generators(S::H, n)).verdict ==
                      EqualityVerdict::Equal,
                  "G" + std::to_string(n) + " = H" + std::to_string(n) + qs);
      }
    }
  }
  if (o.pass) o.detail = "H2=C2, H3=C3 (q=2,3); H1!=C1 with witness (q=3); q=2 collapse n<=4; G3=H3, G4=H4 (q=3)";
  return o;
}

// 6. Composita.
Outcome compositum() {
  Outcome o;
  for (unsigned p : {2u, 3u}) {
    auto f = make_field(p, 1, 2);
    auto levels = enumerate_levels(*f, relations(*f, Model::Canonical, 4));
    for (unsigned n : {3u, 4u}) {
      for (auto [left, right] : {std::pair{"A+C2", StepLetter::C}, {"A+H2", StepLetter::H}}) {
        auto r = partition_compare(*f, levels[n - 1], n, *parse_generators(left, n), generators(right, n));
        const bool clean = r.joint_classes == r.left_classes && r.joint_classes == r.right_classes;
        o.require(r.verdict == EqualityVerdict::Equal && clean,
                  std::string(left) + " vs " + to_string(right) + std::to_string(n) + " q=" + std::to_string(p));
      }
    }
  }
  if (o.pass) o.detail = "A_n*C2 = C_n and A_n*H2 = H_n for n=3,4, q=2,3; 0 mismatching classes";
  return o;
}

// 7. Solvers against whole-field scans on every field of size <= 3^6.
Outcome solver_equivalence() {
  Outcome o;
  std::uint64_t inputs = 0;
  for (auto [p, m, k] : {std::tuple{2u, 1u, 1u}, {2u, 1u, 2u}, {2u, 1u, 3u}, {2u, 2u, 1u}, {2u, 3u, 1u}, {3u, 1u, 1u},
                         {3u, 1u, 2u}, {5u, 1u, 1u}, {7u, 1u, 1u}}) {
    auto f = make_field(p, m, k);
    const auto& ctx = *f;
    const std::uint64_t n = ctx.size();
    const std::string tag = std::to_string(p) + "^" + std::to_string(ctx.degree());

    std::vector<std::uint64_t> exponents;
    for (std::uint64_t r = 1; r <= n - 1; ++r) {
      if ((n - 1) % r == 0) exponents.push_back(r);
    }
    exponents.push_back(ctx.q() - 1 == 0 ? 1 : ctx.q() - 1);
    exponents.push_back(n);  // gcd(n, n-1) = 1
    for (auto r : exponents) {
      std::vector<std::vector<FieldCtx::Code>> scan(n);
      for (FieldCtx::Code x = 0; x < n; ++x) scan[ctx.pow(x, r)].push_back(x);
      for (FieldCtx::Code c = 0; c < n; ++c) {
        std::vector<FieldCtx::Code> got;
        for (const auto& e : kummer_solve(ctx, r, Element(ctx, c))) got.push_back(e.code());
        ++inputs;
        o.require(got == scan[c], "kummer_solve mismatch over F_" + tag + " r=" + std::to_string(r));
      }
    }

    std::vector<std::uint64_t> qs = {ctx.q()};
    if (ctx.q() != p) qs.push_back(p);
    for (auto q : qs) {
      for (FieldCtx::Code v = 0; v < n; ++v) {
        std::vector<std::vector<FieldCtx::Code>> scan(n);
        for (FieldCtx::Code y = 0; y < n; ++y) scan[ctx.add(ctx.mul(v, ctx.pow(y, q)), y)].push_back(y);
        for (FieldCtx::Code w = 0; w < n; ++w) {
          std::vector<FieldCtx::Code> got;
          for (const auto& e : additive_affine_solve(ctx, Element(ctx, v), Element(ctx, w), q)) got.push_back(e.code());
          ++inputs;
          o.require(got == scan[w], "additive_affine_solve mismatch over F_" + tag + " q=" + std::to_string(q));
        }
      }
    }
  }
  if (o.pass) o.detail = std::to_string(inputs) + " inputs over 9 fields, all equal to brute force";
  return o;
}

// 8. Byte-identical reports across runs and worker counts.
Outcome determinism() {
  Outcome o;
  RunConfig cfg;
  cfg.command = "report";
  cfg.p = 3;
  cfg.k = 2;
  cfg.levels = 3;
  const auto first = render(execute(cfg), Format::Json);
  const auto second = render(execute(cfg), Format::Json);
  cfg.workers = 4;
  const auto parallel = render(execute(cfg), Format::Json);
  o.require(first == second, "two runs differ");
  o.require(first == parallel, "workers 1 vs 4 differ");

  RunConfig e;
  e.command = "enumerate";
  e.p = 2;
  e.k = 2;
  e.levels = 3;
  e.model = "canonical";
  const auto csv1 = render(execute(e), Format::Csv);
  e.workers = 4;
  o.require(csv1 == render(execute(e), Format::Csv), "point CSV differs across worker counts");
  if (o.pass) o.detail = "report JSON " + std::to_string(first.size()) + " bytes identical x3";
  return o;
}

// 9. Reference constant 2(q^2-1)/(q+2).
Outcome reference_constants() {
  Outcome o;
  const std::map<std::pair<unsigned, unsigned>, std::string> expected = {
      {{2, 1}, "3/2"}, {{3, 1}, "16/5"}, {{2, 2}, "5"}};
  for (const auto& [pm, value] : expected) {
    RunConfig cfg;
    cfg.command = "field";
    cfg.p = pm.first;
    cfg.m = pm.second;
    auto rep = execute(cfg);
    o.require(rep.to_json()["reference_ratio"]["value"] == value, "JSON value for q=" + std::to_string(rep.q));
    o.require(render(rep, Format::Text).find("2(q²−1)/(q+2) = " + value + "\n") != std::string::npos,
              "text line for q=" + std::to_string(rep.q));
  }
  if (o.pass) o.detail = "q=2: 3/2, q=3: 16/5, q=4: 5";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 symbolic proof suite", symbolic_suite},
      {"AC2 negative control", negative_control},
      {"AC3 oracle agreement", oracle_agreement},
      {"AC4 degrees", degrees},
      {"AC5 field equality", field_equality},
      {"AC6 compositum", compositum},
      {"AC7 solver exhaustive equivalence", solver_equivalence},
      {"AC8 determinism", determinism},
      {"AC9 reference constants", reference_constants},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
