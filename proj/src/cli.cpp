#include "towerlab/cli.hpp"

#include <algorithm>
#include <CLI11.hpp>

namespace towerlab {

Json RunConfig::echo() const {
  return {{"command", command},   {"p", p},           {"m", m},           {"k", k},
          {"levels", levels},     {"model", model},   {"tower", tower},   {"step", step},
          {"from", from},         {"identity", identity}, {"mode", mode}, {"left", left},
          {"right", right},       {"expect", expect}, {"corrupt", corrupt}, {"stability", stability},
          {"max_points", max_points}};
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Pass: return kExitPass;
    case Verdict::Fail: return kExitFail;
    case Verdict::Inconclusive: return kExitInconclusive;
  }
  return kExitError;
}

namespace {

EnumerateOptions enumerate_options(const RunConfig& cfg) {
  EnumerateOptions opts;
  opts.workers = std::max(1u, cfg.workers);
  opts.max_points = cfg.max_points;
  return opts;
}

DegreeOptions degree_options(const RunConfig& cfg) {
  DegreeOptions opts;
  opts.check_stability = cfg.stability;
  opts.enumerate = enumerate_options(cfg);
  return opts;
}

Model model_of(const RunConfig& cfg) {
  auto m = parse_model(cfg.model);
  if (!m) throw InvalidArgument("unknown model '" + cfg.model + "'");
  return *m;
}

void check_levels(unsigned n) {
  if (n < 1) throw InvalidArgument("--levels must be at least 1");
  if (n > kDefaultMaxLevel) throw CapExceeded("level " + std::to_string(n) + " exceeds the level cap " +
                                              std::to_string(kDefaultMaxLevel));
}

std::string columns_of(std::string_view tower) {
  if (tower == "A") return "a";
  if (tower == "B") return "ab";
  if (tower == "C") return "c";
  throw InvalidArgument("unknown tower '" + std::string(tower) + "'");
}

CsvTable select_columns(const CsvTable& t, const std::string& letters) {
  CsvTable out{t.name, {}, {}};
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    const auto& h = t.header[i];
    if (i < 2 || letters.find(h[0]) != std::string::npos) {
      keep.push_back(i);
      out.header.push_back(h);
    }
  }
  for (const auto& row : t.rows) {
    std::vector<std::string> r;
    for (auto i : keep) r.push_back(row[i]);
    out.rows.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------

void run_field(const RunConfig& cfg, Report& rep) {
  auto ctx = make_field(cfg.p, cfg.m, cfg.k);
  rep.q = ctx->q();
  // Table arithmetic against the structural product on a deterministic sample
  const std::uint64_t n = ctx->size();
  const std::uint64_t stride = n <= 256 ? 1 : n / 256 + 1;
  std::uint64_t mismatches = 0, pairs = 0;
  for (std::uint64_t x = 0; x < n; x += stride) {
    for (std::uint64_t y = 0; y < n; y += stride) {
      ++pairs;
      const auto cx = static_cast<FieldCtx::Code>(x), cy = static_cast<FieldCtx::Code>(y);
      if (ctx->mul(cx, cy) != ctx->mul_structural(cx, cy)) ++mismatches;
    }
  }
  const auto g = ctx->generator();
  auto x = g;
  for (unsigned i = 0; i < ctx->degree(); ++i) x = ctx->frobenius(x);
  const bool frob_order = x == g && ctx->pow(g, n - 1) == 1;
  rep.results["field"] = to_json(*ctx);
  rep.results["checks"] = {{"structural_pairs", pairs},
                           {"structural_mismatches", mismatches},
                           {"frobenius_order_ok", frob_order}};
  rep.summary.push_back("F_{" + std::to_string(ctx->ell()) + "^" + std::to_string(ctx->k()) + "}: size " +
                        std::to_string(n) + ", q = " + std::to_string(ctx->q()));
  rep.summary.push_back("structural product check: " + std::to_string(pairs) + " pairs, " +
                        std::to_string(mismatches) + " mismatches");
  if (mismatches || !frob_order) rep.verdict = Verdict::Fail;
}

void run_enumerate(const RunConfig& cfg, Report& rep) {
  check_levels(cfg.levels);
  auto ctx = make_field(cfg.p, cfg.m, cfg.k);
  rep.q = ctx->q();
  const auto spec = relations(*ctx, model_of(cfg), cfg.levels);
  const auto opts = enumerate_options(cfg);
  const auto levels = enumerate_levels(*ctx, spec, opts);
  const auto count = count_points(*ctx, spec, opts);

  std::uint64_t violations = 0;
  std::vector<TowerPoint> all;
  for (const auto& lvl : levels) {
    for (const auto& pt : lvl) {
      const auto level_spec = relations(*ctx, spec.model, pt.level());
      if (!satisfies(level_spec, pt)) ++violations;
      all.push_back(pt);
    }
  }
  rep.results["count"] = to_json(count);
  rep.results["relation_violations"] = violations;
  Json rels = Json::array();
  for (const auto& r : spec.relations) rels.push_back({{"name", r.name}, {"poly", to_json(r.poly)}});
  rep.results["relations"] = rels;
  rep.tables.push_back(select_columns(points_table(all), columns_of(cfg.tower)));
  for (const auto& l : count.levels) {
    rep.summary.push_back("level " + std::to_string(l.level) + ": " + std::to_string(l.points) + " points, " +
                          std::to_string(l.nondegenerate) + " non-degenerate");
  }
  rep.summary.push_back("relation violations: " + std::to_string(violations));
  if (violations) rep.verdict = Verdict::Fail;
}

void run_verify(const RunConfig& cfg, Report& rep) {
  check_levels(cfg.levels);
  if (cfg.levels < 2) throw InvalidArgument("identities need --levels >= 2");
  std::vector<std::string> ids;
  if (cfg.identity == "all") {
    ids = core_identity_ids();
  } else if (is_core_identity(cfg.identity)) {
    ids = {cfg.identity};
  } else {
    throw InvalidArgument("unknown identity '" + cfg.identity + "'");
  }
  if (cfg.mode != "symbolic" && cfg.mode != "points" && cfg.mode != "both") {
    throw InvalidArgument("unknown mode '" + cfg.mode + "'");
  }
  const bool symbolic = cfg.mode != "points";
  const bool points = cfg.mode != "symbolic";
  const Model model = model_of(cfg);

  auto sym_ctx = make_field(cfg.p, cfg.m, 1);
  rep.q = sym_ctx->q();
  FieldPtr pt_ctx;
  std::vector<std::vector<TowerPoint>> levels;
  if (points) {
    pt_ctx = make_field(cfg.p, cfg.m, cfg.k);
    levels = enumerate_levels(*pt_ctx, relations(*pt_ctx, model, cfg.levels), enumerate_options(cfg));
  }
  auto prepare = [&](const FieldCtx& ctx, const std::string& id, unsigned n) {
    auto spec = make_identity(ctx, id, n);
    return cfg.corrupt ? corrupt_sign(spec) : spec;
  };

  Json entries = Json::array();
  for (unsigned n = 2; n <= cfg.levels; ++n) {
    for (const auto& id : ids) {
      Json entry = {{"id", id}, {"level", n}};
      std::string line = id + " n=" + std::to_string(n);
      if (symbolic) {
        const auto spec = prepare(*sym_ctx, id, n);
        entry["identity"] = to_json(spec);
        const auto trace = prove_identity(spec, sym_ctx->q());
        entry["symbolic"] = to_json(trace);
        line += " symbolic " + to_string(trace.verdict);
        if (trace.verdict != ProofVerdict::Proved) rep.verdict = Verdict::Fail;
      }
      if (points) {
        const auto spec = prepare(*pt_ctx, id, n);
        const auto r = test_identity_points(spec, *pt_ctx, levels[n - 1], model);
        entry["points"] = to_json(r);
        line += " points tested=" + std::to_string(r.tested) + " failures=" + std::to_string(r.failures);
        if (r.bezout) line += std::string(" bezout=") + (r.bezout->certified ? "certified" : "uncertified");
        if (r.failures) rep.verdict = Verdict::Fail;
      }
      entries.push_back(std::move(entry));
      rep.summary.push_back(std::move(line));
    }
  }
  rep.results["identities"] = entries;
}

Verdict degree_verdict(const DegreeReport& r, std::optional<std::uint64_t> expected) {
  if (!r.modal) return Verdict::Inconclusive;
  if (r.stable && !*r.stable) return Verdict::Fail;
  if (expected && *r.modal != *expected) return Verdict::Fail;
  return Verdict::Pass;
}

Json degree_entry(const DegreeReport& r, std::uint64_t q, std::vector<std::string>& summary) {
  const auto expected = expected_degree(r.letter, r.from_level, q);
  Json entry = to_json(r);
  entry["expected"] = expected ? Json(*expected) : Json(nullptr);
  std::string line = to_string(r.letter) + "-step " + std::to_string(r.from_level) + "->" +
                     std::to_string(r.from_level + 1) + " modal=" + (r.modal ? std::to_string(*r.modal) : "INCONCLUSIVE");
  if (r.stable) line += std::string(" stable=") + (*r.stable ? "true" : "false");
  if (r.letter == StepLetter::H && r.from_level >= 2) {
    const std::uint64_t literature = q * q - q;
    const std::string v = r.modal ? (*r.modal == literature ? "CONFIRMED" : "REFUTED") : "n/a";
    entry["literature"] = literature;
    entry["literature_verdict"] = v;
    line += " literature=" + std::to_string(literature) + " " + v;
  }
  entry["verdict"] = to_string(degree_verdict(r, expected));
  summary.push_back(std::move(line));
  return entry;
}

void run_degrees(const RunConfig& cfg, Report& rep) {
  const auto letter = parse_step(cfg.step);
  if (!letter) throw InvalidArgument("unknown step '" + cfg.step + "'");
  if (cfg.from < 1) throw InvalidArgument("--from must be at least 1");
  check_levels(cfg.from + 1);
  auto ctx = make_field(cfg.p, cfg.m, cfg.k);
  rep.q = ctx->q();
  const auto r = fiber_histogram(*ctx, *letter, cfg.from, degree_options(cfg));
  rep.results["degree"] = degree_entry(r, ctx->q(), rep.summary);
  rep.tables.push_back(histogram_table(r));
  rep.verdict = degree_verdict(r, expected_degree(*letter, cfg.from, ctx->q()));
}

Verdict equality_verdict(const EqualityReport& eq, const WitnessReport& w, EqualityVerdict expected) {
  if (!w.passed()) return Verdict::Fail;
  if (eq.verdict == EqualityVerdict::Inconclusive) return Verdict::Inconclusive;
  return eq.verdict == expected ? Verdict::Pass : Verdict::Fail;
}

void run_equality(const RunConfig& cfg, Report& rep) {
  check_levels(cfg.levels);
  const unsigned n = cfg.levels;
  const auto left = parse_generators(cfg.left, n);
  const auto right = parse_generators(cfg.right, n);
  if (!left) throw InvalidArgument("unknown generator set '" + cfg.left + "'");
  if (!right) throw InvalidArgument("unknown generator set '" + cfg.right + "'");
  EqualityVerdict expected;
  if (cfg.expect == "equal") {
    expected = EqualityVerdict::Equal;
  } else if (cfg.expect == "unequal") {
    expected = EqualityVerdict::Unequal;
  } else {
    throw InvalidArgument("--expect must be equal or unequal");
  }
  auto ctx = make_field(cfg.p, cfg.m, cfg.k);
  rep.q = ctx->q();
  const auto opts = enumerate_options(cfg);
  const auto eq = partition_compare(*ctx, n, *left, *right, opts);
  const auto w = witness_suite(*ctx, n, opts);
  rep.results["partition"] = to_json(eq);
  rep.results["witnesses"] = to_json(w);
  rep.results["expected"] = to_string(expected);
  rep.summary.push_back(cfg.left + std::to_string(n) + " vs " + cfg.right + std::to_string(n) + ": " +
                        to_string(eq.verdict) + " (" + std::to_string(eq.left_classes) + "/" +
                        std::to_string(eq.right_classes) + "/" + std::to_string(eq.joint_classes) + " classes)");
  rep.summary.push_back(std::string("witnesses: ") + (w.passed() ? "pass" : "FAIL") + " over " +
                        std::to_string(w.points) + " points");
  rep.verdict = equality_verdict(eq, w, expected);
}

Verdict remark_verdict(const RemarkReport& r) {
  if (r.passed()) return Verdict::Pass;
  Verdict v = Verdict::Pass;
  for (const auto& c : r.equalities) {
    if (c.passed()) continue;
    v = combine(v, c.report.verdict == EqualityVerdict::Inconclusive ? Verdict::Inconclusive : Verdict::Fail);
  }
  for (const auto& d : r.degrees) {
    if (d.passed()) continue;
    v = combine(v, d.report.modal ? Verdict::Fail : Verdict::Inconclusive);
  }
  return v;
}

void remark_summary(const RemarkReport& r, std::vector<std::string>& summary) {
  for (const auto& c : r.equalities) {
    summary.push_back(c.name + ": " + to_string(c.report.verdict) + " (expected " + to_string(c.expected) + ")");
  }
  for (const auto& d : r.degrees) {
    std::string line = d.name + ": modal=" + (d.report.modal ? std::to_string(*d.report.modal) : "INCONCLUSIVE");
    if (d.expected) line += " expected=" + std::to_string(*d.expected);
    if (d.literature) line += " literature=" + std::to_string(*d.literature) + " " + d.literature_verdict;
    summary.push_back(std::move(line));
  }
}

void run_remarks(const RunConfig& cfg, Report& rep) {
  auto ctx = make_field(cfg.p, cfg.m, cfg.k);
  rep.q = ctx->q();
  const auto r = remark_suite(*ctx, degree_options(cfg));
  rep.results["remarks"] = to_json(r);
  remark_summary(r, rep.summary);
  rep.verdict = remark_verdict(r);
}

void run_report(const RunConfig& cfg, Report& rep) {
  auto sub = [&](const std::string& name, RunConfig c, void (*fn)(const RunConfig&, Report&)) {
    Report part;
    c.command = name;
    fn(c, part);
    rep.results[name] = part.results;
    rep.results[name]["overall"] = to_string(part.verdict);
    for (auto& line : part.summary) rep.summary.push_back("[" + name + "] " + line);
    rep.verdict = combine(rep.verdict, part.verdict);
    rep.q = part.q;
  };
  sub("field", cfg, run_field);
  sub("enumerate", cfg, run_enumerate);
  RunConfig v = cfg;
  v.levels = std::min(std::max(cfg.levels, 2u), 3u);
  v.identity = "all";
  v.mode = "both";
  sub("verify", v, run_verify);

  auto ctx = make_field(cfg.p, cfg.m, cfg.k);
  Json degrees = Json::array();
  Verdict dv = Verdict::Pass;
  for (auto [letter, from] : {std::pair{StepLetter::C, 2u}, {StepLetter::H, 2u}, {StepLetter::A, 2u},
                              {StepLetter::H, 1u}}) {
    const auto r = fiber_histogram(*ctx, letter, from, degree_options(cfg));
    std::vector<std::string> lines;
    degrees.push_back(degree_entry(r, ctx->q(), lines));
    for (auto& l : lines) rep.summary.push_back("[degrees] " + l);
    dv = combine(dv, degree_verdict(r, expected_degree(letter, from, ctx->q())));
  }
  rep.results["degrees"] = degrees;
  rep.verdict = combine(rep.verdict, dv);

  Json equalities = Json::array();
  for (unsigned n = 2; n <= 3; ++n) {
    const auto opts = enumerate_options(cfg);
    const auto eq = partition_compare(*ctx, n, generators(StepLetter::H, n), generators(StepLetter::C, n), opts);
    const auto w = witness_suite(*ctx, n, opts);
    const auto verdict = equality_verdict(eq, w, EqualityVerdict::Equal);
    equalities.push_back({{"partition", to_json(eq)}, {"witnesses", to_json(w)}, {"verdict", to_string(verdict)}});
    rep.summary.push_back("[equality] H" + std::to_string(n) + " vs C" + std::to_string(n) + ": " +
                          to_string(eq.verdict) + ", witnesses " + (w.passed() ? "pass" : "FAIL"));
    rep.verdict = combine(rep.verdict, verdict);
  }
  rep.results["equalities"] = equalities;

  const auto remarks = remark_suite(*ctx, degree_options(cfg));
  rep.results["remarks"] = to_json(remarks);
  std::vector<std::string> lines;
  remark_summary(remarks, lines);
  for (auto& l : lines) rep.summary.push_back("[remarks] " + l);
  rep.verdict = combine(rep.verdict, remark_verdict(remarks));
}

}  // namespace

Report execute(const RunConfig& cfg) {
  Report rep;
  rep.command = cfg.command;
  rep.config = cfg.echo();
  if (cfg.command == "field") {
    run_field(cfg, rep);
  } else if (cfg.command == "enumerate") {
    run_enumerate(cfg, rep);
  } else if (cfg.command == "verify") {
    run_verify(cfg, rep);
  } else if (cfg.command == "degrees") {
    run_degrees(cfg, rep);
  } else if (cfg.command == "equality") {
    run_equality(cfg, rep);
  } else if (cfg.command == "remarks") {
    run_remarks(cfg, rep);
  } else if (cfg.command == "report") {
    run_report(cfg, rep);
  } else {
    throw InvalidArgument("unknown command '" + cfg.command + "'");
  }
  return rep;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact computations on the towers A, B, C over cubic finite fields", "towerlab"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(TOWERLAB_VERSION));

  auto common = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "characteristic")->capture_default_str();
    sub->add_option("--m", cfg.m, "q = p^m")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--k", cfg.k, "work over F_{l^k}, l = q^3")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "json, csv or text")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--workers", cfg.workers, "enumeration threads")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--max-points", cfg.max_points, "point cap per run")->capture_default_str();
  };
  auto levels = [&](CLI::App* sub) { sub->add_option("--levels", cfg.levels, "tower level n")->capture_default_str(); };
  auto model = [&](CLI::App* sub) {
    sub->add_option("--model", cfg.model, "free or canonical")
        ->capture_default_str()
        ->check(CLI::IsMember({"free", "canonical"}));
  };
  auto no_stability = [&](CLI::App* sub) {
    sub->add_flag("!--no-stability", cfg.stability, "skip the k+1 stability run");
  };

  auto* field = app.add_subcommand("field", "describe F_{l^k} and check its tables");
  common(field);
  auto* enumerate = app.add_subcommand("enumerate", "enumerate tower points");
  common(enumerate);
  levels(enumerate);
  model(enumerate);
  enumerate->add_option("--tower", cfg.tower, "coordinates exported to CSV: A, B or C")
      ->capture_default_str()
      ->check(CLI::IsMember({"A", "B", "C"}));
  auto* verify = app.add_subcommand("verify", "prove identities and test them on points");
  common(verify);
  levels(verify);
  model(verify);
  verify->add_option("--identity", cfg.identity, "identity id or 'all'")->capture_default_str();
  verify->add_option("--mode", cfg.mode, "symbolic, points or both")
      ->capture_default_str()
      ->check(CLI::IsMember({"symbolic", "points", "both"}));
  verify->add_flag("--corrupt", cfg.corrupt, "flip the sign of the leading term (negative control)");
  auto* degrees = app.add_subcommand("degrees", "fiber-size histogram of one tower step");
  common(degrees);
  degrees->add_option("--step", cfg.step, "A, C, H or G")->capture_default_str()->check(CLI::IsMember({"A", "C", "H", "G"}));
  degrees->add_option("--from", cfg.from, "step from level n to n+1")->capture_default_str();
  no_stability(degrees);
  auto* equality = app.add_subcommand("equality", "compare two subfields at one level");
  common(equality);
  levels(equality);
  equality->add_option("--left", cfg.left, "A, C, H, G, A+C2 or A+H2")->capture_default_str();
  equality->add_option("--right", cfg.right, "A, C, H, G, A+C2 or A+H2")->capture_default_str();
  equality->add_option("--expect", cfg.expect, "equal or unequal")
      ->capture_default_str()
      ->check(CLI::IsMember({"equal", "unequal"}));
  auto* remarks = app.add_subcommand("remarks", "collapse, compositum and degree checks");
  common(remarks);
  no_stability(remarks);
  auto* report = app.add_subcommand("report", "run every suite");
  common(report);
  levels(report);
  model(report);
  no_stability(report);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    const auto rep = execute(cfg);
    emit_report(rep, *parse_format(cfg.format), cfg.out, out);
    return exit_code(rep.verdict);
  } catch (const CapExceeded& e) {
    err << "towerlab: " << e.what() << '\n';
    return kExitError;
  } catch (const InvalidArgument& e) {
    err << "towerlab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "towerlab: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace towerlab
