#include "towerlab/report.hpp"

#include <fstream>
#include <sstream>

namespace towerlab {

Json to_json(const Element& x) { return x.coordinates(); }

Json to_json(const SparsePoly& p) {
  const auto vars = p.variables();
  Json names = Json::array();
  for (const auto& v : vars) names.push_back(v.name());
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back({SparsePoly::dense_exponents(m, vars), to_json(c)});
  return {{"variables", names}, {"terms", terms}};
}

Json to_json(const RatExpr& e) {
  Json den = Json::array();
  for (const auto& f : e.den()) den.push_back({{"factor", to_json(f.poly)}, {"exp", f.exp}});
  return {{"num", to_json(e.num())}, {"den", den}, {"text", e.to_string()}};
}

Json to_json(const Rational& r) {
  return {{"formula", "2(q^2-1)/(q+2)"}, {"num", r.num}, {"den", r.den}, {"value", r.to_string()}};
}

Json to_json(const FieldCtx& ctx) {
  Json outer = Json::array();
  for (auto c : ctx.outer_modulus()) outer.push_back(to_json(Element(ctx.base(), c)));
  return {{"p", ctx.p()},
          {"m", ctx.m()},
          {"k", ctx.k()},
          {"q", ctx.q()},
          {"ell", ctx.ell()},
          {"size", ctx.size()},
          {"inner_modulus", ctx.inner_modulus()},
          {"outer_modulus", outer},
          {"generator", to_json(Element(ctx, ctx.generator()))}};
}

Json to_json(const TowerPoint& pt) {
  auto coords = [](const std::vector<Element>& xs) {
    Json out = Json::array();
    for (const auto& x : xs) out.push_back(to_json(x));
    return out;
  };
  return {{"level", pt.level()},
          {"flags", degeneracy_string(pt.degenerate)},
          {"a", coords(pt.a)},
          {"b", coords(pt.b)},
          {"c", coords(pt.c)}};
}

namespace {

Json histogram_json(const std::map<std::uint64_t, std::uint64_t>& h) {
  Json out = Json::array();
  for (const auto& [size, freq] : h) out.push_back({{"size", size}, {"count", freq}});
  return out;
}

Json vars_json(const std::vector<Var>& vars) {
  Json out = Json::array();
  for (const auto& v : vars) out.push_back(v.name());
  return out;
}

template <class T>
Json optional_json(const std::optional<T>& x) {
  return x ? Json(*x) : Json(nullptr);
}

}  // namespace

Json to_json(const CountReport& r) {
  Json levels = Json::array();
  for (const auto& l : r.levels) {
    levels.push_back({{"level", l.level},
                      {"points", l.points},
                      {"nondegenerate", l.nondegenerate},
                      {"branching", histogram_json(l.branching)},
                      {"a_step", histogram_json(l.a_step)}});
  }
  return {{"q", r.q},
          {"k", r.k},
          {"n", r.n},
          {"model", to_string(r.model)},
          {"levels", levels},
          {"reference_ratio", to_json(r.reference_ratio)}};
}

Json to_json(const IdentitySpec& s) {
  return {{"id", s.id},          {"expr", to_json(s.expr)}, {"index", s.index},
          {"level", s.level},    {"pattern", s.pattern},    {"anchor", s.anchor}};
}

Json to_json(const ProofTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    steps.push_back({{"variable", s.var.name()},
                     {"relation", s.relation},
                     {"lc_power", s.lc_power},
                     {"quotient_degree", s.quotient_degree},
                     {"input_terms", s.input.size()},
                     {"remainder", to_json(s.remainder)}});
  }
  return {{"id", t.id},
          {"rewrite_log", t.rewrite_log},
          {"monomial", to_json(t.monomial)},
          {"cleared", to_json(t.cleared)},
          {"steps", steps},
          {"final_remainder", to_json(t.final_remainder)},
          {"verdict", to_string(t.verdict)}};
}

Json to_json(const PointTestReport& r) {
  Json examples = Json::array();
  for (const auto& pt : r.failing_examples) examples.push_back(to_json(pt));
  Json bezout = nullptr;
  if (r.bezout) {
    bezout = {{"x", r.bezout->x.name()},
              {"y", r.bezout->y.name()},
              {"curve_points", r.bezout->curve_points},
              {"bound", r.bezout->bound},
              {"certified", r.bezout->certified}};
  }
  return {{"id", r.id},
          {"level", r.level},
          {"k", r.k},
          {"model", to_string(r.model)},
          {"tested", r.tested},
          {"skipped_degenerate", r.skipped_degenerate},
          {"skipped_denominator", r.skipped_denominator},
          {"failures", r.failures},
          {"failing_examples", examples},
          {"bezout", bezout}};
}

Json to_json(const DegreeReport& r) {
  return {{"step", to_string(r.letter)},
          {"from_level", r.from_level},
          {"to_level", r.from_level + 1},
          {"k", r.k},
          {"histogram", histogram_json(r.histogram)},
          {"base_tuples", r.base_tuples},
          {"degenerate_points", r.degenerate_points},
          {"modal", optional_json(r.modal)},
          {"modal_next_k", optional_json(r.modal_next_k)},
          {"stable", optional_json(r.stable)},
          {"status", r.modal ? "OK" : "INCONCLUSIVE"}};
}

Json to_json(const EqualityReport& r) {
  Json witness = nullptr;
  if (r.witness) witness = Json::array({to_json(r.witness->first), to_json(r.witness->second)});
  return {{"left", vars_json(r.left)},
          {"right", vars_json(r.right)},
          {"level", r.level},
          {"k", r.k},
          {"verdict", to_string(r.verdict)},
          {"points", r.points},
          {"left_classes", r.left_classes},
          {"right_classes", r.right_classes},
          {"joint_classes", r.joint_classes},
          {"witness", witness}};
}

Json to_json(const WitnessReport& r) {
  return {{"level", r.level},
          {"k", r.k},
          {"points", r.points},
          {"skipped_degenerate", r.skipped_degenerate},
          {"checks", r.checks},
          {"failures", r.failures},
          {"passed", r.passed()}};
}

Json to_json(const RemarkReport& r) {
  Json eq = Json::array();
  for (const auto& c : r.equalities) {
    eq.push_back({{"name", c.name},
                  {"expected", to_string(c.expected)},
                  {"report", to_json(c.report)},
                  {"passed", c.passed()}});
  }
  Json deg = Json::array();
  for (const auto& d : r.degrees) {
    deg.push_back({{"name", d.name},
                   {"expected", optional_json(d.expected)},
                   {"literature", optional_json(d.literature)},
                   {"literature_verdict", d.literature_verdict},
                   {"report", to_json(d.report)},
                   {"passed", d.passed()}});
  }
  return {{"q", r.q}, {"k", r.k}, {"equalities", eq}, {"degrees", deg}, {"passed", r.passed()}};
}

Json identity_catalog(const FieldCtx& ctx, unsigned n) {
  Json out = Json::array();
  for (const auto& s : builtin_identities(ctx, n)) out.push_back(to_json(s));
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

Verdict combine(Verdict x, Verdict y) {
  if (x == Verdict::Fail || y == Verdict::Fail) return Verdict::Fail;
  if (x == Verdict::Inconclusive || y == Verdict::Inconclusive) return Verdict::Inconclusive;
  return Verdict::Pass;
}

CsvTable points_table(std::span<const TowerPoint> points) {
  CsvTable t{"points", {"level", "flags"}, {}};
  unsigned top = 0;
  for (const auto& pt : points) top = std::max(top, pt.level());
  for (char letter : {'a', 'b', 'c'}) {
    for (unsigned i = 1; i <= top; ++i) t.header.push_back(std::string(1, letter) + std::to_string(i));
  }
  for (const auto& pt : points) {
    std::vector<std::string> row{std::to_string(pt.level()), degeneracy_string(pt.degenerate)};
    for (const auto* coords : {&pt.a, &pt.b, &pt.c}) {
      for (unsigned i = 0; i < top; ++i) row.push_back(i < coords->size() ? (*coords)[i].to_string() : "");
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable histogram_table(const DegreeReport& r) {
  CsvTable t{"fiber_histogram", {"base_tuple_count", "fiber_size", "frequency"}, {}};
  for (const auto& [size, freq] : r.histogram) {
    t.rows.push_back({std::to_string(r.base_tuples), std::to_string(size), std::to_string(freq)});
  }
  return t;
}

Json Report::to_json() const {
  Json out = {{"schema_version", kSchemaVersion},
              {"tool", "towerlab"},
              {"tool_version", TOWERLAB_VERSION},
              {"command", command},
              {"config", config},
              {"results", results},
              {"overall", to_string(verdict)}};
  if (q > 0) out["reference_ratio"] = towerlab::to_json(reference_ratio(q));
  return out;
}

std::optional<Format> parse_format(std::string_view text) {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  if (text == "text") return Format::Text;
  return std::nullopt;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

void write_row(std::ostringstream& os, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
  os << '\n';
}

}  // namespace

std::string render(const Report& r, Format f) {
  std::ostringstream os;
  switch (f) {
    case Format::Json:
      os << r.to_json().dump(2) << '\n';
      break;
    case Format::Csv:
      if (r.tables.empty()) throw InvalidArgument("csv output is only available for point and histogram tables");
      for (const auto& t : r.tables) {
        if (r.tables.size() > 1) os << "# " << t.name << '\n';
        write_row(os, t.header);
        for (const auto& row : t.rows) write_row(os, row);
      }
      break;
    case Format::Text: {
      os << "towerlab " << TOWERLAB_VERSION << ' ' << r.command << '\n';
      os << "config:";
      for (const auto& [key, value] : r.config.items()) os << ' ' << key << '=' << value.dump();
      os << '\n';
      for (const auto& line : r.summary) os << line << '\n';
      if (r.q > 0) os << "2(q²−1)/(q+2) = " << reference_ratio(r.q).to_string() << '\n';
      os << "overall: " << to_string(r.verdict) << '\n';
      break;
    }
  }
  return os.str();
}

std::size_t emit_report(const Report& r, Format f, const std::string& path, std::ostream& out) {
  const std::string bytes = render(r, f);
  if (path.empty() || path == "-") {
    out << bytes;
    return bytes.size();
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write " + path);
  file << bytes;
  if (!file) throw Error("cannot write " + path);
  return bytes.size();
}

}  // namespace towerlab
