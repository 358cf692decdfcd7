#pragma once

// JSON / CSV / text serialization of suite results. JSON objects use sorted
// keys and only integers and strings, so equal inputs give equal bytes.

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "towerlab/verify.hpp"

namespace towerlab {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const Element& x);
/// {"variables": [...], "terms": [[exponents, element], ...]}, leading term first.
Json to_json(const SparsePoly& p);
Json to_json(const RatExpr& e);
Json to_json(const Rational& r);
Json to_json(const FieldCtx& ctx);
Json to_json(const TowerPoint& pt);
Json to_json(const CountReport& r);
Json to_json(const IdentitySpec& s);
Json to_json(const ProofTrace& t);
Json to_json(const PointTestReport& r);
Json to_json(const DegreeReport& r);
Json to_json(const EqualityReport& r);
Json to_json(const WitnessReport& r);
Json to_json(const RemarkReport& r);

/// Registry entries at level n as a catalog array.
Json identity_catalog(const FieldCtx& ctx, unsigned n);

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);
/// Fail beats Inconclusive beats Pass.
Verdict combine(Verdict x, Verdict y);

struct CsvTable {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable points_table(std::span<const TowerPoint> points);
CsvTable histogram_table(const DegreeReport& r);

struct Report {
  std::string command;
  Json config = Json::object();
  Json results = Json::object();
  std::uint64_t q = 0;
  Verdict verdict = Verdict::Pass;
  std::vector<std::string> summary;  // text-format lines
  std::vector<CsvTable> tables;

  Json to_json() const;
};

enum class Format { Json, Csv, Text };

std::optional<Format> parse_format(std::string_view text);

std::string render(const Report& r, Format f);

/// Writes the rendered report to path, or to `out` when path is empty or "-".
/// Returns bytes written; throws Error when the path is not writable.
std::size_t emit_report(const Report& r, Format f, const std::string& path, std::ostream& out);

}  // namespace towerlab
