#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "towerlab/cli.hpp"

using namespace towerlab;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, VerifyAllProved) {
  auto r = run({"verify", "--p", "3", "--m", "1", "--levels", "3", "--mode", "both", "--identity", "all"});
  EXPECT_EQ(r.code, kExitPass);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["overall"], "PASS");
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_EQ(j["results"]["identities"].size(), 14u);
  for (const auto& e : j["results"]["identities"]) EXPECT_EQ(e["symbolic"]["verdict"], "PROVED");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"verify", "--identity", "bogus-id"}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"degrees", "--step", "B"}).code, kExitUsage);
  EXPECT_EQ(run({"field", "--p", "4"}).code, kExitUsage);
  EXPECT_EQ(run({"equality", "--left", "Q"}).code, kExitUsage);
  EXPECT_EQ(run({"field", "--help"}).code, kExitPass);
}

TEST(Cli, CapViolations) {
  EXPECT_EQ(run({"field", "--p", "3", "--k", "5"}).code, kExitError);
  EXPECT_EQ(run({"enumerate", "--levels", "5"}).code, kExitError);
  EXPECT_EQ(run({"enumerate", "--p", "3", "--k", "2", "--max-points", "100"}).code, kExitError);
}

TEST(Cli, DegreesRow) {
  auto r = run({"degrees", "--p", "3", "--m", "1", "--k", "2", "--step", "H", "--from", "2"});
  EXPECT_EQ(r.code, kExitPass);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["results"]["degree"]["modal"], 3);
  EXPECT_EQ(j["results"]["degree"]["literature_verdict"], "REFUTED");
}

TEST(Cli, InconclusiveHasItsOwnCode) {
  auto r = run({"degrees", "--p", "2", "--k", "1", "--step", "C", "--from", "1", "--no-stability"});
  EXPECT_EQ(r.code, kExitInconclusive);
  EXPECT_EQ(Json::parse(r.out)["overall"], "INCONCLUSIVE");
}

TEST(Cli, NegativeControlFails) {
  auto r = run({"verify", "--p", "2", "--k", "2", "--levels", "2", "--identity", "ID-CPROD", "--corrupt"});
  EXPECT_EQ(r.code, kExitFail);
  EXPECT_EQ(Json::parse(r.out)["overall"], "FAIL");
}

TEST(Cli, HistogramCsvHeader) {
  auto r = run({"degrees", "--p", "3", "--k", "2", "--step", "H", "--from", "2", "--format", "csv"});
  EXPECT_EQ(r.code, kExitPass);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "base_tuple_count,fiber_size,frequency");
}

TEST(Cli, PointsCsv) {
  auto r = run({"enumerate", "--p", "2", "--levels", "2", "--format", "csv", "--tower", "C"});
  EXPECT_EQ(r.code, kExitPass);
  std::istringstream in(r.out);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "level,flags,c1,c2");
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows, 7u + 12u);
}

TEST(Cli, CsvUnavailableForProofs) {
  EXPECT_EQ(run({"verify", "--levels", "2", "--format", "csv"}).code, kExitUsage);
}

TEST(Cli, TextShowsReferenceRatio) {
  for (auto [p, m, value] : {std::tuple{"2", "1", "3/2"}, {"3", "1", "16/5"}, {"2", "2", "5"}}) {
    auto r = run({"field", "--p", p, "--m", m, "--format", "text"});
    EXPECT_EQ(r.code, kExitPass);
    EXPECT_NE(r.out.find(std::string("2(q²−1)/(q+2) = ") + value + "\n"), std::string::npos) << r.out;
  }
}

TEST(Cli, DeterministicAcrossRunsAndWorkers) {
  const std::vector<std::string> base = {"report", "--p", "3", "--k", "2", "--levels", "3"};
  auto one = run(base);
  auto again = run(base);
  auto with_workers = base;
  with_workers.insert(with_workers.end(), {"--workers", "4"});
  auto four = run(with_workers);
  EXPECT_EQ(one.code, kExitPass) << one.err;
  EXPECT_EQ(one.out, again.out);
  EXPECT_EQ(one.out, four.out);
}

TEST(Cli, WritesToFile) {
  const auto path = std::filesystem::temp_directory_path() / "towerlab_cli_test.json";
  auto r = run({"field", "--p", "2", "--out", path.string()});
  EXPECT_EQ(r.code, kExitPass);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  auto j = Json::parse(in);
  EXPECT_EQ(j["results"]["field"]["size"], 8);
  std::filesystem::remove(path);
  EXPECT_EQ(run({"field", "--out", "/nonexistent/dir/x.json"}).code, kExitError);
}

TEST(Cli, EqualityExpectations) {
  EXPECT_EQ(run({"equality", "--p", "3", "--k", "2", "--levels", "2"}).code, kExitPass);
  EXPECT_EQ(run({"equality", "--p", "3", "--k", "2", "--levels", "1"}).code, kExitFail);
  EXPECT_EQ(run({"equality", "--p", "3", "--k", "2", "--levels", "1", "--expect", "unequal"}).code, kExitPass);
  EXPECT_EQ(run({"equality", "--p", "3", "--k", "2", "--levels", "3", "--left", "A+C2", "--right", "C"}).code,
            kExitPass);
}

TEST(Cli, RemarksPass) {
  auto r = run({"remarks", "--p", "3", "--k", "2"});
  EXPECT_EQ(r.code, kExitPass);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["results"]["remarks"]["passed"], true);
}

TEST(Cli, ConfigEchoReproducesRun) {
  auto r = run({"degrees", "--p", "3", "--k", "2", "--step", "C", "--from", "2", "--workers", "2"});
  auto cfg = Json::parse(r.out)["config"];
  EXPECT_FALSE(cfg.contains("workers"));
  auto replay = run({cfg["command"].get<std::string>(), "--p", std::to_string(cfg["p"].get<int>()), "--k",
                     std::to_string(cfg["k"].get<int>()), "--step", cfg["step"].get<std::string>(), "--from",
                     std::to_string(cfg["from"].get<int>())});
  EXPECT_EQ(r.out, replay.out);
}
