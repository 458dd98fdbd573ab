#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace latineq::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "lattice_ineq");
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << body;
  return path;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

const char* kRect23 = R"({"dim":2,"points":[[0,0],[0,1],[0,2],[1,0],[1,1],[1,2]]})";

TEST(CliCheckTest, RectangleCsv) {
  auto path = write_temp("rect23.json", kRect23);
  auto r = invoke({"check", "--input", path, "--ineq", "gn,sobolev,iso,lw", "--format", "csv"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 6u) << r.out;
  EXPECT_EQ(rows[0], "# lattice_ineq check tol=1e-09");
  EXPECT_EQ(rows[1], "inequality,n,p,lhs,rhs,deficit,relation,extremal_class");
  EXPECT_EQ(rows[2].rfind("GN,", 0), 0u);
  EXPECT_NE(rows[2].find("EXACT_EQUAL"), std::string::npos);
  EXPECT_NE(rows[3].find("SOBOLEV,2,,2.4494897427831779,2.5,"), std::string::npos) << rows[3];
  EXPECT_NE(rows[3].find(",STRICT,"), std::string::npos);
  EXPECT_NE(rows[4].find(",STRICT,"), std::string::npos);
  EXPECT_EQ(rows[5].rfind("LW,", 0), 0u);
  EXPECT_NE(rows[5].find("EXACT_EQUAL,PRODUCT_SET"), std::string::npos);
}

TEST(CliCheckTest, JsonReport) {
  auto path = write_temp("rect23b.json", kRect23);
  auto r = invoke({"check", "--input", path});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["tol"], 1e-9);
  EXPECT_EQ(j["reports"].size(), 5u);
}

TEST(CliCheckTest, FunctionWithLogInequalities) {
  auto path = write_temp("sixth.json",
                         R"({"dim":2,"entries":[{"z":[0,0],"v":"1/6"},{"z":[0,1],"v":"1/6"},{"z":[0,2],"v":"1/6"},
                             {"z":[1,0],"v":"1/6"},{"z":[1,1],"v":"1/6"},{"z":[1,2],"v":"1/6"}]})");
  auto r = invoke({"check", "--input", path, "--ineq", "logsob-dir", "--p", "1", "--format", "csv", "--exact"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("LOG_SOBOLEV_DIR,2,1,"), std::string::npos);
  EXPECT_NE(r.out.find("EXACT_EQUAL,CUBOID"), std::string::npos);

  // Not normalized in the 2-norm.
  r = invoke({"check", "--input", path, "--ineq", "logsob", "--p", "2"});
  EXPECT_EQ(r.code, kExitInputError);
  r = invoke({"check", "--input", path, "--ineq", "logsob", "--p", "2", "--normalize"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
}

TEST(CliCheckTest, InputErrors) {
  auto empty = write_temp("empty.json", R"({"dim":2,"entries":[]})");
  auto r = invoke({"check", "--input", empty});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("degenerate input: zero function"), std::string::npos) << r.err;
  EXPECT_EQ(lines(r.err).size(), 1u);

  auto bad = write_temp("bad.json", R"({"dim":2,"entries":[{"z":[0,0],"v":"abc"}]})");
  r = invoke({"check", "--input", bad});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("entries[0].v"), std::string::npos) << r.err;

  auto broken = write_temp("broken.json", "{\"dim\":");
  EXPECT_EQ(invoke({"check", "--input", broken}).code, kExitInputError);

  auto line = write_temp("line.json", R"({"dim":1,"points":[[0],[1]]})");
  r = invoke({"check", "--input", line});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("n >= 2"), std::string::npos) << r.err;

  auto rect = write_temp("rect23c.json", kRect23);
  EXPECT_EQ(invoke({"check", "--input", rect, "--tol", "-1"}).code, kExitInputError);
  EXPECT_EQ(invoke({"check", "--input", rect, "--ineq", "logsob", "--p", "0"}).code, kExitInputError);
  EXPECT_EQ(invoke({"check", "--input", rect, "--ineq", "bogus"}).code, kExitInputError);
  EXPECT_EQ(invoke({"check", "--input", ::testing::TempDir() + "missing.json"}).code, kExitInputError);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitInputError);
}

TEST(CliFuzzTest, SummaryAndByteStability) {
  auto a = invoke({"fuzz", "--count", "300", "--n", "2", "--seed", "42", "--format", "csv"});
  EXPECT_EQ(a.code, kExitOk) << a.err;
  auto b = invoke({"fuzz", "--count", "300", "--n", "2", "--seed", "42", "--format", "csv", "--threads", "3"});
  EXPECT_EQ(a.out, b.out);
  auto rows = lines(a.out);
  ASSERT_EQ(rows.size(), 12u);
  EXPECT_NE(rows[0].find("seed=42"), std::string::npos);

  auto j = invoke({"fuzz", "--count", "200", "--n", "3", "--seed", "42"});
  EXPECT_EQ(j.code, kExitOk);
  auto doc = nlohmann::json::parse(j.out);
  EXPECT_EQ(doc["seed"], 42);
  EXPECT_EQ(doc["violations"], 0);

  EXPECT_EQ(invoke({"fuzz", "--n", "1"}).code, kExitInputError);
}

TEST(CliSearchTest, AnnealAndAscend) {
  auto r = invoke({"search", "--method", "anneal", "--n", "2", "--size", "4", "--iters", "2000", "--seed", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["seed"], 3);
  EXPECT_EQ(j["best_value"], 1.0);
  EXPECT_EQ(invoke({"search", "--method", "anneal", "--size", "4", "--iters", "2000", "--seed", "3"}).out, r.out);

  r = invoke({"search", "--method", "ascend", "--sides", "2,2", "--iters", "200"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["objective"], "GN_RATIO");
  EXPECT_EQ(invoke({"search", "--method", "nope"}).code, kExitInputError);
}

TEST(CliEnumerateTest, ReportCsv) {
  const std::string report = ::testing::TempDir() + "enum.csv";
  auto r = invoke({"enumerate", "--n", "2", "--box", "3", "--report", report});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["subsets"], 511);
  EXPECT_TRUE(j["mismatches"].empty());
  std::ifstream in(report);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto rows = lines(text);
  ASSERT_GT(rows.size(), 1u);
  EXPECT_EQ(rows[0], "set_id,size,shape_class,gn_equal,iso_equal,lw_equal");
  EXPECT_EQ(rows.size() - 1, j["translation_classes"].get<std::size_t>());
  std::remove(report.c_str());

  EXPECT_EQ(invoke({"enumerate", "--n", "2", "--box", "8"}).code, kExitInputError);
}

TEST(CliTableTest, RowCounts) {
  auto r = invoke({"table", "--n", "2", "--min-side", "1", "--max-side", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 10u);
  int iso_equal = 0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    auto gn_end = rows[k].find(",EXACT_EQUAL,");
    EXPECT_NE(gn_end, std::string::npos) << rows[k];
    if (rows[k].size() >= 11 && rows[k].substr(rows[k].size() - 11) == "EXACT_EQUAL") ++iso_equal;
  }
  EXPECT_EQ(iso_equal, 3);

  r = invoke({"table", "--n", "2", "--max-side", "3", "--dedup"});
  EXPECT_EQ(lines(r.out).size(), 7u);

  r = invoke({"table", "--n", "3", "--max-side", "2", "--ineq", "gn"});
  rows = lines(r.out);
  ASSERT_EQ(rows.size(), 9u);
  for (std::size_t k = 1; k < rows.size(); ++k) EXPECT_NE(rows[k].find("EXACT_EQUAL"), std::string::npos);

  EXPECT_EQ(invoke({"table", "--min-side", "3", "--max-side", "2"}).code, kExitInputError);
  EXPECT_EQ(invoke({"table", "--min-side", "0"}).code, kExitInputError);
}

TEST(CliOutTest, WritesToFile) {
  auto rect = write_temp("rect23d.json", kRect23);
  const std::string out = ::testing::TempDir() + "report.csv";
  auto r = invoke({"check", "--input", rect, "--format", "csv", "--out", out});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, "# lattice_ineq check tol=1e-09");
  std::remove(out.c_str());
}

}  // namespace
}  // namespace latineq::cli
