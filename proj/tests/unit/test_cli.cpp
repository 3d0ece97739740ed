#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "bohr/radii.hpp"
#include "cli.hpp"
#include "json.hpp"

using bohrkit::cli::main_entry;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "bohrkit");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (char c : line) {
      if (c == '"') {
        quoted = !quoted;
      } else if (c == ',' && !quoted) {
        cells.push_back(cell);
        cell.clear();
      } else {
        cell += c;
      }
    }
    cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  ADD_FAILURE() << "missing column " << name;
  return 0;
}

}  // namespace

TEST(Cli, BetaEnclosesOneThird) {
  auto r = run({"beta", "--n", "1", "--lambda", "1", "--tol", "1e-10"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "lambda", "beta_lo", "beta_hi", "iterations"}));
  double lo = std::stod(rows[1][2]), hi = std::stod(rows[1][3]);
  EXPECT_LE(lo, 1.0 / 3.0);
  EXPECT_GE(hi, 1.0 / 3.0);
  EXPECT_LE(hi - lo, 1e-9);
}

TEST(Cli, SidonDegreeOne) {
  auto r = run({"sidon", "--m", "1", "--n", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 2u);
  auto& h = rows[0];
  auto& v = rows[1];
  EXPECT_EQ(v[column(h, "m")], "1");
  EXPECT_EQ(v[column(h, "n")], "5");
  EXPECT_EQ(v[column(h, "lower")], "1");
  EXPECT_EQ(v[column(h, "upper")], "1");
  EXPECT_EQ(v[column(h, "method")], "exact-m1");
  EXPECT_EQ(v[column(h, "witness_hash")], "-");
}

TEST(Cli, TableTrivialGammaHiIsConstant) {
  auto r = run({"table", "--n", "2..20", "--q", "inf", "--lambda", "1.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 20u);
  auto col = column(rows[0], "gamma_hi");
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_NEAR(std::stod(rows[i][col]), 1.5 / 3.5, 1e-10);
  EXPECT_EQ(rows[0][column(rows[0], "q")], "q");
  EXPECT_EQ(rows[1][column(rows[0], "q")], "inf");
}

TEST(Cli, CsvRoundTripMatchesLibrary) {
  auto r = run({"beta", "--n", "2..6", "--lambda", "1,5/4", "--tol", "1e-10"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = csv_rows(r.out);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::size_t n = std::stoul(rows[i][0]);
    double lambda = std::stod(rows[i][1]);
    auto root = bohr::solve_root(bohr::SeriesSpec{n, bohr::SqrtNCoefficients{}, lambda}, 1e-10).root;
    EXPECT_NEAR(std::stod(rows[i][2]), root.lo, 1e-11 * root.lo);
    EXPECT_NEAR(std::stod(rows[i][3]), root.hi, 1e-11 * root.hi);
  }
}

TEST(Cli, JsonRoundTrip) {
  auto csv = run({"gamma", "--n", "2..3", "--budget", "100", "--m-max", "3"});
  auto json = run({"gamma", "--n", "2..3", "--budget", "100", "--m-max", "3", "--format", "json"});
  ASSERT_EQ(csv.code, 0) << csv.err;
  ASSERT_EQ(json.code, 0) << json.err;
  auto rows = csv_rows(csv.out);
  auto parsed = nlohmann::json::parse(json.out);
  ASSERT_TRUE(parsed.is_array());
  ASSERT_EQ(parsed.size() + 1, rows.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    for (const char* key : {"beta_lo", "gamma_lo_lo", "gamma_hi_hi", "Gamma_hi"}) {
      double a = parsed[i][key].get<double>();
      double b = std::stod(rows[i + 1][column(rows[0], key)]);
      EXPECT_NEAR(a, b, 1e-11 * std::fabs(b)) << key;
    }
    EXPECT_EQ(parsed[i]["chain_ok"].get<bool>(), rows[i + 1][column(rows[0], "chain_ok")] == "true");
  }
}

TEST(Cli, DeterministicOutput) {
  std::vector<std::string> args{"sidon", "--m", "2", "--n", "2", "--budget", "200", "--seed", "3"};
  auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto s1 = run({"beta", "--n", "2", "--stamp"});
  auto s2 = run({"beta", "--n", "2", "--stamp"});
  ASSERT_EQ(s1.out.front(), '#');
  EXPECT_EQ(s1.out.substr(s1.out.find('\n')), s2.out.substr(s2.out.find('\n')));
}

TEST(Cli, VerifyMoebiusScan) {
  auto r = run({"verify", "--check", "moebius", "--r", "0.35,1/3", "--grid", "200", "--truncation", "60"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 3u);
  auto& h = rows[0];
  EXPECT_GT(std::stoi(rows[1][column(h, "certified_violations")]), 0);
  EXPECT_EQ(rows[2][column(h, "holds")], "200");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"beta", "--n", "0"}).code, 2);
  EXPECT_EQ(run({"beta", "--n", "2", "--lambda", "0.5"}).code, 2);
  EXPECT_EQ(run({"beta", "--n", "2", "--q", "0.3"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"beta", "--n", "2", "--format", "json", "--stamp"}).code, 2);
  EXPECT_EQ(run({"gamma", "--n", "2", "--k-disk", "0"}).code, 2);
  auto bad = run({"sidon", "--m", "2", "--n", "2", "--budget", "10", "--cache", "/proc/bohrkit/none/cache.jsonl"});
  EXPECT_EQ(bad.code, 4) << bad.err;
}

TEST(Cli, CacheIsWrittenAndReused) {
  auto path = std::filesystem::temp_directory_path() / "bohrkit_cli_cache.jsonl";
  std::filesystem::remove(path);
  auto first = run({"gamma", "--n", "2", "--budget", "100", "--m-max", "3", "--cache", path.string()});
  ASSERT_EQ(first.code, 0) << first.err;
  EXPECT_TRUE(std::filesystem::exists(path));
  auto second = run({"gamma", "--n", "2", "--budget", "100", "--m-max", "3", "--cache", path.string()});
  ASSERT_EQ(second.code, 0);
  auto r1 = csv_rows(first.out), r2 = csv_rows(second.out);
  auto col = column(r1[0], "table_provenance");
  EXPECT_EQ(r1[1][col], "computed");
  EXPECT_EQ(r2[1][col], "cache");
  EXPECT_EQ(r1[1][column(r1[0], "gamma_lo_lo")], r2[1][column(r2[0], "gamma_lo_lo")]);
  std::filesystem::remove(path);
  std::filesystem::remove(path.string() + ".lock");
}
