#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "iwastat/cli.hpp"
#include "iwastat/io.hpp"

using namespace iwastat;
namespace fs = std::filesystem;

namespace {

ParseResult parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_records(in);
}

const std::string kHeader = "label,a,b,rank,sha_order,torsion_order,tamagawa_2,tamagawa_3,reg_excess\n";

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "iwastat");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / ("iwastat_test_" + name); }

}  // namespace

TEST_CASE("ingest maps fields directly") {
  const auto r = parse_text(kHeader + "389a,-1,1,2,1,1,,,\n");
  REQUIRE(r.records.size() == 1);
  CHECK(r.errors.empty());
  CHECK(r.records[0].label == "389a");
  CHECK(r.records[0].curve == CurveQ(-1, 1));
  CHECK(r.records[0].rank == 2);
  CHECK(r.records[0].sha_order == 1);
  CHECK(r.records[0].tamagawa_overrides.empty());
  CHECK_FALSE(r.records[0].regulator_valuations.has_value());
}

TEST_CASE("malformed rows are rejected individually") {
  const auto r = parse_text(kHeader +
                            "good,-1,0,0,1,4,2,,5:0;7:1\n"
                            "bad,x,0,0,1,1,,,\n"
                            "singular,-3,2,0,1,1,,,\n"
                            "short,1,1\n"
                            "nonsha,1,1,0,,1,,,\n");
  REQUIRE(r.records.size() == 2);
  CHECK(r.records[0].tamagawa_overrides.at(2) == 2);
  CHECK(r.records[0].regulator_valuations->at(7) == 1);
  CHECK_FALSE(r.records[1].sha_order.has_value());
  REQUIRE(r.errors.size() == 3);
  CHECK(r.errors[0].line == 3);
  CHECK(r.errors[0].code == ErrorCode::kParseError);
  CHECK(r.errors[1].code == ErrorCode::kInvalidCurve);
  CHECK(r.errors[2].code == ErrorCode::kParseError);
}

TEST_CASE("header handling") {
  CHECK(error_code([] { parse_text("label,a,rank\n"); }) == ErrorCode::kHeaderMismatch);
  CHECK(error_code([] { parse_text("label,a,b,rank,a\n"); }) == ErrorCode::kHeaderMismatch);
  CHECK(error_code([] { parse_text(""); }) == ErrorCode::kHeaderMismatch);
  // Column names are exact and lower-case.
  CHECK(error_code([] { parse_text("Label,A,B,Rank\n"); }) == ErrorCode::kHeaderMismatch);
  const auto r = parse_text("rank,b,a,label,conductor\n0,0,-1,32a2,32\n");
  REQUIRE(r.records.size() == 1);
  CHECK(r.records[0].curve == CurveQ(-1, 0));
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("conductor") != std::string::npos);
  CHECK(error_code([] { parse_records(fs::path("/nonexistent/records.csv")); }) == ErrorCode::kFileNotFound);
}

TEST_CASE("records survive a write and parse round trip") {
  std::mt19937_64 rng(8);
  std::vector<CurveRecord> records;
  while (records.size() < 300) {
    const i64 a = static_cast<i64>(rng() % 20001) - 10000;
    const i64 b = static_cast<i64>(rng() % 20001) - 10000;
    if (disc0(a, b) == 0 || !is_minimal(a, b)) continue;
    CurveRecord r;
    r.label = "c" + std::to_string(records.size()) + (rng() % 5 == 0 ? ",\"odd\"" : "");
    r.curve = CurveQ(a, b);
    r.rank = static_cast<int>(rng() % 4);
    if (rng() % 3) r.sha_order = static_cast<i64>(1 + rng() % 9);
    r.torsion_order = static_cast<i64>(1 + rng() % 6);
    if (rng() % 2) r.tamagawa_overrides[2] = static_cast<i64>(1 + rng() % 4);
    if (rng() % 2) r.tamagawa_overrides[3] = static_cast<i64>(1 + rng() % 4);
    if (rng() % 2) {
      std::map<u64, i64> reg;
      for (u64 p : {5, 7, 11, 13}) {
        if (rng() % 2) reg[p] = static_cast<i64>(rng() % 3);
      }
      if (!reg.empty()) r.regulator_valuations = reg;
    }
    records.push_back(r);
  }
  std::ostringstream out;
  write_records_csv(out, records);
  const auto back = parse_text(out.str());
  CHECK(back.errors.empty());
  CHECK(back.records == records);
}

TEST_CASE("density report schema matches the golden file") {
  DensityOptions opts;
  opts.workers = 2;
  const auto doc = to_json(empirical_densities(5, 1000, opts));
  const auto golden = nlohmann::json::parse(slurp(fs::path(IWASTAT_GOLDEN_DIR) / "density_p5_X1000.json"));
  CHECK(doc == golden);
  const std::string header = density_csv_header();
  const std::string row = density_csv_row(empirical_densities(5, 1000, opts));
  CHECK(header.find("e2_skipped") != std::string::npos);
  CHECK(std::count(header.begin(), header.end(), ',') == std::count(row.begin(), row.end(), ','));
}

TEST_CASE("scan report schema matches the golden file") {
  CurveRecord r;
  r.label = "32a2";
  r.curve = CurveQ(-1, 0);
  r.sha_order = 1;
  r.torsion_order = 4;
  const auto doc = to_json(r.label, scan_primes(r, 13));
  const auto golden = nlohmann::json::parse(slurp(fs::path(IWASTAT_GOLDEN_DIR) / "scan_32a2_p13.json"));
  CHECK(doc == golden);
}

TEST_CASE("cache snapshots") {
  PointCountCache cache;
  for (i64 a = 0; a < 7; ++a) {
    for (i64 b = 0; b < 7; ++b) {
      if (disc0(a, b) % 7 != 0) cache.get(a, b, 7);
    }
  }
  const fs::path path = temp_file("cache7.json");
  cache.save(path, 7);
  PointCountCache other;
  CHECK(other.load(path, 7));
  CHECK(other.size(7) == cache.size(7));
  CHECK(other.peek(1, 1, 7) == cache.peek(1, 1, 7));
  PointCountCache wrong;
  CHECK_FALSE(wrong.load(path, 11));
  fs::remove(path);
}

TEST_CASE("command line") {
  auto r = cli({"invariants", "--poly", "25,5", "--prime", "5"});
  CHECK(r.code == 0);
  CHECK(r.out == "mu=1 lambda=1\n");

  r = cli({"dp", "--prime", "11", "--mode", "literal"});
  CHECK(r.code == 0);
  CHECK(r.out == "5\n");

  r = cli({"bounds", "--prime", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("bound_dp2 0.00969387") != std::string::npos);
  CHECK(r.out.find("bound_dp3[classes] d=1") != std::string::npos);

  r = cli({"ip-count", "--l", "7", "--p", "5", "--height", "1000000"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("count ", 0) == 0);

  r = cli({"local", "--a", "-1", "--b", "0", "--prime", "2"});
  CHECK(r.out == "III c=2\n");

  CHECK(cli({"dp", "--prime", "12"}).code == 1);
  CHECK(cli({"invariants", "--poly", "0", "--prime", "5"}).code == 1);
  CHECK(cli({"enumerate", "--height", "100"}).code == 1);
  CHECK(cli({"frobnicate"}).code == 1);
  CHECK(cli({"scan", "/nonexistent.csv"}).code == 1);

  const fs::path records = temp_file("records.csv");
  {
    std::ofstream f(records);
    f << kHeader << "32a2,-1,0,0,1,4,2,,\nbroken,q,0,0,1,1,,,\n";
  }
  r = cli({"scan", records.string(), "--max-prime", "13", "--format", "csv"});
  CHECK(r.code == 1);  // one bad row
  CHECK(r.err.find("broken") == std::string::npos);
  CHECK(r.err.find(":3:") != std::string::npos);
  CHECK(r.out.find("32a2,7,GoodSupersingular") != std::string::npos);

  const fs::path report = temp_file("report.json");
  const fs::path cache = temp_file("cache.json");
  r = cli({"enumerate", "--height", "1000", "--prime", "5", "--out", report.string(), "--cache", cache.string()});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(slurp(report)).at("total").get<u64>() > 0);
  CHECK(fs::exists(cache));
  r = cli({"enumerate", "--height", "1000", "--prime", "5", "--cache", cache.string()});
  CHECK(nlohmann::json::parse(r.out) == nlohmann::json::parse(slurp(report)));
  for (const auto& p : {records, report, cache}) fs::remove(p);
}
