#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "../tools/cli_app.hpp"
#include "karamata/io.hpp"
#include "karamata/scalar_bounds.hpp"

using namespace karamata;
using doctest::Approx;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "karamata");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("karamata_test_" + name)).string();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

Json find_row(const Json& rows, const std::string& name) {
  for (const auto& r : rows)
    if (r["name"] == name) return r;
  FAIL("missing row " << name);
  return {};
}

}  // namespace

TEST_CASE("verify exit codes") {
  auto all = run({"verify", "--suite", "all", "--trials", "100", "--seed", "42"});
  CHECK(all.code == cli::kExitOk);
  auto zero = run({"verify", "--suite", "all", "--trials", "0"});
  CHECK(zero.code == cli::kExitOk);
  for (const auto& rep : Json::parse(zero.out)) {
    CHECK(rep["trials"] == 0);
    CHECK(rep["failures"] == 0);
  }
  CHECK(run({"verify", "--suite", "nope"}).code == cli::kExitUsage);
  CHECK(run({"verify", "--format", "xml"}).code == cli::kExitUsage);
  CHECK(run({"verify", "--dims", "0"}).code == cli::kExitUsage);
  CHECK(run({"verify", "--dims", "2-65"}).code == cli::kExitUsage);
  CHECK(run({"verify", "--eps", "1.5"}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  auto failing = run({"verify", "--suite", "operator_mean_limits_as_stated", "--trials", "20"});
  CHECK(failing.code == cli::kExitFailure);
}

TEST_CASE("verify is deterministic and worker independent") {
  auto a = run({"verify", "--suite", "all", "--trials", "30", "--seed", "7"});
  auto b = run({"verify", "--suite", "all", "--trials", "30", "--seed", "7"});
  auto c = run({"verify", "--suite", "all", "--trials", "30", "--seed", "7", "--workers", "3"});
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  auto d = run({"verify", "--suite", "all", "--trials", "30", "--seed", "8"});
  CHECK(a.out != d.out);
  CHECK(a.out.find("elapsed_ms") == std::string::npos);
  auto t = run({"verify", "--suite", "fuchs", "--trials", "3", "--timing"});
  CHECK(t.out.find("elapsed_ms") != std::string::npos);
}

TEST_CASE("verify csv streams one row per trial") {
  auto r = run({"verify", "--suite", "theorem_beta,fuchs", "--trials", "25", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == csv_header());
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 50);
  CHECK(r.err.find("theorem_beta") != std::string::npos);
}

TEST_CASE("config file with flag precedence") {
  auto path = temp_path("config.json");
  write_file(path, R"({"suite": "fuchs", "trials": 5, "seed": 3, "dims": [2, 3]})");
  auto cfg = Json::parse(run({"verify", "--config", path}).out);
  CHECK(cfg[0]["suite_id"] == "fuchs");
  CHECK(cfg[0]["trials"] == 5);
  auto over = Json::parse(run({"verify", "--config", path, "--trials", "2"}).out);
  CHECK(over[0]["trials"] == 2);
  write_file(path, R"({"params": {"eps": 0.2}})");
  auto consts = Json::parse(run({"constants", "--config", path}).out);
  CHECK(find_row(consts, "K_neglog")["params"] == "eps=0.2");
  auto flag = Json::parse(run({"constants", "--config", path, "--eps", "0.4"}).out);
  CHECK(find_row(flag, "K_neglog")["params"] == "eps=0.4");
  write_file(path, "{not json");
  CHECK(run({"verify", "--config", path}).code == cli::kExitUsage);
  CHECK(run({"verify", "--config", temp_path("missing.json")}).code == cli::kExitUsage);
  std::filesystem::remove(path);
}

TEST_CASE("output file") {
  auto path = temp_path("report.json");
  auto r = run({"verify", "--suite", "fuchs", "--trials", "4", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  auto j = Json::parse(in);
  CHECK(j[0]["trials"] == 4);
  std::filesystem::remove(path);
}

TEST_CASE("constants") {
  CHECK(run({"constants"}).code == cli::kExitUsage);
  auto eps = Json::parse(run({"constants", "--eps", "0.1"}).out);
  auto c = find_row(eps, "C_neglog");
  CHECK(c["closed_form"].get<double>() == Approx(log_specht(0.1)).epsilon(1e-14));
  CHECK(c["abs_diff"].get<double>() <= 1e-8);
  auto lim = Json::parse(run({"constants", "--m", "1", "--M", "4", "--r", "1e-6"}).out);
  CHECK(find_row(lim, "kantorovich")["closed_form"].get<double>() == Approx(1.0).epsilon(1e-5));
  auto lin = Json::parse(run({"constants", "--function", "linear"}).out);
  CHECK(find_row(lin, "kantorovich")["closed_form"] == 1.0);
  CHECK(find_row(lin, "C_hr")["closed_form"] == 0.0);
  CHECK(run({"constants", "--m", "2", "--M", "1", "--r", "2"}).code == cli::kExitUsage);
  CHECK(run({"constants", "--alpha", "-1"}).code == cli::kExitUsage);
}

TEST_CASE("oracle") {
  CHECK(run({"oracle"}).code == cli::kExitOk);
  CHECK(run({"oracle", "--single"}).code == cli::kExitOk);
  CHECK(run({"oracle", "--fault-inject", "1e-3"}).code == cli::kExitFailure);
  CHECK(run({"oracle", "--single", "--fault-inject", "1e-3"}).code == cli::kExitFailure);
  auto rows = cli::oracle_sweep(false);
  CHECK(rows.size() > 300);
  for (const auto& r : rows) CHECK(r.abs_diff <= cli::kOracleTol);
}

TEST_CASE("scan") {
  auto fannes = Json::parse(run({"scan", "--axis", "fannes", "--from", "1", "--to", "10"}).out);
  REQUIRE(fannes.size() == 10);
  CHECK(fannes[0]["tighter"] == "equal");
  CHECK(fannes[4]["tighter"] == "ours");
  CHECK(fannes[5]["tighter"] == "fannes_weak");
  CHECK(run({"scan", "--axis", "fannes", "--from", "5", "--to", "4"}).code == cli::kExitUsage);
  CHECK(run({"scan", "--axis", "nothing"}).code == cli::kExitUsage);
  CHECK(run({"scan"}).code == cli::kExitUsage);

  auto specht_rows = Json::parse(run({"scan", "--axis", "specht", "--from", "1", "--to", "50", "--steps", "20"}).out);
  CHECK(specht_rows.size() == 20);
  for (const auto& row : specht_rows)
    CHECK(row["abs_diff"].get<double>() <= 1e-12 * row["specht"].get<double>());

  auto ls = Json::parse(run({"scan", "--axis", "ls_r", "--eps", "0.5", "--steps", "5"}).out);
  CHECK(ls.size() == 5);
  for (const auto& row : ls) CHECK(row["ls_r"].get<double>() >= 0.0);

  auto k = Json::parse(run({"scan", "--axis", "kantorovich", "--cond", "4", "--steps", "4"}).out);
  CHECK(k.size() == 4);
}

TEST_CASE("verify a given density pair") {
  auto a = temp_path("a.json"), b = temp_path("b.json");
  write_file(a, R"({"dim": 2, "re": [0.5, 0, 0, 0.5], "im": [0, 0, 0, 0]})");
  write_file(b, R"({"dim": 2, "re": [1, 0, 0, 0], "im": [0, 0, 0, 0]})");
  auto r = run({"verify", "--matrix-a", a, "--matrix-b", b, "--alpha", "1"});
  CHECK(r.code == cli::kExitOk);
  auto j = Json::parse(r.out);
  CHECK(j[0]["inequality_id"] == "vonneumann_alpha");
  CHECK(j[0]["margin"].get<double>() == Approx(std::log(2.0) + 2 / std::exp(1.0)));
  write_file(b, R"({"dim": 2, "re": [1, 0, 0, 1], "im": [0, 0, 0, 0]})");
  CHECK(run({"verify", "--matrix-a", a, "--matrix-b", b}).code != cli::kExitOk);
  CHECK(run({"verify", "--matrix-a", a}).code == cli::kExitUsage);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}
