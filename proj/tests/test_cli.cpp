#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli_app.hpp"
#include "cubelens/exact_arith.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;

  std::vector<json> lines() const {
    std::vector<json> rows;
    std::istringstream in(out);
    for (std::string line; std::getline(in, line);) {
      if (!line.empty()) rows.push_back(json::parse(line));
    }
    return rows;
  }
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cubelens::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("cubelens_test_" + name);
}

}  // namespace

TEST_CASE("cli: reference examples") {
  const Result sidon = cli({"sidon-check", "--start", "1000", "--len", "22"});
  CHECK(sidon.code == 0);
  CHECK(sidon.lines().at(0) == json{{"is_sidon", true}});

  const Result quad = cli({"quadruple", "--k", "1"});
  CHECK(quad.code == 0);
  CHECK(quad.lines().at(0)["u"] == json{"792", "901", "829", "870"});

  const Result maxrep = cli({"maxrep", "--start", "1", "--len", "11"});
  CHECK(maxrep.code == 0);
  CHECK(maxrep.lines().at(0) == json{{"m", "1729"}, {"r", 4}});

  const Result rep = cli({"rep", "--start", "1", "--len", "11", "--m", "1729"});
  CHECK(rep.lines().at(0)["ordered"] == 4);
  CHECK(rep.lines().at(0)["unordered"] == 2);
}

TEST_CASE("cli: exit codes") {
  const Result not_sidon = cli({"sidon-check", "--set", "1,729,1000,1728"});
  CHECK(not_sidon.code == 1);
  CHECK(not_sidon.lines().at(0)["witness"] == json{"1", "1728", "729", "1000"});

  CHECK(cli({}).code == 2);
  CHECK(cli({"nonsense"}).code == 2);
  CHECK(cli({"maxrep", "--start", "1", "--len", "11", "--bogus-flag"}).code == 2);
  CHECK(cli({"maxrep", "--start", "-1", "--len", "11"}).code == 2);
  CHECK(cli({"maxrep", "--start", "1"}).code == 2);
  CHECK(cli({"sharpness", "--k", "0"}).code == 2);
  CHECK(cli({"divwindow-exp", "--m", "64", "--alpha", "3/2", "--beta", "1/6"}).code == 2);
  CHECK(cli({"thm22-scan", "--alpha", "1/3", "--beta", "1/2", "--m-max", "50"}).code == 2);
  CHECK(cli({"maxrep", "--start", "1", "--len", "3", "--workers", "0"}).code == 2);
  CHECK(cli({"maxrep", "--start", "1", "--len", "3", "--precision-cap", "64"}).code == 2);

  // unresolved comparisons: included by default, exit 3 under strict mode
  const char* prev = std::getenv("CUBELENS_PRECISION_CAP");
  CHECK(prev == nullptr);
  const Result lax = cli({"divwindow-exp", "--m", "720720", "--alpha", "1/3", "--beta", "1/5"});
  CHECK(lax.code == 0);
  CHECK(lax.lines().at(0)["unresolved"] == 0);
  setenv("CUBELENS_PRECISION_CAP", "100", 1);
  CHECK(cli({"divwindow-exp", "--m", "720720", "--alpha", "1/3", "--beta", "1/5"}).code == 2);
  unsetenv("CUBELENS_PRECISION_CAP");
}

TEST_CASE("cli: deterministic across worker counts and formats") {
  const std::vector<std::string> base{"thm22-scan", "--alpha", "1/3", "--beta", "1/5",
                                      "--m-max", "20000", "--progress"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return cli(args);
  };
  const Result one = with({"--workers", "1"});
  const Result four = with({"--workers", "4"});
  CHECK(one.code == 0);
  CHECK(one.out == four.out);
  const auto rows = one.lines();
  REQUIRE(rows.size() >= 2);
  CHECK(rows.front()["type"] == "progress");
  CHECK(rows.back()["type"] == "summary");
  CHECK(rows.back()["regime"] == "conjecture");

  const Result csv = cli({"energy", "--set", "1,729,1000,1728", "--format", "csv"});
  const Result js = cli({"energy", "--set", "1,729,1000,1728"});
  CHECK(csv.out == "size,energy,distinct_sums,max_m,max_r\n4,36,9,1729,4\n");
  const json row = js.lines().at(0);
  CHECK(row["energy"] == "36");
  CHECK(row["distinct_sums"] == 9);

  const Result table = cli({"pell", "--count", "3", "--format", "table"});
  CHECK(table.out.find("1733") != std::string::npos);
}

TEST_CASE("cli: family JSON lines re-verify from their decimal strings") {
  const Result family = cli({"verify-family", "--count", "6"});
  CHECK(family.code == 0);
  const auto rows = family.lines();
  REQUIRE(rows.size() == 6);
  for (const json& row : rows) {
    using cubelens::parse_natural;
    const auto x = parse_natural(row["X"].get<std::string>());
    const auto y = parse_natural(row["Y"].get<std::string>());
    CHECK(7 * x * x + 114 == y * y);
    std::vector<cubelens::Natural> u;
    for (const auto& s : row["u"]) u.push_back(parse_natural(s.get<std::string>()));
    CHECK(u[0] * u[0] * u[0] + u[1] * u[1] * u[1] == u[2] * u[2] * u[2] + u[3] * u[3] * u[3]);
    CHECK(row["witness_verified"] == true);
  }
  CHECK(rows[0]["ratio"].is_null());
  CHECK(rows[1]["ratio"].get<double>() == doctest::Approx(4.1019).epsilon(1e-4));
}

TEST_CASE("cli: sharded scans merge to the unsharded result") {
  const auto a = temp_file("shard_a.jsonl");
  const auto b = temp_file("shard_b.jsonl");
  const std::vector<std::string> common{"--alpha", "1/3", "--beta", "1/10"};
  auto shard = [&](const char* from, const char* to, const std::filesystem::path& path) {
    std::vector<std::string> args{"thm22-scan", "--m-from", from, "--m-to", to, "--output", path};
    args.insert(args.end(), common.begin(), common.end());
    return cli(args).code;
  };
  REQUIRE(shard("2", "4000", a) == 0);
  REQUIRE(shard("4001", "10000", b) == 0);
  const Result merged = cli({"merge", b.string(), a.string()});
  CHECK(merged.code == 0);
  std::vector<std::string> whole_args{"thm22-scan", "--m-max", "10000"};
  whole_args.insert(whole_args.end(), common.begin(), common.end());
  const Result whole = cli(whole_args);
  CHECK(merged.out == whole.out);
  const json summary = merged.lines().at(0);
  CHECK(summary["max_count"] == 2);
  CHECK(summary["argmax_m"] == "6");
  CHECK(summary["ceiling"] == "90");
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("cli: polynomial commands") {
  const auto path = temp_file("poly.json");
  {
    std::ofstream f(path);
    f << R"({"terms": [{"n": "1", "re": "1", "im": "0"}, {"n": "729", "re": "1", "im": "0"},
                      {"n": "1000", "re": "1", "im": "0"}, {"n": "1728", "re": "1", "im": "0"}]})";
  }
  const Result l4 = cli({"l4", "--poly", path.string()});
  CHECK(l4.code == 0);
  CHECK(l4.lines().at(0)["l4_4"] == "36");
  CHECK(l4.lines().at(0)["l2_sq"] == "4");
  const Result lemma = cli({"lemma21", "--poly", path.string()});
  CHECK(lemma.code == 0);
  CHECK(lemma.lines().at(0)["bound_rhs"] == "64");
  CHECK(lemma.lines().at(0)["holds"] == true);
  CHECK(cli({"l4", "--poly-json", "{\"terms\": [{\"n\": \"1\"}, {\"n\": \"1\"}]}"}).code == 2);
  CHECK(cli({"l4", "--poly-json", "not json"}).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("cli: arithmetic commands") {
  CHECK(cli({"factor", "--m", "1729"}).lines().at(0)["factors"] == json{"7^1", "13^1", "19^1"});
  CHECK(cli({"divisors", "--m", "6916", "--lo", "18", "--hi", "27"}).lines().at(0)["divisors"] ==
        json{"19", "26"});
  const Result w = cli({"divwindow-cuberoot", "--M", "6916", "--delta", "1"});
  CHECK(w.lines().at(0)["divisors"] == json{"19"});
  const Result sym = cli({"divwindow-cuberoot", "--M", "6916", "--delta", "7", "--symmetric"});
  CHECK(sym.lines().at(0)["divisors"] == json{"13", "14", "19", "26"});
  CHECK(cli({"repbound-check", "--start", "9", "--len", "3"}).code == 0);
  const Result t = cli({"sidon-threshold", "--start", "1", "--k-max", "20"});
  CHECK(t.lines().at(0)["threshold"] == 11);
  const Result none = cli({"sidon-threshold", "--start", "9", "--k-max", "2"});
  CHECK(none.lines().at(0)["threshold"].is_null());
  CHECK(cli({"elements", "--start", "9", "--len", "3"}).lines().size() == 4);
}
