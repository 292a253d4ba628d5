#include <doctest.h>

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "bernegger/cli.hpp"
#include "bernegger/fitting.hpp"
#include "bernegger/format.hpp"
#include "support/temp_dir.hpp"

using namespace bernegger;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(parse_double(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("curve for MBBEFD has its density peak near the mode") {
    const auto r = run({"curve", "--family", "mbbefd", "--param", "b=0.1", "--param", "g=3", "--grid", "1000"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 1000);
    CHECK(rows.front()[0] == 0.0);
    CHECK(rows.back()[0] == 1.0);
    CHECK(rows.back()[1] == doctest::Approx(1.0));
    std::size_t best = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (rows[i][3] > rows[best][3]) best = i;
    CHECK(rows[best][0] == doctest::Approx(0.544).epsilon(2e-3));
    CHECK(r.out.find("# point_mass=0.3333333333333333, mean=") != std::string::npos);
  }

  TEST_CASE("curve: Swiss Re density is decreasing, identity is the atom at 1") {
    const auto sr = run({"curve", "--swiss-re", "5", "--grid", "200"});
    REQUIRE(sr.code == 0);
    const auto rows = csv_rows(sr.out);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][3] < rows[i - 1][3]);

    const auto id = run({"curve", "--family", "mbbefd", "--param", "b=0.5", "--param", "g=1"});
    REQUIRE(id.code == 0);
    for (const auto& row : csv_rows(id.out)) CHECK(row[2] == (row[0] < 1.0 ? 0.0 : 1.0));
    CHECK(id.out.find("# point_mass=1, mean=1") != std::string::npos);
  }

  TEST_CASE("input and domain errors exit 1 with the violated condition") {
    auto r = run({"curve", "--family", "power-log", "--param", "alpha=2", "--param", "delta=3", "--param", "a=0.2"});
    CHECK(r.code == 1);
    CHECK(r.err.find("a > 1/(delta - 1)") != std::string::npos);

    r = run({"fit", "--family", "gamma", "--input", "x.csv"});
    CHECK(r.code == 1);
    CHECK(r.err.find("unknown family 'gamma'") != std::string::npos);
    CHECK(r.err.find("Usage") != std::string::npos);

    r = run({"curve", "--family", "exponential", "--param", "mu=2"});
    CHECK(r.code == 1);
    CHECK(r.err.find("unknown parameter 'mu'") != std::string::npos);

    r = run({"curve", "--family", "exponential", "--param", "lambda=2", "--grid", "1"});
    CHECK(r.code == 1);

    r = run({"stats", "--input", "/nonexistent.csv"});
    CHECK(r.code == 1);
    CHECK(r.err.find("cannot open") != std::string::npos);

    r = run({"nonsense"});
    CHECK(r.code == 1);
  }

  TEST_CASE("simulate then fit") {
    TempDir dir;
    const std::string data = dir.file("e.csv").string();
    auto r = run({"simulate", "--family", "exponential", "--param", "lambda=2", "--n", "20000", "--seed", "3",
                  "--out", data});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());

    r = run({"fit", "--family", "exponential", "--input", data});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    for (const char* key : {"family", "mode", "params", "q", "point_mass", "mean", "loglik_total",
                            "loglik_conditional", "aic", "n", "converged", "iterations"})
      CHECK(j.contains(key));
    CHECK(j["params"]["lambda"].get<double>() == doctest::Approx(2.0).epsilon(0.05));
    CHECK(j["q"].is_null());

    r = run({"fit", "--family", "exponential", "--mode", "extended", "--input", data});
    REQUIRE(r.code == 0);
    const auto je = nlohmann::json::parse(r.out);
    const auto stats = nlohmann::json::parse(run({"stats", "--input", data}).out);
    CHECK(je["q"].get<double>() == stats["point_mass"].get<double>());
  }

  TEST_CASE("simulate: n = 0 and determinism") {
    auto r = run({"simulate", "--family", "exponential", "--param", "lambda=2", "--n", "0"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "z\n");
    const std::vector<std::string> args{"simulate", "--family", "sine-log", "--param", "beta=-0.7",
                                        "--param", "alpha=1", "--param", "a=1.3", "--n", "500", "--seed", "9"};
    CHECK(run(args).out == run(args).out);
  }

  TEST_CASE("compare emits the table") {
    TempDir dir;
    const std::string data = dir.file("m.csv").string();
    REQUIRE(run({"simulate", "--family", "mbbefd", "--param", "b=0.1", "--param", "g=3", "--n", "5000",
                 "--seed", "4", "--out", data})
                .code == 0);
    const auto r = run({"compare", "--family", "exponential", "--mode", "standard", "--input", data});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string header, empirical, row, extra;
    std::getline(in, header);
    std::getline(in, empirical);
    std::getline(in, row);
    CHECK(header == "family,mode,point_mass,mean,loglik_conditional,loglik_total,aic,status");
    CHECK(empirical.rfind("empirical,", 0) == 0);
    CHECK(row.rfind("exponential,standard,", 0) == 0);
    CHECK_FALSE(std::getline(in, extra));

    const auto js = run({"compare", "--family", "mbbefd", "--input", data, "--format", "json"});
    REQUIRE(js.code == 0);
    CHECK(nlohmann::json::parse(js.out)["rows"].size() == 3);
  }

  TEST_CASE("raw input and zero records") {
    TempDir dir;
    const auto raw = dir.write("raw.csv", "loss,deductible,cover\n7000,2000,5000\n1500,2000,5000\n4000,2000,5000\n");
    const auto r = run({"stats", "--input", raw.string(), "--schema", "raw"});
    REQUIRE(r.code == 0);
    CHECK(r.err.find("1 record(s) with z = 0") != std::string::npos);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["n"] == 2);
    CHECK(j["point_mass"].get<double>() == 0.5);
  }

  TEST_CASE("fit failure exits 2") {
    TempDir dir;
    const auto one = dir.write("one.csv", "z\n0.4\n");
    const auto r = run({"fit", "--family", "exponential", "--input", one.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("cannot identify") != std::string::npos);
  }
}
