#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hmvol/cli.hpp"
#include "hmvol/special_values.hpp"

using namespace hmvol;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "hmvol");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("compute json") {
  const Run r = run({"compute", "--lattice", "L", "--n", "1", "--d", "3", "--format", "json"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  const auto& rec = j[0];
  CHECK(rec["lattice"] == "L");
  CHECK(rec["n"] == 1);
  CHECK(rec["d"] == 3);
  CHECK(rec["D"] == -3);
  CHECK(rec["volume_rational"] == "1/6");
  CHECK(rec["provenance"] == "assembled");
  CHECK(rec["factored"]["zeta_args"] == nlohmann::json::array({2}));
  CHECK(rec["factored"]["l_args"].empty());
}

TEST_CASE("compute text and lattice M") {
  const Run r = run({"compute", "--lattice", "M", "--n", "1", "--d", "3"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("1/12") != std::string::npos);
  const Run both = run({"compute", "--n", "2", "--d", "7", "--pipeline", "both", "--format", "csv"});
  CHECK(both.code == kExitOk);
  const auto ls = lines(both.out);
  REQUIRE(ls.size() == 3);
  CHECK(ls[1].rfind("L,2,7,-7,", 0) == 0);
  CHECK(ls[2].rfind("M,2,7,-7,", 0) == 0);
  CHECK(ls[1].size() > 6);
  CHECK(ls[1].substr(ls[1].rfind(',') + 1) == "Match");
}

TEST_CASE("JSON output round-trips") {
  for (const char* lat : {"L", "M"}) {
    for (const char* n : {"1", "2", "3", "5"}) {
      for (const char* d : {"1", "3", "13"}) {
        const Run r = run({"compute", "--lattice", lat, "--n", n, "--d", d, "--pipeline", "both", "--format", "json"});
        REQUIRE(r.code == kExitOk);
        const auto rec = nlohmann::json::parse(r.out)[0];
        const Rational exact = Rational::parse(rec["volume_rational"].get<std::string>());
        const Real numeric(rec["volume_numeric"].get<std::string>());
        // 25 printed digits plus the declared tolerance.
        CHECK(abs(to_real(exact) - numeric) <= Real(1e-12) + abs(numeric) * Real(1e-24));
        CHECK(rec["verdict"] != "Mismatch");
      }
    }
  }
}

TEST_CASE("compute rejects invalid input with exit 2") {
  CHECK(run({"compute", "--lattice", "L", "--n", "1", "--d", "4"}).code == kExitInvalidInput);
  CHECK(run({"compute", "--lattice", "L", "--n", "1", "--d", "9"}).code == kExitInvalidInput);
  CHECK(run({"compute", "--lattice", "L", "--n", "0", "--d", "3"}).code == kExitInvalidInput);
  CHECK(run({"compute", "--lattice", "X", "--n", "1", "--d", "3"}).code == kExitInvalidInput);
  CHECK(run({"compute", "--n", "1"}).code == kExitInvalidInput);
  CHECK(run({"compute", "--n", "1", "--d", "3", "--tol", "-1"}).code == kExitInvalidInput);
  CHECK(run({}).code == kExitInvalidInput);
  CHECK(run({"frobnicate"}).code == kExitInvalidInput);
  const Run bad = run({"compute", "--lattice", "L", "--n", "1", "--d", "4"});
  CHECK(bad.out.empty());
  CHECK_FALSE(bad.err.empty());
}

TEST_CASE("help exits 0") { CHECK(run({"--help"}).code == kExitOk); }

TEST_CASE("verify su-count") {
  const Run r = run({"verify", "--oracle", "su-count", "--lattice", "L", "--n", "1", "--d", "3", "--p", "5", "--threads", "1"});
  CHECK(r.code == kExitOk);
  CHECK(lines(r.out).front() == "oracle 120, formula 120, Match");
  const Run j = run({"verify", "--oracle", "su-count", "--n", "1", "--d", "7", "--p", "11", "--format", "json"});
  CHECK(j.code == kExitOk);
  const auto rec = nlohmann::json::parse(j.out);
  CHECK(rec["oracle_value"] == "1320");
  CHECK(rec["verdict"] == "Match");
  CHECK(run({"verify", "--oracle", "su-count", "--lattice", "M", "--n", "1", "--d", "3", "--p", "2"}).code ==
        kExitInvalidInput);
  CHECK(run({"verify", "--oracle", "su-count", "--n", "1", "--d", "3", "--p", "4"}).code == kExitInvalidInput);
  CHECK(run({"verify", "--oracle", "su-count", "--n", "1", "--d", "3"}).code == kExitInvalidInput);
}

TEST_CASE("verify kernel and tau-p") {
  const Run k = run({"verify", "--oracle", "kernel", "--lattice", "M", "--n", "1"});
  CHECK(k.code == kExitOk);
  CHECK(lines(k.out).front() == "oracle 128, formula 128, Match");
  CHECK(run({"verify", "--oracle", "kernel", "--lattice", "L", "--n", "1", "--d", "3"}).code == kExitInvalidInput);
  const Run t = run({"verify", "--oracle", "tau-p", "--lattice", "M", "--n", "1", "--d", "3", "--p", "3"});
  CHECK(t.code == kExitOk);
  CHECK(lines(t.out).front() == "oracle 4/3, formula 4/3, Match");
  const Run t2 = run({"verify", "--oracle", "tau-p", "--lattice", "L", "--n", "1", "--d", "5", "--p", "2"});
  CHECK(t2.code == kExitOk);
  CHECK(lines(t2.out).front() == "oracle 1/2, formula 1/2, Match");
  const Run deeper =
      run({"verify", "--oracle", "tau-p", "--lattice", "L", "--n", "1", "--d", "5", "--p", "2", "--level", "4"});
  CHECK(deeper.code == kExitOk);
  CHECK(run({"verify", "--oracle", "tau-p", "--n", "1", "--d", "5", "--p", "2", "--level", "1"}).code ==
        kExitInvalidInput);
}

TEST_CASE("verify stabilization, including an honest mismatch") {
  CHECK(run({"verify", "--oracle", "stabilization", "--n", "1", "--d", "3", "--p", "3"}).code == kExitOk);
  // M at ramified 2 is not yet stable at level 2.
  const Run r = run({"verify", "--oracle", "stabilization", "--lattice", "M", "--n", "1", "--d", "1", "--p", "2",
                     "--level", "2"});
  CHECK(r.code == kExitMismatch);
  CHECK(lines(r.out).front().find("Mismatch") != std::string::npos);
}

TEST_CASE("budget exhaustion exits 4") {
  const Run r = run({"verify", "--oracle", "su-count", "--n", "1", "--d", "3", "--p", "11", "--budget", "50"});
  CHECK(r.code == kExitBudget);
  CHECK(r.out.empty());
  setenv("HMVOL_BUDGET", "50", 1);
  CHECK(run({"verify", "--oracle", "tau-p", "--n", "1", "--d", "3", "--p", "11"}).code == kExitBudget);
  unsetenv("HMVOL_BUDGET");
}

TEST_CASE("table csv") {
  const Run r = run({"table", "--lattice", "both", "--n-range", "1..3", "--d-list", "3,7", "--format", "csv"});
  REQUIRE(r.code == kExitOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 13);
  CHECK(ls[0] == "lattice,n,d,D,volume_rational,volume_numeric,zeta_args,l_args,pipeline_agreement");
  CHECK(ls[1].rfind("L,1,3,-3,1/6,", 0) == 0);
  CHECK(ls[7].rfind("M,1,3,-3,1/12,", 0) == 0);
  for (std::size_t i = 1; i < ls.size(); ++i) CHECK(ls[i].find("Mismatch") == std::string::npos);
  CHECK(ls[5].find(",2;4,3,") != std::string::npos);  // L n=3: zeta(2), zeta(4) and L(3)
}

TEST_CASE("table to a file and json") {
  const auto path = std::filesystem::temp_directory_path() / "hmvol_table_test.csv";
  const Run r = run({"table", "--n-range", "1..2", "--d-list", "1,3", "--out", path.string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(lines(buf.str()).size() == 9);
  std::filesystem::remove(path);

  const Run j = run({"table", "--lattice", "L", "--n-range", "1..1", "--d-list", "1", "--format", "json"});
  CHECK(nlohmann::json::parse(j.out)[0]["volume_rational"] == "1/8");
}

TEST_CASE("table rejects bad input") {
  CHECK(run({"table", "--n-range", "3..1", "--d-list", "3"}).code == kExitInvalidInput);
  CHECK(run({"table", "--n-range", "1..9", "--d-list", "3"}).code == kExitInvalidInput);
  CHECK(run({"table", "--n-range", "x", "--d-list", "3"}).code == kExitInvalidInput);
  CHECK(run({"table", "--d-list", "3,8"}).code == kExitInvalidInput);
  CHECK(run({"table", "--d-list", "3,abc"}).code == kExitInvalidInput);
  CHECK(run({"table", "--d-list", "3", "--out", "/nonexistent-dir/x.csv"}).code == kExitInvalidInput);
}

TEST_CASE("lvalue") {
  const Run z = run({"lvalue", "--kind", "zeta", "--k", "2", "--tol", "1e-12"});
  CHECK(z.code == kExitOk);
  CHECK(lines(z.out).front().rfind("value 1.644934066848", 0) == 0);
  const Run l = run({"lvalue", "--kind", "L", "--k", "3", "--d", "3", "--tol", "1e-10"});
  CHECK(l.code == kExitOk);
  CHECK(lines(l.out).front().rfind("value 0.8840238117", 0) == 0);
  CHECK(l.out.find("4/81 * pi^3 / sqrt(3)") != std::string::npos);
  const Run j = run({"lvalue", "--kind", "L", "--k", "2", "--d", "1", "--format", "json"});
  const auto rec = nlohmann::json::parse(j.out);
  CHECK(rec["value"].get<std::string>().rfind("0.915965594177", 0) == 0);
  CHECK_FALSE(rec.contains("exact"));
  CHECK(run({"lvalue", "--kind", "L", "--k", "3"}).code == kExitInvalidInput);
  CHECK(run({"lvalue", "--kind", "zeta", "--k", "1"}).code == kExitInvalidInput);
  CHECK(run({"lvalue", "--kind", "zeta", "--k", "2", "--tol", "0"}).code == kExitInvalidInput);
}
