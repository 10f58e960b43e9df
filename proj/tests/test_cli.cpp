#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "etameta/cli.hpp"

using namespace etameta;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("compute") {
  auto r = run({"compute", "--p", "2", "--alpha", "4", "--beta", "1", "--epsilon", "0", "--delta",
                "0", "--sign", "-"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("eta_formula:       3") != std::string::npos);
  CHECK(r.out.find("eta3_family") != std::string::npos);

  r = run({"compute", "--p", "2", "--alpha", "4", "--beta", "3", "--epsilon", "0", "--delta", "2",
           "--sign", "-", "--verify", "--json"});
  CHECK(r.code == cli::kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["eta_formula"] == 6);
  CHECK(j["eta_oracle"] == 6);
  CHECK(j["match"] == true);
  CHECK(j["case_tag"] == "neg_delta_ge2");
  CHECK(j["sign"] == "-");

  r = run({"compute", "--p", "3", "--alpha", "2", "--beta", "2", "--epsilon", "0", "--delta", "0",
           "--sign", "+", "--json"});
  CHECK(nlohmann::json::parse(r.out)["eta_oracle"].is_null());
}

TEST_CASE("invalid parameters exit 2 and name the constraint") {
  auto r = run({"compute", "--p", "2", "--alpha", "3", "--beta", "2", "--epsilon", "2", "--delta",
                "2", "--sign", "+"});
  CHECK(r.code == cli::kExitInvalid);
  CHECK(r.err.find("delta + epsilon <= alpha") != std::string::npos);

  CHECK(run({"compute", "--p", "3", "--alpha", "3", "--beta", "2", "--epsilon", "0", "--delta",
             "1", "--sign", "-"})
            .code == cli::kExitInvalid);
  CHECK(run({"compute", "--p", "2", "--alpha", "3"}).code == cli::kExitInvalid);
  CHECK(run({"compute", "--p", "2", "--alpha", "3", "--beta", "2", "--epsilon", "0", "--delta",
             "1", "--sign", "?"})
            .code == cli::kExitInvalid);
  CHECK(run({"frobnicate"}).code == cli::kExitInvalid);
  CHECK(run({}).code == cli::kExitInvalid);
  CHECK(run({"sweep", "--p", "6", "--max-order-exp", "4"}).code == cli::kExitInvalid);
  CHECK(run({"sweep", "--p", "2", "--max-order-exp", "4", "--format", "xml"}).code ==
        cli::kExitInvalid);
}

TEST_CASE("sweep csv") {
  const auto r = run({"sweep", "--p", "2", "--max-order-exp", "8", "--format", "csv"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.rfind(cli::csv_header() + "\n", 0) == 0);
  CHECK(r.out.find("\n2,4,3,0,2,-,128,6,neg_delta_ge2,6,true,5,false\n") != std::string::npos);
  CHECK(r.out.find('\r') == std::string::npos);
  CHECK(r.out.find('"') == std::string::npos);
}

TEST_CASE("sweep leaves oracle fields blank above the budget") {
  const auto r = run({"sweep", "--p", "2", "--max-order-exp", "5", "--signs", "-",
                      "--oracle-budget", "8", "--format", "csv"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("\n2,4,1,0,0,-,32,3,eta3_family,,,3,false\n") != std::string::npos);
  CHECK(r.out.find("\n2,2,1,0,0,-,8,3,eta3_family,3,true,1,false\n") != std::string::npos);
  CHECK(r.out.find(",+,") == std::string::npos);
}

TEST_CASE("sweep json to a file") {
  const std::string path = "test_cli_sweep.json";
  const auto r = run({"sweep", "--p", "3", "--max-order-exp", "4", "--signs", "+", "--format",
                      "json", "--out", path});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  const auto rows = nlohmann::ordered_json::parse(in);
  REQUIRE(rows.is_array());
  CHECK(rows.size() > 0);
  const std::vector<std::string> keys{"p", "alpha", "beta", "epsilon", "delta", "sign", "order",
                                      "eta_formula", "case_tag", "eta_oracle", "match",
                                      "n_minus_2", "equality_expected"};
  for (const auto& row : rows) {
    std::vector<std::string> got;
    for (const auto& [k, v] : row.items()) got.push_back(k);
    CHECK(got == keys);
    CHECK(row["match"] == true);
  }
  std::remove(path.c_str());
}

TEST_CASE("check prints every criterion before the summary") {
  const auto r = run({"check", "--max-order-exp", "6"});
  CHECK(r.code == cli::kExitOk);
  std::istringstream lines(r.out);
  std::string line;
  int criteria = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("[PASS]", 0) == 0 || line.rfind("[FAIL]", 0) == 0) {
      ++criteria;
    } else {
      CHECK(criteria == 10);
      CHECK(line == "10/10 criteria passed");
    }
  }
  CHECK(criteria == 10);
}

TEST_CASE("help") { CHECK(run({"--help"}).code == cli::kExitOk); }
