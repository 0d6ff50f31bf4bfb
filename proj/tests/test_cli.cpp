#include "cli_run.hpp"

#include "mmwmc/json_io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

using mmwmc::test::run_cli;

namespace {

std::string temp_path(const char* name)
{
  return std::string{MMWMC_TEST_TMP} + "/" + name;
}

void write_file(const std::string& path, const std::string& text)
{
  std::ofstream(path) << text;
}

} // namespace

TEST_CASE("ia-delay text table")
{
  const auto r = run_cli("ia-delay");
  CHECK(r.exit_code == 0);
  for (const char* s : {"25.6 ms", "3.2 ms", "1.6 ms"}) {
    CHECK(r.out.find(s) != std::string::npos);
  }
}

TEST_CASE("ia-delay csv and t_per scaling")
{
  const auto r = run_cli("ia-delay --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 9);
  CHECK(r.out.find("analog,analog,DL,128,25.6\n") != std::string::npos);
  CHECK(r.out.find("digital,analog,UL,8,1.6\n") != std::string::npos);
  CHECK(r.out.find("analog,digital,DL,16,3.2\n") != std::string::npos);

  const auto doubled = run_cli("ia-delay --format csv --t-per 400e-6");
  REQUIRE(doubled.exit_code == 0);
  CHECK(doubled.out.find("analog,analog,DL,128,51.2\n") != std::string::npos);
  CHECK(doubled.out.find("digital,analog,UL,8,3.2\n") != std::string::npos);
  CHECK(doubled.out.find("analog,digital,DL,16,6.4\n") != std::string::npos);

  const auto json = run_cli("ia-delay --format json");
  REQUIRE(json.exit_code == 0);
  CHECK(nlohmann::json::parse(json.out).at("rows").size() == 4);
}

TEST_CASE("usage errors exit with 2")
{
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("ia-delay --format xml").exit_code == 2);
  CHECK(run_cli("ia-delay --bogus").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("config errors exit with 1 and name the key")
{
  const std::string bad = temp_path("bad_phi.config");
  write_file(bad, "t_sig_s = 20e-6\n");
  const std::string cmd = std::string{MMWMC_CLI} + " sweep-density --config " + bad + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  char buf[512] = {};
  std::string text;
  while (std::fgets(buf, sizeof buf, pipe)) {
    text += buf;
  }
  const int status = ::pclose(pipe);
  CHECK(WEXITSTATUS(status) == 1);
  CHECK(text.find("phi_ov") != std::string::npos);

  CHECK(run_cli("single-trial --config /nonexistent.config").exit_code == 1);
  const std::string unknown = temp_path("unknown.config");
  write_file(unknown, "colour = blue\n");
  CHECK(run_cli("single-trial --config " + unknown).exit_code == 1);
}

TEST_CASE("sweep-density writes one row per density and metric")
{
  const std::string cfg = temp_path("small.config");
  write_file(cfg, "lambda_bs = 10, 40\nn_trials = 6\nsweeps_per_trial = 2\n");
  const auto r = run_cli("sweep-density --config " + cfg + " --threads 2");
  REQUIRE(r.exit_code == 0);
  // header + 2 densities x 4 metrics
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 9);
  const std::string json_path = temp_path("small.json");
  const std::string csv_path = temp_path("small.csv");
  REQUIRE(run_cli("sweep-density --config " + cfg + " --threads 1 --output " + csv_path + " --json " + json_path)
            .exit_code == 0);
  std::ifstream csv(csv_path);
  std::stringstream ss;
  ss << csv.rdbuf();
  CHECK(ss.str() == r.out);
  std::ifstream js(json_path);
  CHECK(nlohmann::json::parse(js).at("curves").size() == 4);
}

TEST_CASE("single-trial trace")
{
  const auto r = run_cli("single-trial --lambda 50 --trial-index 3 --seed 11 --trace");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  const std::size_t m = j.at("deployment").at("scells").size();
  const auto crt = mmwmc::crt_from_json(j.at("crt"));
  CHECK(crt.n_ue_dirs == 8);
  CHECK(crt.n_scells() == m);
  CHECK(j.at("report_tables").size() == m);
  CHECK(j.at("n_available").get<int>() <=  static_cast<int>(m));
  if (!j.at("decision").is_null()) {
    CHECK(mmwmc::select_best(crt, mmwmc::MaxSinr{}) == mmwmc::decision_from_json(j.at("decision")));
    CHECK(j.at("outcome") == "handover");
  } else {
    CHECK(j.at("outcome") == "detach");
  }
  CHECK(run_cli("single-trial --lambda 50 --trial-index 3 --seed 11 --trace").out == r.out);

  const auto empty = run_cli("single-trial --lambda 0");
  REQUIRE(empty.exit_code == 0);
  const nlohmann::json e = nlohmann::json::parse(empty.out);
  CHECK(e.at("crt").at("scell_ids").empty());
  CHECK(e.at("outcome") == "detach");
  CHECK(e.at("decision").is_null());
  CHECK(e.at("messages").empty());
}
