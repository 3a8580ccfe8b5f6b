// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <catch_amalgamated.hpp>
#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace
{

struct Result
{
  int code;
  std::string out;
};

// Runs the CLI in dir with stderr folded into the captured output.
Result Run(const std::string &args, const fs::path &dir, const std::string &env = "")
{
  const std::string cmd =
      "cd '" + dir.string() + "' && " + env + " '" + BERGBAND_CLI + "' " + args + " 2>&1";
  FILE *pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[4096];
  while (std::fgets(buf, sizeof(buf), pipe))
  {
    out += buf;
  }
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path WorkDir(const std::string &name)
{
  const fs::path dir = fs::current_path() / "cli_work" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string Slurp(const fs::path &p)
{
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void WriteFile(const fs::path &p, const std::string &text)
{
  std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("disc-spec reproduces the targets", "[cli]")
{
  const auto dir = WorkDir("disc");
  const Result r = Run("disc-spec --targets 0.3,0.2,0.1 --n 10", dir);
  REQUIRE(r.code == 0);
  std::stringstream ss(r.out);
  std::string line;
  std::getline(ss, line);
  CHECK(line == "n,lambda");
  std::vector<double> values;
  while (std::getline(ss, line))
  {
    values.push_back(std::stod(line.substr(line.find(',') + 1)));
  }
  REQUIRE(values.size() == 10);
  CHECK_THAT(values[1], WithinAbs(0.3, 1e-8));
  CHECK_THAT(values[2], WithinAbs(0.2, 1e-8));
  CHECK_THAT(values[3], WithinAbs(0.1, 1e-8));

  // Same numbers through a profile file.
  REQUIRE(Run("synth --targets 0.3,0.2,0.1 -o profile.json", dir).code == 0);
  const Result viaFile = Run("disc-spec --profile profile.json --n 10", dir);
  CHECK(viaFile.code == 0);
  CHECK(viaFile.out == r.out);
}

TEST_CASE("floquet-check and conformal-check", "[cli]")
{
  const auto dir = WorkDir("checks");
  const Result f = Run("floquet-check --M 16 --trials 10", dir);
  CHECK(f.code == 0);
  CHECK(json::parse(f.out)["max_parseval_residual"].get<double>() <= 1e-10);
  CHECK(Run("conformal-check --pair moebius --alpha 0.3", dir).code == 0);
  CHECK(Run("conformal-check --pair rect_exp", dir).code == 0);
  CHECK(Run("conformal-check --pair moebius --alpha 1.2", dir).code == 2);
}

TEST_CASE("bands, report and run on a config", "[cli]")
{
  const auto dir = WorkDir("pipeline");
  WriteFile(dir / "run.json",
            R"({"targets": [0.3, 0.2, 0.1], "epsilon": 0.02, "eta_points": 9})");
  REQUIRE(Run("bands --config run.json --h 0.05", dir).code == 0);
  const std::string csv = Slurp(dir / "bands.csv");
  CHECK(csv.rfind("eta,n,lambda\n", 0) == 0);

  const Result run = Run("run --config run.json", dir);
  CHECK(run.code == 0);
  CHECK_THAT(run.out, ContainsSubstring("verdict pass"));
  const json report = json::parse(Slurp(dir / "report.json"));
  CHECK(report["verdict"] == "pass");
  CHECK(report["config"]["eta_points"] == 9);
  const json diag = json::parse(Slurp(dir / "diagnostics.json"));
  CHECK(diag["fibers"].size() == 9);

  // The run passed at h = 0.05, so its CSV matches the bands command at that h.
  CHECK(Slurp(dir / "bands.csv") == csv);

  // Re-running from the echoed config reproduces the bands byte for byte.
  fs::create_directories(dir / "again");
  fs::copy_file(dir / "report.json", dir / "again" / "report_in.json");
  CHECK(Run("run --config report_in.json", dir / "again").code == 0);
  CHECK(Slurp(dir / "again" / "bands.csv") == csv);

  // The report command re-derives the verdict from the CSV alone.
  const Result rep = Run("report --bands bands.csv --targets 0.3,0.2,0.1 --epsilon 0.02 --delta " +
                             std::to_string(diag["delta"].get<double>()),
                         dir);
  CHECK(rep.code == 0);
  CHECK(json::parse(rep.out)["components"] == report["components"]);
  CHECK(Run("report --bands bands.csv --targets 0.5 --epsilon 0.001", dir).code == 1);
}

TEST_CASE("Usage and numerical errors map to exit codes", "[cli]")
{
  const auto dir = WorkDir("errors");
  CHECK(Run("", dir).code == 2);
  CHECK(Run("frobnicate", dir).code == 2);
  CHECK(Run("disc-spec --targets 0.3 --bogus 1", dir).code == 2);
  CHECK(Run("disc-spec", dir).code == 2);
  CHECK(Run("--help", dir).code == 0);
  CHECK(Run("bands --help", dir).code == 0);

  WriteFile(dir / "even.json", R"({"eta_points": 8})");
  CHECK(Run("run --config even.json", dir).code == 2);
  CHECK(Run("bands --config missing.json", dir).code == 2);

  const Result ill = Run("synth --targets 0.6,0.5,0.4,0.3,0.2,0.1", dir);
  CHECK(ill.code == 3);
  const json payload = json::parse(ill.out);
  CHECK(payload["error"] == "numerical");
  CHECK(payload["condition"].get<double>() > 1e12);

  CHECK(Run("study-h --targets 0.3,0.2,0.1 --h-list 0.05,0.1", dir).code == 2);
  const Result study = Run("study-h --targets 0.3,0.2,0.1 --h-list 0.1,0.05", dir);
  CHECK(study.code == 0);
  CHECK(study.out.rfind("h,n,band,disc,error\n", 0) == 0);
}

TEST_CASE("Thread count from the environment", "[cli]")
{
  const auto dir = WorkDir("threads");
  WriteFile(dir / "run.json", R"({"targets": [0.3], "eta_points": 5, "h_min": 0.1})");
  CHECK(Run("bands --config run.json", dir, "BERGMAN_BAND_THREADS=abc").code == 2);
  CHECK(Run("bands --config run.json -o one.csv", dir, "BERGMAN_BAND_THREADS=1").code == 0);
  CHECK(Run("--threads 2 bands --config run.json -o two.csv", dir).code == 0);
  CHECK(Slurp(dir / "one.csv") == Slurp(dir / "two.csv"));
  CHECK(Run("--threads -1 bands --config run.json", dir).code == 2);
}
