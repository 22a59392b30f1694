#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

const std::filesystem::path kWorkDir =
    std::filesystem::temp_directory_path() / "splitrange_cli_tests";

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::filesystem::create_directories(kWorkDir);
  const auto out_path = kWorkDir / "stdout.txt";
  const std::string cmd =
      std::string(SPLITRANGE_CLI_PATH) + " " + args + " > " + out_path.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  std::stringstream text;
  text << in.rdbuf();
  r.out = text.str();
  return r;
}

std::string write_pair_file() {
  std::filesystem::create_directories(kWorkDir);
  const auto path = kWorkDir / "pair_balls.json";
  std::ofstream out(path);
  out << R"({"A": {"kind": "ball", "center": [0, 0], "radius": 1},)"
      << R"( "B": {"kind": "ball", "center": [3, 0], "radius": 1}})";
  return path.string();
}

// two lines meeting at (3,0) under 20 degrees: solvable, but only at a slow
// linear rate (~0.94 per step)
std::string write_lines_pair_file() {
  std::filesystem::create_directories(kWorkDir);
  const auto path = kWorkDir / "pair_lines.json";
  std::ofstream out(path);
  out << R"({"A": {"kind": "affine-subspace", "base": [0, 0], "basis": [[1, 0]]},)"
      << R"( "B": {"kind": "affine-subspace", "base": [3, 0],)"
      << R"( "basis": [[0.93969262078590838, 0.34202014332566871]]}})";
  return path.string();
}

}  // namespace

TEST_CASE("experiment subcommand: pass -> 0, unknown -> 2") {
  CHECK(run_cli("experiment rotation_counterexample --no-timestamp").exit_code == 0);
  CHECK(run_cli("experiment no_such_experiment").exit_code == 2);
  CHECK(run_cli("experiment").exit_code == 2);  // neither name nor --all
}

TEST_CASE("experiment output is byte-identical with --no-timestamp") {
  const RunResult a = run_cli("experiment rotation_line --no-timestamp");
  const RunResult b = run_cli("experiment rotation_line --no-timestamp");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"timestamp\"") == std::string::npos);
  CHECK(a.out.find("\"schema_version\": \"1.0.0\"") != std::string::npos);
}

TEST_CASE("perturbed subcommand: definitive verdicts exit 0") {
  const std::string pair = write_pair_file();
  const RunResult solved = run_cli("perturbed --pair " + pair + " --w \"-1,0\" --no-timestamp");
  CHECK(solved.exit_code == 0);
  CHECK(solved.out.find("SOLVED") != std::string::npos);

  const RunResult unsolved = run_cli("perturbed --pair " + pair + " --w \"-3,2\" --no-timestamp");
  CHECK(unsolved.exit_code == 0);
  CHECK(unsolved.out.find("UNSOLVED") != std::string::npos);

  // an undecided run -- a budget too small for slow linear convergence --
  // exits 1
  const std::string lines = write_lines_pair_file();
  const RunResult rushed =
      run_cli("perturbed --pair " + lines + " --w \"0,0\" --max-iter 100 --no-timestamp");
  CHECK(rushed.exit_code == 1);
  CHECK(rushed.out.find("INCONCLUSIVE") != std::string::npos);
  const RunResult finished =
      run_cli("perturbed --pair " + lines + " --w \"0,0\" --max-iter 2000 --no-timestamp");
  CHECK(finished.exit_code == 0);
  CHECK(finished.out.find("SOLVED") != std::string::npos);

  // malformed and mismatched -w values are usage errors
  CHECK(run_cli("perturbed --pair " + pair + " --w \"1,2,3\"").exit_code == 2);
  CHECK(run_cli("perturbed --pair " + pair + " --w \"abc\"").exit_code == 2);
}

TEST_CASE("range subcommand emits CSV on demand") {
  const std::string pair = write_pair_file();
  const RunResult csv =
      run_cli("range --pair " + pair + " --format csv --samples 50 --no-timestamp");
  CHECK(csv.exit_code == 0);
  CHECK(csv.out.rfind("x0,x1", 0) == 0);
  int lines = 0;
  for (char c : csv.out)
    if (c == '\n') ++lines;
  CHECK(lines == 51);  // header + 50 points

  const RunResult js = run_cli("range --pair " + pair + " --samples 10 --no-timestamp");
  CHECK(js.exit_code == 0);
  CHECK(js.out.find("\"points\"") != std::string::npos);
}

TEST_CASE("displacement subcommand reports the estimate") {
  const std::string pair = write_pair_file();
  const RunResult r = run_cli("displacement --pair " + pair + " --no-timestamp");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"v\"") != std::string::npos);
  CHECK(r.out.find("-1.0") != std::string::npos);
}

TEST_CASE("compare subcommand: identical clouds verdict true") {
  const std::string pair = write_pair_file();
  const RunResult csv = run_cli("range --pair " + pair + " --format csv --samples 200");
  REQUIRE(csv.exit_code == 0);
  const auto cloud_path = (kWorkDir / "cloud.csv").string();
  std::ofstream(cloud_path) << csv.out;
  const RunResult same =
      run_cli("compare --cloud-a " + cloud_path + " --cloud-b " + cloud_path + " --no-timestamp");
  CHECK(same.exit_code == 0);
  CHECK(same.out.find("\"verdict\": true") != std::string::npos);
}

TEST_CASE("missing subcommand and missing files are usage errors") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("range --pair /nonexistent/pair.json").exit_code == 1);  // runtime failure
  CHECK(run_cli("bogus_subcommand").exit_code == 2);
}

TEST_CASE("SPLITRANGE_OUT overrides --out") {
  const auto env_dir = kWorkDir / "env_out";
  std::filesystem::remove_all(env_dir);
  const std::string cmd = "SPLITRANGE_OUT=" + env_dir.string() +
                          " " SPLITRANGE_CLI_PATH
                          " experiment rotation_line --out /nonexistent_ignored --no-timestamp"
                          " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(std::filesystem::exists(env_dir));
  CHECK(!std::filesystem::is_empty(env_dir));
  std::filesystem::remove_all(env_dir);
}
