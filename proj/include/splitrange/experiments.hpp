#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "splitrange/types.hpp"

namespace splitrange {

struct CheckResult {
  std::string description;
  double expected = 0.0;
  double observed = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ExperimentReport {
  std::string name;
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<CheckResult> checks;
  std::vector<std::string> artifacts;  // files written under the output dir
  std::vector<std::string> notes;
  long long runtime_ms = 0;

  // Overall verdict: the conjunction of all individual checks.
  bool pass() const;
  nlohmann::json to_json() const;
};

struct RunContext {
  std::uint64_t seed = 0;
  std::string output_dir;  // empty: no artifact files are written
};

using ParamMap = std::map<std::string, double>;

/// Run one registered experiment. Throws std::invalid_argument on an unknown
/// name or an unrecognized parameter key. Reports are deterministic for a
/// fixed (name, params, seed) triple.
ExperimentReport run_experiment(const std::string& name, const ParamMap& params = {},
                                const RunContext& ctx = {});

std::vector<std::string> experiment_names();

}  // namespace splitrange
