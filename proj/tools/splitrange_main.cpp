// splitrange command-line front end.
//
// Exit codes: 0 all checks passed (or a definitive verdict was reached),
// 1 a check failed or no definitive verdict, 2 usage or spec-parse error.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "splitrange/catalog.hpp"
#include "splitrange/experiments.hpp"
#include "splitrange/geometry.hpp"
#include "splitrange/io.hpp"
#include "splitrange/ranges.hpp"
#include "splitrange/spec_json.hpp"

namespace {

using namespace splitrange;

constexpr const char* kSchemaVersion = "1.0.0";

std::string iso_timestamp() {
  const std::time_t now = std::time(nullptr);
  char buffer[32];
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string out_dir;
  std::string format = "json";
  bool no_timestamp = false;
  double window = 10.0;
  int samples = 1024;
  double tol = 1e-6;
};

nlohmann::json base_report(const std::string& command, const GlobalOptions& opts) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["seed"] = opts.seed;
  if (!opts.no_timestamp) j["timestamp"] = iso_timestamp();
  return j;
}

void emit(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

ParamMap parse_params(const std::vector<std::string>& kv_list) {
  ParamMap params;
  for (const std::string& kv : kv_list) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("--param expects key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    try {
      std::size_t pos = 0;
      const double value = std::stod(kv.substr(eq + 1), &pos);
      if (pos != kv.substr(eq + 1).size()) throw std::invalid_argument("trailing characters");
      params[key] = value;
    } catch (const std::exception&) {
      throw std::invalid_argument("--param value for '" + key + "' is not a number");
    }
  }
  return params;
}

int cmd_experiment(const GlobalOptions& opts, const std::string& name, bool all,
                   const std::vector<std::string>& kv_list) {
  const ParamMap params = parse_params(kv_list);
  const RunContext ctx{opts.seed, opts.out_dir};

  std::vector<std::string> names;
  if (all) names = experiment_names();
  else names.push_back(name);

  nlohmann::json doc = base_report("experiment", opts);
  doc["experiments"] = nlohmann::json::array();
  bool pass = true;
  std::vector<ExperimentReport> reports;
  for (const std::string& n : names) {
    ExperimentReport report = run_experiment(n, params, ctx);
    if (opts.no_timestamp) report.runtime_ms = 0;
    pass = pass && report.pass();
    doc["experiments"].push_back(report.to_json());
    reports.push_back(std::move(report));
  }
  doc["pass"] = pass;
  emit(doc);

  if (all) {
    std::cerr << "\n  experiment                 result   checks   runtime\n"
              << "  ---------------------------------------------------\n";
    for (const ExperimentReport& report : reports) {
      int ok = 0;
      for (const CheckResult& c : report.checks) ok += c.pass ? 1 : 0;
      std::fprintf(stderr, "  %-26s %-8s %3d/%-3zu  %5lld ms\n", report.name.c_str(),
                   report.pass() ? "pass" : "FAIL", ok, report.checks.size(),
                   static_cast<long long>(report.runtime_ms));
    }
    std::fprintf(stderr, "  overall: %s\n", pass ? "pass" : "FAIL");
  }
  return pass ? 0 : 1;
}

int cmd_range(const GlobalOptions& opts, const std::string& pair_path, const std::string& of) {
  const OperatorPair pair = load_pair_file(pair_path);
  const Box window = Box::cube(pair.dim(), opts.window);
  const PointCloud inputs = uniform_inputs(pair.dim(), opts.samples, window, opts.seed);
  const PointCloud cloud =
      of == "T" ? sample_T_range(pair, inputs) : sample_displacement_range(pair, inputs);

  if (opts.format == "csv") {
    write_cloud_csv(std::cout, cloud);
  } else {
    nlohmann::json doc = base_report("range", opts);
    doc["of"] = of;
    doc["pair"] = pair_path;
    doc["samples"] = cloud.size();
    doc["window_half_width"] = opts.window;
    doc["points"] = nlohmann::json::array();
    for (int j = 0; j < cloud.size(); ++j) doc["points"].push_back(vector_to_json(cloud.pts.col(j)));
    emit(doc);
  }
  if (!opts.out_dir.empty()) {
    std::filesystem::create_directories(opts.out_dir);
    const std::string path =
        (std::filesystem::path(opts.out_dir) / ("range_" + of + ".csv")).string();
    write_cloud_csv(path, cloud);
  }
  return 0;
}

int cmd_displacement(const GlobalOptions& opts, const std::string& pair_path, int max_iter) {
  const OperatorPair pair = load_pair_file(pair_path);
  const DisplacementEstimate est =
      estimate_displacement_vector(pair, Vector::Zero(pair.dim()), max_iter);
  nlohmann::json doc = base_report("displacement", opts);
  doc["pair"] = pair_path;
  doc["v"] = vector_to_json(est.v);
  doc["method"] = est.method;
  doc["iterations"] = est.iterations;
  doc["agreement_gap"] = est.agreement_gap;
  doc["v_tail"] = vector_to_json(est.v_tail);
  doc["v_cesaro"] = vector_to_json(est.v_cesaro);
  emit(doc);
  return 0;
}

int cmd_perturbed(const GlobalOptions& opts, const std::string& pair_path, const std::string& w_text,
                  int max_iter) {
  const OperatorPair pair = load_pair_file(pair_path);
  Vector w;
  try {
    w = parse_vector_string(w_text);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("--w: ") + e.what());
  }
  if (w.size() != pair.dim())
    throw std::invalid_argument("--w: expected " + std::to_string(pair.dim()) + " components");

  const PerturbedVerdict verdict =
      solve_perturbed(pair, w, Vector::Zero(pair.dim()), opts.tol, max_iter);
  nlohmann::json doc = base_report("perturbed", opts);
  doc["pair"] = pair_path;
  doc["w"] = vector_to_json(w);
  doc["status"] = to_string(verdict.status);
  if (verdict.witness) doc["witness"] = vector_to_json(*verdict.witness);
  else doc["witness"] = nullptr;
  doc["residual"] = verdict.residual;
  doc["limiting_displacement_norm"] = verdict.limiting_displacement_norm;
  emit(doc);
  return verdict.status == SolveStatus::kInconclusive ? 1 : 0;
}

int cmd_compare(const GlobalOptions& opts, const std::string& path_a, const std::string& path_b,
                double tol) {
  const PointCloud a = read_cloud_csv(path_a);
  const PointCloud b = read_cloud_csv(path_b);
  const Box window = Box::cube(a.dim(), opts.window);
  const NearEqualityReport near = near_equal(a, b, tol, 128, window);
  nlohmann::json doc = base_report("compare", opts);
  doc["cloud_a"] = path_a;
  doc["cloud_b"] = path_b;
  doc["verdict"] = near.verdict;
  doc["max_support_gap"] = near.max_support_gap;
  doc["worst_direction"] = vector_to_json(near.worst_direction);
  doc["affine_dims"] = {near.affine_dims.first, near.affine_dims.second};
  doc["tolerance"] = near.tolerance_used;
  doc["window_half_width"] = opts.window;
  emit(doc);
  return near.verdict ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Douglas-Rachford splitting toolkit: range formulas, displacement vectors,\n"
               "perturbed problems, and the experiment registry."};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions opts;
  app.add_option("--seed", opts.seed, "random seed (default 0)");
  app.add_option("--out", opts.out_dir, "output directory for CSV/JSON artifacts");
  app.add_option("--format", opts.format, "stdout payload format: json|csv (default json)")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--no-timestamp", opts.no_timestamp,
               "omit timestamps and zero runtimes for reproducible output");
  app.add_option("--window", opts.window, "sampling window half-width (default 10)");
  app.add_option("--samples", opts.samples, "sample count for range sampling (default 1024)");
  app.add_option("--tol", opts.tol, "solver tolerance (default 1e-6)");

  auto* exp = app.add_subcommand("experiment", "run one experiment or the whole registry");
  std::string exp_name;
  bool exp_all = false;
  std::vector<std::string> exp_params;
  exp->add_option("name", exp_name, "experiment name");
  exp->add_flag("--all", exp_all, "run every registered experiment");
  exp->add_option("--param", exp_params, "experiment parameter as key=value (repeatable)");

  auto* rng = app.add_subcommand("range", "sample ran(Id-T) or ran T for a pair spec");
  std::string range_pair, range_of = "displacement";
  rng->add_option("--pair", range_pair, "pair spec JSON file")->required();
  rng->add_option("--of", range_of, "which range to sample: displacement|T")
      ->check(CLI::IsMember({"displacement", "T"}));

  auto* disp = app.add_subcommand("displacement", "estimate the infimal displacement vector");
  std::string disp_pair;
  int disp_max_iter = 10000;
  disp->add_option("--pair", disp_pair, "pair spec JSON file")->required();
  disp->add_option("--max-iter", disp_max_iter, "iteration budget (default 10000)");

  auto* pert = app.add_subcommand("perturbed", "classify solvability of the perturbed problem");
  std::string pert_pair, pert_w;
  int pert_max_iter = 100000;
  pert->add_option("--pair", pert_pair, "pair spec JSON file")->required();
  pert->add_option("--w", pert_w, "perturbation vector, e.g. \"-3,2\"")->required();
  pert->add_option("--max-iter", pert_max_iter, "iteration budget (default 100000)");

  auto* cmp = app.add_subcommand("compare", "near-equality verdict for two point-cloud CSVs");
  std::string cmp_a, cmp_b;
  double cmp_tol = 0.05;
  cmp->add_option("--cloud-a", cmp_a, "first cloud CSV")->required();
  cmp->add_option("--cloud-b", cmp_b, "second cloud CSV")->required();
  cmp->add_option("--tol", cmp_tol, "support-gap tolerance (default 0.05)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (const char* env_out = std::getenv("SPLITRANGE_OUT"); env_out && *env_out)
    opts.out_dir = env_out;

  try {
    if (exp->parsed()) {
      if (exp_all == !exp_name.empty())
        throw std::invalid_argument("experiment: give exactly one of <name> or --all");
      return cmd_experiment(opts, exp_name, exp_all, exp_params);
    }
    if (rng->parsed()) return cmd_range(opts, range_pair, range_of);
    if (disp->parsed()) return cmd_displacement(opts, disp_pair, disp_max_iter);
    if (pert->parsed()) return cmd_perturbed(opts, pert_pair, pert_w, pert_max_iter);
    if (cmp->parsed()) return cmd_compare(opts, cmp_a, cmp_b, cmp_tol);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
