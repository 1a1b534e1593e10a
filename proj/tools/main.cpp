#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spoamp/cli.hpp"
#include "spoamp/errors.hpp"
#include "spoamp/version.hpp"

namespace {

using spoamp::ExperimentConfig;

struct RawArgs {
  std::string objective = "normal";
  std::string n_text;
  std::string k_text;
  std::string k_min_text, k_max_text;
  std::vector<std::string> k_grid_text;
  std::vector<std::string> sizes_text;
  std::string rep_text = "auto";
  std::string stage_text = "oracle";
  std::int64_t scale_divisor = 0;
};

void add_common_options(CLI::App* cmd, ExperimentConfig& config, RawArgs& raw) {
  cmd->add_option("--objective", raw.objective,
                  "normal|skew-normal|exponential|linear|quadratic|cubic|exp10|file")
      ->capture_default_str();
  cmd->add_option("--mu", config.mu, "location of the normal / skew normal");
  cmd->add_option("--sigma", config.sigma, "scale of the normal / skew normal")
      ->capture_default_str();
  cmd->add_option("--alpha", config.alpha, "skew normal shape");
  cmd->add_option("--lambda", config.lambda, "exponential rate");
  cmd->add_option("--seed", config.seed, "sampling seed")->capture_default_str();
  cmd->add_option("--file", config.file, "objective file (one value per line)");
  cmd->add_option("--scale-divisor", raw.scale_divisor,
                  "map index x to x/m for injective families");
  cmd->add_option("--n", raw.n_text, "state count (integer or 2^k)");
  cmd->add_option("--rep", raw.rep_text, "dense|compressed|auto")
      ->capture_default_str();
  cmd->add_option("--threads", config.threads,
                  "max worker threads for independent runs (0 = hardware)");
  cmd->add_option("--out", config.out, "primary output file");
  cmd->add_option("--descriptor", config.descriptor_out,
                  "run descriptor JSON (default: output stem + .json)");
}

ExperimentConfig::Objective parse_objective(const std::string& text) {
  using O = ExperimentConfig::Objective;
  if (text == "normal") return O::Normal;
  if (text == "skew-normal" || text == "skew_normal") return O::SkewNormal;
  if (text == "exponential") return O::Exponential;
  if (text == "linear") return O::Linear;
  if (text == "quadratic") return O::Quadratic;
  if (text == "cubic") return O::Cubic;
  if (text == "exp10") return O::Exp10;
  if (text == "file") return O::File;
  throw spoamp::ConfigError("--objective: unknown objective '" + text + "'");
}

ExperimentConfig::Rep parse_rep(const std::string& text) {
  using R = ExperimentConfig::Rep;
  if (text == "auto") return R::Auto;
  if (text == "dense") return R::Dense;
  if (text == "compressed") return R::Compressed;
  throw spoamp::ConfigError("--rep: expected dense, compressed, or auto");
}

ExperimentConfig::SnapshotStage parse_stage(const std::string& text) {
  using S = ExperimentConfig::SnapshotStage;
  if (text == "prepared") return S::Prepared;
  if (text == "oracle") return S::Oracle;
  if (text == "diffused") return S::Diffused;
  throw spoamp::ConfigError("--stage: expected prepared, oracle, or diffused");
}

void finalize(ExperimentConfig& config, const RawArgs& raw) {
  config.objective = parse_objective(raw.objective);
  config.rep = parse_rep(raw.rep_text);
  config.stage = parse_stage(raw.stage_text);
  if (!raw.n_text.empty()) {
    try {
      config.n = spoamp::parse_size_expression(raw.n_text);
    } catch (const spoamp::ConfigError& e) {
      throw spoamp::ConfigError(std::string("--n: ") + e.what());
    }
  }
  if (raw.scale_divisor != 0) config.scale_divisor = raw.scale_divisor;
  if (!raw.k_text.empty()) {
    try {
      config.k = spoamp::parse_k_expression(raw.k_text);
    } catch (const spoamp::ConfigError& e) {
      throw spoamp::ConfigError(std::string("--k: ") + e.what());
    }
  }
  if (!raw.k_min_text.empty()) config.k_min = spoamp::parse_k_expression(raw.k_min_text);
  if (!raw.k_max_text.empty()) config.k_max = spoamp::parse_k_expression(raw.k_max_text);
  for (const auto& text : raw.k_grid_text)
    config.k_grid.push_back(spoamp::parse_k_expression(text));
  for (const auto& text : raw.sizes_text) {
    try {
      config.sizes.push_back(spoamp::parse_size_expression(text));
    } catch (const spoamp::ConfigError& e) {
      throw spoamp::ConfigError(std::string("--sizes: ") + e.what());
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(spoamp::kToolName) +
               " - amplitude amplification with a subdivided phase oracle"};
  app.set_version_flag("--version", spoamp::kVersion);
  app.require_subcommand(1);

  ExperimentConfig config;
  RawArgs raw;

  auto* run = app.add_subcommand("run", "fixed-k amplitude amplification run");
  add_common_options(run, config, raw);
  run->add_option("--k", raw.k_text, "oracle parameter (decimal or pi/<d>)")
      ->required();
  run->add_option("--iters", config.iterations,
                  "iteration count (default: ceil(3 sqrt(N)))");

  auto* scan = app.add_subcommand("scan-k", "grid scan for the best fixed k");
  add_common_options(scan, config, raw);
  scan->add_option("--k-min", raw.k_min_text, "scan lower bound");
  scan->add_option("--k-max", raw.k_max_text, "scan upper bound");
  scan->add_option("--grid", config.grid_points, "grid points")
      ->capture_default_str();
  scan->add_option("--iters", config.iterations, "per-run iteration budget");

  auto* greedy = app.add_subcommand("greedy", "per-iteration greedy k selection");
  add_common_options(greedy, config, raw);
  greedy->add_option("--k-grid", raw.k_grid_text,
                     "candidate k values (default: log grid up to pi/f_max)");
  greedy->add_option("--iters", config.iterations, "iteration count");

  auto* alternate = app.add_subcommand("alternate", "alternating +k/-k schedule");
  add_common_options(alternate, config, raw);
  alternate->add_option("--k", raw.k_text, "oracle parameter magnitude")->required();
  alternate->add_option("--iters", config.iterations, "iteration count (>= 2)");

  auto* study = app.add_subcommand("study-size",
                                   "amplification ratio across input sizes");
  add_common_options(study, config, raw);
  study->add_option("--sizes", raw.sizes_text, "state counts (integer or 2^k)")
      ->required();
  study->add_option("--k", raw.k_text, "fixed k for every size (default: per-size scan)");
  study->add_option("--grid", config.grid_points, "per-size scan grid")
      ->capture_default_str();
  study->add_option("--iters", config.iterations, "iteration count per size");

  auto* snapshot = app.add_subcommand("snapshot", "complex-plane amplitude export");
  add_common_options(snapshot, config, raw);
  snapshot->add_option("--k", raw.k_text, "oracle parameter");
  snapshot->add_option("--iters", config.iterations, "iterations before the export");
  snapshot->add_option("--stage", raw.stage_text, "prepared|oracle|diffused")
      ->capture_default_str();

  auto* report = app.add_subcommand("report", "expected-query analysis of a run");
  add_common_options(report, config, raw);
  report->add_option("--k", raw.k_text, "oracle parameter")->required();
  report->add_option("--iters", config.iterations, "iteration count");
  report->add_option("--report-out", config.report_out, "report JSON path");
  report->add_option("--eq-out", config.eq_out, "expected-query curve path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  using Command = ExperimentConfig::Command;
  if (run->parsed()) config.command = Command::Run;
  else if (scan->parsed()) config.command = Command::ScanK;
  else if (greedy->parsed()) config.command = Command::Greedy;
  else if (alternate->parsed()) config.command = Command::Alternate;
  else if (study->parsed()) config.command = Command::StudySize;
  else if (snapshot->parsed()) config.command = Command::Snapshot;
  else if (report->parsed()) config.command = Command::Report;

  try {
    finalize(config, raw);
    return spoamp::execute(config);
  } catch (const spoamp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
