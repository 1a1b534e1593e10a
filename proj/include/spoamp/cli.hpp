#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spoamp/objective.hpp"
#include "spoamp/schedule.hpp"

namespace spoamp {

/// Evaluates "<decimal>", "pi/<decimal>", or "<decimal>*pi/<decimal>".
double parse_k_expression(const std::string& text);

/// Evaluates "2^<exponent>" or a plain positive integer.
Eigen::Index parse_size_expression(const std::string& text);

struct ExperimentConfig {
  enum class Command { Run, ScanK, Greedy, Alternate, StudySize, Snapshot, Report };
  enum class Objective {
    Normal, SkewNormal, Exponential, Linear, Quadratic, Cubic, Exp10, File
  };
  enum class Rep { Auto, Dense, Compressed };
  enum class SnapshotStage { Prepared, Oracle, Diffused };

  Command command = Command::Run;

  Objective objective = Objective::Normal;
  double mu = 0.0;
  double sigma = 10.0;
  double alpha = 0.0;
  double lambda = 1.0;
  std::uint64_t seed = 0;
  std::string file;  // objective == File
  std::optional<std::int64_t> scale_divisor;
  Eigen::Index n = 0;  // ignored for file objectives

  // Oracle parameters; which ones apply depends on the command.
  std::optional<double> k;
  std::optional<double> k_min, k_max;
  int grid_points = 16;
  std::vector<double> k_grid;            // greedy candidates; empty = default
  std::vector<Eigen::Index> sizes;       // study-size
  int iterations = 0;                    // 0 = default budget ceil(3 sqrt(N))
  SnapshotStage stage = SnapshotStage::Oracle;

  Rep rep = Rep::Auto;
  int threads = 0;

  std::string out;             // trace / snapshot / curve path
  std::string descriptor_out;  // run descriptor JSON ("" = derive from out)
  std::string report_out;      // report command
  std::string eq_out;          // report command
};

/// Runs the configured experiment and writes its output files. Throws
/// ConfigError for invalid configuration (exit 2 at the CLI), other
/// exceptions for runtime failures (exit 1). Returns the process exit code.
int execute(const ExperimentConfig& config);

/// Output directory applied to relative paths; honors SPOAMP_OUT_DIR.
std::string resolve_output_path(const std::string& path);

}  // namespace spoamp
