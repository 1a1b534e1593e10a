#include "spoamp/cli.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spoamp/analysis.hpp"
#include "spoamp/errors.hpp"
#include "spoamp/evolution.hpp"
#include "spoamp/io.hpp"
#include "spoamp/version.hpp"

namespace spoamp {

namespace {

double parse_strict_decimal(const std::string& text) {
  if (text.empty()) throw ConfigError("empty numeric expression");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v))
    throw ConfigError("malformed decimal '" + text + "'");
  return v;
}

}  // namespace

double parse_k_expression(const std::string& text) {
  const auto pi_pos = text.find("pi/");
  if (pi_pos == std::string::npos) return parse_strict_decimal(text);
  const std::string divisor_text = text.substr(pi_pos + 3);
  const double divisor = parse_strict_decimal(divisor_text);
  if (divisor == 0.0) throw ConfigError("division by zero in '" + text + "'");
  double factor = 1.0;
  if (pi_pos != 0) {
    if (text[pi_pos - 1] != '*')
      throw ConfigError("malformed k expression '" + text +
                        "' (expected <decimal>, pi/<decimal>, or "
                        "<decimal>*pi/<decimal>)");
    factor = parse_strict_decimal(text.substr(0, pi_pos - 1));
  }
  return factor * std::numbers::pi / divisor;
}

Eigen::Index parse_size_expression(const std::string& text) {
  std::string digits = text;
  int exponent_base = 0;
  if (text.rfind("2^", 0) == 0) {
    exponent_base = 2;
    digits = text.substr(2);
  }
  if (digits.empty() ||
      digits.find_first_not_of("0123456789") != std::string::npos)
    throw ConfigError("malformed size '" + text + "' (expected integer or 2^k)");
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(digits.c_str(), &end, 10);
  if (errno == ERANGE || v <= 0) throw ConfigError("size out of range: '" + text + "'");
  if (exponent_base == 2) {
    if (v >= 62) throw ConfigError("size exponent too large: '" + text + "'");
    return Eigen::Index{1} << v;
  }
  return static_cast<Eigen::Index>(v);
}

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr Eigen::Index kDenseDefaultLimit = Eigen::Index{1} << 22;

bool is_injective(ExperimentConfig::Objective o) {
  using O = ExperimentConfig::Objective;
  return o == O::Linear || o == O::Quadratic || o == O::Cubic || o == O::Exp10;
}

bool is_distribution(ExperimentConfig::Objective o) {
  using O = ExperimentConfig::Objective;
  return o == O::Normal || o == O::SkewNormal || o == O::Exponential;
}

const char* objective_name(ExperimentConfig::Objective o) {
  switch (o) {
    case ExperimentConfig::Objective::Normal: return "normal";
    case ExperimentConfig::Objective::SkewNormal: return "skew-normal";
    case ExperimentConfig::Objective::Exponential: return "exponential";
    case ExperimentConfig::Objective::Linear: return "linear";
    case ExperimentConfig::Objective::Quadratic: return "quadratic";
    case ExperimentConfig::Objective::Cubic: return "cubic";
    case ExperimentConfig::Objective::Exp10: return "exp10";
    case ExperimentConfig::Objective::File: return "file";
  }
  return "?";
}

const char* command_name(ExperimentConfig::Command c) {
  switch (c) {
    case ExperimentConfig::Command::Run: return "run";
    case ExperimentConfig::Command::ScanK: return "scan-k";
    case ExperimentConfig::Command::Greedy: return "greedy";
    case ExperimentConfig::Command::Alternate: return "alternate";
    case ExperimentConfig::Command::StudySize: return "study-size";
    case ExperimentConfig::Command::Snapshot: return "snapshot";
    case ExperimentConfig::Command::Report: return "report";
  }
  return "?";
}

DistributionSpec distribution_spec(const ExperimentConfig& config) {
  DistributionSpec spec;
  spec.mu = config.mu;
  spec.sigma = config.sigma;
  spec.alpha = config.alpha;
  spec.lambda = config.lambda;
  spec.seed = config.seed;
  switch (config.objective) {
    case ExperimentConfig::Objective::Normal:
      spec.kind = DistributionSpec::Kind::Normal;
      break;
    case ExperimentConfig::Objective::SkewNormal:
      spec.kind = DistributionSpec::Kind::SkewNormal;
      break;
    case ExperimentConfig::Objective::Exponential:
      spec.kind = DistributionSpec::Kind::Exponential;
      break;
    default:
      throw ConfigError("not a distribution objective");
  }
  return spec;
}

InjectiveSpec injective_spec(const ExperimentConfig& config, Eigen::Index n) {
  InjectiveSpec spec;
  spec.n_states = n;
  spec.scale_divisor = config.scale_divisor;
  switch (config.objective) {
    case ExperimentConfig::Objective::Linear:
      spec.kind = InjectiveSpec::Kind::Linear;
      break;
    case ExperimentConfig::Objective::Quadratic:
      spec.kind = InjectiveSpec::Kind::Quadratic;
      break;
    case ExperimentConfig::Objective::Cubic:
      spec.kind = InjectiveSpec::Kind::Cubic;
      break;
    case ExperimentConfig::Objective::Exp10:
      spec.kind = InjectiveSpec::Kind::Exp10;
      break;
    default:
      throw ConfigError("not an injective objective");
  }
  return spec;
}

void validate_objective(const ExperimentConfig& config) {
  if (config.objective == ExperimentConfig::Objective::File) {
    if (config.file.empty())
      throw ConfigError("--file is required for --objective file");
    if (!fs::exists(config.file))
      throw ConfigError("--file: no such file '" + config.file + "'");
    return;
  }
  if (!config.file.empty())
    throw ConfigError("--file only applies to --objective file");
  if (config.n < 2) throw ConfigError("--n must be at least 2");
  if (is_distribution(config.objective)) {
    if (config.objective != ExperimentConfig::Objective::Exponential) {
      if (!(config.sigma > 0.0) || !std::isfinite(config.sigma))
        throw ConfigError("--sigma must be > 0");
      if (!std::isfinite(config.mu)) throw ConfigError("--mu must be finite");
      if (!std::isfinite(config.alpha)) throw ConfigError("--alpha must be finite");
    } else if (!(config.lambda > 0.0) || !std::isfinite(config.lambda)) {
      throw ConfigError("--lambda must be > 0");
    }
  }
  if (config.scale_divisor && !is_injective(config.objective))
    throw ConfigError("--scale-divisor only applies to injective objectives");
  if (config.scale_divisor && *config.scale_divisor < 1)
    throw ConfigError("--scale-divisor must be a positive integer");
}

ObjectiveTable build_table(const ExperimentConfig& config) {
  validate_objective(config);
  if (config.objective == ExperimentConfig::Objective::File)
    return load_table(config.file);
  if (is_distribution(config.objective))
    return sample_distribution(distribution_spec(config), config.n);
  return make_injective(injective_spec(config, config.n));
}

Representation resolve_rep(const ExperimentConfig& config, Eigen::Index n) {
  switch (config.rep) {
    case ExperimentConfig::Rep::Dense: return Representation::Dense;
    case ExperimentConfig::Rep::Compressed: return Representation::Compressed;
    case ExperimentConfig::Rep::Auto:
      return n <= kDenseDefaultLimit ? Representation::Dense
                                     : Representation::Compressed;
  }
  return Representation::Dense;
}

int resolve_iterations(const ExperimentConfig& config, Eigen::Index n) {
  if (config.iterations < 0) throw ConfigError("--iters must be positive");
  return config.iterations == 0 ? default_iteration_budget(n) : config.iterations;
}

double require_k(const ExperimentConfig& config) {
  if (!config.k) throw ConfigError("--k is required for this command");
  if (!std::isfinite(*config.k)) throw ConfigError("--k must be finite");
  return *config.k;
}

json config_json(const ExperimentConfig& config, const ObjectiveTable& table,
                 Representation rep, int iterations) {
  json doc;
  doc["command"] = command_name(config.command);
  doc["objective"] = objective_name(config.objective);
  if (config.objective == ExperimentConfig::Objective::File) {
    doc["file"] = config.file;
  } else {
    doc["n"] = table.n_states();
    if (is_distribution(config.objective)) {
      doc["seed"] = config.seed;
      if (config.objective == ExperimentConfig::Objective::Exponential) {
        doc["lambda"] = config.lambda;
      } else {
        doc["mu"] = config.mu;
        doc["sigma"] = config.sigma;
        if (config.objective == ExperimentConfig::Objective::SkewNormal)
          doc["alpha"] = config.alpha;
      }
    }
    if (config.scale_divisor) doc["scale_divisor"] = *config.scale_divisor;
  }
  doc["table"] = table.descriptor;
  if (config.k) doc["k"] = *config.k;
  doc["iterations"] = iterations;
  doc["representation"] =
      rep == Representation::Dense ? "dense" : "compressed";
  if (config.threads > 0) doc["threads"] = config.threads;
  return doc;
}

std::vector<std::string> comment_lines(const json& doc) {
  return {"config: " + doc.dump()};
}

std::string default_out(const ExperimentConfig& config) {
  switch (config.command) {
    case ExperimentConfig::Command::ScanK: return "scan.csv";
    case ExperimentConfig::Command::StudySize: return "study.csv";
    case ExperimentConfig::Command::Snapshot: return "snapshot.csv";
    default: return "trace.csv";
  }
}

fs::path descriptor_path(const ExperimentConfig& config, const fs::path& out) {
  if (!config.descriptor_out.empty())
    return resolve_output_path(config.descriptor_out);
  fs::path p = out;
  p.replace_extension(".json");
  return p;
}

void print_summary(const ExperimentConfig& config, const RunTrace& trace) {
  const IterationRecord& peak = trace.peak();
  std::ostringstream line;
  line << command_name(config.command) << ": n=" << trace.n_states
       << " iters=" << trace.records.size() - 1
       << " peak_p=" << peak.p_solution << " peak_iter=" << peak.iteration;
  try {
    const AdvantageReport report = advantage_report(trace);
    line << " t_star=" << report.queries.t_star
         << " e_q_star=" << report.queries.e_q_star
         << " speedup=" << report.speedup;
  } catch (const DomainError&) {
    line << " t_star=n/a";
  }
  if (trace.tuning_queries > 0) line << " tuning_queries=" << trace.tuning_queries;
  std::cout << line.str() << "\n";
}

// Default scan bracket around pi / (f_max - f_mean): the solution phase is
// then roughly opposite the bulk's mean phase, which is where amplification
// sets in for single-peaked value distributions.
std::pair<double, double> auto_scan_bracket(const ObjectiveTable& table) {
  const double spread = table.max_value() - table.values.mean();
  const double center = std::numbers::pi / spread;
  return {0.35 * center, 2.6 * center};
}

int execute_run(const ExperimentConfig& config) {
  const ObjectiveTable table = build_table(config);
  const Representation rep = resolve_rep(config, table.n_states());
  const int iterations = resolve_iterations(config, table.n_states());
  const double k = require_k(config);

  RunOptions opts;
  opts.rep = rep;
  RunTrace trace;
  if (config.command == ExperimentConfig::Command::Alternate) {
    if (iterations < 2) throw ConfigError("--iters must be at least 2 for alternate");
    trace = alternating_k(table, k, iterations, opts);
  } else {
    trace = run_fixed_k(table, k, iterations, opts);
  }

  const json doc = config_json(config, table, rep, iterations);
  const fs::path out =
      resolve_output_path(config.out.empty() ? default_out(config) : config.out);
  write_trace(out, trace, comment_lines(doc));
  write_run_descriptor(descriptor_path(config, out), trace, doc.dump());
  print_summary(config, trace);
  return 0;
}

int execute_scan(const ExperimentConfig& config) {
  const ObjectiveTable table = build_table(config);
  const Representation rep = resolve_rep(config, table.n_states());
  const int iterations = resolve_iterations(config, table.n_states());
  if (config.k_min.has_value() != config.k_max.has_value())
    throw ConfigError("--k-min and --k-max must be given together");
  double k_min, k_max;
  if (config.k_min) {
    k_min = *config.k_min;
    k_max = *config.k_max;
    if (!(k_min < k_max)) throw ConfigError("--k-min must be below --k-max");
  } else {
    std::tie(k_min, k_max) = auto_scan_bracket(table);
  }
  if (config.grid_points < 2) throw ConfigError("--grid must be at least 2");

  ScanOptions opts;
  opts.run.rep = rep;
  opts.threads = config.threads;
  const ScanResult scan =
      scan_k(table, k_min, k_max, config.grid_points, iterations, opts);

  json doc = config_json(config, table, rep, iterations);
  doc["k_min"] = k_min;
  doc["k_max"] = k_max;
  doc["grid_points"] = config.grid_points;
  doc["k_best"] = scan.k_best;

  const fs::path out =
      resolve_output_path(config.out.empty() ? default_out(config) : config.out);
  write_scan_curve(out, scan.curve, comment_lines(doc));
  fs::path trace_out = out;
  trace_out.replace_filename(trace_out.stem().string() + "_best_trace.csv");
  write_trace(trace_out, scan.trace_best, comment_lines(doc));
  write_run_descriptor(descriptor_path(config, out), scan.trace_best, doc.dump());
  std::cout << "scan-k: n=" << table.n_states() << " k_best=" << scan.k_best
            << " peak_p=" << scan.trace_best.peak().p_solution
            << " peak_iter=" << scan.trace_best.peak().iteration << "\n";
  return 0;
}

int execute_greedy(const ExperimentConfig& config) {
  const ObjectiveTable table = build_table(config);
  const Representation rep = resolve_rep(config, table.n_states());
  const int iterations = resolve_iterations(config, table.n_states());
  std::vector<double> grid =
      config.k_grid.empty() ? default_greedy_grid(table) : config.k_grid;

  RunOptions opts;
  opts.rep = rep;
  const RunTrace trace = greedy_dynamic_k(table, iterations, grid, opts);

  json doc = config_json(config, table, rep, iterations);
  doc["k_grid_size"] = grid.size();
  const fs::path out =
      resolve_output_path(config.out.empty() ? default_out(config) : config.out);
  write_trace(out, trace, comment_lines(doc));
  write_run_descriptor(descriptor_path(config, out), trace, doc.dump());
  print_summary(config, trace);
  return 0;
}

int execute_study(const ExperimentConfig& config) {
  if (!is_injective(config.objective))
    throw ConfigError("--objective must be an injective family for study-size");
  if (config.sizes.empty()) throw ConfigError("--sizes is required for study-size");

  // Per-size k: an explicit --k applies everywhere, otherwise each size gets
  // a small scan around the auto bracket.
  KRule k_rule;
  if (config.k) {
    const double k = *config.k;
    k_rule = [k](Eigen::Index) { return k; };
  } else {
    const ExperimentConfig base = config;
    k_rule = [base](Eigen::Index n) {
      ExperimentConfig one = base;
      one.n = n;
      const ObjectiveTable table = build_table(one);
      const auto [k_min, k_max] = auto_scan_bracket(table);
      ScanOptions opts;
      opts.run.early_stop = true;
      opts.threads = base.threads;
      opts.rerun_best = false;
      const int budget = base.iterations == 0 ? default_iteration_budget(n)
                                              : base.iterations;
      return scan_k(table, k_min, k_max, base.grid_points, budget, opts).k_best;
    };
  }
  const int fixed_iters = config.iterations;
  IterationRule iteration_rule = [fixed_iters](Eigen::Index n) {
    return fixed_iters == 0 ? default_iteration_budget(n) : fixed_iters;
  };

  StudyOptions opts;
  opts.threads = config.threads;
  ExperimentConfig probe = config;
  probe.n = config.sizes.front();
  const std::vector<SizeScalingPoint> points = size_scaling_study(
      injective_spec(probe, probe.n), config.sizes, k_rule, iteration_rule, opts);

  json doc;
  doc["command"] = command_name(config.command);
  doc["objective"] = objective_name(config.objective);
  doc["sizes"] = config.sizes;
  if (config.scale_divisor) doc["scale_divisor"] = *config.scale_divisor;
  if (config.k) doc["k"] = *config.k;

  const fs::path out =
      resolve_output_path(config.out.empty() ? default_out(config) : config.out);
  write_size_study(out, points, comment_lines(doc));
  double last_ratio_peak = 0.0;
  for (double r : points.back().ratio) last_ratio_peak = std::max(last_ratio_peak, r);
  std::cout << "study-size: sizes=" << points.size()
            << " largest_n=" << points.back().n_states
            << " peak_ratio=" << last_ratio_peak << "\n";
  return 0;
}

int execute_snapshot(const ExperimentConfig& config) {
  const ObjectiveTable table = build_table(config);
  const Representation rep = resolve_rep(config, table.n_states());
  if (config.iterations < 0) throw ConfigError("--iters must be non-negative");
  const int iterations = config.iterations;

  QuantumState state = uniform_state(table, rep);
  double k = 0.0;
  if (iterations > 0 && config.stage != ExperimentConfig::SnapshotStage::Prepared) {
    k = require_k(config);
    for (int j = 1; j <= iterations; ++j) {
      apply_phase_oracle(state, table, k);
      if (j < iterations ||
          config.stage == ExperimentConfig::SnapshotStage::Diffused)
        apply_diffusion(state);
    }
  }

  json doc = config_json(config, table, rep, iterations);
  doc["stage"] = config.stage == ExperimentConfig::SnapshotStage::Prepared
                     ? "prepared"
                     : (config.stage == ExperimentConfig::SnapshotStage::Oracle
                            ? "oracle"
                            : "diffused");
  const fs::path out =
      resolve_output_path(config.out.empty() ? default_out(config) : config.out);
  write_snapshot(out, state, table, comment_lines(doc));
  std::cout << "snapshot: n=" << table.n_states() << " iters=" << iterations
            << " stage=" << doc["stage"].get<std::string>() << " -> "
            << out.string() << "\n";
  return 0;
}

int execute_report(const ExperimentConfig& config) {
  const ObjectiveTable table = build_table(config);
  const Representation rep = resolve_rep(config, table.n_states());
  const int iterations = resolve_iterations(config, table.n_states());
  const double k = require_k(config);

  RunOptions opts;
  opts.rep = rep;
  opts.keep_final_state = false;
  const RunTrace trace = run_fixed_k(table, k, iterations, opts);
  const AdvantageReport report = advantage_report(trace);

  const json doc = config_json(config, table, rep, iterations);
  const fs::path report_out = resolve_output_path(
      config.report_out.empty() ? "report.json" : config.report_out);
  write_report(report_out, report, doc.dump());
  const fs::path eq_out =
      resolve_output_path(config.eq_out.empty() ? "eq_curve.csv" : config.eq_out);
  write_eq_curve(eq_out, report.queries, comment_lines(doc));
  if (!config.out.empty())
    write_trace(resolve_output_path(config.out), trace, comment_lines(doc));
  print_summary(config, trace);
  return 0;
}

}  // namespace

std::string resolve_output_path(const std::string& path) {
  fs::path p(path);
  if (p.is_absolute()) return path;
  const char* dir = std::getenv("SPOAMP_OUT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  return (fs::path(dir) / p).string();
}

int execute(const ExperimentConfig& config) {
  switch (config.command) {
    case ExperimentConfig::Command::Run:
    case ExperimentConfig::Command::Alternate:
      return execute_run(config);
    case ExperimentConfig::Command::ScanK:
      return execute_scan(config);
    case ExperimentConfig::Command::Greedy:
      return execute_greedy(config);
    case ExperimentConfig::Command::StudySize:
      return execute_study(config);
    case ExperimentConfig::Command::Snapshot:
      return execute_snapshot(config);
    case ExperimentConfig::Command::Report:
      return execute_report(config);
  }
  throw ConfigError("unknown command");
}

}  // namespace spoamp
