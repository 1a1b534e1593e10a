#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "spoamp/objective.hpp"
#include "spoamp/state.hpp"

namespace spoamp {

/// Per-iteration oracle parameters; entry j is the k applied on iteration j+1.
struct OracleSchedule {
  std::vector<double> entries;
};

struct IterationRecord {
  int iteration = 0;
  double k_used = 0.0;       // 0 for record 0
  double p_solution = 0.0;   // sum over the solution set
  double p_worst = 0.0;      // sum over the worst set
  Complex mean{0.0, 0.0};    // mean amplitude entering this iteration's diffusion
  double norm_error = 0.0;   // | ||state||^2 - 1 | after the iteration
  // True when the upcoming diffusion (evaluated after the next iteration's
  // oracle) strictly amplifies the solution amplitude; the last record,
  // having no next iteration, is always false.
  bool amplifying = false;
};

struct RunTrace {
  std::vector<IterationRecord> records;  // records[0] is the uniform state
  std::string table_descriptor;
  OracleSchedule schedule;
  Eigen::Index n_states = 0;
  std::int64_t tuning_queries = 0;  // greedy k probes, accounted separately
  QuantumState final_state;         // empty when the run dropped it

  const IterationRecord& peak() const;  // record with max p_solution (ties: earliest)
};

struct RunOptions {
  Representation rep = Representation::Dense;
  bool keep_final_state = true;
  // Optional cutoff: abandon the run once the peak is clearly behind
  // (iteration > patience * peak iteration and p below drop * peak).
  // Off by default; scan_k's contract is the peak within the full budget.
  bool early_stop = false;
  double early_stop_patience = 2.5;
  double early_stop_drop = 0.5;
  int early_stop_min_iterations = 64;
};

/// Algorithm core: uniform superposition, then per schedule entry one
/// oracle+diffusion pair, recording probabilities, mean, and norm drift.
RunTrace run_schedule(const ObjectiveTable& table, const OracleSchedule& schedule,
                      const RunOptions& opts = {});

/// run_schedule with a constant-k schedule.
RunTrace run_fixed_k(const ObjectiveTable& table, double k, int iterations,
                     const RunOptions& opts = {});

struct ScanPoint {
  double k = 0.0;
  double peak_p = 0.0;
  int peak_iteration = 0;
};

struct ScanResult {
  double k_best = 0.0;
  RunTrace trace_best;
  std::vector<ScanPoint> curve;
};

struct ScanOptions {
  RunOptions run;           // applied to the grid runs (early_stop allowed here)
  int threads = 0;          // 0 = hardware concurrency
  bool rerun_best = true;   // rerun the winner without early stop for the trace
};

/// Evaluates peak p_solution for each k on a uniform grid over
/// [k_min, k_max]; returns the best k (ties: smallest), its full trace, and
/// the sensitivity curve.
ScanResult scan_k(const ObjectiveTable& table, double k_min, double k_max,
                  int grid_points, int max_iterations, const ScanOptions& opts = {});

/// Per-iteration greedy choice: the candidate k whose oracle+diffusion pair
/// yields the highest p_solution is applied (ties: smallest k). Probe
/// evaluations are counted in the trace's tuning_queries.
RunTrace greedy_dynamic_k(const ObjectiveTable& table, int iterations,
                          const std::vector<double>& k_grid,
                          const RunOptions& opts = {});

/// Default greedy candidate grid: 0 plus 64 log-spaced magnitudes from
/// pi/(10 f_max) to pi/f_max.
std::vector<double> default_greedy_grid(const ObjectiveTable& table);

/// Alternating rotation direction: +k on iteration 1, -k on iteration 2, ...
RunTrace alternating_k(const ObjectiveTable& table, double k, int iterations,
                       const RunOptions& opts = {});

using KRule = std::function<double(Eigen::Index)>;
using IterationRule = std::function<int(Eigen::Index)>;

struct SizeScalingPoint {
  Eigen::Index n_states = 0;
  double k_used = 0.0;
  std::vector<double> ratio;  // p_solution(t) / p_initial, ratio[0] == 1
};

struct StudyOptions {
  int threads = 0;
};

/// Fixed-k runs of one injective family across sizes, reporting the
/// amplification ratio p_solution / (1/N) per iteration for each size.
std::vector<SizeScalingPoint> size_scaling_study(const InjectiveSpec& family,
                                                 const std::vector<Eigen::Index>& sizes,
                                                 const KRule& k_rule,
                                                 const IterationRule& iteration_rule,
                                                 const StudyOptions& opts = {});

/// Default fixed-k iteration budget, ceil(3 sqrt(N)).
int default_iteration_budget(Eigen::Index n_states);

}  // namespace spoamp
