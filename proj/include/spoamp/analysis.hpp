#pragma once

#include <cstdint>
#include <vector>

#include "spoamp/schedule.hpp"

namespace spoamp {

struct EqPoint {
  int t = 0;          // iteration count, one oracle+diffusion pair per query
  double e_q = 0.0;   // expected queries: t / p_solution(t)
  double p = 0.0;     // p_solution(t)
};

// Query accounting over a trace: one iteration is one query, diffusion is
// free, and sampling after t iterations costs t/P(t) queries in expectation.
// Classical baselines: P_C = 1/N per draw, E_C = N exhaustive.
struct QueryAnalysis {
  std::vector<EqPoint> e_q_curve;  // entries with p_solution(t) > 0, t >= 1
  int t_star = 0;                  // argmin of e_q (ties: smallest t)
  double e_q_star = 0.0;
  double p_at_t_star = 0.0;
  double e_c = 0.0;  // = n_states
  double p_c = 0.0;  // = 1 / n_states
};

QueryAnalysis expected_queries(const RunTrace& trace);

struct SuccessModel {
  double p_single = 0.0;
  std::int64_t trials = 1;
};

/// Probability that at least one of `trials` independent samples hits the
/// solution: 1 - (1 - p_single)^trials.
double success_probability(const SuccessModel& model);

struct AdvantageReport {
  Eigen::Index n_states = 0;
  QueryAnalysis queries;
  double speedup = 0.0;          // E_C / E_Q(t_star)
  std::int64_t trials_for_99 = 0;  // samples at t_star for P_success >= 0.99
  std::int64_t tuning_queries = 0; // greedy probes, reported separately
};

AdvantageReport advantage_report(const RunTrace& trace);

/// Indices of strict local maxima of p_solution over the trace records
/// (interior points exceeding both neighbors).
std::vector<std::size_t> local_maxima(const RunTrace& trace);

}  // namespace spoamp
