#include "spoamp/analysis.hpp"

#include <cmath>

#include "spoamp/errors.hpp"

namespace spoamp {

QueryAnalysis expected_queries(const RunTrace& trace) {
  if (trace.records.size() < 2)
    throw DomainError("trace has no iterations to analyze");

  QueryAnalysis out;
  out.e_c = static_cast<double>(trace.n_states);
  out.p_c = 1.0 / static_cast<double>(trace.n_states);
  out.e_q_curve.reserve(trace.records.size() - 1);
  for (std::size_t i = 1; i < trace.records.size(); ++i) {
    const IterationRecord& rec = trace.records[i];
    if (rec.p_solution <= 0.0) continue;
    const double t = static_cast<double>(rec.iteration);
    out.e_q_curve.push_back({rec.iteration, t / rec.p_solution, rec.p_solution});
  }
  if (out.e_q_curve.empty())
    throw DomainError("expected queries undefined: p_solution is zero everywhere");

  std::size_t best = 0;
  for (std::size_t i = 1; i < out.e_q_curve.size(); ++i)
    if (out.e_q_curve[i].e_q < out.e_q_curve[best].e_q) best = i;
  out.t_star = out.e_q_curve[best].t;
  out.e_q_star = out.e_q_curve[best].e_q;
  out.p_at_t_star = out.e_q_curve[best].p;
  return out;
}

double success_probability(const SuccessModel& model) {
  if (!(model.p_single >= 0.0 && model.p_single <= 1.0))
    throw DomainError("per-trial probability must be in [0, 1]");
  if (model.trials < 1) throw DomainError("trial count must be positive");
  return 1.0 - std::pow(1.0 - model.p_single, static_cast<double>(model.trials));
}

AdvantageReport advantage_report(const RunTrace& trace) {
  AdvantageReport report;
  report.n_states = trace.n_states;
  report.queries = expected_queries(trace);
  report.speedup = report.queries.e_c / report.queries.e_q_star;
  report.tuning_queries = trace.tuning_queries;

  const double p = report.queries.p_at_t_star;
  if (p >= 1.0) {
    report.trials_for_99 = 1;
  } else {
    // ceil(log(0.01) / log(1-p)), nudged for the boundary case
    std::int64_t trials = static_cast<std::int64_t>(
        std::ceil(std::log(0.01) / std::log1p(-p)));
    if (trials < 1) trials = 1;
    while (success_probability({p, trials}) < 0.99) ++trials;
    report.trials_for_99 = trials;
  }
  return report;
}

std::vector<std::size_t> local_maxima(const RunTrace& trace) {
  std::vector<std::size_t> peaks;
  for (std::size_t i = 1; i + 1 < trace.records.size(); ++i) {
    const double p = trace.records[i].p_solution;
    if (p > trace.records[i - 1].p_solution && p > trace.records[i + 1].p_solution)
      peaks.push_back(i);
  }
  return peaks;
}

}  // namespace spoamp
