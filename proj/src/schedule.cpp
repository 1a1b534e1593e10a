#include "spoamp/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <unordered_map>

#include "spoamp/errors.hpp"
#include "spoamp/evolution.hpp"
#include "spoamp/parallel.hpp"
#include "spoamp/reduction.hpp"

namespace spoamp {

namespace {

// Representation-agnostic view of the evolving amplitude entries. Dense
// states have one unit-weight entry per basis index; compressed states carry
// the multiplicity of each unique objective value. Canonical ordering keeps
// the worst set at the front and the solution set at the back.
struct EntryView {
  Eigen::Index count = 0;
  const double* values = nullptr;
  const std::int64_t* weights = nullptr;  // nullptr: all weights are 1
  Eigen::Index sol_begin = 0;
  Eigen::Index worst_end = 0;
  Eigen::Index n_states = 0;
};

EntryView make_view(const QuantumState& state, const ObjectiveTable& table) {
  EntryView view;
  view.count = state.entry_count();
  view.n_states = state.n_states;
  if (state.rep == Representation::Dense) {
    view.values = table.values.data();
    view.sol_begin = table.solution_begin;
    view.worst_end = table.worst_end;
  } else {
    view.values = state.values.data();
    view.weights = state.mults.data();
    view.sol_begin = view.count - 1;  // last entry holds the solution run
    view.worst_end = 1;
  }
  return view;
}

double entry_weight(const EntryView& view, Eigen::Index e) {
  return view.weights ? static_cast<double>(view.weights[e]) : 1.0;
}

struct UniformStats {
  double p_sol = 0.0;
  double p_worst = 0.0;
  double norm_sq = 0.0;
  Complex mean{0.0, 0.0};
};

UniformStats stats_of(const EntryView& view, const Complex* amps) {
  UniformStats out;
  const std::int64_t* w = view.weights;
  out.norm_sq = block_pairwise_sum<double>(view.count, [&](Eigen::Index e) {
    return (w ? static_cast<double>(w[e]) : 1.0) * std::norm(amps[e]);
  });
  const Complex sum = block_pairwise_sum<Complex>(view.count, [&](Eigen::Index e) {
    return w ? static_cast<double>(w[e]) * amps[e] : amps[e];
  });
  out.mean = sum / static_cast<double>(view.n_states);
  for (Eigen::Index e = view.sol_begin; e < view.count; ++e)
    out.p_sol += entry_weight(view, e) * std::norm(amps[e]);
  for (Eigen::Index e = 0; e < view.worst_end; ++e)
    out.p_worst += entry_weight(view, e) * std::norm(amps[e]);
  return out;
}

bool amplifying_flag(Complex mean, Complex best) {
  return std::abs(2.0 * mean - best) > std::abs(best);
}

// First oracle application: amps <- e^{i k f} * amps, accumulating the
// block-pairwise mean of the result.
Complex oracle_pass(const EntryView& view, Complex* amps, const Complex* phases,
                    double k) {
  BlockAccumulator<Complex> mean_blocks;
  for (Eigen::Index lo = 0; lo < view.count; lo += kReductionBlock) {
    const Eigen::Index hi = std::min(view.count, lo + kReductionBlock);
    Complex partial{0.0, 0.0};
    for (Eigen::Index e = lo; e < hi; ++e) {
      const Complex b =
          (phases ? phases[e] : std::polar(1.0, k * view.values[e])) * amps[e];
      amps[e] = b;
      partial += view.weights ? static_cast<double>(view.weights[e]) * b : b;
    }
    mean_blocks.push_block(partial);
  }
  return mean_blocks.total() / static_cast<double>(view.n_states);
}

struct PassResult {
  double p_sol = 0.0;
  double p_worst = 0.0;
  double norm_sq = 0.0;
  Complex next_mean{0.0, 0.0};
};

// Fused iteration step: reflects every amplitude about the mean and, when a
// next oracle follows, multiplies its phase in the same sweep while
// accumulating the block sums the next mean needs. Arithmetic per element is
// identical to apply_diffusion followed by apply_phase_oracle, so traces
// match the unit operations bit for bit.
PassResult iteration_pass(const EntryView& view, Complex* amps, Complex mean,
                          bool has_next, const Complex* next_phases,
                          double next_k) {
  const Complex twice_mean = 2.0 * mean;
  PassResult out;
  BlockAccumulator<double> norm_blocks;
  BlockAccumulator<Complex> mean_blocks;
  for (Eigen::Index lo = 0; lo < view.count; lo += kReductionBlock) {
    const Eigen::Index hi = std::min(view.count, lo + kReductionBlock);
    double norm_partial = 0.0;
    Complex mean_partial{0.0, 0.0};
    for (Eigen::Index e = lo; e < hi; ++e) {
      const Complex t = twice_mean - amps[e];
      const double nt = std::norm(t);
      const double weight = view.weights ? static_cast<double>(view.weights[e]) : 1.0;
      norm_partial += view.weights ? weight * nt : nt;
      if (e >= view.sol_begin) out.p_sol += view.weights ? weight * nt : nt;
      if (e < view.worst_end) out.p_worst += view.weights ? weight * nt : nt;
      if (has_next) {
        const Complex b =
            (next_phases ? next_phases[e] : std::polar(1.0, next_k * view.values[e])) *
            t;
        amps[e] = b;
        mean_partial += view.weights ? weight * b : b;
      } else {
        amps[e] = t;
      }
    }
    norm_blocks.push_block(norm_partial);
    if (has_next) mean_blocks.push_block(mean_partial);
  }
  out.norm_sq = norm_blocks.total();
  if (has_next)
    out.next_mean = mean_blocks.total() / static_cast<double>(view.n_states);
  return out;
}

// Unit phase vectors are precomputed per distinct k while the footprint stays
// modest; schedules with many distinct k values fall back to computing
// phases inside the pass (identical std::polar arithmetic either way).
class PhaseCache {
 public:
  PhaseCache(const EntryView& view, const std::vector<double>& ks) {
    std::vector<double> distinct(ks);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    const Eigen::Index footprint =
        static_cast<Eigen::Index>(distinct.size()) * view.count;
    if (footprint <= (Eigen::Index{1} << 25)) {
      Eigen::Map<const Eigen::ArrayXd> values(view.values, view.count);
      for (double k : distinct) cache_.emplace(k, unit_phases(values, k));
    }
  }

  const Complex* lookup(double k) const {
    const auto it = cache_.find(k);
    return it == cache_.end() ? nullptr : it->second.data();
  }

 private:
  std::unordered_map<double, Eigen::VectorXcd> cache_;
};

void validate_schedule(const std::vector<double>& ks) {
  if (ks.empty()) throw DomainError("schedule must contain at least one entry");
  for (double k : ks)
    if (!std::isfinite(k)) throw DomainError("schedule entries must be finite");
}

RunTrace run_impl(const ObjectiveTable& table, std::vector<double> ks,
                  const RunOptions& opts) {
  validate_schedule(ks);
  const int total = static_cast<int>(ks.size());

  QuantumState state = uniform_state(table, opts.rep);
  const EntryView view = make_view(state, table);
  Complex* amps = state.amps.data();
  const Eigen::Index best_entry = view.count - 1;

  RunTrace trace;
  trace.table_descriptor = table.descriptor;
  trace.n_states = table.n_states();
  trace.records.reserve(static_cast<std::size_t>(total) + 1);

  {
    const UniformStats s = stats_of(view, amps);
    IterationRecord r0;
    r0.iteration = 0;
    r0.p_solution = s.p_sol;
    r0.p_worst = s.p_worst;
    r0.mean = s.mean;
    r0.norm_error = std::abs(s.norm_sq - 1.0);
    trace.records.push_back(r0);
  }

  PhaseCache phases(view, ks);
  Complex mean = oracle_pass(view, amps, phases.lookup(ks[0]), ks[0]);
  trace.records[0].amplifying = amplifying_flag(mean, amps[best_entry]);

  const bool early_stop = opts.early_stop;
  double peak_p = trace.records[0].p_solution;
  int peak_iter = 0;
  int executed = total;

  for (int j = 1; j <= total; ++j) {
    const bool has_next = j < total;
    const double next_k = has_next ? ks[static_cast<std::size_t>(j)] : 0.0;
    const PassResult r = iteration_pass(view, amps, mean, has_next,
                                        has_next ? phases.lookup(next_k) : nullptr,
                                        next_k);
    IterationRecord rec;
    rec.iteration = j;
    rec.k_used = ks[static_cast<std::size_t>(j - 1)];
    rec.p_solution = r.p_sol;
    rec.p_worst = r.p_worst;
    rec.mean = mean;
    rec.norm_error = std::abs(r.norm_sq - 1.0);
    if (has_next) rec.amplifying = amplifying_flag(r.next_mean, amps[best_entry]);
    trace.records.push_back(rec);
    mean = r.next_mean;

    if (r.p_sol > peak_p) {
      peak_p = r.p_sol;
      peak_iter = j;
    }
    if (early_stop && has_next && j >= opts.early_stop_min_iterations &&
        j > opts.early_stop_patience * peak_iter &&
        r.p_sol < opts.early_stop_drop * peak_p) {
      // Truncated traces must equal a run of their truncated schedule, whose
      // last record has no upcoming oracle to evaluate.
      trace.records.back().amplifying = false;
      executed = j;
      break;
    }
  }

  ks.resize(static_cast<std::size_t>(executed));
  trace.schedule.entries = std::move(ks);
  if (opts.keep_final_state && executed == total) {
    trace.final_state = std::move(state);
  }
  return trace;
}

}  // namespace

const IterationRecord& RunTrace::peak() const {
  if (records.empty()) throw DimensionError("trace has no records");
  std::size_t best = 0;
  for (std::size_t i = 1; i < records.size(); ++i)
    if (records[i].p_solution > records[best].p_solution) best = i;
  return records[best];
}

RunTrace run_schedule(const ObjectiveTable& table, const OracleSchedule& schedule,
                      const RunOptions& opts) {
  return run_impl(table, schedule.entries, opts);
}

RunTrace run_fixed_k(const ObjectiveTable& table, double k, int iterations,
                     const RunOptions& opts) {
  if (iterations < 1) throw DomainError("iteration count must be positive");
  if (!std::isfinite(k)) throw DomainError("oracle parameter k must be finite");
  return run_impl(table, std::vector<double>(static_cast<std::size_t>(iterations), k),
                  opts);
}

ScanResult scan_k(const ObjectiveTable& table, double k_min, double k_max,
                  int grid_points, int max_iterations, const ScanOptions& opts) {
  if (!(std::isfinite(k_min) && std::isfinite(k_max)) || !(k_min < k_max))
    throw DomainError("scan requires finite k_min < k_max");
  if (grid_points < 2) throw DomainError("scan grid needs at least 2 points");
  if (max_iterations < 1) throw DomainError("iteration count must be positive");

  std::vector<double> ks(static_cast<std::size_t>(grid_points));
  const double step = (k_max - k_min) / static_cast<double>(grid_points - 1);
  for (int i = 0; i < grid_points; ++i)
    ks[static_cast<std::size_t>(i)] = k_min + step * i;
  ks.back() = k_max;

  std::vector<ScanPoint> curve(static_cast<std::size_t>(grid_points));
  RunOptions run_opts = opts.run;
  run_opts.keep_final_state = false;
  parallel_for(
      grid_points,
      [&](Eigen::Index i) {
        const RunTrace trace =
            run_fixed_k(table, ks[static_cast<std::size_t>(i)], max_iterations, run_opts);
        const IterationRecord& peak = trace.peak();
        curve[static_cast<std::size_t>(i)] = {ks[static_cast<std::size_t>(i)],
                                              peak.p_solution, peak.iteration};
      },
      opts.threads);

  std::size_t best = 0;
  for (std::size_t i = 1; i < curve.size(); ++i)
    if (curve[i].peak_p > curve[best].peak_p) best = i;

  ScanResult result;
  result.k_best = curve[best].k;
  result.curve = std::move(curve);
  RunOptions best_opts = opts.run;
  best_opts.early_stop = false;
  best_opts.keep_final_state = true;
  result.trace_best = opts.rerun_best
                          ? run_fixed_k(table, result.k_best, max_iterations, best_opts)
                          : RunTrace{};
  return result;
}

RunTrace greedy_dynamic_k(const ObjectiveTable& table, int iterations,
                          const std::vector<double>& k_grid,
                          const RunOptions& opts) {
  if (iterations < 1) throw DomainError("iteration count must be positive");
  if (k_grid.empty()) throw DomainError("greedy candidate grid must be nonempty");
  std::vector<double> grid(k_grid);
  for (double k : grid)
    if (!std::isfinite(k)) throw DomainError("greedy candidates must be finite");
  std::sort(grid.begin(), grid.end());

  QuantumState state = uniform_state(table, opts.rep);
  const EntryView view = make_view(state, table);
  Complex* amps = state.amps.data();
  const Eigen::Index best_entry = view.count - 1;

  // Candidate phase vectors; the probe loop touches every candidate each
  // iteration, so precompute unless the footprint is unreasonable.
  std::vector<Eigen::VectorXcd> grid_phases;
  const Eigen::Index footprint =
      static_cast<Eigen::Index>(grid.size()) * view.count;
  if (footprint <= (Eigen::Index{1} << 24)) {
    Eigen::Map<const Eigen::ArrayXd> values(view.values, view.count);
    grid_phases.reserve(grid.size());
    for (double k : grid) grid_phases.push_back(unit_phases(values, k));
  }
  const auto candidate_phases = [&](std::size_t c) -> const Complex* {
    return grid_phases.empty() ? nullptr : grid_phases[c].data();
  };

  RunTrace trace;
  trace.table_descriptor = table.descriptor;
  trace.n_states = table.n_states();
  trace.records.reserve(static_cast<std::size_t>(iterations) + 1);
  trace.schedule.entries.reserve(static_cast<std::size_t>(iterations));
  {
    const UniformStats s = stats_of(view, amps);
    IterationRecord r0;
    r0.iteration = 0;
    r0.p_solution = s.p_sol;
    r0.p_worst = s.p_worst;
    r0.mean = s.mean;
    r0.norm_error = std::abs(s.norm_sq - 1.0);
    trace.records.push_back(r0);
  }

  for (int t = 1; t <= iterations; ++t) {
    // Probe every candidate: the post-diffusion solution probability is
    // computable from the candidate mean and the solution entries alone,
    // which is arithmetic-identical to evolving a copy of the state.
    double best_p = -1.0;
    std::size_t best_c = 0;
    for (std::size_t c = 0; c < grid.size(); ++c) {
      const double k = grid[c];
      const Complex* w = candidate_phases(c);
      const Complex sum = block_pairwise_sum<Complex>(view.count, [&](Eigen::Index e) {
        const Complex b =
            (w ? w[e] : std::polar(1.0, k * view.values[e])) * amps[e];
        return view.weights ? static_cast<double>(view.weights[e]) * b : b;
      });
      const Complex m = sum / static_cast<double>(view.n_states);
      const Complex twice_mean = 2.0 * m;
      double p = 0.0;
      for (Eigen::Index e = view.sol_begin; e < view.count; ++e) {
        const Complex b =
            (w ? w[e] : std::polar(1.0, k * view.values[e])) * amps[e];
        p += entry_weight(view, e) * std::norm(twice_mean - b);
      }
      if (p > best_p) {
        best_p = p;
        best_c = c;
      }
    }
    trace.tuning_queries += static_cast<std::int64_t>(grid.size());

    const double k_chosen = grid[best_c];
    const Complex mean = oracle_pass(view, amps, candidate_phases(best_c), k_chosen);
    trace.records[static_cast<std::size_t>(t) - 1].amplifying =
        amplifying_flag(mean, amps[best_entry]);

    const PassResult r = iteration_pass(view, amps, mean, false, nullptr, 0.0);
    IterationRecord rec;
    rec.iteration = t;
    rec.k_used = k_chosen;
    rec.p_solution = r.p_sol;
    rec.p_worst = r.p_worst;
    rec.mean = mean;
    rec.norm_error = std::abs(r.norm_sq - 1.0);
    trace.records.push_back(rec);
    trace.schedule.entries.push_back(k_chosen);
  }

  if (opts.keep_final_state) trace.final_state = std::move(state);
  return trace;
}

std::vector<double> default_greedy_grid(const ObjectiveTable& table) {
  const double f_max = table.max_value();
  const double k_hi = std::numbers::pi / f_max;
  const double k_lo = k_hi / 10.0;
  std::vector<double> grid;
  grid.reserve(65);
  grid.push_back(0.0);
  for (int i = 0; i < 64; ++i)
    grid.push_back(k_lo * std::pow(10.0, static_cast<double>(i) / 63.0));
  return grid;
}

RunTrace alternating_k(const ObjectiveTable& table, double k, int iterations,
                       const RunOptions& opts) {
  if (iterations < 2)
    throw DomainError("alternating schedule needs at least 2 iterations");
  if (!std::isfinite(k)) throw DomainError("oracle parameter k must be finite");
  std::vector<double> ks(static_cast<std::size_t>(iterations));
  for (int j = 0; j < iterations; ++j)
    ks[static_cast<std::size_t>(j)] = (j % 2 == 0) ? k : -k;
  return run_impl(table, std::move(ks), opts);
}

std::vector<SizeScalingPoint> size_scaling_study(const InjectiveSpec& family,
                                                 const std::vector<Eigen::Index>& sizes,
                                                 const KRule& k_rule,
                                                 const IterationRule& iteration_rule,
                                                 const StudyOptions& opts) {
  if (sizes.empty()) throw DomainError("size study needs at least one size");
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i] <= sizes[i - 1])
      throw DomainError("size study sizes must be strictly ascending");

  std::vector<SizeScalingPoint> points(sizes.size());
  parallel_for(
      static_cast<Eigen::Index>(sizes.size()),
      [&](Eigen::Index i) {
        InjectiveSpec spec = family;
        spec.n_states = sizes[static_cast<std::size_t>(i)];
        const ObjectiveTable table = make_injective(spec);
        const double k = k_rule(spec.n_states);
        const int iters = iteration_rule(spec.n_states);
        RunOptions run_opts;
        run_opts.keep_final_state = false;
        const RunTrace trace = run_fixed_k(table, k, iters, run_opts);

        SizeScalingPoint& point = points[static_cast<std::size_t>(i)];
        point.n_states = spec.n_states;
        point.k_used = k;
        point.ratio.reserve(trace.records.size());
        const double p_initial = trace.records[0].p_solution;
        for (const auto& rec : trace.records)
          point.ratio.push_back(rec.p_solution / p_initial);
      },
      opts.threads);
  return points;
}

int default_iteration_budget(Eigen::Index n_states) {
  return static_cast<int>(std::ceil(3.0 * std::sqrt(static_cast<double>(n_states))));
}

}  // namespace spoamp
