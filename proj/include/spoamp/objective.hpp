#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spoamp/reduction.hpp"

namespace spoamp {

using BoolArray = Eigen::Array<bool, Eigen::Dynamic, 1>;

// Objective values in canonical form: sorted ascending, minimum exactly 0,
// so basis index x carries the x-th smallest value and the solution states
// occupy the top indices. The solution and worst sets are contiguous runs of
// equal values at the ends of the array (ties are kept as distinct states).
struct ObjectiveTable {
  Eigen::ArrayXd values;
  Eigen::Index solution_begin = 0;  // first index attaining the maximum
  Eigen::Index worst_end = 0;       // one past the last index attaining the minimum
  std::string descriptor;

  Eigen::Index n_states() const { return values.size(); }
  double max_value() const { return values[values.size() - 1]; }
  Eigen::Index solution_count() const { return values.size() - solution_begin; }
  Eigen::Index worst_count() const { return worst_end; }

  std::vector<Eigen::Index> solution_set() const;
  std::vector<Eigen::Index> worst_set() const;
};

/// Canonicalizes raw objective values into a table: validates finiteness,
/// sorts ascending, shifts the minimum to 0, and locates the extremal runs.
ObjectiveTable make_table(Eigen::ArrayXd raw_values, std::string descriptor);

/// Binary (Grover-type) objective: `marked` states at value `f_max`, the rest 0.
ObjectiveTable make_binary_table(Eigen::Index n_states, Eigen::Index marked,
                                 double f_max);

struct DistributionSpec {
  enum class Kind { Normal, SkewNormal, Exponential };
  Kind kind = Kind::Normal;
  double mu = 0.0;
  double sigma = 1.0;   // normal, skew normal
  double alpha = 0.0;   // skew normal shape
  double lambda = 1.0;  // exponential rate
  std::uint64_t seed = 0;

  std::string descriptor() const;
};

struct InjectiveSpec {
  enum class Kind { Linear, Quadratic, Cubic, Exp10 };
  Kind kind = Kind::Linear;
  Eigen::Index n_states = 0;
  // With a divisor m, index x maps to u = x/m before the kind function is
  // applied, densifying the same value curve without changing its range.
  std::optional<std::int64_t> scale_divisor;

  std::string descriptor() const;
};

/// Draws n seeded samples from the spec's density and canonicalizes them.
ObjectiveTable sample_distribution(const DistributionSpec& spec, Eigen::Index n);

/// Builds the injective families x, x^2, x^3, 2^(10x/N) (minimum shifted to 0).
ObjectiveTable make_injective(const InjectiveSpec& spec);

/// Absorbs a feasibility predicate into the objective: infeasible entries are
/// lowered by C. Requires C > max(f) - min(f) so every feasible value
/// strictly exceeds every infeasible one.
Eigen::ArrayXd absorb_constraint(const Eigen::ArrayXd& values,
                                 const BoolArray& feasible, double C);

/// Shifts values so the minimum is exactly 0.
Eigen::ArrayXd shift_nonnegative(const Eigen::ArrayXd& values);

/// Reads one decimal value per line ('#' lines are comments) and returns the
/// canonical table. Parse failures report the 1-based line number.
ObjectiveTable load_table(const std::filesystem::path& path);

/// Writes one 17-significant-digit decimal per line, preceded by '#' comment
/// lines carrying the header text.
void save_table(const std::filesystem::path& path, const ObjectiveTable& table,
                const std::vector<std::string>& header_comments = {});

}  // namespace spoamp
