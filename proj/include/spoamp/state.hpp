#pragma once

#include <Eigen/Core>

#include <complex>
#include <cstdint>

#include "spoamp/objective.hpp"
#include "spoamp/reduction.hpp"

namespace spoamp {

using CountVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

enum class Representation { Dense, Compressed };

// Complex amplitude vector over N basis states. Dense holds one amplitude
// per basis index; compressed holds one amplitude per unique objective value
// together with its multiplicity, which is lossless because the phase oracle
// and the diffusion act identically on states sharing a value. Compressed
// entries are stored in strictly increasing value order, so expansion assigns
// basis indices in non-decreasing objective order, matching the canonical
// table layout.
struct QuantumState {
  Eigen::Index n_states = 0;
  Representation rep = Representation::Dense;
  Eigen::VectorXcd amps;   // dense: size N; compressed: one per unique value
  Eigen::ArrayXd values;   // compressed only: strictly increasing
  CountVector mults;       // compressed only: sums to n_states

  Eigen::Index entry_count() const { return amps.size(); }
};

/// Uniform superposition over the table's states in the chosen representation.
QuantumState uniform_state(const ObjectiveTable& table,
                           Representation rep = Representation::Dense);

/// Expands a compressed state to its dense equivalent.
QuantumState expand(const QuantumState& state);

/// Compresses a dense state by grouping the table's equal-valued indices;
/// amplitudes within a group must be identical.
QuantumState compress(const QuantumState& state, const ObjectiveTable& table);

/// Total squared magnitude, accumulated with the fixed-block pairwise scheme.
double norm_squared(const QuantumState& state);

/// Probability of measuring the solution / worst set of the table.
double solution_probability(const QuantumState& state, const ObjectiveTable& table);
double worst_probability(const QuantumState& state, const ObjectiveTable& table);

/// Amplitude at a basis index (compressed states resolve the covering entry).
std::complex<double> amplitude_at(const QuantumState& state, Eigen::Index basis_index);

/// True when the state's compressed grouping matches the table's value runs.
bool compatible(const QuantumState& state, const ObjectiveTable& table);

}  // namespace spoamp
