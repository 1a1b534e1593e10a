#pragma once

#include <complex>

#include "spoamp/objective.hpp"
#include "spoamp/state.hpp"

namespace spoamp {

/// Unit phase factors e^{i k f} for an array of objective values.
Eigen::VectorXcd unit_phases(const Eigen::ArrayXd& values, double k);

/// Multiplies each amplitude by e^{i k f(x)}. Norm-preserving; compressed
/// states apply the phase once per unique value.
void apply_phase_oracle(QuantumState& state, const ObjectiveTable& table, double k);

/// Reflection about the uniform superposition: alpha -> 2*mean - alpha.
void apply_diffusion(QuantumState& state);

/// Arithmetic mean of all N amplitudes (fixed-block pairwise reduction).
std::complex<double> mean_amplitude(const QuantumState& state);

/// True iff the next diffusion strictly increases the magnitude of the
/// amplitude at solution_index: |2*mean - alpha| > |alpha|.
bool is_amplifying(const QuantumState& state, Eigen::Index solution_index);

}  // namespace spoamp
