#include "spoamp/evolution.hpp"

#include <cmath>
#include <string>

#include "spoamp/errors.hpp"

namespace spoamp {

Eigen::VectorXcd unit_phases(const Eigen::ArrayXd& values, double k) {
  Eigen::VectorXcd phases(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i)
    phases[i] = std::polar(1.0, k * values[i]);
  return phases;
}

void apply_phase_oracle(QuantumState& state, const ObjectiveTable& table, double k) {
  if (!std::isfinite(k)) throw DomainError("oracle parameter k must be finite");
  if (state.n_states != table.n_states())
    throw DimensionError("state has N=" + std::to_string(state.n_states) +
                         " but table has N=" + std::to_string(table.n_states()));
  if (state.rep == Representation::Dense) {
    for (Eigen::Index x = 0; x < state.n_states; ++x)
      state.amps[x] *= std::polar(1.0, k * table.values[x]);
  } else {
    if (!compatible(state, table))
      throw DimensionError("compressed state grouping does not match the table");
    for (Eigen::Index e = 0; e < state.entry_count(); ++e)
      state.amps[e] *= std::polar(1.0, k * state.values[e]);
  }
}

std::complex<double> mean_amplitude(const QuantumState& state) {
  if (state.entry_count() == 0) throw DimensionError("empty state");
  const Complex* amps = state.amps.data();
  Complex sum;
  if (state.rep == Representation::Dense) {
    sum = block_pairwise_sum(amps, state.amps.size());
  } else {
    const std::int64_t* mults = state.mults.data();
    sum = block_pairwise_sum<Complex>(
        state.amps.size(), [amps, mults](Eigen::Index i) {
          return static_cast<double>(mults[i]) * amps[i];
        });
  }
  return sum / static_cast<double>(state.n_states);
}

void apply_diffusion(QuantumState& state) {
  const Complex mean = mean_amplitude(state);
  const Complex twice_mean = 2.0 * mean;
  for (Eigen::Index i = 0; i < state.amps.size(); ++i)
    state.amps[i] = twice_mean - state.amps[i];
}

bool is_amplifying(const QuantumState& state, Eigen::Index solution_index) {
  const Complex best = amplitude_at(state, solution_index);
  const Complex mean = mean_amplitude(state);
  return std::abs(2.0 * mean - best) > std::abs(best);
}

}  // namespace spoamp
