#include "spoamp/state.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "spoamp/errors.hpp"

namespace spoamp {

namespace {

// Groups the canonical (sorted) table values into runs of equal value.
void grouped_values(const ObjectiveTable& table, Eigen::ArrayXd& values,
                    CountVector& mults) {
  const Eigen::Index n = table.n_states();
  std::vector<double> vals;
  std::vector<std::int64_t> counts;
  Eigen::Index i = 0;
  while (i < n) {
    const double v = table.values[i];
    Eigen::Index j = i + 1;
    while (j < n && table.values[j] == v) ++j;
    vals.push_back(v);
    counts.push_back(j - i);
    i = j;
  }
  values = Eigen::Map<const Eigen::ArrayXd>(vals.data(),
                                            static_cast<Eigen::Index>(vals.size()));
  mults = Eigen::Map<const CountVector>(counts.data(),
                                        static_cast<Eigen::Index>(counts.size()));
}

}  // namespace

QuantumState uniform_state(const ObjectiveTable& table, Representation rep) {
  const Eigen::Index n = table.n_states();
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  QuantumState state;
  state.n_states = n;
  state.rep = rep;
  if (rep == Representation::Dense) {
    state.amps = Eigen::VectorXcd::Constant(n, Complex{amp, 0.0});
  } else {
    grouped_values(table, state.values, state.mults);
    state.amps =
        Eigen::VectorXcd::Constant(state.values.size(), Complex{amp, 0.0});
  }
  return state;
}

QuantumState expand(const QuantumState& state) {
  if (state.rep != Representation::Compressed)
    throw DomainError("expand: state is not compressed");
  std::int64_t total = 0;
  for (Eigen::Index e = 0; e < state.mults.size(); ++e) {
    if (state.mults[e] < 1)
      throw DomainError("expand: multiplicities must be positive");
    total += state.mults[e];
  }
  if (total != state.n_states)
    throw DomainError("expand: multiplicities sum to " + std::to_string(total) +
                      ", expected " + std::to_string(state.n_states));

  QuantumState dense;
  dense.n_states = state.n_states;
  dense.rep = Representation::Dense;
  dense.amps.resize(state.n_states);
  Eigen::Index x = 0;
  for (Eigen::Index e = 0; e < state.entry_count(); ++e) {
    dense.amps.segment(x, state.mults[e]).setConstant(state.amps[e]);
    x += state.mults[e];
  }
  return dense;
}

QuantumState compress(const QuantumState& state, const ObjectiveTable& table) {
  if (state.rep != Representation::Dense)
    throw DomainError("compress: state is not dense");
  if (state.n_states != table.n_states())
    throw DimensionError("compress: state and table sizes differ");

  QuantumState out;
  out.n_states = state.n_states;
  out.rep = Representation::Compressed;
  grouped_values(table, out.values, out.mults);
  out.amps.resize(out.values.size());
  Eigen::Index x = 0;
  for (Eigen::Index e = 0; e < out.entry_count(); ++e) {
    const Complex amp = state.amps[x];
    for (Eigen::Index i = 1; i < out.mults[e]; ++i) {
      if (state.amps[x + i] != amp)
        throw DomainError(
            "compress: amplitudes differ within an equal-valued group");
    }
    out.amps[e] = amp;
    x += out.mults[e];
  }
  return out;
}

double norm_squared(const QuantumState& state) {
  if (state.entry_count() == 0) throw DimensionError("empty state");
  const Complex* amps = state.amps.data();
  if (state.rep == Representation::Dense) {
    return block_pairwise_sum<double>(
        state.amps.size(), [amps](Eigen::Index i) { return std::norm(amps[i]); });
  }
  const std::int64_t* mults = state.mults.data();
  return block_pairwise_sum<double>(
      state.amps.size(), [amps, mults](Eigen::Index i) {
        return static_cast<double>(mults[i]) * std::norm(amps[i]);
      });
}

namespace {

double set_probability(const QuantumState& state, Eigen::Index begin,
                       Eigen::Index end) {
  // [begin, end) in basis-index space; canonical tables keep extremal sets
  // contiguous, so compressed states cover them with whole entries.
  if (state.rep == Representation::Dense) {
    double p = 0.0;
    for (Eigen::Index x = begin; x < end; ++x) p += std::norm(state.amps[x]);
    return p;
  }
  double p = 0.0;
  Eigen::Index x = 0;
  for (Eigen::Index e = 0; e < state.entry_count() && x < end; ++e) {
    const Eigen::Index lo = std::max(begin, x);
    const Eigen::Index hi = std::min(end, x + static_cast<Eigen::Index>(state.mults[e]));
    if (hi > lo)
      p += static_cast<double>(hi - lo) * std::norm(state.amps[e]);
    x += state.mults[e];
  }
  return p;
}

}  // namespace

double solution_probability(const QuantumState& state, const ObjectiveTable& table) {
  if (state.n_states != table.n_states())
    throw DimensionError("state and table sizes differ");
  return set_probability(state, table.solution_begin, table.n_states());
}

double worst_probability(const QuantumState& state, const ObjectiveTable& table) {
  if (state.n_states != table.n_states())
    throw DimensionError("state and table sizes differ");
  return set_probability(state, 0, table.worst_end);
}

Complex amplitude_at(const QuantumState& state, Eigen::Index basis_index) {
  if (basis_index < 0 || basis_index >= state.n_states)
    throw DimensionError("basis index " + std::to_string(basis_index) +
                         " out of range for N=" + std::to_string(state.n_states));
  if (state.rep == Representation::Dense) return state.amps[basis_index];
  Eigen::Index x = 0;
  for (Eigen::Index e = 0; e < state.entry_count(); ++e) {
    x += state.mults[e];
    if (basis_index < x) return state.amps[e];
  }
  throw DimensionError("compressed state does not cover index " +
                       std::to_string(basis_index));
}

bool compatible(const QuantumState& state, const ObjectiveTable& table) {
  if (state.n_states != table.n_states()) return false;
  if (state.rep == Representation::Dense) return true;
  Eigen::ArrayXd values;
  CountVector mults;
  grouped_values(table, values, mults);
  if (values.size() != state.values.size()) return false;
  return (values == state.values).all() && (mults.array() == state.mults.array()).all();
}

}  // namespace spoamp
