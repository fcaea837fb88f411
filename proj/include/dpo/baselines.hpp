#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpo/problem.hpp"
#include "dpo/vqe.hpp"

namespace dpo {

struct ExhaustiveResult {
  double min_cost = 0.0;
  std::string argmin;  // lowest-lexicographic tie-break
  std::optional<std::vector<double>> full_table;  // indexed by amplitude index
};

// Full enumeration with incremental Gray-code cost updates; table emission
// capped at 16 qubits, enumeration at 24.
ExhaustiveResult exhaustive_search(const IsingHamiltonian& h,
                                   bool emit_table = false);

struct SaResult {
  double min_cost = 0.0;
  std::string argmin;
};

// Single-bit-flip Metropolis over a geometric inverse-temperature schedule,
// best of `restarts` independent runs.
SaResult simulated_annealing(const IsingHamiltonian& h, int sweeps,
                             double beta_initial, double beta_final,
                             int restarts, std::uint64_t seed);

struct SaeConfig {
  double total_time = 7.0;
  int trotter_steps = 0;  // 0: 100 * total_time
  int checkpoints = 11;
  std::uint64_t seed = 0;
  int sampler_shots = 0;  // 0: size-based default
  int qubit_cap = kDefaultQubitCap;
};

struct SaeTrace {
  std::vector<double> times;
  std::vector<double> expectations;
  CostDistribution final_distribution;
  SampleResult final_samples;
};

// First-order Trotterized interpolation from the transverse-field mixer
// -sum_q X_q to the problem Hamiltonian, starting from the uniform
// superposition; expectation recorded at equally spaced checkpoints.
SaeTrace sae_run(const IsingHamiltonian& h, const SaeConfig& config);

void write_sae_trace_csv(const SaeTrace& trace, const std::string& path);

}  // namespace dpo
