#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "dpo/circuit.hpp"
#include "dpo/problem.hpp"

namespace dpo {

inline constexpr int kDefaultQubitCap = 24;

// Exact 2^n amplitude vector. Index i encodes the bitstring whose bit for
// qubit q is (i >> q) & 1.
struct StateVector {
  int n_qubits = 0;
  std::vector<std::complex<double>> amplitudes;

  static StateVector zero_state(int n_qubits, int cap = kDefaultQubitCap);

  void apply(const Gate& gate, const std::vector<double>& params);
  double norm() const;
};

struct SampleResult {
  int shots = 0;
  std::map<std::string, int> counts;
  std::uint64_t seed = 0;
};

StateVector simulate(const Circuit& circuit, const std::vector<double>& params,
                     int cap = kDefaultQubitCap);

// sum_b |amp(b)|^2 * cost(b), streaming over amplitudes.
double expectation_diagonal(const StateVector& state, const IsingHamiltonian& h);

// Multinomial draws via inverse-CDF over |amp|^2 with the seeded mt19937_64
// helper stream; deterministic for fixed (state, shots, seed).
SampleResult sample(const StateVector& state, int shots, std::uint64_t seed);

// |amp|^2 pruned below 1e-15.
std::map<std::string, double> exact_distribution(const StateVector& state);

}  // namespace dpo
