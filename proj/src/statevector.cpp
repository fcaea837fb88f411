#include "dpo/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "dpo/errors.hpp"
#include "dpo/rng.hpp"

namespace dpo {

namespace {

using cdouble = std::complex<double>;

void apply_1q(std::vector<cdouble>& amps, int q, cdouble m00, cdouble m01,
              cdouble m10, cdouble m11) {
  const std::uint64_t mask = 1ULL << q;
  const std::uint64_t n = amps.size();
  for (std::uint64_t i = 0; i < n; ++i) {
    if (i & mask) continue;
    const cdouble a0 = amps[i];
    const cdouble a1 = amps[i | mask];
    amps[i] = m00 * a0 + m01 * a1;
    amps[i | mask] = m10 * a0 + m11 * a1;
  }
}

}  // namespace

StateVector StateVector::zero_state(int n_qubits, int cap) {
  if (n_qubits > cap) {
    throw QubitCapExceeded("statevector: " + std::to_string(n_qubits) +
                           " qubits exceeds the cap of " + std::to_string(cap));
  }
  StateVector state;
  state.n_qubits = n_qubits;
  state.amplitudes.assign(1ULL << n_qubits, 0.0);
  state.amplitudes[0] = 1.0;
  return state;
}

void StateVector::apply(const Gate& gate, const std::vector<double>& params) {
  double theta = gate.fixed_angle;
  if (gate.param_slot) theta = params.at(*gate.param_slot);
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);

  switch (gate.kind) {
    case GateKind::RY:
      apply_1q(amplitudes, gate.qubits[0], c, -s, s, c);
      break;
    case GateKind::RX:
      apply_1q(amplitudes, gate.qubits[0], c, cdouble(0, -s), cdouble(0, -s), c);
      break;
    case GateKind::RZ:
      apply_1q(amplitudes, gate.qubits[0], cdouble(c, -s), 0.0, 0.0,
               cdouble(c, s));
      break;
    case GateKind::RZZ: {
      // exp(-i theta/2 Z x Z): phase e^{-i theta/2} when bits agree
      const std::uint64_t m0 = 1ULL << gate.qubits[0];
      const std::uint64_t m1 = 1ULL << gate.qubits[1];
      const cdouble same(c, -s), diff(c, s);
      for (std::uint64_t i = 0; i < amplitudes.size(); ++i) {
        const bool b0 = i & m0;
        const bool b1 = i & m1;
        amplitudes[i] *= (b0 == b1) ? same : diff;
      }
      break;
    }
    case GateKind::CNOT: {
      const std::uint64_t mc = 1ULL << gate.qubits[0];
      const std::uint64_t mt = 1ULL << gate.qubits[1];
      for (std::uint64_t i = 0; i < amplitudes.size(); ++i) {
        if ((i & mc) && !(i & mt)) std::swap(amplitudes[i], amplitudes[i | mt]);
      }
      break;
    }
    case GateKind::SWAP: {
      const std::uint64_t m0 = 1ULL << gate.qubits[0];
      const std::uint64_t m1 = 1ULL << gate.qubits[1];
      for (std::uint64_t i = 0; i < amplitudes.size(); ++i) {
        if ((i & m0) && !(i & m1)) {
          std::swap(amplitudes[i], amplitudes[(i & ~m0) | m1]);
        }
      }
      break;
    }
  }
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const auto& a : amplitudes) acc += std::norm(a);
  return std::sqrt(acc);
}

StateVector simulate(const Circuit& circuit, const std::vector<double>& params,
                     int cap) {
  if (static_cast<int>(params.size()) != circuit.n_params) {
    throw ParamCountMismatch("simulate: expected " +
                             std::to_string(circuit.n_params) + " parameters, got " +
                             std::to_string(params.size()));
  }
  StateVector state = StateVector::zero_state(circuit.n_qubits, cap);
  for (const auto& gate : circuit.gates) state.apply(gate, params);
  return state;
}

double expectation_diagonal(const StateVector& state, const IsingHamiltonian& h) {
  if (h.n_qubits != state.n_qubits) {
    throw DimensionMismatch("expectation_diagonal: qubit count mismatch");
  }
  // flatten the sparse terms once; per-amplitude evaluation stays O(#terms)
  std::vector<std::pair<std::uint64_t, double>> z_terms;
  z_terms.reserve(h.h.size());
  for (const auto& [q, c] : h.h) z_terms.emplace_back(1ULL << q, c);
  std::vector<std::pair<std::uint64_t, double>> zz_terms;
  zz_terms.reserve(h.j.size());
  for (const auto& [pq, c] : h.j) {
    zz_terms.emplace_back((1ULL << pq.first) | (1ULL << pq.second), c);
  }

  double acc = 0.0;
  for (std::uint64_t i = 0; i < state.amplitudes.size(); ++i) {
    const double p = std::norm(state.amplitudes[i]);
    if (p == 0.0) continue;
    double cost = h.identity_coeff;
    for (const auto& [mask, c] : z_terms) {
      cost += (i & mask) ? -c : c;
    }
    for (const auto& [mask, c] : zz_terms) {
      cost += (std::popcount(i & mask) & 1) ? -c : c;
    }
    acc += p * cost;
  }
  return acc;
}

SampleResult sample(const StateVector& state, int shots, std::uint64_t seed) {
  if (shots < 1) throw Error("sample: shots must be >= 1");
  std::vector<double> cdf(state.amplitudes.size());
  double acc = 0.0;
  for (std::uint64_t i = 0; i < state.amplitudes.size(); ++i) {
    acc += std::norm(state.amplitudes[i]);
    cdf[i] = acc;
  }
  cdf.back() = std::max(cdf.back(), 1.0);

  SampleResult result;
  result.shots = shots;
  result.seed = seed;
  Rng rng(seed);
  std::map<std::uint64_t, int> hits;
  for (int s = 0; s < shots; ++s) {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::uint64_t idx =
        it == cdf.end() ? cdf.size() - 1 : static_cast<std::uint64_t>(it - cdf.begin());
    ++hits[idx];
  }
  for (const auto& [idx, n] : hits) {
    result.counts[index_to_bitstring(idx, state.n_qubits)] = n;
  }
  return result;
}

std::map<std::string, double> exact_distribution(const StateVector& state) {
  std::map<std::string, double> dist;
  for (std::uint64_t i = 0; i < state.amplitudes.size(); ++i) {
    const double p = std::norm(state.amplitudes[i]);
    if (p >= 1e-15) dist[index_to_bitstring(i, state.n_qubits)] = p;
  }
  return dist;
}

}  // namespace dpo
