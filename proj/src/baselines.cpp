#include "dpo/baselines.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>

#include "dpo/errors.hpp"
#include "dpo/rng.hpp"
#include "dpo/statevector.hpp"

namespace dpo {

namespace {

// sparse per-qubit view of the couplings for incremental flips
struct FlipModel {
  std::vector<double> h;
  std::vector<std::vector<std::pair<int, double>>> adj;

  explicit FlipModel(const IsingHamiltonian& ham)
      : h(ham.n_qubits, 0.0), adj(ham.n_qubits) {
    for (const auto& [q, c] : ham.h) h[q] = c;
    for (const auto& [pq, c] : ham.j) {
      adj[pq.first].emplace_back(pq.second, c);
      adj[pq.second].emplace_back(pq.first, c);
    }
  }

  // cost change from flipping spin q in configuration z (+1/-1)
  double delta(const std::vector<int>& z, int q) const {
    double local = h[q];
    for (const auto& [p, c] : adj[q]) local += c * z[p];
    return -2.0 * z[q] * local;
  }
};

std::string spins_to_bits(const std::vector<int>& z) {
  std::string bits(z.size(), '0');
  for (std::size_t q = 0; q < z.size(); ++q) {
    if (z[q] < 0) bits[q] = '1';
  }
  return bits;
}

}  // namespace

ExhaustiveResult exhaustive_search(const IsingHamiltonian& h, bool emit_table) {
  if (h.n_qubits > 24) {
    throw TooLarge("exhaustive_search: limited to 24 qubits");
  }
  if (emit_table && h.n_qubits > 16) {
    throw TooLarge("exhaustive_search: table emission limited to 16 qubits");
  }
  const std::uint64_t n_states = 1ULL << h.n_qubits;
  const FlipModel model(h);

  ExhaustiveResult result;
  if (emit_table) result.full_table.emplace(n_states, 0.0);

  // Gray-code walk: one spin flip per step, cost updated incrementally.
  // Candidate minima are re-evaluated exactly so the result matches naive
  // term-by-term evaluation.
  std::vector<int> z(h.n_qubits, +1);
  double cost = cost_of_bitstring(h, std::string(h.n_qubits, '0'));
  std::uint64_t gray = 0;
  result.min_cost = cost;
  result.argmin = std::string(h.n_qubits, '0');
  if (emit_table) (*result.full_table)[0] = cost;

  for (std::uint64_t k = 1; k < n_states; ++k) {
    const int q = std::countr_zero(k);
    cost += model.delta(z, q);
    z[q] = -z[q];
    gray ^= 1ULL << q;
    if (emit_table) (*result.full_table)[gray] = cost;
    if (cost <= result.min_cost + 1e-9) {
      const std::string bits = index_to_bitstring(gray, h.n_qubits);
      const double exact = cost_of_bitstring(h, bits);
      if (exact < result.min_cost ||
          (exact == result.min_cost && bits < result.argmin)) {
        result.min_cost = exact;
        result.argmin = bits;
      }
    }
  }
  return result;
}

SaResult simulated_annealing(const IsingHamiltonian& h, int sweeps,
                             double beta_initial, double beta_final,
                             int restarts, std::uint64_t seed) {
  if (sweeps < 1) throw Error("simulated_annealing: sweeps must be >= 1");
  if (restarts < 1) restarts = 1;
  const FlipModel model(h);
  const int n = h.n_qubits;

  SaResult best;
  best.min_cost = std::numeric_limits<double>::infinity();

  for (int restart = 0; restart < restarts; ++restart) {
    Rng rng(Rng::mix(seed, restart));
    std::vector<int> z(n);
    for (int q = 0; q < n; ++q) z[q] = rng.next_u64() & 1ULL ? -1 : +1;
    double cost = cost_of_bitstring(h, spins_to_bits(z));
    std::vector<int> best_z = z;
    double best_cost = cost;

    for (int sweep = 0; sweep < sweeps; ++sweep) {
      const double frac = sweeps > 1 ? static_cast<double>(sweep) / (sweeps - 1)
                                     : 1.0;
      const double beta =
          beta_initial * std::pow(beta_final / beta_initial, frac);
      for (int step = 0; step < n; ++step) {
        const int q = static_cast<int>(rng.below(n));
        const double d = model.delta(z, q);
        if (d <= 0.0 || rng.uniform() < std::exp(-beta * d)) {
          z[q] = -z[q];
          cost += d;
          if (cost < best_cost) {
            best_cost = cost;
            best_z = z;
          }
        }
      }
    }
    const std::string bits = spins_to_bits(best_z);
    const double exact = cost_of_bitstring(h, bits);
    if (exact < best.min_cost ||
        (exact == best.min_cost && bits < best.argmin)) {
      best.min_cost = exact;
      best.argmin = bits;
    }
  }
  return best;
}

SaeTrace sae_run(const IsingHamiltonian& h, const SaeConfig& config) {
  if (config.total_time <= 0.0) throw Error("sae_run: total time must be > 0");
  const int steps = config.trotter_steps > 0
                        ? config.trotter_steps
                        : static_cast<int>(std::lround(100.0 * config.total_time));
  const int checkpoints = config.checkpoints;
  if (steps < checkpoints) {
    throw Error("sae_run: trotter_steps must be >= checkpoints");
  }

  StateVector state = StateVector::zero_state(h.n_qubits, config.qubit_cap);
  const double half_pi = 1.5707963267948966192313216916398;
  for (int q = 0; q < h.n_qubits; ++q) {
    state.apply({GateKind::RY, {q}, std::nullopt, half_pi}, {});
  }

  SaeTrace trace;
  trace.times.push_back(0.0);
  trace.expectations.push_back(expectation_diagonal(state, h));

  const double dt = config.total_time / steps;
  int next_checkpoint = 1;
  std::int64_t next_step =
      std::llround(static_cast<double>(next_checkpoint) * steps /
                   (checkpoints - 1));

  for (int k = 1; k <= steps; ++k) {
    const double tau = (k - 0.5) * dt;  // midpoint schedule
    const double mix_weight = 1.0 - tau / config.total_time;
    const double problem_weight = tau / config.total_time;

    // problem phase: exp(-i dt B H_diag)
    for (const auto& [q, c] : h.h) {
      state.apply({GateKind::RZ, {q}, std::nullopt, 2.0 * problem_weight * dt * c},
                  {});
    }
    for (const auto& [pq, c] : h.j) {
      state.apply({GateKind::RZZ,
                   {pq.first, pq.second},
                   std::nullopt,
                   2.0 * problem_weight * dt * c},
                  {});
    }
    // mixer: exp(-i dt A (-sum X)) = RX(-2 A dt) per qubit
    for (int q = 0; q < h.n_qubits; ++q) {
      state.apply({GateKind::RX, {q}, std::nullopt, -2.0 * mix_weight * dt}, {});
    }

    if (k == next_step) {
      trace.times.push_back(k * dt);
      trace.expectations.push_back(expectation_diagonal(state, h));
      ++next_checkpoint;
      if (next_checkpoint < checkpoints) {
        next_step = std::llround(static_cast<double>(next_checkpoint) * steps /
                                 (checkpoints - 1));
      } else {
        next_step = -1;
      }
    }
  }

  const int shots = config.sampler_shots > 0
                        ? config.sampler_shots
                        : default_sampler_shots(h.n_qubits);
  trace.final_samples = sample(state, shots, Rng::mix(config.seed, 0x534145));
  trace.final_distribution = build_distribution(trace.final_samples, h);
  return trace;
}

void write_sae_trace_csv(const SaeTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  out << "tau,expectation\n";
  out.precision(17);
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    out << trace.times[i] << ',' << trace.expectations[i] << '\n';
  }
}

}  // namespace dpo
