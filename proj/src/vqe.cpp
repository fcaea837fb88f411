#include "dpo/vqe.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "dpo/errors.hpp"
#include "dpo/rng.hpp"

namespace dpo {

int default_estimator_shots(int n_qubits) {
  return n_qubits <= 6 ? 2500 : 25000;
}

int default_sampler_shots(int n_qubits) {
  return n_qubits <= 6 ? 10000 : 100000;
}

double round_half_away(double x, int decimals) {
  const double scale = std::pow(10.0, decimals);
  // the small nudge keeps decimal-intent halves (e.g. 1.005, stored just
  // below the true half) rounding away from zero
  return std::copysign(std::floor(std::abs(x) * scale + 0.5 + 1e-9) / scale, x);
}

namespace {

Circuit build_ansatz_sized(const VqeRunConfig& run, const DpoConfig& config,
                           int n_qubits) {
  switch (run.ansatz) {
    case AnsatzKind::Cyclic:
      return build_cyclic(n_qubits, run.cyclic_ranges);
    case AnsatzKind::RealAmplitudes:
      return build_real_amplitudes(n_qubits, run.ra_reps);
    case AnsatzKind::Ora:
      return build_ora(config, run.ora_reps);
    case AnsatzKind::Tailored:
      return build_tailored(config);
  }
  throw Error("build_ansatz: unknown ansatz kind");
}

}  // namespace

Circuit build_ansatz(const VqeRunConfig& run, const DpoConfig& config) {
  return build_ansatz_sized(run, config, config.n_q());
}

namespace {

template <typename Entries>
CostDistribution distribution_from_entries(const Entries& entries,
                                           const IsingHamiltonian& h,
                                           const std::string& source) {
  CostDistribution dist;
  dist.source = source;
  for (const auto& [bits, weight] : entries) {
    if (static_cast<int>(bits.size()) != h.n_qubits) {
      throw LengthMismatch("build_distribution: bitstring length mismatch");
    }
    const double cost = cost_of_bitstring(h, bits);
    dist.bins[round_half_away(cost, 2)] += weight;
    dist.raw.emplace_back(cost, static_cast<double>(weight));
    dist.total += weight;
  }
  return dist;
}

struct BestState {
  double cost = std::numeric_limits<double>::infinity();
  std::string bits;

  void offer(double c, const std::string& b) {
    if (c < cost || (c == cost && (bits.empty() || b < bits))) {
      cost = c;
      bits = b;
    }
  }
};

void finalize_report(RunReport& report, const IsingHamiltonian& h,
                     const BestState& best, const DpoConfig* config,
                     const MarketModel* model) {
  report.min_cost = best.cost;
  report.best_bitstring = best.bits;
  report.offset = offset(h);
  report.pct_below_offset = pct_below_offset(report.distribution, report.offset);
  if (config != nullptr && config->n_q() == h.n_qubits) {
    Trajectory traj = decode_bitstring(best.bits, *config);
    if (model != nullptr) {
      try {
        report.sharpe = sharpe_ratio(traj, *model);
      } catch (const ZeroRisk&) {
        report.sharpe.reset();
      }
    }
    report.best_trajectory = std::move(traj);
  }
}

}  // namespace

CostDistribution build_distribution(const SampleResult& samples,
                                    const IsingHamiltonian& h) {
  return distribution_from_entries(samples.counts, h, "sampled");
}

CostDistribution build_distribution(const std::map<std::string, double>& exact,
                                    const IsingHamiltonian& h) {
  return distribution_from_entries(exact, h, "exact-weighted");
}

double pct_below_offset(const CostDistribution& dist, double offset) {
  if (dist.total <= 0.0) return 0.0;
  double below = 0.0;
  for (const auto& [cost, weight] : dist.raw) {
    if (cost < offset) below += weight;
  }
  return 100.0 * below / dist.total;
}

RunReport run_vqe(const IsingHamiltonian& h, const DpoConfig& config,
                  const MarketModel& model, const VqeRunConfig& run,
                  const Circuit* ansatz_override) {
  const auto t0 = std::chrono::steady_clock::now();

  // cyclic and RA families size off the Hamiltonian so non-DPO instances work
  Circuit ansatz = ansatz_override != nullptr
                       ? *ansatz_override
                       : build_ansatz_sized(run, config, h.n_qubits);
  if (ansatz.n_qubits != h.n_qubits) {
    throw DimensionMismatch("run_vqe: ansatz qubit count must match Hamiltonian");
  }
  if (ansatz.n_qubits > run.qubit_cap) {
    throw QubitCapExceeded("run_vqe: " + std::to_string(ansatz.n_qubits) +
                           " qubits exceeds the simulator cap of " +
                           std::to_string(run.qubit_cap));
  }
  const int estimator_shots = run.estimator_shots > 0
                                  ? run.estimator_shots
                                  : default_estimator_shots(ansatz.n_qubits);
  const int sampler_shots = run.sampler_shots > 0
                                ? run.sampler_shots
                                : default_sampler_shots(ansatz.n_qubits);

  long eval_counter = 0;
  auto objective = [&](const std::vector<double>& params) {
    StateVector state = simulate(ansatz, params, run.qubit_cap);
    ++eval_counter;
    if (run.exact_estimator) {
      return expectation_diagonal(state, h);
    }
    // diagonal H: the shot estimate is the mean sampled cost
    const auto samples = sample(state, estimator_shots,
                                Rng::mix(run.seed, eval_counter));
    double acc = 0.0;
    for (const auto& [bits, n] : samples.counts) {
      acc += n * cost_of_bitstring(h, bits);
    }
    return acc / samples.shots;
  };

  RunReport report;
  report.method = "vqe";
  std::vector<double> best_params;
  if (ansatz.n_params == 0) {
    best_params = {};
    report.expectation_at_optimum = objective(best_params);
  } else if (run.optimizer == OptimizerKind::De) {
    DeConfig de = run.de;
    OptResult opt = differential_evolution(objective, ansatz.n_params, de);
    best_params = opt.best_params;
    report.convergence = std::move(opt.generation_log);
    report.evaluations = opt.evaluations;
  } else {
    Rng rng(run.seed);
    std::vector<double> start(ansatz.n_params);
    for (double& v : start) v = rng.uniform(run.de.bound_low, run.de.bound_high);
    OptResult opt =
        conjugate_gradient_fd(objective, start, run.cg_max_iter, run.cg_fd_step);
    best_params = opt.best_params;
    report.step_costs = std::move(opt.step_costs);
    report.evaluations = opt.evaluations;
  }

  StateVector final_state = simulate(ansatz, best_params, run.qubit_cap);
  report.expectation_at_optimum = expectation_diagonal(final_state, h);
  const auto samples =
      sample(final_state, sampler_shots, Rng::mix(run.seed, 0x53414d50));
  report.distribution = build_distribution(samples, h);

  BestState best;
  for (const auto& [bits, n] : samples.counts) {
    best.offer(cost_of_bitstring(h, bits), bits);
  }
  finalize_report(report, h, best, &config, &model);

  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

RunReport random_baseline(const IsingHamiltonian& h, int shots,
                          std::uint64_t seed, const DpoConfig* config,
                          const MarketModel* model) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport report;
  report.method = "random";
  BestState best;

  if (shots > 0) {
    Rng rng(seed);
    std::map<std::string, int> counts;
    for (int s = 0; s < shots; ++s) {
      std::string bits(h.n_qubits, '0');
      for (int q = 0; q < h.n_qubits; ++q) {
        if (rng.next_u64() & 1ULL) bits[q] = '1';
      }
      ++counts[bits];
    }
    for (const auto& [bits, n] : counts) {
      best.offer(cost_of_bitstring(h, bits), bits);
    }
    SampleResult samples;
    samples.shots = shots;
    samples.seed = seed;
    samples.counts = std::move(counts);
    report.distribution = build_distribution(samples, h);
  } else {
    if (h.n_qubits > kDefaultQubitCap) {
      throw QubitCapExceeded("random_baseline: exact mode needs n_q <= cap");
    }
    std::map<std::string, double> uniform;
    const double p = 1.0 / std::ldexp(1.0, h.n_qubits);
    for (std::uint64_t i = 0; i < (1ULL << h.n_qubits); ++i) {
      const std::string bits = index_to_bitstring(i, h.n_qubits);
      uniform[bits] = p;
      best.offer(cost_of_bitstring(h, bits), bits);
    }
    report.distribution = build_distribution(uniform, h);
  }
  finalize_report(report, h, best, config, model);
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

std::string report_to_json(const RunReport& report) {
  nlohmann::ordered_json doc;
  doc["method"] = report.method;
  doc["min_cost"] = report.min_cost;
  doc["best_bitstring"] = report.best_bitstring;
  doc["offset"] = report.offset;
  doc["pct_below_offset"] = report.pct_below_offset;
  doc["expectation_at_optimum"] = report.expectation_at_optimum;
  doc["evaluations"] = report.evaluations;
  if (report.sharpe) {
    doc["sharpe"] = *report.sharpe;
  } else {
    doc["sharpe"] = nullptr;
  }
  if (report.best_trajectory) {
    doc["trajectory_omega"] = report.best_trajectory->omega;
    doc["trajectory_normalized"] = report.best_trajectory->normalized;
  }
  doc["distribution"] = nlohmann::ordered_json::array();
  for (const auto& [bin, count] : report.distribution.bins) {
    doc["distribution"].push_back({bin, count});
  }
  doc["distribution_total"] = report.distribution.total;
  doc["distribution_source"] = report.distribution.source;
  doc["convergence"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < report.convergence.size(); ++i) {
    const auto& entry = report.convergence[i];
    doc["convergence"].push_back({{"generation", i},
                                  {"mean_cost", entry.mean_cost},
                                  {"min_cost", entry.min_cost},
                                  {"evals", entry.evaluations}});
  }
  if (!report.step_costs.empty()) doc["step_costs"] = report.step_costs;
  // timing lives in its own field so seeded reports stay comparable
  doc["meta"] = {{"wall_time_seconds", report.wall_time_seconds}};
  return doc.dump(2);
}

void write_distribution_csv(const CostDistribution& dist,
                            const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  out << "cost_bin,count\n";
  out.precision(17);
  for (const auto& [bin, count] : dist.bins) {
    out << bin << ',' << count << '\n';
  }
}

}  // namespace dpo
