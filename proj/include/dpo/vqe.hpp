#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpo/circuit.hpp"
#include "dpo/optimizers.hpp"
#include "dpo/problem.hpp"
#include "dpo/statevector.hpp"

namespace dpo {

enum class AnsatzKind { Cyclic, RealAmplitudes, Ora, Tailored };
enum class OptimizerKind { De, Cg };

struct VqeRunConfig {
  AnsatzKind ansatz = AnsatzKind::RealAmplitudes;
  int ra_reps = 3;
  int ora_reps = 3;
  std::vector<int> cyclic_ranges = {1, 3};

  OptimizerKind optimizer = OptimizerKind::De;
  DeConfig de;
  int cg_max_iter = 500;
  double cg_fd_step = 1e-3;

  bool exact_estimator = true;
  int estimator_shots = 0;  // 0: size-based default
  int sampler_shots = 0;    // 0: size-based default
  std::uint64_t seed = 0;
  int qubit_cap = kDefaultQubitCap;
};

// Appendix-style shot defaults: estimator 2500 / 25000, sampler 10^4 / 10^5
// around the 6-qubit boundary.
int default_estimator_shots(int n_qubits);
int default_sampler_shots(int n_qubits);

struct CostDistribution {
  // bins keyed by cost rounded half-away-from-zero to 2 decimals
  std::map<double, double> bins;
  double total = 0.0;
  std::string source;  // "sampled" or "exact-weighted"
  // unrounded costs retained for metrics
  std::vector<std::pair<double, double>> raw;  // (cost, weight)
};

struct RunReport {
  double min_cost = 0.0;
  std::string best_bitstring;
  std::optional<Trajectory> best_trajectory;
  std::optional<double> sharpe;
  double offset = 0.0;
  double pct_below_offset = 0.0;
  CostDistribution distribution;
  GenerationLog convergence;
  std::vector<double> step_costs;
  double expectation_at_optimum = 0.0;
  long evaluations = 0;
  double wall_time_seconds = 0.0;
  std::string method;
};

double round_half_away(double x, int decimals);

Circuit build_ansatz(const VqeRunConfig& run, const DpoConfig& config);

// `ansatz_override`, when given, replaces the constructor selected by the
// run config (used for degenerate and hand-built circuits).
RunReport run_vqe(const IsingHamiltonian& h, const DpoConfig& config,
                  const MarketModel& model, const VqeRunConfig& run,
                  const Circuit* ansatz_override = nullptr);

CostDistribution build_distribution(const SampleResult& samples,
                                    const IsingHamiltonian& h);
CostDistribution build_distribution(const std::map<std::string, double>& exact,
                                    const IsingHamiltonian& h);

// 100 * (mass with unrounded cost strictly below the offset) / total
double pct_below_offset(const CostDistribution& dist, double offset);

// Uniform random bitstrings (shots > 0) or the exact uniform distribution
// (shots == 0); no simulator involved.
RunReport random_baseline(const IsingHamiltonian& h, int shots,
                          std::uint64_t seed,
                          const DpoConfig* config = nullptr,
                          const MarketModel* model = nullptr);

std::string report_to_json(const RunReport& report);
void write_distribution_csv(const CostDistribution& dist,
                            const std::string& path);

}  // namespace dpo
