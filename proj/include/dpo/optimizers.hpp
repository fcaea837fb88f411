#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace dpo {

using Objective = std::function<double(const std::vector<double>&)>;

struct DeConfig {
  int pop_size = 15;
  int generations = 50;
  double mutation_low = 0.0;
  double mutation_high = 0.25;
  double recombination = 0.4;
  double bound_low = -6.283185307179586476925286766559;  // -2*pi
  double bound_high = 6.283185307179586476925286766559;  // +2*pi
  int elitist_pool = 0;  // candidates evaluated before generation 0
  std::uint64_t seed = 0;
  int convergence_window = 10;
  double convergence_tol = 0.025;
};

struct GenerationEntry {
  double mean_cost = 0.0;
  double min_cost = 0.0;
  std::vector<double> population_costs;
  long evaluations = 0;  // cumulative
};

using GenerationLog = std::vector<GenerationEntry>;

struct OptResult {
  std::vector<double> best_params;
  double best_cost = 0.0;
  bool converged = false;
  GenerationLog generation_log;       // DE
  std::vector<double> step_costs;     // CG per-evaluation costs
  long evaluations = 0;
};

// best + F*(r1 - r2) + F*(r3 - r4), elementwise
std::vector<double> best2bin_mutant(const std::vector<double>& best,
                                    const std::vector<double>& r1,
                                    const std::vector<double>& r2,
                                    const std::vector<double>& r3,
                                    const std::vector<double>& r4, double f);

// best2bin DE with per-generation dithered F, binomial crossover, clipping
// to bounds, greedy selection, and optional elitist initialization.
OptResult differential_evolution(const Objective& objective, int dim,
                                 const DeConfig& config);

// (max - min of trailing `window` mean costs) / |last mean| <= tol
bool de_convergence(const GenerationLog& log, int window = 10,
                    double tol = 0.025);

// Polak-Ribiere nonlinear CG with central finite differences and
// backtracking line search; stops when the trailing 100 evaluation costs
// span less than 2.5% or at max_iter iterations.
OptResult conjugate_gradient_fd(const Objective& objective,
                                const std::vector<double>& start,
                                int max_iter = 500, double fd_step = 1e-3);

void write_generation_log_csv(const GenerationLog& log, const std::string& path);

}  // namespace dpo
