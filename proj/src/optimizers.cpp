#include "dpo/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "dpo/errors.hpp"
#include "dpo/rng.hpp"

namespace dpo {

namespace {

double clip(double x, double lo, double hi) {
  return std::min(std::max(x, lo), hi);
}

}  // namespace

bool de_convergence(const GenerationLog& log, int window, double tol) {
  if (static_cast<int>(log.size()) < window) return false;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = log.size() - window; i < log.size(); ++i) {
    lo = std::min(lo, log[i].mean_cost);
    hi = std::max(hi, log[i].mean_cost);
  }
  const double last = log.back().mean_cost;
  if (std::abs(last) < 1e-15) return hi - lo == 0.0;
  return (hi - lo) / std::abs(last) <= tol;
}

std::vector<double> best2bin_mutant(const std::vector<double>& best,
                                    const std::vector<double>& r1,
                                    const std::vector<double>& r2,
                                    const std::vector<double>& r3,
                                    const std::vector<double>& r4, double f) {
  std::vector<double> mutant(best.size());
  for (std::size_t d = 0; d < best.size(); ++d) {
    mutant[d] = best[d] + f * (r1[d] - r2[d]) + f * (r3[d] - r4[d]);
  }
  return mutant;
}

OptResult differential_evolution(const Objective& objective, int dim,
                                 const DeConfig& config) {
  if (dim < 1) throw Error("differential_evolution: dim must be >= 1");
  if (config.pop_size < 5) {
    throw PopulationTooSmall(
        "differential_evolution: best2bin needs a population of at least 5");
  }

  Rng rng(config.seed);
  auto random_candidate = [&] {
    std::vector<double> x(dim);
    for (double& v : x) v = rng.uniform(config.bound_low, config.bound_high);
    return x;
  };

  OptResult result;
  std::vector<std::vector<double>> pop;
  std::vector<double> costs;

  if (config.elitist_pool > 0) {
    std::vector<std::pair<double, int>> scored;
    std::vector<std::vector<double>> pool;
    pool.reserve(config.elitist_pool);
    for (int i = 0; i < config.elitist_pool; ++i) {
      pool.push_back(random_candidate());
      scored.emplace_back(objective(pool.back()), i);
      ++result.evaluations;
    }
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    const int take = std::min(config.pop_size, config.elitist_pool);
    for (int i = 0; i < take; ++i) {
      pop.push_back(pool[scored[i].second]);
      costs.push_back(scored[i].first);
    }
    while (static_cast<int>(pop.size()) < config.pop_size) {
      pop.push_back(random_candidate());
      costs.push_back(objective(pop.back()));
      ++result.evaluations;
    }
  } else {
    for (int i = 0; i < config.pop_size; ++i) {
      pop.push_back(random_candidate());
      costs.push_back(objective(pop.back()));
      ++result.evaluations;
    }
  }

  auto log_generation = [&] {
    GenerationEntry entry;
    entry.population_costs = costs;
    entry.min_cost = *std::min_element(costs.begin(), costs.end());
    entry.mean_cost =
        std::accumulate(costs.begin(), costs.end(), 0.0) / costs.size();
    entry.evaluations = result.evaluations;
    result.generation_log.push_back(entry);
  };
  log_generation();

  const int np = config.pop_size;
  for (int gen = 0; gen < config.generations; ++gen) {
    const int best =
        static_cast<int>(std::min_element(costs.begin(), costs.end()) -
                         costs.begin());
    // F is dithered once per generation
    const double f = rng.uniform(config.mutation_low, config.mutation_high);

    // trial vectors are drawn before any evaluation so the random stream
    // does not depend on evaluation order
    std::vector<std::vector<double>> trials(np);
    for (int i = 0; i < np; ++i) {
      // four distinct members, all different from i
      int r[4];
      for (int k = 0; k < 4; ++k) {
        bool fresh;
        do {
          r[k] = static_cast<int>(rng.below(np));
          fresh = r[k] != i;
          for (int m = 0; m < k; ++m) fresh = fresh && r[k] != r[m];
        } while (!fresh);
      }
      const int jrand = static_cast<int>(rng.below(dim));
      std::vector<double> trial = pop[i];
      for (int d = 0; d < dim; ++d) {
        const bool cross = rng.uniform() < config.recombination || d == jrand;
        if (cross) {
          const double mutant = pop[best][d] + f * (pop[r[0]][d] - pop[r[1]][d]) +
                                f * (pop[r[2]][d] - pop[r[3]][d]);
          trial[d] = clip(mutant, config.bound_low, config.bound_high);
        }
      }
      trials[i] = std::move(trial);
    }

    for (int i = 0; i < np; ++i) {
      const double trial_cost = objective(trials[i]);
      ++result.evaluations;
      if (trial_cost <= costs[i]) {
        pop[i] = std::move(trials[i]);
        costs[i] = trial_cost;
      }
    }
    log_generation();
    if (de_convergence(result.generation_log, config.convergence_window,
                       config.convergence_tol)) {
      result.converged = true;
      break;
    }
  }
  if (!result.converged) {
    result.converged = de_convergence(result.generation_log,
                                      config.convergence_window,
                                      config.convergence_tol);
  }

  const int best =
      static_cast<int>(std::min_element(costs.begin(), costs.end()) -
                       costs.begin());
  result.best_params = pop[best];
  result.best_cost = costs[best];
  return result;
}

OptResult conjugate_gradient_fd(const Objective& objective,
                                const std::vector<double>& start, int max_iter,
                                double fd_step) {
  const int dim = static_cast<int>(start.size());
  if (dim < 1) throw Error("conjugate_gradient_fd: empty start vector");

  OptResult result;
  auto eval = [&](const std::vector<double>& x) {
    const double v = objective(x);
    result.step_costs.push_back(v);
    ++result.evaluations;
    if (v < result.best_cost) {
      result.best_cost = v;
      result.best_params = x;
    }
    return v;
  };

  auto window_converged = [&] {
    const int window = 100;
    if (static_cast<int>(result.step_costs.size()) < window) return false;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = result.step_costs.size() - window;
         i < result.step_costs.size(); ++i) {
      lo = std::min(lo, result.step_costs[i]);
      hi = std::max(hi, result.step_costs[i]);
    }
    const double last = result.step_costs.back();
    if (std::abs(last) < 1e-15) return hi - lo == 0.0;
    return (hi - lo) / std::abs(last) < 0.025;
  };

  auto gradient = [&](const std::vector<double>& x) {
    std::vector<double> g(dim);
    std::vector<double> probe = x;
    for (int d = 0; d < dim; ++d) {
      probe[d] = x[d] + fd_step;
      const double fp = eval(probe);
      probe[d] = x[d] - fd_step;
      const double fm = eval(probe);
      probe[d] = x[d];
      g[d] = (fp - fm) / (2.0 * fd_step);
    }
    return g;
  };

  std::vector<double> x = start;
  result.best_cost = std::numeric_limits<double>::infinity();
  double fx = eval(x);
  std::vector<double> g = gradient(x);
  std::vector<double> dir(dim);
  for (int d = 0; d < dim; ++d) dir[d] = -g[d];

  for (int iter = 0; iter < max_iter; ++iter) {
    double g_dot_d = 0.0;
    for (int d = 0; d < dim; ++d) g_dot_d += g[d] * dir[d];
    if (g_dot_d > 0.0) {  // not a descent direction: restart on -g
      for (int d = 0; d < dim; ++d) dir[d] = -g[d];
      g_dot_d = 0.0;
      for (int d = 0; d < dim; ++d) g_dot_d += g[d] * dir[d];
    }
    const double g_norm2 =
        std::inner_product(g.begin(), g.end(), g.begin(), 0.0);
    if (g_norm2 < 1e-20) {
      result.converged = true;
      break;
    }

    // backtracking line search (Armijo)
    double alpha = 1.0;
    double f_new = fx;
    std::vector<double> x_new = x;
    bool improved = false;
    for (int bt = 0; bt < 40; ++bt) {
      for (int d = 0; d < dim; ++d) x_new[d] = x[d] + alpha * dir[d];
      f_new = eval(x_new);
      if (f_new <= fx + 1e-4 * alpha * g_dot_d) {
        improved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!improved) {
      for (int d = 0; d < dim; ++d) dir[d] = -g[d];  // reset and shrink
      if (window_converged()) {
        result.converged = true;
        break;
      }
      continue;
    }

    std::vector<double> g_new = gradient(x_new);
    double num = 0.0;
    for (int d = 0; d < dim; ++d) num += g_new[d] * (g_new[d] - g[d]);
    double beta = num / g_norm2;  // Polak-Ribiere
    if (beta < 0.0) beta = 0.0;   // restart
    for (int d = 0; d < dim; ++d) dir[d] = -g_new[d] + beta * dir[d];
    x = std::move(x_new);
    fx = f_new;
    g = std::move(g_new);

    if (window_converged()) {
      result.converged = true;
      break;
    }
  }
  if (result.best_params.empty()) {
    result.best_params = x;
    result.best_cost = fx;
  }
  return result;
}

void write_generation_log_csv(const GenerationLog& log, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  out << "generation,mean_cost,min_cost,evals\n";
  out.precision(17);
  for (std::size_t i = 0; i < log.size(); ++i) {
    out << i << ',' << log[i].mean_cost << ',' << log[i].min_cost << ','
        << log[i].evaluations << '\n';
  }
}

}  // namespace dpo
