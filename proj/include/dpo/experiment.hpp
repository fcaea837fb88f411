#pragma once

#include <map>
#include <string>

#include "dpo/baselines.hpp"
#include "dpo/market_data.hpp"
#include "dpo/problem.hpp"
#include "dpo/vqe.hpp"

namespace dpo {

// Parsed experiment file: INI-style sections [data] [problem] [run] [output].
struct ExperimentConfig {
  // [data]
  std::string data_source = "synthetic";  // synthetic | csv | zeros
  std::string csv_path;
  int n_days = 0;  // 0: derived from the rebalance grid
  std::uint64_t data_seed = 1;
  int delta_t_days = 30;
  // [problem]
  DpoConfig problem;
  // [run]
  std::string method = "vqe";  // vqe | exhaustive | sa | sae | random
  VqeRunConfig run;
  int sa_sweeps = 200;
  int sa_restarts = 10;
  double sa_beta_initial = 0.1;
  double sa_beta_final = 10.0;
  SaeConfig sae;
  int random_shots = 0;  // 0: size-based sampler default
  // [output]
  std::string output_directory = ".";
};

// Table-of-sizes presets: xs/s/m/l/xl/xxl -> (n_t, n_a, n_r, K).
bool apply_size_preset(const std::string& name, DpoConfig& config);

ExperimentConfig parse_experiment_file(const std::string& path);

struct BuiltProblem {
  PriceSeries series;
  RebalanceGrid grid;
  MarketModel model;
  QuboProblem qubo;
  IsingHamiltonian ising;
};

BuiltProblem build_problem(const ExperimentConfig& config);

}  // namespace dpo
