#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dpo/market_data.hpp"

namespace dpo {

// Problem dimensions and financial parameters.
struct DpoConfig {
  int n_t = 0;
  int n_a = 0;
  int n_r = 0;
  double k_budget = 0.0;
  double gamma = 1000.0;
  double nu = 0.01;
  double rho = 1.0;
  std::vector<double> initial_holdings;  // omega_{-1}, defaults to zeros

  int n_q() const { return n_t * n_a * n_r; }
  double k_prime() const { return static_cast<double>((1 << n_r) - 1); }
};

struct QuboProblem {
  int n_vars = 0;
  double constant = 0.0;
  std::map<int, double> linear;
  std::map<std::pair<int, int>, double> quadratic;  // keys (p < q), no self-pairs

  double evaluate(const std::string& bits) const;
};

// Diagonal Hamiltonian: identity + sum h_q Z_q + sum J_pq Z_p Z_q.
struct IsingHamiltonian {
  int n_qubits = 0;
  double identity_coeff = 0.0;
  std::map<int, double> h;
  std::map<std::pair<int, int>, double> j;  // keys (p < q)
};

struct Trajectory {
  std::vector<std::vector<double>> omega;       // [n_t][n_a], currency units
  std::vector<std::vector<double>> normalized;  // omega / K
};

struct ObjectiveTerms {
  // normalized scale (enters the QUBO)
  double f_norm = 0.0;
  double r_norm = 0.0;
  double c_exact_norm = 0.0;
  double c_quadratic_norm = 0.0;
  double penalty = 0.0;
  // money scale
  double f_money = 0.0;
  double r_money = 0.0;
  double c_exact_money = 0.0;
};

// lambda = cbrt(2) * K / K'
double lambda_coefficient(const DpoConfig& config);

// q = r + N_r * a + t * (N_a * N_r)
int qubit_index(int t, int a, int r, const DpoConfig& config);

QuboProblem build_qubo(const DpoConfig& config, const MarketModel& model);

IsingHamiltonian qubo_to_ising(const QuboProblem& qubo);

// Bitstring convention: character at position q is the value of variable q.
// Bit 1 corresponds to Z eigenvalue -1.
double cost_of_bitstring(const IsingHamiltonian& h, const std::string& bits);

// Mean cost under uniform random bits; equals the identity coefficient.
double offset(const IsingHamiltonian& h);

Trajectory decode_bitstring(const std::string& bits, const DpoConfig& config);

ObjectiveTerms objective_terms(const Trajectory& traj, const MarketModel& model,
                               const DpoConfig& config);

// F / sqrt(R) on the money-scale trajectory; throws ZeroRisk when R <= 1e-15.
double sharpe_ratio(const Trajectory& traj, const MarketModel& model);

// index <-> bitstring rendering under the shared left-to-right convention
// (bit of qubit q at string position q; amplitude index bit q = (i >> q) & 1)
std::string index_to_bitstring(std::uint64_t index, int n_qubits);
std::uint64_t bitstring_to_index(const std::string& bits);

}  // namespace dpo
