#include "dpo/problem.hpp"

#include <cmath>

#include "dpo/errors.hpp"

namespace dpo {

namespace {

// Affine expression over binary variables; products of these expand
// straight into QUBO terms with x^2 = x folded into the linear part.
struct Affine {
  double constant = 0.0;
  std::vector<std::pair<int, double>> terms;  // (var, coeff)
};

struct QuboAccumulator {
  QuboProblem& q;

  void add_constant(double c) { q.constant += c; }

  void add_linear(const Affine& e, double scale) {
    q.constant += scale * e.constant;
    for (const auto& [v, c] : e.terms) q.linear[v] += scale * c;
  }

  // scale * a * b
  void add_product(const Affine& a, const Affine& b, double scale) {
    q.constant += scale * a.constant * b.constant;
    for (const auto& [v, c] : a.terms) q.linear[v] += scale * c * b.constant;
    for (const auto& [v, c] : b.terms) q.linear[v] += scale * c * a.constant;
    for (const auto& [va, ca] : a.terms) {
      for (const auto& [vb, cb] : b.terms) {
        const double w = scale * ca * cb;
        if (va == vb) {
          q.linear[va] += w;  // x^2 = x
        } else {
          auto key = va < vb ? std::make_pair(va, vb) : std::make_pair(vb, va);
          q.quadratic[key] += w;
        }
      }
    }
  }
};

void prune_zeros(QuboProblem& q) {
  for (auto it = q.linear.begin(); it != q.linear.end();) {
    it = it->second == 0.0 ? q.linear.erase(it) : std::next(it);
  }
  for (auto it = q.quadratic.begin(); it != q.quadratic.end();) {
    it = it->second == 0.0 ? q.quadratic.erase(it) : std::next(it);
  }
}

}  // namespace

double QuboProblem::evaluate(const std::string& bits) const {
  if (static_cast<int>(bits.size()) != n_vars) {
    throw LengthMismatch("QuboProblem::evaluate: bitstring length mismatch");
  }
  double acc = constant;
  for (const auto& [v, c] : linear) {
    if (bits[v] == '1') acc += c;
  }
  for (const auto& [pq, c] : quadratic) {
    if (bits[pq.first] == '1' && bits[pq.second] == '1') acc += c;
  }
  return acc;
}

double lambda_coefficient(const DpoConfig& config) {
  return std::cbrt(2.0) * config.k_budget / config.k_prime();
}

int qubit_index(int t, int a, int r, const DpoConfig& config) {
  if (t < 0 || t >= config.n_t || a < 0 || a >= config.n_a || r < 0 ||
      r >= config.n_r) {
    throw IndexOutOfRange("qubit_index: (t, a, r) out of range");
  }
  return r + config.n_r * a + t * (config.n_a * config.n_r);
}

QuboProblem build_qubo(const DpoConfig& config, const MarketModel& model) {
  const int n_t = config.n_t;
  const int n_a = config.n_a;
  const int n_r = config.n_r;
  if (static_cast<int>(model.n_t()) != n_t ||
      static_cast<int>(model.n_a()) != n_a) {
    throw DimensionMismatch("build_qubo: model dimensions do not match config");
  }

  QuboProblem qubo;
  qubo.n_vars = config.n_q();
  QuboAccumulator acc{qubo};

  const double inv_k = 1.0 / config.k_budget;
  const double nu_lambda = config.nu * lambda_coefficient(config);

  // normalized investment of (t, a) as an affine form in the binary variables
  auto omega_tilde = [&](int t, int a) {
    Affine e;
    e.terms.reserve(n_r);
    for (int r = 0; r < n_r; ++r) {
      e.terms.emplace_back(qubit_index(t, a, r, config),
                           static_cast<double>(1 << r) * inv_k);
    }
    return e;
  };
  auto initial_tilde = [&](int a) {
    Affine e;
    e.constant = config.initial_holdings.empty()
                     ? 0.0
                     : config.initial_holdings.at(a) * inv_k;
    return e;
  };

  for (int t = 0; t < n_t; ++t) {
    // -mu_t . w_t
    for (int a = 0; a < n_a; ++a) {
      acc.add_linear(omega_tilde(t, a), -model.mu[t][a]);
    }
    // (gamma/2) w_t^T Sigma_t w_t
    for (int a = 0; a < n_a; ++a) {
      for (int b = 0; b < n_a; ++b) {
        const double s = model.sigma[t][a][b];
        if (s != 0.0) {
          acc.add_product(omega_tilde(t, a), omega_tilde(t, b),
                          0.5 * config.gamma * s);
        }
      }
    }
    // nu * lambda * (w_t - w_{t-1})^2
    for (int a = 0; a < n_a; ++a) {
      Affine diff = omega_tilde(t, a);
      const Affine prev = t == 0 ? initial_tilde(a) : omega_tilde(t - 1, a);
      diff.constant -= prev.constant;
      for (const auto& [v, c] : prev.terms) diff.terms.emplace_back(v, -c);
      acc.add_product(diff, diff, nu_lambda);
    }
    // rho * (sum_a w_{t,a} - 1)^2
    Affine budget;
    budget.constant = -1.0;
    for (int a = 0; a < n_a; ++a) {
      for (const auto& [v, c] : omega_tilde(t, a).terms) {
        budget.terms.emplace_back(v, c);
      }
    }
    acc.add_product(budget, budget, config.rho);
  }

  prune_zeros(qubo);
  return qubo;
}

IsingHamiltonian qubo_to_ising(const QuboProblem& qubo) {
  IsingHamiltonian ham;
  ham.n_qubits = qubo.n_vars;
  ham.identity_coeff = qubo.constant;
  // x = (1 - Z) / 2
  for (const auto& [v, c] : qubo.linear) {
    ham.identity_coeff += 0.5 * c;
    ham.h[v] -= 0.5 * c;
  }
  for (const auto& [pq, c] : qubo.quadratic) {
    ham.identity_coeff += 0.25 * c;
    ham.h[pq.first] -= 0.25 * c;
    ham.h[pq.second] -= 0.25 * c;
    ham.j[pq] += 0.25 * c;
  }
  for (auto it = ham.h.begin(); it != ham.h.end();) {
    it = it->second == 0.0 ? ham.h.erase(it) : std::next(it);
  }
  for (auto it = ham.j.begin(); it != ham.j.end();) {
    it = it->second == 0.0 ? ham.j.erase(it) : std::next(it);
  }
  return ham;
}

double cost_of_bitstring(const IsingHamiltonian& h, const std::string& bits) {
  if (static_cast<int>(bits.size()) != h.n_qubits) {
    throw LengthMismatch("cost_of_bitstring: bitstring length mismatch");
  }
  double acc = h.identity_coeff;
  for (const auto& [q, c] : h.h) {
    acc += bits[q] == '1' ? -c : c;
  }
  for (const auto& [pq, c] : h.j) {
    const bool flip = (bits[pq.first] == '1') != (bits[pq.second] == '1');
    acc += flip ? -c : c;
  }
  return acc;
}

double offset(const IsingHamiltonian& h) { return h.identity_coeff; }

Trajectory decode_bitstring(const std::string& bits, const DpoConfig& config) {
  if (static_cast<int>(bits.size()) != config.n_q()) {
    throw LengthMismatch("decode_bitstring: bitstring length mismatch");
  }
  Trajectory traj;
  traj.omega.assign(config.n_t, std::vector<double>(config.n_a, 0.0));
  traj.normalized = traj.omega;
  for (int t = 0; t < config.n_t; ++t) {
    for (int a = 0; a < config.n_a; ++a) {
      double w = 0.0;
      for (int r = 0; r < config.n_r; ++r) {
        if (bits[qubit_index(t, a, r, config)] == '1') w += 1 << r;
      }
      traj.omega[t][a] = w;
      traj.normalized[t][a] = w / config.k_budget;
    }
  }
  return traj;
}

ObjectiveTerms objective_terms(const Trajectory& traj, const MarketModel& model,
                               const DpoConfig& config) {
  const int n_t = config.n_t;
  const int n_a = config.n_a;
  if (static_cast<int>(traj.omega.size()) != n_t ||
      static_cast<int>(model.n_t()) != n_t ||
      static_cast<int>(model.n_a()) != n_a ||
      (n_t > 0 && static_cast<int>(traj.omega[0].size()) != n_a)) {
    throw DimensionMismatch("objective_terms: dimension mismatch");
  }

  ObjectiveTerms out;
  const double lambda = lambda_coefficient(config);
  for (int t = 0; t < n_t; ++t) {
    for (int a = 0; a < n_a; ++a) {
      out.f_norm += model.mu[t][a] * traj.normalized[t][a];
      out.f_money += model.mu[t][a] * traj.omega[t][a];
      for (int b = 0; b < n_a; ++b) {
        out.r_norm +=
            traj.normalized[t][a] * model.sigma[t][a][b] * traj.normalized[t][b];
        out.r_money += traj.omega[t][a] * model.sigma[t][a][b] * traj.omega[t][b];
      }
      const double prev_money =
          t > 0 ? traj.omega[t - 1][a]
                : (config.initial_holdings.empty() ? 0.0
                                                   : config.initial_holdings[a]);
      const double d_money = traj.omega[t][a] - prev_money;
      const double d_norm = d_money / config.k_budget;
      out.c_exact_money += config.nu * std::abs(d_money);
      out.c_exact_norm += config.nu * std::abs(d_norm);
      out.c_quadratic_norm += config.nu * lambda * d_norm * d_norm;
    }
    double invested = 0.0;
    for (int a = 0; a < n_a; ++a) invested += traj.normalized[t][a];
    out.penalty += config.rho * (invested - 1.0) * (invested - 1.0);
  }
  return out;
}

double sharpe_ratio(const Trajectory& traj, const MarketModel& model) {
  const int n_t = static_cast<int>(traj.omega.size());
  if (static_cast<int>(model.n_t()) != n_t) {
    throw DimensionMismatch("sharpe_ratio: dimension mismatch");
  }
  double f = 0.0;
  double r = 0.0;
  for (int t = 0; t < n_t; ++t) {
    const int n_a = static_cast<int>(traj.omega[t].size());
    for (int a = 0; a < n_a; ++a) {
      f += model.mu[t][a] * traj.omega[t][a];
      for (int b = 0; b < n_a; ++b) {
        r += traj.omega[t][a] * model.sigma[t][a][b] * traj.omega[t][b];
      }
    }
  }
  if (r <= 1e-15) throw ZeroRisk("sharpe_ratio: risk is zero, ratio undefined");
  return f / std::sqrt(r);
}

std::string index_to_bitstring(std::uint64_t index, int n_qubits) {
  std::string bits(n_qubits, '0');
  for (int q = 0; q < n_qubits; ++q) {
    if ((index >> q) & 1ULL) bits[q] = '1';
  }
  return bits;
}

std::uint64_t bitstring_to_index(const std::string& bits) {
  std::uint64_t index = 0;
  for (std::size_t q = 0; q < bits.size(); ++q) {
    if (bits[q] == '1') index |= 1ULL << q;
  }
  return index;
}

}  // namespace dpo
