#pragma once

#include <string>

#include "dpo/problem.hpp"

namespace dpo {

// {n_vars, constant, linear: [[q, coeff]], quadratic: [[p, q, coeff]]}
std::string qubo_to_json(const QuboProblem& qubo);
QuboProblem qubo_from_json(const std::string& text);

// {n_qubits, identity, h: [[q, coeff]], j: [[p, q, coeff]]}
std::string ising_to_json(const IsingHamiltonian& ham);
IsingHamiltonian ising_from_json(const std::string& text);

}  // namespace dpo
