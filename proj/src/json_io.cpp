#include "dpo/json_io.hpp"

#include <json.hpp>

#include "dpo/errors.hpp"

namespace dpo {

using nlohmann::ordered_json;

std::string qubo_to_json(const QuboProblem& qubo) {
  ordered_json doc;
  doc["n_vars"] = qubo.n_vars;
  doc["constant"] = qubo.constant;
  doc["linear"] = ordered_json::array();
  for (const auto& [q, c] : qubo.linear) doc["linear"].push_back({q, c});
  doc["quadratic"] = ordered_json::array();
  for (const auto& [pq, c] : qubo.quadratic) {
    doc["quadratic"].push_back({pq.first, pq.second, c});
  }
  return doc.dump(2);
}

QuboProblem qubo_from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw Error(std::string("qubo_from_json: parse error: ") + e.what());
  }
  QuboProblem qubo;
  qubo.n_vars = doc.at("n_vars").get<int>();
  qubo.constant = doc.at("constant").get<double>();
  for (const auto& entry : doc.at("linear")) {
    qubo.linear[entry.at(0).get<int>()] = entry.at(1).get<double>();
  }
  for (const auto& entry : doc.at("quadratic")) {
    int p = entry.at(0).get<int>();
    int q = entry.at(1).get<int>();
    if (p == q) throw Error("qubo_from_json: self-pair in quadratic terms");
    if (p > q) std::swap(p, q);
    qubo.quadratic[{p, q}] = entry.at(2).get<double>();
  }
  return qubo;
}

std::string ising_to_json(const IsingHamiltonian& ham) {
  ordered_json doc;
  doc["n_qubits"] = ham.n_qubits;
  doc["identity"] = ham.identity_coeff;
  doc["h"] = ordered_json::array();
  for (const auto& [q, c] : ham.h) doc["h"].push_back({q, c});
  doc["j"] = ordered_json::array();
  for (const auto& [pq, c] : ham.j) {
    doc["j"].push_back({pq.first, pq.second, c});
  }
  return doc.dump(2);
}

IsingHamiltonian ising_from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw Error(std::string("ising_from_json: parse error: ") + e.what());
  }
  IsingHamiltonian ham;
  ham.n_qubits = doc.at("n_qubits").get<int>();
  ham.identity_coeff = doc.at("identity").get<double>();
  for (const auto& entry : doc.at("h")) {
    ham.h[entry.at(0).get<int>()] = entry.at(1).get<double>();
  }
  for (const auto& entry : doc.at("j")) {
    int p = entry.at(0).get<int>();
    int q = entry.at(1).get<int>();
    if (p > q) std::swap(p, q);
    ham.j[{p, q}] = entry.at(2).get<double>();
  }
  return ham;
}

}  // namespace dpo
