#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dpo/problem.hpp"

namespace dpo {

enum class GateKind { RY, RX, RZ, RZZ, CNOT, SWAP };

const char* gate_kind_name(GateKind kind);
GateKind gate_kind_from_name(const std::string& name);

struct Gate {
  GateKind kind;
  std::vector<int> qubits;           // 1 entry for rotations, 2 for the rest
  std::optional<int> param_slot;     // rotations bound to the parameter vector
  double fixed_angle = 0.0;          // rotations with a literal angle

  bool is_two_qubit() const {
    return kind == GateKind::CNOT || kind == GateKind::SWAP ||
           kind == GateKind::RZZ;
  }
};

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
  int n_params = 0;
};

struct CouplingMap {
  int n_physical = 0;
  std::set<std::pair<int, int>> edges;  // unordered pairs stored (p < q)

  bool adjacent(int p, int q) const;
  static CouplingMap line(int n);
  static CouplingMap grid(int rows, int cols);
};

struct RoutingResult {
  Circuit routed_circuit;  // gates on physical qubits, SWAPs included
  int depth = 0;
  int swap_count = 0;
};

// Cyclic entangling ansatz: per range d, an RY layer then n_q/gcd(n_q,d)
// CNOTs with control d*(n_q-j) mod n_q and target d*((n_q-j)-1) mod n_q.
Circuit build_cyclic(int n_q, const std::vector<int>& ranges = {1, 3});

// RY layers with reverse-linear CNOT entanglement; n_params = n_q*(reps+1).
Circuit build_real_amplitudes(int n_q, int reps);

// Per-asset time-pair Real-Amplitudes blocks over the 2*n_r qubits of
// (t, a) and (t+1, a), sequential in t, parallel across assets.
Circuit build_ora(const DpoConfig& config, int reps_per_block = 3);

// Blocked ansatz: intra-asset RA layers interleaved with inter-asset and
// inter-time CNOTs; n_params = 3 * n_t * n_a * 2 * n_r.
Circuit build_tailored(const DpoConfig& config);

// ASAP-scheduled depth.
int logical_depth(const Circuit& circuit);

// Deterministic SWAP insertion along BFS shortest paths (ties broken by
// lowest physical index), moving the control toward the target.
RoutingResult route_and_depth(const Circuit& circuit, const CouplingMap& map,
                              const std::vector<int>& layout);

std::string circuit_to_json(const Circuit& circuit);
CouplingMap load_coupling_map(const std::string& path);

}  // namespace dpo
