#include "dpo/circuit.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>

#include <json.hpp>

#include "dpo/errors.hpp"

namespace dpo {

const char* gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::RY: return "ry";
    case GateKind::RX: return "rx";
    case GateKind::RZ: return "rz";
    case GateKind::RZZ: return "rzz";
    case GateKind::CNOT: return "cnot";
    case GateKind::SWAP: return "swap";
  }
  return "?";
}

GateKind gate_kind_from_name(const std::string& name) {
  if (name == "ry") return GateKind::RY;
  if (name == "rx") return GateKind::RX;
  if (name == "rz") return GateKind::RZ;
  if (name == "rzz") return GateKind::RZZ;
  if (name == "cnot") return GateKind::CNOT;
  if (name == "swap") return GateKind::SWAP;
  throw Error("unknown gate kind: " + name);
}

bool CouplingMap::adjacent(int p, int q) const {
  if (p > q) std::swap(p, q);
  return edges.count({p, q}) > 0;
}

CouplingMap CouplingMap::line(int n) {
  CouplingMap map;
  map.n_physical = n;
  for (int i = 0; i + 1 < n; ++i) map.edges.insert({i, i + 1});
  return map;
}

CouplingMap CouplingMap::grid(int rows, int cols) {
  CouplingMap map;
  map.n_physical = rows * cols;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int p = r * cols + c;
      if (c + 1 < cols) map.edges.insert({p, p + 1});
      if (r + 1 < rows) map.edges.insert({p, p + cols});
    }
  }
  return map;
}

namespace {

void append_ry_layer(Circuit& circuit, const std::vector<int>& qubits) {
  for (int q : qubits) {
    circuit.gates.push_back({GateKind::RY, {q}, circuit.n_params++, 0.0});
  }
}

// Reverse-linear Real-Amplitudes body over an ordered qubit list: `reps`
// repetitions of [RY layer, CNOT chain bottom-up], then a final RY layer.
void append_real_amplitudes(Circuit& circuit, const std::vector<int>& qubits,
                            int reps) {
  const int n = static_cast<int>(qubits.size());
  for (int rep = 0; rep < reps; ++rep) {
    append_ry_layer(circuit, qubits);
    for (int q = n - 2; q >= 0; --q) {
      circuit.gates.push_back(
          {GateKind::CNOT, {qubits[q], qubits[q + 1]}, std::nullopt, 0.0});
    }
  }
  append_ry_layer(circuit, qubits);
}

}  // namespace

Circuit build_cyclic(int n_q, const std::vector<int>& ranges) {
  if (n_q < 2) throw Error("build_cyclic: need at least 2 qubits");
  Circuit circuit;
  circuit.n_qubits = n_q;
  std::vector<int> all(n_q);
  std::iota(all.begin(), all.end(), 0);
  for (int d : ranges) {
    if (d < 1) throw Error("build_cyclic: range must be positive");
    if (d % n_q == 0) {
      throw DegenerateBlock("build_cyclic: range " + std::to_string(d) +
                            " is a multiple of " + std::to_string(n_q));
    }
    append_ry_layer(circuit, all);
    const int count = n_q / std::gcd(n_q, d);
    for (int j = 1; j <= count; ++j) {
      const int control = (d * (n_q - j)) % n_q;
      const int target = (((d * ((n_q - j) - 1)) % n_q) + n_q) % n_q;
      circuit.gates.push_back({GateKind::CNOT, {control, target}, std::nullopt, 0.0});
    }
  }
  return circuit;
}

Circuit build_real_amplitudes(int n_q, int reps) {
  if (n_q < 1) throw Error("build_real_amplitudes: need at least 1 qubit");
  if (reps < 0) throw Error("build_real_amplitudes: reps must be >= 0");
  Circuit circuit;
  circuit.n_qubits = n_q;
  std::vector<int> all(n_q);
  std::iota(all.begin(), all.end(), 0);
  append_real_amplitudes(circuit, all, reps);
  return circuit;
}

Circuit build_ora(const DpoConfig& config, int reps_per_block) {
  if (config.n_t < 2) {
    throw TooFewTimeSteps("build_ora: needs at least 2 time steps");
  }
  Circuit circuit;
  circuit.n_qubits = config.n_q();
  for (int t = 0; t + 1 < config.n_t; ++t) {
    for (int a = 0; a < config.n_a; ++a) {
      std::vector<int> block;
      block.reserve(2 * config.n_r);
      for (int r = 0; r < config.n_r; ++r) {
        block.push_back(qubit_index(t, a, r, config));
      }
      for (int r = 0; r < config.n_r; ++r) {
        block.push_back(qubit_index(t + 1, a, r, config));
      }
      append_real_amplitudes(circuit, block, reps_per_block);
    }
  }
  return circuit;
}

Circuit build_tailored(const DpoConfig& config) {
  Circuit circuit;
  circuit.n_qubits = config.n_q();

  auto block_qubits = [&](int t, int a) {
    std::vector<int> qubits;
    qubits.reserve(config.n_r);
    for (int r = 0; r < config.n_r; ++r) {
      qubits.push_back(qubit_index(t, a, r, config));
    }
    return qubits;
  };
  auto intra_asset_layer = [&] {
    for (int t = 0; t < config.n_t; ++t) {
      for (int a = 0; a < config.n_a; ++a) {
        append_real_amplitudes(circuit, block_qubits(t, a), 1);
      }
    }
  };

  // (i) intra-asset
  intra_asset_layer();
  // (ii) inter-asset: boundary qubits of adjacent blocks in each time column
  for (int t = 0; t < config.n_t; ++t) {
    for (int a = 0; a + 1 < config.n_a; ++a) {
      const int control = qubit_index(t, a, config.n_r - 1, config);
      const int target = qubit_index(t, a + 1, 0, config);
      circuit.gates.push_back({GateKind::CNOT, {control, target}, std::nullopt, 0.0});
    }
  }
  // (iii) intra-asset
  intra_asset_layer();
  // (iv) inter-time: one CNOT per (t, t+1) block pair, control on the lower index
  for (int a = 0; a < config.n_a; ++a) {
    for (int t = 0; t + 1 < config.n_t; ++t) {
      const int control = qubit_index(t, a, 0, config);
      const int target = qubit_index(t + 1, a, 0, config);
      circuit.gates.push_back({GateKind::CNOT, {control, target}, std::nullopt, 0.0});
    }
  }
  // (v) intra-asset
  intra_asset_layer();
  return circuit;
}

int logical_depth(const Circuit& circuit) {
  std::vector<int> level(circuit.n_qubits, 0);
  int depth = 0;
  for (const auto& gate : circuit.gates) {
    int d = 0;
    for (int q : gate.qubits) d = std::max(d, level[q]);
    ++d;
    for (int q : gate.qubits) level[q] = d;
    depth = std::max(depth, d);
  }
  return depth;
}

namespace {

// BFS shortest path with lowest-index tie-breaking; processing neighbors in
// ascending order from a FIFO queue makes the parent choice deterministic.
std::vector<int> shortest_path(const CouplingMap& map, int from, int to) {
  std::vector<std::vector<int>> adj(map.n_physical);
  for (const auto& [p, q] : map.edges) {
    adj[p].push_back(q);
    adj[q].push_back(p);
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());

  std::vector<int> parent(map.n_physical, -1);
  std::vector<bool> seen(map.n_physical, false);
  std::queue<int> frontier;
  frontier.push(from);
  seen[from] = true;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    if (u == to) break;
    for (int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        parent[v] = u;
        frontier.push(v);
      }
    }
  }
  if (!seen[to]) {
    throw DisconnectedMap("route_and_depth: no path between physical qubits " +
                          std::to_string(from) + " and " + std::to_string(to));
  }
  std::vector<int> path;
  for (int v = to; v != -1; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

RoutingResult route_and_depth(const Circuit& circuit, const CouplingMap& map,
                              const std::vector<int>& layout) {
  if (static_cast<int>(layout.size()) != circuit.n_qubits) {
    throw Error("route_and_depth: layout size must match circuit qubits");
  }
  std::vector<int> phys = layout;  // logical -> physical, updated by SWAPs

  RoutingResult result;
  result.routed_circuit.n_qubits = map.n_physical;
  result.routed_circuit.n_params = circuit.n_params;

  for (const auto& gate : circuit.gates) {
    Gate mapped = gate;
    for (int& q : mapped.qubits) q = phys[q];
    if (gate.is_two_qubit() && !map.adjacent(mapped.qubits[0], mapped.qubits[1])) {
      const auto path = shortest_path(map, mapped.qubits[0], mapped.qubits[1]);
      // walk the control along the path until adjacent to the target
      for (std::size_t i = 0; i + 2 < path.size(); ++i) {
        result.routed_circuit.gates.push_back(
            {GateKind::SWAP, {path[i], path[i + 1]}, std::nullopt, 0.0});
        ++result.swap_count;
        for (int& p : phys) {
          if (p == path[i]) {
            p = path[i + 1];
          } else if (p == path[i + 1]) {
            p = path[i];
          }
        }
      }
      mapped.qubits[0] = path[path.size() - 2];
    }
    result.routed_circuit.gates.push_back(mapped);
  }
  result.depth = logical_depth(result.routed_circuit);
  return result;
}

std::string circuit_to_json(const Circuit& circuit) {
  nlohmann::ordered_json doc;
  doc["n_qubits"] = circuit.n_qubits;
  doc["n_params"] = circuit.n_params;
  doc["gates"] = nlohmann::ordered_json::array();
  for (const auto& gate : circuit.gates) {
    nlohmann::ordered_json g;
    g["kind"] = gate_kind_name(gate.kind);
    g["qubits"] = gate.qubits;
    if (gate.param_slot) {
      g["param_slot"] = *gate.param_slot;
    } else if (gate.kind == GateKind::RY || gate.kind == GateKind::RX ||
               gate.kind == GateKind::RZ || gate.kind == GateKind::RZZ) {
      g["angle"] = gate.fixed_angle;
    }
    doc["gates"].push_back(g);
  }
  return doc.dump(2);
}

CouplingMap load_coupling_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open coupling map file: " + path);
  CouplingMap map;
  int p, q;
  while (in >> p >> q) {
    if (p == q || p < 0 || q < 0) {
      throw Error("coupling map: bad edge " + std::to_string(p) + " " +
                  std::to_string(q));
    }
    if (p > q) std::swap(p, q);
    map.edges.insert({p, q});
    map.n_physical = std::max(map.n_physical, q + 1);
  }
  return map;
}

}  // namespace dpo
