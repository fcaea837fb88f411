#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "dpo/circuit.hpp"
#include "dpo/errors.hpp"

namespace {

std::vector<std::pair<int, int>> cnot_list(const dpo::Circuit& c) {
  std::vector<std::pair<int, int>> out;
  for (const auto& g : c.gates) {
    if (g.kind == dpo::GateKind::CNOT) {
      out.emplace_back(g.qubits[0], g.qubits[1]);
    }
  }
  return out;
}

int count_kind(const dpo::Circuit& c, dpo::GateKind kind) {
  int n = 0;
  for (const auto& g : c.gates) {
    if (g.kind == kind) ++n;
  }
  return n;
}

void check_param_slots_contiguous(const dpo::Circuit& c) {
  std::vector<bool> seen(c.n_params, false);
  for (const auto& g : c.gates) {
    if (g.param_slot) {
      REQUIRE(*g.param_slot >= 0);
      REQUIRE(*g.param_slot < c.n_params);
      seen[*g.param_slot] = true;
    }
  }
  for (bool s : seen) CHECK(s);
}

}  // namespace

TEST_CASE("cyclic block CNOT lists match the hand-evaluated formulas") {
  SUBCASE("n_q=6, d=1") {
    const auto c = dpo::build_cyclic(6, {1});
    CHECK(cnot_list(c) == std::vector<std::pair<int, int>>{
                              {5, 4}, {4, 3}, {3, 2}, {2, 1}, {1, 0}, {0, 5}});
    CHECK(c.n_params == 6);  // one RY layer
  }
  SUBCASE("n_q=6, d=3") {
    const auto c = dpo::build_cyclic(6, {3});
    CHECK(cnot_list(c) == std::vector<std::pair<int, int>>{{3, 0}, {0, 3}});
  }
  SUBCASE("n_q=8 default-style ranges") {
    const auto c = dpo::build_cyclic(8, {1, 3});
    // d=1: 8 CNOTs; d=3: gcd(8,3)=1 so another 8
    CHECK(count_kind(c, dpo::GateKind::CNOT) == 16);
    CHECK(c.n_params == 16);  // two RY layers of 8
  }
}

TEST_CASE("cyclic CNOT count equals n_q / gcd(n_q, d)") {
  for (int n = 2; n <= 16; ++n) {
    for (int d = 1; d <= 8; ++d) {
      if (d % n == 0) {
        CHECK_THROWS_AS(dpo::build_cyclic(n, {d}), dpo::DegenerateBlock);
        continue;
      }
      const auto c = dpo::build_cyclic(n, {d});
      CHECK(count_kind(c, dpo::GateKind::CNOT) == n / std::gcd(n, d));
      // control != target everywhere
      for (const auto& [ctrl, tgt] : cnot_list(c)) CHECK(ctrl != tgt);
    }
  }
}

TEST_CASE("real amplitudes structure") {
  const auto big = dpo::build_real_amplitudes(112, 3);
  CHECK(big.n_params == 448);

  const auto c = dpo::build_real_amplitudes(6, 3);
  CHECK(c.n_params == 24);
  CHECK(count_kind(c, dpo::GateKind::CNOT) == 15);
  check_param_slots_contiguous(c);

  // reverse-linear order within a repetition
  const auto cnots = cnot_list(dpo::build_real_amplitudes(4, 1));
  CHECK(cnots == std::vector<std::pair<int, int>>{{2, 3}, {1, 2}, {0, 1}});

  const auto single = dpo::build_real_amplitudes(1, 2);
  CHECK(count_kind(single, dpo::GateKind::RY) == 3);
  CHECK(count_kind(single, dpo::GateKind::CNOT) == 0);
}

TEST_CASE("ora blocks") {
  dpo::DpoConfig xs;
  xs.n_t = 2;
  xs.n_a = 3;
  xs.n_r = 1;
  xs.k_budget = 2.0;
  const auto c = dpo::build_ora(xs, 3);
  // 3 blocks of 2 qubits, RA(2, 3) each: 8 params per block
  CHECK(c.n_qubits == 6);
  CHECK(c.n_params == 24);
  check_param_slots_contiguous(c);

  dpo::DpoConfig xxl;
  xxl.n_t = 4;
  xxl.n_a = 7;
  xxl.n_r = 4;
  xxl.k_budget = 25.0;
  const auto big = dpo::build_ora(xxl, 3);
  CHECK(big.n_qubits == 112);
  CHECK(big.n_params == 21 * 8 * 4);  // 21 blocks, RA(8,3) = 32 params each

  dpo::DpoConfig minimal;
  minimal.n_t = 2;
  minimal.n_a = 1;
  minimal.n_r = 2;
  minimal.k_budget = 3.0;
  const auto one_block = dpo::build_ora(minimal, 3);
  CHECK(one_block.n_params == 4 * 4);  // single RA(4,3) block

  dpo::DpoConfig short_time = minimal;
  short_time.n_t = 1;
  CHECK_THROWS_AS(dpo::build_ora(short_time, 3), dpo::TooFewTimeSteps);
}

TEST_CASE("tailored ansatz") {
  dpo::DpoConfig xxl;
  xxl.n_t = 4;
  xxl.n_a = 7;
  xxl.n_r = 4;
  xxl.k_budget = 25.0;
  const auto c = dpo::build_tailored(xxl);
  CHECK(c.n_qubits == 112);
  CHECK(c.n_params == 3 * 4 * 7 * 8);  // three intra layers x 28 blocks x 2 n_r
  check_param_slots_contiguous(c);

  dpo::DpoConfig small;
  small.n_t = 2;
  small.n_a = 3;
  small.n_r = 2;
  small.k_budget = 3.0;
  const auto s = dpo::build_tailored(small);
  // inter-time CNOTs: one per (asset, time pair)
  // inter-asset CNOTs: (n_a - 1) per time column
  // intra layers: RA(n_r, 1) per block, (n_r - 1) CNOTs each, 3 layers
  const int intra = 3 * small.n_t * small.n_a * (small.n_r - 1);
  const int inter_asset = small.n_t * (small.n_a - 1);
  const int inter_time = small.n_a * (small.n_t - 1);
  CHECK(count_kind(s, dpo::GateKind::CNOT) == intra + inter_asset + inter_time);
  CHECK(inter_time == 3);
}

TEST_CASE("logical depth") {
  dpo::Circuit single;
  single.n_qubits = 1;
  single.n_params = 1;
  single.gates.push_back({dpo::GateKind::RY, {0}, 0, 0.0});
  CHECK(dpo::logical_depth(single) == 1);

  dpo::Circuit pair;
  pair.n_qubits = 2;
  pair.n_params = 2;
  pair.gates.push_back({dpo::GateKind::RY, {0}, 0, 0.0});
  pair.gates.push_back({dpo::GateKind::RY, {1}, 1, 0.0});
  pair.gates.push_back({dpo::GateKind::CNOT, {0, 1}, std::nullopt, 0.0});
  CHECK(dpo::logical_depth(pair) == 2);

  // frozen golden value for the RA(6,3) ASAP schedule
  CHECK(dpo::logical_depth(dpo::build_real_amplitudes(6, 3)) == 13);
}

TEST_CASE("XXL depth ordering within this metric") {
  dpo::DpoConfig xxl;
  xxl.n_t = 4;
  xxl.n_a = 7;
  xxl.n_r = 4;
  xxl.k_budget = 25.0;
  const int tailored = dpo::logical_depth(dpo::build_tailored(xxl));
  const int ora = dpo::logical_depth(dpo::build_ora(xxl, 3));
  const int ra = dpo::logical_depth(dpo::build_real_amplitudes(112, 3));
  CHECK(tailored < ora);
  CHECK(ora < ra);
}

TEST_CASE("routing on a line") {
  dpo::Circuit c;
  c.n_qubits = 3;
  c.gates.push_back({dpo::GateKind::CNOT, {0, 2}, std::nullopt, 0.0});
  const auto map = dpo::CouplingMap::line(3);
  std::vector<int> layout = {0, 1, 2};
  const auto routed = dpo::route_and_depth(c, map, layout);
  CHECK(routed.swap_count == 1);
  // SWAP(0,1) then CNOT(1,2) share qubit 1, so they serialize
  CHECK(routed.depth == 2);
  for (const auto& g : routed.routed_circuit.gates) {
    if (g.is_two_qubit()) CHECK(map.adjacent(g.qubits[0], g.qubits[1]));
  }
}

TEST_CASE("conforming circuits route unchanged") {
  const auto c = dpo::build_real_amplitudes(5, 2);
  const auto map = dpo::CouplingMap::line(5);
  std::vector<int> layout = {0, 1, 2, 3, 4};
  const auto routed = dpo::route_and_depth(c, map, layout);
  CHECK(routed.swap_count == 0);
  CHECK(routed.depth == dpo::logical_depth(c));
}

TEST_CASE("tailored circuit routes swap-free on its matching grid") {
  dpo::DpoConfig cfg;
  cfg.n_t = 3;
  cfg.n_a = 3;
  cfg.n_r = 2;
  cfg.k_budget = 3.0;
  const auto c = dpo::build_tailored(cfg);
  // physical grid: row = a*n_r + r, column = t
  const int rows = cfg.n_a * cfg.n_r;
  const int cols = cfg.n_t;
  const auto map = dpo::CouplingMap::grid(rows, cols);
  std::vector<int> layout(c.n_qubits);
  for (int t = 0; t < cfg.n_t; ++t) {
    for (int a = 0; a < cfg.n_a; ++a) {
      for (int r = 0; r < cfg.n_r; ++r) {
        const int logical = r + cfg.n_r * a + t * (cfg.n_a * cfg.n_r);
        layout[logical] = (a * cfg.n_r + r) * cols + t;
      }
    }
  }
  const auto routed = dpo::route_and_depth(c, map, layout);
  CHECK(routed.swap_count == 0);
}

TEST_CASE("routing is deterministic") {
  const auto c = dpo::build_cyclic(6, {1, 3});
  const auto map = dpo::CouplingMap::line(6);
  std::vector<int> layout = {0, 1, 2, 3, 4, 5};
  const auto a = dpo::route_and_depth(c, map, layout);
  const auto b = dpo::route_and_depth(c, map, layout);
  CHECK(a.swap_count == b.swap_count);
  CHECK(a.depth == b.depth);
  REQUIRE(a.routed_circuit.gates.size() == b.routed_circuit.gates.size());
  for (std::size_t i = 0; i < a.routed_circuit.gates.size(); ++i) {
    CHECK(a.routed_circuit.gates[i].qubits == b.routed_circuit.gates[i].qubits);
  }
}

TEST_CASE("disconnected maps are rejected") {
  dpo::Circuit c;
  c.n_qubits = 3;
  c.gates.push_back({dpo::GateKind::CNOT, {0, 2}, std::nullopt, 0.0});
  dpo::CouplingMap map;
  map.n_physical = 3;
  map.edges = {{0, 1}};  // qubit 2 unreachable
  std::vector<int> layout = {0, 1, 2};
  CHECK_THROWS_AS(dpo::route_and_depth(c, map, layout), dpo::DisconnectedMap);
}

TEST_CASE("circuit json and coupling map files") {
  const auto c = dpo::build_real_amplitudes(3, 1);
  const auto doc = nlohmann::json::parse(dpo::circuit_to_json(c));
  CHECK(doc.at("n_qubits") == 3);
  CHECK(doc.at("n_params") == 6);
  CHECK(doc.at("gates").size() == c.gates.size());

  const std::string path = "circuit_test_map.txt";
  {
    std::ofstream out(path);
    out << "0 1\n1 2\n";
  }
  const auto map = dpo::load_coupling_map(path);
  CHECK(map.adjacent(0, 1));
  CHECK(map.adjacent(1, 2));
  CHECK_FALSE(map.adjacent(0, 2));
  std::remove(path.c_str());
}
