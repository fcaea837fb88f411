import math

import pytest

import _dpo as dpo


def xs_config():
    cfg = dpo.DpoConfig()
    cfg.n_t, cfg.n_a, cfg.n_r, cfg.k_budget = 2, 3, 1, 2.0
    return cfg


def zero_model(n_t, n_a):
    model = dpo.MarketModel()
    model.mu = [[0.0] * n_a for _ in range(n_t)]
    model.sigma = [[[0.0] * n_a for _ in range(n_a)] for _ in range(n_t)]
    return model


def test_synthetic_data_and_model():
    series = dpo.generate_synthetic_prices(3, 100, 7)
    assert series.n_days() == 100
    assert series.n_assets() == 3
    grid = dpo.make_grid(30, 2)
    model = dpo.build_market_model(series, grid)
    assert len(model.mu) == 2
    assert len(model.sigma[0]) == 3


def test_problem_round_trip():
    cfg = xs_config()
    qubo = dpo.build_qubo(cfg, zero_model(2, 3))
    assert qubo.n_vars == 6
    h = dpo.qubo_to_ising(qubo)
    assert qubo.evaluate("000000") == pytest.approx(2.0)
    assert dpo.cost_of_bitstring(h, "000000") == pytest.approx(2.0)
    assert dpo.offset(h) == pytest.approx(h.identity_coeff)
    assert dpo.lambda_coefficient(cfg) == pytest.approx(2 ** (1 / 3) * 2.0)
    rebuilt = dpo.ising_from_json(dpo.ising_to_json(h))
    assert dpo.cost_of_bitstring(rebuilt, "101010") == pytest.approx(
        dpo.cost_of_bitstring(h, "101010")
    )


def test_ansatz_and_simulation():
    cfg = xs_config()
    circuit = dpo.build_ansatz("real_amplitudes", cfg, reps=3)
    assert circuit.n_qubits == 6
    assert circuit.n_params == 24
    amps = dpo.simulate_amplitudes(circuit, [0.0] * 24)
    assert abs(amps[0]) == pytest.approx(1.0)
    assert dpo.logical_depth(circuit) == 13

    big = dpo.build_ansatz("real_amplitudes", _xxl(), reps=3)
    assert big.n_params == 448


def _xxl():
    cfg = dpo.DpoConfig()
    cfg.n_t, cfg.n_a, cfg.n_r, cfg.k_budget = 4, 7, 4, 25.0
    return cfg


def test_vqe_matches_exhaustive():
    cfg = xs_config()
    model = zero_model(2, 3)
    h = dpo.qubo_to_ising(dpo.build_qubo(cfg, model))
    exact = dpo.exhaustive_search(h)
    run = dpo.VqeRunConfig()
    run.seed = 3
    run.de.seed = 3
    run.de.generations = 40
    report = dpo.run_vqe(h, cfg, model, run)
    assert report.min_cost == pytest.approx(exact.min_cost)
    assert report.best_bitstring == exact.argmin
    assert report.min_cost <= report.expectation_at_optimum + 1e-12


def test_baselines_agree():
    cfg = xs_config()
    model = zero_model(2, 3)
    h = dpo.qubo_to_ising(dpo.build_qubo(cfg, model))
    exact = dpo.exhaustive_search(h)
    sa = dpo.simulated_annealing(h, sweeps=200, restarts=10, seed=1)
    assert sa.min_cost == pytest.approx(exact.min_cost)

    sae_cfg = dpo.SaeConfig()
    sae_cfg.total_time = 7.0
    sae_cfg.seed = 1
    trace = dpo.sae_run(h, sae_cfg)
    assert trace.expectations[0] == pytest.approx(dpo.offset(h))
    assert trace.expectations[-1] < dpo.offset(h)


def test_optimizer_binding():
    cfg = dpo.DeConfig()
    cfg.pop_size = 15
    cfg.generations = 40
    cfg.seed = 1
    result = dpo.differential_evolution(lambda x: sum(v * v for v in x), 3, cfg)
    assert result.best_cost < 1e-2


def test_routing():
    cfg = xs_config()
    circuit = dpo.build_ansatz("cyclic", cfg)
    line = dpo.CouplingMap.line(6)
    routed = dpo.route_and_depth(circuit, line, list(range(6)))
    assert routed.depth >= dpo.logical_depth(circuit)
    assert routed.swap_count > 0


def test_errors_surface_as_python_exceptions():
    h = dpo.IsingHamiltonian()
    h.n_qubits = 2
    with pytest.raises(RuntimeError):
        dpo.cost_of_bitstring(h, "0")
