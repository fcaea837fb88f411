#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dpo/baselines.hpp"
#include "dpo/errors.hpp"
#include "dpo/experiment.hpp"
#include "dpo/json_io.hpp"
#include "dpo/vqe.hpp"

namespace py = pybind11;
using namespace dpo;

namespace {

AnsatzKind ansatz_kind(const std::string& name) {
  if (name == "cyclic") return AnsatzKind::Cyclic;
  if (name == "real_amplitudes") return AnsatzKind::RealAmplitudes;
  if (name == "ora") return AnsatzKind::Ora;
  if (name == "tailored") return AnsatzKind::Tailored;
  throw Error("unknown ansatz `" + name + "`");
}

}  // namespace

PYBIND11_MODULE(_dpo, m) {
  m.doc() = "Dynamic portfolio optimization: QUBO/Ising build, statevector "
            "VQE, and classical baselines";

  py::register_exception<Error>(m, "DpoError", PyExc_RuntimeError);

  // --- market data ---------------------------------------------------------
  py::class_<PriceSeries>(m, "PriceSeries")
      .def(py::init<>())
      .def_readwrite("tickers", &PriceSeries::tickers)
      .def_readwrite("dates", &PriceSeries::dates)
      .def_readwrite("prices", &PriceSeries::prices)
      .def("n_assets", &PriceSeries::n_assets)
      .def("n_days", &PriceSeries::n_days);

  py::class_<RebalanceGrid>(m, "RebalanceGrid")
      .def_readwrite("delta_t_days", &RebalanceGrid::delta_t_days)
      .def_readwrite("n_t", &RebalanceGrid::n_t)
      .def_readwrite("anchor_indices", &RebalanceGrid::anchor_indices);

  py::class_<MarketModel>(m, "MarketModel")
      .def(py::init<>())
      .def_readwrite("mu", &MarketModel::mu)
      .def_readwrite("sigma", &MarketModel::sigma);

  m.def("generate_synthetic_prices", &generate_synthetic_prices,
        py::arg("n_assets"), py::arg("n_days"), py::arg("seed"));
  m.def("load_prices_csv", &load_prices_csv, py::arg("path"));
  m.def("write_prices_csv", &write_prices_csv, py::arg("series"),
        py::arg("path"));
  m.def("make_grid", &make_grid, py::arg("delta_t_days"), py::arg("n_t"),
        py::arg("first_anchor") = -1);
  m.def("build_market_model", &build_market_model, py::arg("series"),
        py::arg("grid"));

  // --- problem -------------------------------------------------------------
  py::class_<DpoConfig>(m, "DpoConfig")
      .def(py::init<>())
      .def_readwrite("n_t", &DpoConfig::n_t)
      .def_readwrite("n_a", &DpoConfig::n_a)
      .def_readwrite("n_r", &DpoConfig::n_r)
      .def_readwrite("k_budget", &DpoConfig::k_budget)
      .def_readwrite("gamma", &DpoConfig::gamma)
      .def_readwrite("nu", &DpoConfig::nu)
      .def_readwrite("rho", &DpoConfig::rho)
      .def("n_q", &DpoConfig::n_q)
      .def("k_prime", &DpoConfig::k_prime);

  py::class_<QuboProblem>(m, "QuboProblem")
      .def_readwrite("n_vars", &QuboProblem::n_vars)
      .def_readwrite("constant", &QuboProblem::constant)
      .def_readwrite("linear", &QuboProblem::linear)
      .def_readwrite("quadratic", &QuboProblem::quadratic)
      .def("evaluate", &QuboProblem::evaluate, py::arg("bits"));

  py::class_<IsingHamiltonian>(m, "IsingHamiltonian")
      .def(py::init<>())
      .def_readwrite("n_qubits", &IsingHamiltonian::n_qubits)
      .def_readwrite("identity_coeff", &IsingHamiltonian::identity_coeff)
      .def_readwrite("h", &IsingHamiltonian::h)
      .def_readwrite("j", &IsingHamiltonian::j);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readwrite("omega", &Trajectory::omega)
      .def_readwrite("normalized", &Trajectory::normalized);

  m.def("lambda_coefficient", &lambda_coefficient, py::arg("config"));
  m.def("qubit_index", &qubit_index, py::arg("config"), py::arg("t"),
        py::arg("a"), py::arg("r"));
  m.def("build_qubo", &build_qubo, py::arg("config"), py::arg("model"));
  m.def("qubo_to_ising", &qubo_to_ising, py::arg("qubo"));
  m.def("cost_of_bitstring", &cost_of_bitstring, py::arg("hamiltonian"),
        py::arg("bits"));
  m.def("offset", &offset, py::arg("hamiltonian"));
  m.def("decode_bitstring", &decode_bitstring, py::arg("bits"),
        py::arg("config"));
  m.def("sharpe_ratio", &sharpe_ratio, py::arg("trajectory"), py::arg("model"));
  m.def("qubo_to_json", &qubo_to_json, py::arg("qubo"));
  m.def("qubo_from_json", &qubo_from_json, py::arg("text"));
  m.def("ising_to_json", &ising_to_json, py::arg("hamiltonian"));
  m.def("ising_from_json", &ising_from_json, py::arg("text"));

  // --- circuits ------------------------------------------------------------
  py::class_<Circuit>(m, "Circuit")
      .def_readonly("n_qubits", &Circuit::n_qubits)
      .def_readonly("n_params", &Circuit::n_params)
      .def("n_gates",
           [](const Circuit& c) { return c.gates.size(); });

  py::class_<CouplingMap>(m, "CouplingMap")
      .def_static("line", &CouplingMap::line, py::arg("n"))
      .def_static("grid", &CouplingMap::grid, py::arg("rows"), py::arg("cols"))
      .def("adjacent", &CouplingMap::adjacent, py::arg("p"), py::arg("q"));

  py::class_<RoutingResult>(m, "RoutingResult")
      .def_readonly("depth", &RoutingResult::depth)
      .def_readonly("swap_count", &RoutingResult::swap_count);

  m.def(
      "build_ansatz",
      [](const std::string& name, const DpoConfig& config, int reps,
         const std::vector<int>& cyclic_ranges) {
        VqeRunConfig run;
        run.ansatz = ansatz_kind(name);
        run.ra_reps = reps;
        run.ora_reps = reps;
        run.cyclic_ranges = cyclic_ranges;
        return build_ansatz(run, config);
      },
      py::arg("name"), py::arg("config"), py::arg("reps") = 3,
      py::arg("cyclic_ranges") = std::vector<int>{1, 3});
  m.def("logical_depth", &logical_depth, py::arg("circuit"));
  m.def("route_and_depth", &route_and_depth, py::arg("circuit"),
        py::arg("coupling"), py::arg("initial_layout"));
  m.def("circuit_to_json", &circuit_to_json, py::arg("circuit"));

  // --- simulation ----------------------------------------------------------
  m.def(
      "simulate_amplitudes",
      [](const Circuit& circuit, const std::vector<double>& params) {
        return simulate(circuit, params).amplitudes;
      },
      py::arg("circuit"), py::arg("params"));
  m.def(
      "expectation",
      [](const Circuit& circuit, const std::vector<double>& params,
         const IsingHamiltonian& h) {
        return expectation_diagonal(simulate(circuit, params), h);
      },
      py::arg("circuit"), py::arg("params"), py::arg("hamiltonian"));
  m.def(
      "sample_counts",
      [](const Circuit& circuit, const std::vector<double>& params, int shots,
         std::uint64_t seed) {
        return sample(simulate(circuit, params), shots, seed).counts;
      },
      py::arg("circuit"), py::arg("params"), py::arg("shots"), py::arg("seed"));

  // --- optimizers ----------------------------------------------------------
  py::class_<DeConfig>(m, "DeConfig")
      .def(py::init<>())
      .def_readwrite("pop_size", &DeConfig::pop_size)
      .def_readwrite("generations", &DeConfig::generations)
      .def_readwrite("recombination", &DeConfig::recombination)
      .def_readwrite("elitist_pool", &DeConfig::elitist_pool)
      .def_readwrite("seed", &DeConfig::seed);

  py::class_<OptResult>(m, "OptResult")
      .def_readonly("best_params", &OptResult::best_params)
      .def_readonly("best_cost", &OptResult::best_cost)
      .def_readonly("converged", &OptResult::converged)
      .def_readonly("evaluations", &OptResult::evaluations);

  m.def(
      "differential_evolution",
      [](const std::function<double(const std::vector<double>&)>& f,
         int n_params, const DeConfig& config) {
        return differential_evolution(f, n_params, config);
      },
      py::arg("objective"), py::arg("n_params"), py::arg("config"));

  // --- VQE and baselines ---------------------------------------------------
  py::class_<VqeRunConfig>(m, "VqeRunConfig")
      .def(py::init<>())
      .def_property(
          "ansatz",
          [](const VqeRunConfig& r) {
            switch (r.ansatz) {
              case AnsatzKind::Cyclic: return "cyclic";
              case AnsatzKind::RealAmplitudes: return "real_amplitudes";
              case AnsatzKind::Ora: return "ora";
              case AnsatzKind::Tailored: return "tailored";
            }
            return "";
          },
          [](VqeRunConfig& r, const std::string& v) { r.ansatz = ansatz_kind(v); })
      .def_readwrite("ra_reps", &VqeRunConfig::ra_reps)
      .def_readwrite("ora_reps", &VqeRunConfig::ora_reps)
      .def_readwrite("cyclic_ranges", &VqeRunConfig::cyclic_ranges)
      .def_property(
          "optimizer",
          [](const VqeRunConfig& r) {
            return r.optimizer == OptimizerKind::De ? "de" : "cg";
          },
          [](VqeRunConfig& r, const std::string& v) {
            if (v == "de") {
              r.optimizer = OptimizerKind::De;
            } else if (v == "cg") {
              r.optimizer = OptimizerKind::Cg;
            } else {
              throw Error("unknown optimizer `" + v + "`");
            }
          })
      .def_readwrite("de", &VqeRunConfig::de)
      .def_readwrite("cg_max_iter", &VqeRunConfig::cg_max_iter)
      .def_readwrite("exact_estimator", &VqeRunConfig::exact_estimator)
      .def_readwrite("estimator_shots", &VqeRunConfig::estimator_shots)
      .def_readwrite("sampler_shots", &VqeRunConfig::sampler_shots)
      .def_readwrite("seed", &VqeRunConfig::seed);

  py::class_<RunReport>(m, "RunReport")
      .def_readonly("method", &RunReport::method)
      .def_readonly("min_cost", &RunReport::min_cost)
      .def_readonly("best_bitstring", &RunReport::best_bitstring)
      .def_readonly("best_trajectory", &RunReport::best_trajectory)
      .def_readonly("sharpe", &RunReport::sharpe)
      .def_readonly("offset", &RunReport::offset)
      .def_readonly("pct_below_offset", &RunReport::pct_below_offset)
      .def_readonly("expectation_at_optimum", &RunReport::expectation_at_optimum)
      .def_readonly("evaluations", &RunReport::evaluations)
      .def("distribution_bins",
           [](const RunReport& r) { return r.distribution.bins; })
      .def("to_json", [](const RunReport& r) { return report_to_json(r); });

  m.def("run_vqe",
        [](const IsingHamiltonian& h, const DpoConfig& config,
           const MarketModel& model, const VqeRunConfig& run) {
          return run_vqe(h, config, model, run);
        },
        py::arg("hamiltonian"), py::arg("config"), py::arg("model"),
        py::arg("run"));
  m.def("random_baseline", &random_baseline, py::arg("hamiltonian"),
        py::arg("shots"), py::arg("seed"), py::arg("config") = nullptr,
        py::arg("model") = nullptr);

  py::class_<ExhaustiveResult>(m, "ExhaustiveResult")
      .def_readonly("min_cost", &ExhaustiveResult::min_cost)
      .def_readonly("argmin", &ExhaustiveResult::argmin);
  m.def("exhaustive_search",
        [](const IsingHamiltonian& h) { return exhaustive_search(h); },
        py::arg("hamiltonian"));

  py::class_<SaResult>(m, "SaResult")
      .def_readonly("min_cost", &SaResult::min_cost)
      .def_readonly("argmin", &SaResult::argmin);
  m.def("simulated_annealing", &simulated_annealing, py::arg("hamiltonian"),
        py::arg("sweeps") = 200, py::arg("beta_initial") = 0.1,
        py::arg("beta_final") = 10.0, py::arg("restarts") = 10,
        py::arg("seed") = 0);

  py::class_<SaeConfig>(m, "SaeConfig")
      .def(py::init<>())
      .def_readwrite("total_time", &SaeConfig::total_time)
      .def_readwrite("trotter_steps", &SaeConfig::trotter_steps)
      .def_readwrite("checkpoints", &SaeConfig::checkpoints)
      .def_readwrite("seed", &SaeConfig::seed)
      .def_readwrite("sampler_shots", &SaeConfig::sampler_shots);

  py::class_<SaeTrace>(m, "SaeTrace")
      .def_readonly("times", &SaeTrace::times)
      .def_readonly("expectations", &SaeTrace::expectations);
  m.def("sae_run", &sae_run, py::arg("hamiltonian"), py::arg("config"));

  // --- experiment files ----------------------------------------------------
  m.def(
      "solve_experiment",
      [](const std::string& config_path) {
        const auto config = parse_experiment_file(config_path);
        const auto built = build_problem(config);
        return run_vqe(built.ising, config.problem, built.model, config.run);
      },
      py::arg("config_path"),
      "Parse an experiment file, build the problem, and run VQE");
  m.def(
      "build_problem_json",
      [](const std::string& config_path) {
        const auto built = build_problem(parse_experiment_file(config_path));
        return py::make_tuple(qubo_to_json(built.qubo),
                              ising_to_json(built.ising));
      },
      py::arg("config_path"));
}
