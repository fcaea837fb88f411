#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dpo/baselines.hpp"
#include "dpo/errors.hpp"
#include "dpo/experiment.hpp"
#include "dpo/json_io.hpp"
#include "dpo/vqe.hpp"

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw dpo::Error("cannot open for writing: " + path);
  out << text;
}

dpo::RunReport solve_with_method(const dpo::ExperimentConfig& config,
                                 const std::string& method,
                                 const dpo::BuiltProblem& built) {
  using namespace dpo;
  if (method == "vqe") {
    return run_vqe(built.ising, config.problem, built.model, config.run);
  }
  if (method == "exhaustive") {
    const auto result = exhaustive_search(built.ising);
    RunReport report;
    report.method = "exhaustive";
    report.min_cost = result.min_cost;
    report.best_bitstring = result.argmin;
    report.offset = offset(built.ising);
    Trajectory traj = decode_bitstring(result.argmin, config.problem);
    try {
      report.sharpe = sharpe_ratio(traj, built.model);
    } catch (const ZeroRisk&) {
    }
    report.best_trajectory = std::move(traj);
    return report;
  }
  if (method == "sa") {
    const auto result =
        simulated_annealing(built.ising, config.sa_sweeps, config.sa_beta_initial,
                            config.sa_beta_final, config.sa_restarts,
                            config.run.seed);
    RunReport report;
    report.method = "sa";
    report.min_cost = result.min_cost;
    report.best_bitstring = result.argmin;
    report.offset = offset(built.ising);
    Trajectory traj = decode_bitstring(result.argmin, config.problem);
    try {
      report.sharpe = sharpe_ratio(traj, built.model);
    } catch (const ZeroRisk&) {
    }
    report.best_trajectory = std::move(traj);
    return report;
  }
  if (method == "sae") {
    const auto trace = sae_run(built.ising, config.sae);
    RunReport report;
    report.method = "sae";
    report.distribution = trace.final_distribution;
    report.offset = offset(built.ising);
    report.pct_below_offset =
        pct_below_offset(report.distribution, report.offset);
    report.min_cost = std::numeric_limits<double>::infinity();
    for (const auto& [bits, n] : trace.final_samples.counts) {
      const double c = cost_of_bitstring(built.ising, bits);
      if (c < report.min_cost) {
        report.min_cost = c;
        report.best_bitstring = bits;
      }
    }
    report.expectation_at_optimum = trace.expectations.back();
    Trajectory traj = decode_bitstring(report.best_bitstring, config.problem);
    try {
      report.sharpe = sharpe_ratio(traj, built.model);
    } catch (const ZeroRisk&) {
    }
    report.best_trajectory = std::move(traj);
    return report;
  }
  if (method == "random") {
    const int shots = config.random_shots > 0
                          ? config.random_shots
                          : default_sampler_shots(built.ising.n_qubits);
    return random_baseline(built.ising, shots, config.run.seed, &config.problem,
                           &built.model);
  }
  throw CLI::ValidationError("--method",
                             "unknown method `" + method +
                                 "` (expected vqe|exhaustive|sa|sae|random)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic portfolio optimization via VQE and classical baselines"};
  app.require_subcommand(1);

  // gen-data
  auto* gen = app.add_subcommand("gen-data", "Write a synthetic price CSV");
  int gen_assets = 7;
  int gen_days = 210;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("--assets", gen_assets, "Number of assets")->check(CLI::PositiveNumber);
  gen->add_option("--days", gen_days, "Number of trading days")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--out", gen_out, "Output CSV path")->required();

  // build
  auto* build = app.add_subcommand("build", "Build the QUBO/Ising problem");
  std::string build_config;
  std::string build_out;
  build->add_option("--config", build_config, "Experiment config file")->required();
  build->add_option("--out", build_out, "Output problem JSON path")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "Solve with the selected method");
  std::string solve_config;
  std::string solve_method;
  std::string solve_out;
  solve->add_option("--config", solve_config, "Experiment config file")->required();
  solve->add_option("--method", solve_method,
                    "vqe|exhaustive|sa|sae|random (overrides config)");
  solve->add_option("--out", solve_out, "Output report JSON path")->required();

  // report
  auto* report_cmd = app.add_subcommand("report", "Derive CSVs from a report");
  std::string report_in;
  std::string report_hist;
  report_cmd->add_option("--in", report_in, "Report JSON path")->required();
  report_cmd->add_option("--hist", report_hist, "Histogram CSV output")->required();

  // depth
  auto* depth_cmd = app.add_subcommand("depth", "Ansatz size and depth figures");
  std::string depth_config;
  std::string depth_ansatz;
  std::string depth_coupling;
  depth_cmd->add_option("--config", depth_config, "Experiment config file")->required();
  depth_cmd->add_option("--ansatz", depth_ansatz,
                        "cyclic|real_amplitudes|ora|tailored (overrides config)");
  depth_cmd->add_option("--coupling", depth_coupling, "Coupling map edge list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::stringstream msg;
    const int code = app.exit(e, msg, msg);
    std::cerr << msg.str();
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      const auto series =
          dpo::generate_synthetic_prices(gen_assets, gen_days, gen_seed);
      dpo::write_prices_csv(series, gen_out);
      std::cerr << "wrote " << series.n_days() << " days x "
                << series.n_assets() << " assets to " << gen_out << "\n";
    } else if (build->parsed()) {
      const auto config = dpo::parse_experiment_file(build_config);
      const auto built = dpo::build_problem(config);
      nlohmann::ordered_json doc;
      doc["qubo"] = nlohmann::ordered_json::parse(dpo::qubo_to_json(built.qubo));
      doc["ising"] =
          nlohmann::ordered_json::parse(dpo::ising_to_json(built.ising));
      write_file(build_out, doc.dump(2));
      std::cerr << "wrote problem with " << built.qubo.n_vars
                << " variables to " << build_out << "\n";
    } else if (solve->parsed()) {
      const auto config = dpo::parse_experiment_file(solve_config);
      const std::string method =
          solve_method.empty() ? config.method : solve_method;
      const auto built = dpo::build_problem(config);
      const auto report = solve_with_method(config, method, built);
      write_file(solve_out, dpo::report_to_json(report));
      std::cerr << "method=" << method << " min_cost=" << report.min_cost
                << " offset=" << report.offset << "\n";
    } else if (report_cmd->parsed()) {
      std::ifstream in(report_in);
      if (!in) throw dpo::Error("cannot open report: " + report_in);
      nlohmann::json doc;
      in >> doc;
      std::ofstream hist(report_hist);
      if (!hist) throw dpo::Error("cannot open for writing: " + report_hist);
      hist << "cost_bin,count\n";
      hist.precision(17);
      for (const auto& entry : doc.at("distribution")) {
        hist << entry.at(0).get<double>() << ',' << entry.at(1).get<double>()
             << '\n';
      }
      std::cerr << "wrote histogram to " << report_hist << "\n";
    } else if (depth_cmd->parsed()) {
      auto config = dpo::parse_experiment_file(depth_config);
      if (!depth_ansatz.empty()) {
        if (depth_ansatz == "cyclic") {
          config.run.ansatz = dpo::AnsatzKind::Cyclic;
        } else if (depth_ansatz == "real_amplitudes") {
          config.run.ansatz = dpo::AnsatzKind::RealAmplitudes;
        } else if (depth_ansatz == "ora") {
          config.run.ansatz = dpo::AnsatzKind::Ora;
        } else if (depth_ansatz == "tailored") {
          config.run.ansatz = dpo::AnsatzKind::Tailored;
        } else {
          throw CLI::ValidationError("--ansatz", "unknown ansatz `" +
                                                     depth_ansatz + "`");
        }
      }
      const auto circuit = dpo::build_ansatz(config.run, config.problem);
      std::cerr << "n_qubits = " << circuit.n_qubits << "\n"
                << "n_params = " << circuit.n_params << "\n"
                << "logical_depth = " << dpo::logical_depth(circuit) << "\n";
      if (!depth_coupling.empty()) {
        const auto map = dpo::load_coupling_map(depth_coupling);
        std::vector<int> layout(circuit.n_qubits);
        std::iota(layout.begin(), layout.end(), 0);
        const auto routed = dpo::route_and_depth(circuit, map, layout);
        std::cerr << "routed_depth = " << routed.depth << "\n"
                  << "swap_count = " << routed.swap_count << "\n";
      }
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
