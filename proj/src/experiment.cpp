#include "dpo/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "dpo/errors.hpp"

namespace dpo {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

using Section = std::map<std::string, std::string>;

std::map<std::string, Section> parse_ini(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  std::map<std::string, Section> sections;
  std::string current;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw Error(path + ":" + std::to_string(line_no) + ": bad section header");
      }
      current = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(path + ":" + std::to_string(line_no) + ": expected key = value");
    }
    sections[current][trim(line.substr(0, eq))] =
        unquote(trim(line.substr(eq + 1)));
  }
  return sections;
}

double to_double(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    throw Error("config: bad numeric value for " + key + ": `" + v + "`");
  }
}

long to_long(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    throw Error("config: bad integer value for " + key + ": `" + v + "`");
  }
}

AnsatzKind ansatz_from_name(const std::string& name) {
  if (name == "cyclic") return AnsatzKind::Cyclic;
  if (name == "real_amplitudes") return AnsatzKind::RealAmplitudes;
  if (name == "ora") return AnsatzKind::Ora;
  if (name == "tailored") return AnsatzKind::Tailored;
  throw Error("config: unknown ansatz `" + name + "`");
}

}  // namespace

bool apply_size_preset(const std::string& name, DpoConfig& config) {
  struct Preset {
    const char* name;
    int n_t, n_a, n_r;
    double k;
  };
  static constexpr Preset presets[] = {
      {"xs", 2, 3, 1, 2},  {"s", 5, 4, 1, 3},   {"m", 7, 4, 1, 3},
      {"l", 4, 7, 2, 5},   {"xl", 4, 7, 3, 12}, {"xxl", 4, 7, 4, 25},
  };
  for (const auto& p : presets) {
    if (name == p.name) {
      config.n_t = p.n_t;
      config.n_a = p.n_a;
      config.n_r = p.n_r;
      config.k_budget = p.k;
      return true;
    }
  }
  return false;
}

ExperimentConfig parse_experiment_file(const std::string& path) {
  const auto sections = parse_ini(path);
  ExperimentConfig config;

  auto get = [&](const std::string& section, const std::string& key,
                 auto&& apply) {
    const auto sit = sections.find(section);
    if (sit == sections.end()) return;
    const auto kit = sit->second.find(key);
    if (kit == sit->second.end()) return;
    apply(kit->second);
  };

  // [problem] preset first so explicit keys can override it
  get("problem", "preset", [&](const std::string& v) {
    if (!apply_size_preset(v, config.problem)) {
      throw Error("config: unknown size preset `" + v + "`");
    }
  });
  get("problem", "n_t", [&](const std::string& v) {
    config.problem.n_t = static_cast<int>(to_long(v, "n_t"));
  });
  get("problem", "n_a", [&](const std::string& v) {
    config.problem.n_a = static_cast<int>(to_long(v, "n_a"));
  });
  get("problem", "n_r", [&](const std::string& v) {
    config.problem.n_r = static_cast<int>(to_long(v, "n_r"));
  });
  get("problem", "k_budget", [&](const std::string& v) {
    config.problem.k_budget = to_double(v, "k_budget");
  });
  get("problem", "gamma", [&](const std::string& v) {
    config.problem.gamma = to_double(v, "gamma");
  });
  get("problem", "nu", [&](const std::string& v) {
    config.problem.nu = to_double(v, "nu");
  });
  get("problem", "rho", [&](const std::string& v) {
    config.problem.rho = to_double(v, "rho");
  });

  get("data", "source", [&](const std::string& v) { config.data_source = v; });
  get("data", "csv_path", [&](const std::string& v) { config.csv_path = v; });
  get("data", "n_days", [&](const std::string& v) {
    config.n_days = static_cast<int>(to_long(v, "n_days"));
  });
  get("data", "seed", [&](const std::string& v) {
    config.data_seed = static_cast<std::uint64_t>(to_long(v, "seed"));
  });
  get("data", "delta_t_days", [&](const std::string& v) {
    config.delta_t_days = static_cast<int>(to_long(v, "delta_t_days"));
  });

  get("run", "method", [&](const std::string& v) { config.method = v; });
  get("run", "ansatz", [&](const std::string& v) {
    config.run.ansatz = ansatz_from_name(v);
  });
  get("run", "ra_reps", [&](const std::string& v) {
    config.run.ra_reps = static_cast<int>(to_long(v, "ra_reps"));
  });
  get("run", "ora_reps", [&](const std::string& v) {
    config.run.ora_reps = static_cast<int>(to_long(v, "ora_reps"));
  });
  get("run", "optimizer", [&](const std::string& v) {
    if (v == "de") {
      config.run.optimizer = OptimizerKind::De;
    } else if (v == "cg") {
      config.run.optimizer = OptimizerKind::Cg;
    } else {
      throw Error("config: unknown optimizer `" + v + "`");
    }
  });
  get("run", "estimator", [&](const std::string& v) {
    if (v == "exact") {
      config.run.exact_estimator = true;
    } else if (v == "shots") {
      config.run.exact_estimator = false;
    } else {
      throw Error("config: estimator must be `exact` or `shots`");
    }
  });
  get("run", "estimator_shots", [&](const std::string& v) {
    config.run.estimator_shots = static_cast<int>(to_long(v, "estimator_shots"));
  });
  get("run", "sampler_shots", [&](const std::string& v) {
    config.run.sampler_shots = static_cast<int>(to_long(v, "sampler_shots"));
  });
  get("run", "seed", [&](const std::string& v) {
    config.run.seed = static_cast<std::uint64_t>(to_long(v, "seed"));
    config.run.de.seed = config.run.seed;
    config.sae.seed = config.run.seed;
  });
  get("run", "de_pop", [&](const std::string& v) {
    config.run.de.pop_size = static_cast<int>(to_long(v, "de_pop"));
  });
  get("run", "de_generations", [&](const std::string& v) {
    config.run.de.generations = static_cast<int>(to_long(v, "de_generations"));
  });
  get("run", "de_elitist_pool", [&](const std::string& v) {
    config.run.de.elitist_pool = static_cast<int>(to_long(v, "de_elitist_pool"));
  });
  get("run", "cg_max_iter", [&](const std::string& v) {
    config.run.cg_max_iter = static_cast<int>(to_long(v, "cg_max_iter"));
  });
  get("run", "sa_sweeps", [&](const std::string& v) {
    config.sa_sweeps = static_cast<int>(to_long(v, "sa_sweeps"));
  });
  get("run", "sa_restarts", [&](const std::string& v) {
    config.sa_restarts = static_cast<int>(to_long(v, "sa_restarts"));
  });
  get("run", "sa_beta_initial", [&](const std::string& v) {
    config.sa_beta_initial = to_double(v, "sa_beta_initial");
  });
  get("run", "sa_beta_final", [&](const std::string& v) {
    config.sa_beta_final = to_double(v, "sa_beta_final");
  });
  get("run", "sae_total_time", [&](const std::string& v) {
    config.sae.total_time = to_double(v, "sae_total_time");
  });
  get("run", "sae_trotter_steps", [&](const std::string& v) {
    config.sae.trotter_steps = static_cast<int>(to_long(v, "sae_trotter_steps"));
  });
  get("run", "sae_checkpoints", [&](const std::string& v) {
    config.sae.checkpoints = static_cast<int>(to_long(v, "sae_checkpoints"));
  });
  get("run", "random_shots", [&](const std::string& v) {
    config.random_shots = static_cast<int>(to_long(v, "random_shots"));
  });

  get("output", "directory",
      [&](const std::string& v) { config.output_directory = v; });

  if (config.problem.n_t < 1 || config.problem.n_a < 1 ||
      config.problem.n_r < 1 || config.problem.k_budget <= 0.0) {
    throw Error(
        "config: [problem] must define n_t, n_a, n_r, k_budget (directly or "
        "via preset)");
  }
  return config;
}

BuiltProblem build_problem(const ExperimentConfig& config) {
  BuiltProblem built;
  const DpoConfig& p = config.problem;
  built.grid = make_grid(config.delta_t_days, p.n_t);

  if (config.data_source == "zeros") {
    built.model.mu.assign(p.n_t, std::vector<double>(p.n_a, 0.0));
    built.model.sigma.assign(
        p.n_t,
        std::vector<std::vector<double>>(p.n_a, std::vector<double>(p.n_a, 0.0)));
  } else {
    if (config.data_source == "csv") {
      built.series = load_prices_csv(config.csv_path);
    } else if (config.data_source == "synthetic") {
      const int needed = built.grid.anchor_indices.back() + 1;
      const int days = std::max(config.n_days, needed);
      built.series = generate_synthetic_prices(p.n_a, days, config.data_seed);
    } else {
      throw Error("config: unknown data source `" + config.data_source + "`");
    }
    if (static_cast<int>(built.series.n_assets()) < p.n_a) {
      throw Error("config: data provides fewer assets than n_a");
    }
    // first n_a tickers in lexicographic order
    if (static_cast<int>(built.series.n_assets()) > p.n_a) {
      built.series.tickers.resize(p.n_a);
      for (auto& row : built.series.prices) row.resize(p.n_a);
    }
    built.model = build_market_model(built.series, built.grid);
  }

  built.qubo = build_qubo(p, built.model);
  built.ising = qubo_to_ising(built.qubo);
  return built;
}

}  // namespace dpo
