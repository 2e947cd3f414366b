// Copyright 2026 The qnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <filesystem>
#include <optional>

#include "qnet/collision.hpp"
#include "qnet/config.hpp"
#include "qnet/entanglement.hpp"
#include "qnet/optimizer.hpp"
#include "qnet/presets.hpp"

namespace qnet {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitUnknownScenario = 2,
  kExitOutputError = 3,
  kExitSimulationError = 4,
};

class UnknownScenarioError : public std::runtime_error {
 public:
  explicit UnknownScenarioError(const std::string& name)
      : std::runtime_error("unknown scenario: " + name) {}
};

class OutputError : public std::runtime_error {
 public:
  explicit OutputError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ScenarioContext {
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  int threads = 0;
  std::optional<double> horizon;  // overrides the scenario default
};

namespace detail {

inline std::ofstream open_output(const std::string& dir, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const std::string path = (std::filesystem::path(dir) / name).string();
  std::ofstream out(path);
  if (!out) throw OutputError("cannot write output file: " + path);
  return out;
}

inline nlohmann::json versions_json() {
  nlohmann::json v;
  v["qnet"] = kVersion;
  v["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." +
               std::to_string(EIGEN_MAJOR_VERSION) + "." +
               std::to_string(EIGEN_MINOR_VERSION);
  return v;
}

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / (n - 1);
  return out;
}

inline std::vector<double> logspace(double la, double lb, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i)
    out[i] = std::pow(10.0, la + (lb - la) * i / (n - 1));
  return out;
}

}  // namespace detail

// ---- scenario implementations ----
// Each returns the manifest's "options" and "results" blocks and writes its
// CSV artifacts into ctx.out_dir. All randomness is derived from ctx.seed.

namespace scenarios {

// FMO network, finite horizon: zero-dephasing trajectory plus the published
// optimal rate vector.
inline void fmo_t5(const ScenarioContext& ctx, nlohmann::json& options,
                   nlohmann::json& results) {
  const double horizon = ctx.horizon.value_or(5.0);
  options["horizon"] = horizon_to_json(horizon);

  NetworkSpec spec = fmo_preset();
  Trajectory zero = evolve(spec, initial_site(spec, 1), horizon);
  {
    std::ostringstream os;
    zero.write_csv(os);
    detail::open_output(ctx.out_dir, "fmo-t5_zero.csv") << os.str();
  }

  NetworkSpec opt_spec = spec;
  opt_spec.gamma_deph = fmo_t5_optimal_rates();
  Trajectory opt = evolve_expm(opt_spec, initial_site(opt_spec, 1), horizon);
  {
    std::ostringstream os;
    opt.write_csv(os);
    detail::open_output(ctx.out_dir, "fmo-t5_optimal.csv") << os.str();
  }

  results["p_sink_zero"] = zero.final_p_sink();
  results["p_sink_optimal"] = opt.final_p_sink();
}

// FMO network, infinite horizon: zero dephasing, the published optimal
// vector, and an independent optimizer run at the default budget.
inline void fmo_inf(const ScenarioContext& ctx, nlohmann::json& options,
                    nlohmann::json& results) {
  NetworkSpec spec = fmo_preset();
  options["horizon"] = "inf";

  results["p_sink_zero"] = p_sink_infinite(spec);
  NetworkSpec paper = spec;
  paper.gamma_deph = fmo_inf_optimal_rates();
  results["p_sink_paper_vector"] = p_sink_infinite(paper);

  OptimizationProblem prob;
  prob.spec = spec;
  prob.horizon = kInfiniteHorizon;
  prob.seed = ctx.seed;
  prob.threads = ctx.threads;
  OptimizationResult r = optimize_dephasing(prob);
  results["p_sink_optimized"] = r.best_value;
  results["gamma_opt"] = r.best_gamma;
  results["evaluations"] = r.evaluations;

  auto out = detail::open_output(ctx.out_dir, "fmo-inf_gamma_opt.csv");
  out << "gamma_1,gamma_2,gamma_3,gamma_4,gamma_5,gamma_6,gamma_7\n";
  csv_row(out, r.best_gamma);
}

// Site-energy sweep of the three-site chain with per-point optimization.
inline void fig2(const ScenarioContext& ctx, nlohmann::json& options,
                 nlohmann::json& results) {
  SweepOptions opt;
  opt.optimize = true;
  opt.restarts = 6;
  opt.budget = 3000;
  opt.seed = ctx.seed;
  opt.threads = ctx.threads;
  options["grid"] = {0.0, 20.0, 41};
  options["restarts"] = opt.restarts;
  options["budget"] = opt.budget;

  SweepTable table = sweep(fig2_chain(), SweepVariable::parse("omega_2"),
                           detail::linspace(0.0, 20.0, 41), opt);
  {
    std::ostringstream os;
    table.write_csv(os);
    detail::open_output(ctx.out_dir, "fig2.csv") << os.str();
  }
  for (const auto& row : table.rows) {
    if (row.value == 1.0) results["delta_p_at_omega2_1"] = row.delta_p;
    if (row.value == 4.0) results["delta_p_at_omega2_4"] = row.delta_p;
  }
}

// Dephasing sweep on the detuned three-site chain (omega_2 = 4).
inline void fig3(const ScenarioContext& ctx, nlohmann::json& options,
                 nlohmann::json& results) {
  std::vector<double> grid = {0.0};
  for (double g : detail::logspace(-2.0, 3.0, 61)) grid.push_back(g);
  options["grid"] = {"0 plus logspace", -2.0, 3.0, 61};

  SweepTable table =
      sweep(fig2_chain(4.0), SweepVariable::parse("gamma_2"), grid, {});
  {
    std::ostringstream os;
    table.write_csv(os);
    detail::open_output(ctx.out_dir, "fig3.csv") << os.str();
  }

  double best = -1.0, best_g = 0.0;
  for (const auto& row : table.rows)
    if (row.p_sink > best) {
      best = row.p_sink;
      best_g = row.value;
    }
  results["p_at_gamma2_0"] = table.rows.front().p_sink;
  results["p_at_gamma2_1e3"] = table.rows.back().p_sink;
  results["max_p"] = best;
  results["argmax_gamma2"] = best_g;
}

// Entanglement propagation on the four-site chain: ancilla Bell pair with
// site 1, zero dephasing versus the transfer-optimal rates recomputed here.
inline void fig4(const ScenarioContext& ctx, nlohmann::json& options,
                 nlohmann::json& results) {
  const double horizon = ctx.horizon.value_or(4.0);
  options["horizon"] = horizon_to_json(horizon);
  options["n_samples"] = 201;

  OptimizationProblem prob;
  prob.spec = fig4_chain();
  prob.horizon = kInfiniteHorizon;
  prob.restarts = 8;
  prob.budget = 4000;
  prob.seed = ctx.seed;
  prob.threads = ctx.threads;
  OptimizationResult r = optimize_dephasing(prob);
  results["gamma_opt"] = r.best_gamma;
  results["p_sink_zero"] = r.baseline;
  results["p_sink_optimal"] = r.best_value;

  AncillaNetwork net = fig4_ancilla_network();
  EntanglementOptions eopt;
  eopt.n_samples = 201;
  EntanglementTrajectory zero = entanglement_trajectory(
      net, std::vector<double>(4, 0.0), horizon, eopt);
  EntanglementTrajectory opt =
      entanglement_trajectory(net, r.best_gamma, horizon, eopt);
  {
    std::ostringstream os;
    zero.write_csv(os);
    detail::open_output(ctx.out_dir, "fig4_zero.csv") << os.str();
  }
  {
    std::ostringstream os;
    opt.write_csv(os);
    detail::open_output(ctx.out_dir, "fig4_optimal.csv") << os.str();
  }

  double max_increase = -1.0;
  for (size_t i = 0; i < zero.times.size(); ++i)
    for (int k = 0; k < zero.n_chain_sites; ++k)
      max_increase =
          std::max(max_increase, opt.concurrence[i][k] - zero.concurrence[i][k]);
  results["max_concurrence_increase"] = max_increase;
}

// Collision-model dephasing on the FMO network: the published T=5 optimal
// rates scaled by four factors, plus the Lindblad reference at factor 1.
inline void fig6(const ScenarioContext& ctx, nlohmann::json& options,
                 nlohmann::json& results) {
  const double horizon = ctx.horizon.value_or(5.0);
  const double dt = 1e-3;
  const std::vector<double> factors = {0.0, 0.0064, 0.16, 1.0};
  options["horizon"] = horizon_to_json(horizon);
  options["dt"] = dt;
  options["factors"] = factors;

  NetworkSpec spec = fmo_preset();
  const std::vector<double> gopt = fmo_t5_optimal_rates();

  nlohmann::json p_factors = nlohmann::json::array();
  double p_factor1 = 0.0;
  for (size_t i = 0; i < factors.size(); ++i) {
    std::vector<double> rates = gopt;
    for (double& g : rates) g *= factors[i];
    CollisionSchedule schedule = calibrated_schedule(rates, dt, horizon);
    Trajectory tr = collision_evolve(spec, schedule);
    std::ostringstream name;
    name << "fig6_factor" << i << ".csv";
    std::ostringstream os;
    tr.write_csv(os);
    detail::open_output(ctx.out_dir, name.str()) << os.str();
    p_factors.push_back(tr.final_p_sink());
    if (factors[i] == 1.0) p_factor1 = tr.final_p_sink();
  }
  results["p_sink_factors"] = p_factors;

  NetworkSpec lind = spec;
  lind.gamma_deph = gopt;
  Trajectory ref = evolve_expm(lind, initial_site(lind, 1), horizon);
  {
    std::ostringstream os;
    ref.write_csv(os);
    detail::open_output(ctx.out_dir, "fig6_lindblad.csv") << os.str();
  }
  results["p_sink_lindblad"] = ref.final_p_sink();
  results["rel_dev_factor1"] =
      (p_factor1 - ref.final_p_sink()) / ref.final_p_sink();
}

// Uniform chains: optimized dephasing never beats the zero-dephasing
// baseline. Three random draws per chain length, finite and infinite horizon.
inline void uniform_chain_null(const ScenarioContext& ctx, nlohmann::json& options,
                               nlohmann::json& results) {
  const int draws = 3;
  options["lengths"] = {2, 3, 4, 5, 6};
  options["draws"] = draws;
  options["restarts"] = 4;
  options["budget"] = 1000;

  auto out = detail::open_output(ctx.out_dir, "uniform-chain-null.csv");
  out << "n,draw,horizon,gamma_diss,v,sink_rate,p_baseline,p_best,delta_p\n";

  double max_dp = 0.0;
  int runs = 0;
  for (int n = 2; n <= 6; ++n) {
    for (int draw = 0; draw < draws; ++draw) {
      RestartRng rng(ctx.seed, 9000 + 10 * n + draw);
      const double gam = std::pow(10.0, -3.0 + 3.0 * rng.uniform());
      const double v = std::pow(10.0, -2.0 + 2.0 * rng.uniform());
      const double sink = std::pow(10.0, -2.0 + 3.0 * rng.uniform());
      NetworkSpec spec = linear_chain(n, v, std::vector<double>(n, 1.0),
                                      std::vector<double>(n, gam), sink);
      for (double horizon : {5.0, kInfiniteHorizon}) {
        OptimizationProblem prob;
        prob.spec = spec;
        prob.horizon = horizon;
        prob.restarts = 4;
        prob.budget = 1000;
        prob.seed = ctx.seed;
        prob.threads = ctx.threads;
        OptimizationResult r = optimize_dephasing(prob);
        const double dp = r.best_value - r.baseline;
        max_dp = std::max(max_dp, dp);
        ++runs;
        out << n << "," << draw << "," << csv_num(horizon) << ","
            << csv_num(gam) << "," << csv_num(v) << "," << csv_num(sink) << ","
            << csv_num(r.baseline) << "," << csv_num(r.best_value) << ","
            << csv_num(dp) << "\n";
      }
    }
  }
  results["max_delta_p"] = max_dp;
  results["runs"] = runs;
}

}  // namespace scenarios

struct Scenario {
  std::string name;
  std::string summary;
  void (*run)(const ScenarioContext&, nlohmann::json&, nlohmann::json&);
};

inline const std::vector<Scenario>& scenario_registry() {
  static const std::vector<Scenario> registry = {
      {"fmo-t5", "FMO complex, horizon 5: zero vs published optimal dephasing",
       scenarios::fmo_t5},
      {"fmo-inf", "FMO complex, infinite horizon, with optimizer run",
       scenarios::fmo_inf},
      {"fig2", "three-site chain: site-energy sweep with per-point optimization",
       scenarios::fig2},
      {"fig3", "detuned three-site chain: dephasing sweep", scenarios::fig3},
      {"fig4", "four-site chain: ancilla entanglement, zero vs optimal dephasing",
       scenarios::fig4},
      {"fig6", "FMO collision-model dephasing at scaled optimal rates",
       scenarios::fig6},
      {"uniform-chain-null", "uniform chains: optimization cannot beat zero",
       scenarios::uniform_chain_null},
  };
  return registry;
}

inline const Scenario& find_scenario(const std::string& name) {
  const std::string resolved = (name == "fmo") ? "fmo-t5" : name;
  for (const auto& s : scenario_registry())
    if (s.name == resolved) return s;
  throw UnknownScenarioError(name);
}

// Runs a scenario and writes its CSV artifacts plus <name>_manifest.json.
// Returns the manifest.
inline nlohmann::json run_scenario(const std::string& name,
                                   const ScenarioContext& ctx) {
  const Scenario& sc = find_scenario(name);
  nlohmann::json manifest;
  manifest["scenario"] = sc.name;
  manifest["seed"] = ctx.seed;
  manifest["versions"] = detail::versions_json();

  nlohmann::json options = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  const auto t0 = std::chrono::steady_clock::now();
  sc.run(ctx, options, results);
  const auto t1 = std::chrono::steady_clock::now();
  manifest["options"] = options;
  manifest["results"] = results;
  manifest["wall_time_s"] = std::chrono::duration<double>(t1 - t0).count();

  detail::open_output(ctx.out_dir, sc.name + "_manifest.json")
      << manifest.dump(2) << "\n";
  return manifest;
}

// Re-runs the scenario recorded in a manifest with the recorded seed and
// options; CSV outputs are reproduced bit-for-bit.
inline nlohmann::json rerun_from_manifest(const std::string& manifest_path,
                                          const std::string& out_dir,
                                          int threads = 0) {
  std::ifstream in(manifest_path);
  if (!in) throw ConfigError("cannot open manifest: " + manifest_path);
  nlohmann::json m;
  try {
    in >> m;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("cannot parse manifest: ") + e.what());
  }
  ScenarioContext ctx;
  ctx.out_dir = out_dir;
  ctx.seed = m.at("seed").get<std::uint64_t>();
  ctx.threads = threads;
  if (m.contains("options") && m["options"].contains("horizon"))
    ctx.horizon = horizon_from_json(m["options"]["horizon"]);
  return run_scenario(m.at("scenario").get<std::string>(), ctx);
}

}  // namespace qnet
