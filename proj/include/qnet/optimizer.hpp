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

#include <cstdint>
#include <future>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "qnet/propagator.hpp"

namespace qnet {

struct OptimizationProblem {
  NetworkSpec spec;
  double horizon = kInfiniteHorizon;
  std::vector<int> free_sites;  // 1-based; empty means every site is free
  int initial_site_index = 1;
  double gamma_max = 1e3;
  int restarts = 16;
  long budget = 20000;  // objective evaluations per restart
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware concurrency
  // step schedule: start at step_fraction*gamma_max, halve after
  // halve_after consecutive rejections, stop below stop_fraction*gamma_max
  double step_fraction = 0.05;
  int halve_after = 50;
  double stop_fraction = 1e-6;

  std::vector<int> resolved_free() const {
    if (!free_sites.empty()) return free_sites;
    std::vector<int> all(spec.n_sites);
    for (int k = 0; k < spec.n_sites; ++k) all[k] = k + 1;
    return all;
  }

  void validate() const {
    spec.validate();
    if (gamma_max <= 0) throw std::invalid_argument("gamma_max must be positive");
    if (restarts < 1) throw std::invalid_argument("need at least one restart");
    if (budget < 1) throw std::invalid_argument("budget must be positive");
    for (int k : free_sites)
      if (k < 1 || k > spec.n_sites)
        throw std::invalid_argument("free site index out of range");
    if (resolved_free().empty())
      throw std::invalid_argument("no free dephasing rates");
  }
};

struct RestartTrace {
  int restart = 0;
  double best_value = 0.0;
  std::vector<double> best_gamma;
  long evaluations = 0;
};

struct OptimizationResult {
  std::vector<double> best_gamma;
  double best_value = 0.0;
  double baseline = 0.0;     // objective at zero free dephasing
  double improvement = 0.0;  // best_value - baseline
  long evaluations = 0;
  std::vector<RestartTrace> traces;
};

class ObjectiveError : public std::runtime_error {
 public:
  std::vector<double> gamma;
  ObjectiveError(const std::string& msg, std::vector<double> g)
      : std::runtime_error(msg), gamma(std::move(g)) {}
};

// Deterministic per-restart random stream. Draws go through fixed bit
// mappings rather than std distributions so results are reproducible
// bit-for-bit for a given seed.
class RestartRng {
 public:
  RestartRng(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 scramble of (seed, stream) into the engine seed
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    eng_.seed(z ^ (z >> 31));
  }

  double uniform() {  // [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Sink-population objective with the gamma-independent parts precomputed.
// Infinite horizons reuse the transient-block matrix and only refresh its
// diagonal; finite horizons reuse the dephasing-free Liouvillian, whose
// dephasing contribution is diagonal in the vectorized basis.
class SinkObjective {
 public:
  SinkObjective(const NetworkSpec& spec, double horizon, int initial_site_index)
      : spec_(spec), horizon_(horizon), n_(spec.n_sites) {
    spec_.validate();
    rho0_ = initial_site(spec_, initial_site_index);
    if (std::isinf(horizon_)) {
      NetworkSpec base = spec_;
      base.gamma_deph.assign(n_, 0.0);
      const Eigen::MatrixXcd h = build_hamiltonian(base);
      const Complex i1(0.0, 1.0);
      tm0_ = Eigen::MatrixXcd::Zero(n_ * n_, n_ * n_);
      for (int k = 1; k <= n_; ++k) {
        for (int l = 1; l <= n_; ++l) {
          const int r = idx(k, l);
          for (int m = 1; m <= n_; ++m) {
            tm0_(r, idx(m, l)) -= i1 * h(k, m);
            tm0_(r, idx(k, m)) += i1 * h(m, l);
          }
          double decay = base.gamma_diss[k - 1] + base.gamma_diss[l - 1];
          if (k == base.sink_site) decay += base.sink_rate;
          if (l == base.sink_site) decay += base.sink_rate;
          tm0_(r, r) -= decay;
        }
      }
      x0_ = Eigen::VectorXcd::Zero(n_ * n_);
      for (int k = 1; k <= n_; ++k)
        for (int l = 1; l <= n_; ++l) x0_(idx(k, l)) = rho0_(k, l);
    } else {
      NetworkSpec base = spec_;
      base.gamma_deph.assign(n_, 0.0);
      lv0_ = build_liouvillian(base);
      y0_ = vec(rho0_);
    }
  }

  int n_sites() const { return n_; }

  double operator()(const std::vector<double>& gamma) const {
    try {
      return std::isinf(horizon_) ? eval_infinite(gamma) : eval_finite(gamma);
    } catch (const SingularTransientError&) {
      throw;
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << "objective evaluation failed (" << e.what() << ") at gamma = [";
      for (size_t i = 0; i < gamma.size(); ++i)
        os << (i ? "," : "") << csv_num(gamma[i]);
      os << "]";
      throw ObjectiveError(os.str(), gamma);
    }
  }

 private:
  int idx(int k, int l) const { return (k - 1) + (l - 1) * n_; }

  double eval_infinite(const std::vector<double>& gamma) const {
    Eigen::MatrixXcd tm = tm0_;
    for (int k = 1; k <= n_; ++k)
      for (int l = 1; l <= n_; ++l)
        if (k != l) tm(idx(k, l), idx(k, l)) -= gamma[k - 1] + gamma[l - 1];
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(tm);
    const Eigen::VectorXcd y = lu.solve(-x0_);
    if (!y.allFinite()) {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(tm);
      throw SingularTransientError(svd.singularValues().minCoeff());
    }
    return 2.0 * spec_.sink_rate * y(idx(spec_.sink_site, spec_.sink_site)).real();
  }

  double eval_finite(const std::vector<double>& gamma) const {
    const int d = n_ + 2;
    Eigen::MatrixXcd lv = lv0_;
    for (int i = 0; i < d; ++i) {
      const double gi = (i >= 1 && i <= n_) ? gamma[i - 1] : 0.0;
      for (int j = 0; j < d; ++j) {
        const double gj = (j >= 1 && j <= n_) ? gamma[j - 1] : 0.0;
        const int c = i + j * d;
        lv(c, c) += (i == j) ? Complex(0.0) : Complex(-(gi + gj));
      }
    }
    const Eigen::VectorXcd y = (lv * horizon_).exp() * y0_;
    return y((d - 1) + (d - 1) * d).real();
  }

  NetworkSpec spec_;
  double horizon_;
  int n_;
  SEDensityMatrix rho0_;
  Eigen::MatrixXcd tm0_;  // infinite horizon: gamma-free transient block
  Eigen::VectorXcd x0_;
  Superoperator lv0_;  // finite horizon: gamma-free Liouvillian
  Eigen::VectorXcd y0_;
};

namespace detail {

struct WalkResult {
  std::vector<double> gamma;
  double value;
  long evaluations;
};

// Accept-if-better random walk from one start point. Proposals perturb the
// free coordinates along a uniformly random direction, clipped to the box.
inline WalkResult directed_random_walk(const SinkObjective& objective,
                                       const OptimizationProblem& prob,
                                       std::vector<double> gamma,
                                       RestartRng& rng) {
  const std::vector<int> free = prob.resolved_free();
  double incumbent = objective(gamma);
  long evals = 1;
  double step = prob.step_fraction * prob.gamma_max;
  const double step_floor = prob.stop_fraction * prob.gamma_max;
  int rejects = 0;

  std::vector<double> dir(free.size());
  while (evals < prob.budget && step >= step_floor) {
    double norm2 = 0.0;
    for (double& u : dir) {
      u = rng.normal();
      norm2 += u * u;
    }
    if (norm2 == 0.0) continue;
    const double inv = 1.0 / std::sqrt(norm2);

    std::vector<double> cand = gamma;
    for (size_t i = 0; i < free.size(); ++i) {
      double g = cand[free[i] - 1] + step * dir[i] * inv;
      cand[free[i] - 1] = std::clamp(g, 0.0, prob.gamma_max);
    }
    const double val = objective(cand);
    ++evals;
    if (val > incumbent) {
      incumbent = val;
      gamma = std::move(cand);
      rejects = 0;
    } else if (++rejects >= prob.halve_after) {
      step *= 0.5;
      rejects = 0;
    }
  }
  return {std::move(gamma), incumbent, evals};
}

inline std::vector<double> start_point(const OptimizationProblem& prob,
                                       int restart, RestartRng& rng) {
  std::vector<double> gamma = prob.spec.gamma_deph;
  for (int k : prob.resolved_free()) gamma[k - 1] = 0.0;
  if (restart == 0) return gamma;  // the zero-dephasing start
  for (int k : prob.resolved_free()) {
    const double u = rng.uniform();
    const double lo = std::log10(1e-2);
    const double hi = std::log10(prob.gamma_max);
    gamma[k - 1] = std::pow(10.0, lo + (hi - lo) * u);
  }
  return gamma;
}

}  // namespace detail

// Derivative-free maximization of the sink population over the free dephasing
// rates: multiple independently seeded directed random walks, best result
// kept. Deterministic for a fixed seed regardless of thread scheduling.
inline OptimizationResult optimize_dephasing(const OptimizationProblem& prob) {
  prob.validate();
  const SinkObjective objective(prob.spec, prob.horizon, prob.initial_site_index);

  std::vector<double> zero = prob.spec.gamma_deph;
  for (int k : prob.resolved_free()) zero[k - 1] = 0.0;
  const double baseline = objective(zero);

  auto run_restart = [&](int r) {
    RestartRng rng(prob.seed, static_cast<std::uint64_t>(r));
    std::vector<double> start = detail::start_point(prob, r, rng);
    detail::WalkResult w = detail::directed_random_walk(objective, prob, start, rng);
    return RestartTrace{r, w.value, std::move(w.gamma), w.evaluations};
  };

  unsigned hw = std::thread::hardware_concurrency();
  int workers = prob.threads > 0 ? prob.threads : (hw ? static_cast<int>(hw) : 1);
  workers = std::min(workers, prob.restarts);

  std::vector<RestartTrace> traces(prob.restarts);
  if (workers <= 1) {
    for (int r = 0; r < prob.restarts; ++r) traces[r] = run_restart(r);
  } else {
    for (int base = 0; base < prob.restarts; base += workers) {
      const int end = std::min(base + workers, prob.restarts);
      std::vector<std::future<RestartTrace>> wave;
      for (int r = base; r < end; ++r)
        wave.push_back(std::async(std::launch::async, run_restart, r));
      for (int r = base; r < end; ++r) traces[r] = wave[r - base].get();
    }
  }

  OptimizationResult res;
  res.baseline = baseline;
  res.best_gamma = zero;
  res.best_value = baseline;  // the zero point is always a candidate
  res.evaluations = 1;
  for (auto& t : traces) {
    res.evaluations += t.evaluations;
    if (t.best_value > res.best_value) {
      res.best_value = t.best_value;
      res.best_gamma = t.best_gamma;
    }
  }
  res.improvement = res.best_value - res.baseline;
  res.traces = std::move(traces);
  return res;
}

// ---- parameter sweeps ----

struct SweepVariable {
  enum class Kind { Omega, GammaDeph, Coupling } kind = Kind::Omega;
  int k = 0;
  int l = 0;  // second index for couplings

  // accepted forms: omega_2, gamma_2, v_1_2
  static SweepVariable parse(const std::string& name) {
    SweepVariable v;
    auto take_index = [&](const std::string& s) {
      size_t pos = 0;
      int value = std::stoi(s, &pos);
      if (pos != s.size()) throw std::invalid_argument("bad sweep variable index");
      return value;
    };
    if (name.rfind("omega_", 0) == 0) {
      v.kind = Kind::Omega;
      v.k = take_index(name.substr(6));
    } else if (name.rfind("gamma_", 0) == 0) {
      v.kind = Kind::GammaDeph;
      v.k = take_index(name.substr(6));
    } else if (name.rfind("v_", 0) == 0) {
      const std::string rest = name.substr(2);
      const size_t sep = rest.find('_');
      if (sep == std::string::npos)
        throw std::invalid_argument("coupling variable needs two indices");
      v.kind = Kind::Coupling;
      v.k = take_index(rest.substr(0, sep));
      v.l = take_index(rest.substr(sep + 1));
    } else {
      throw std::invalid_argument("unknown sweep variable: " + name);
    }
    return v;
  }

  std::string label() const {
    switch (kind) {
      case Kind::Omega:
        return "omega_" + std::to_string(k);
      case Kind::GammaDeph:
        return "gamma_" + std::to_string(k);
      default:
        return "v_" + std::to_string(k) + "_" + std::to_string(l);
    }
  }

  NetworkSpec applied_to(const NetworkSpec& spec, double value) const {
    NetworkSpec out = spec;
    switch (kind) {
      case Kind::Omega:
        if (k < 1 || k > spec.n_sites)
          throw std::invalid_argument("sweep site index out of range");
        out.omega[k - 1] = value;
        break;
      case Kind::GammaDeph:
        if (k < 1 || k > spec.n_sites)
          throw std::invalid_argument("sweep site index out of range");
        out.gamma_deph[k - 1] = value;
        break;
      case Kind::Coupling: {
        bool found = false;
        for (auto& c : out.couplings)
          if ((c.k == k && c.l == l) || (c.k == l && c.l == k)) {
            c.v = value;
            found = true;
          }
        if (!found) out.couplings.push_back({k, l, value});
        break;
      }
    }
    return out;
  }
};

struct SweepRow {
  double value = 0.0;
  double p_sink = 0.0;
  double p_sink_opt = 0.0;  // only meaningful when optimized
  double delta_p = 0.0;
};

struct SweepTable {
  std::string variable;
  bool optimized = false;
  std::vector<SweepRow> rows;

  void write_csv(std::ostream& os) const {
    if (optimized) {
      os << variable << ",p_sink_0,p_sink_opt,delta_p\n";
      for (const auto& r : rows)
        csv_row(os, {r.value, r.p_sink, r.p_sink_opt, r.delta_p});
    } else {
      os << variable << ",p_sink\n";
      for (const auto& r : rows) csv_row(os, {r.value, r.p_sink});
    }
  }
};

struct SweepOptions {
  bool optimize = false;
  double horizon = kInfiniteHorizon;
  int initial_site_index = 1;
  int restarts = 6;
  long budget = 3000;
  std::uint64_t seed = 0;
  int threads = 0;
};

inline SweepTable sweep(const NetworkSpec& spec, const SweepVariable& variable,
                        const std::vector<double>& grid, const SweepOptions& opt) {
  SweepTable table;
  table.variable = variable.label();
  table.optimized = opt.optimize;
  for (double value : grid) {
    const NetworkSpec point = variable.applied_to(spec, value);
    SweepRow row;
    row.value = value;
    row.p_sink = p_sink_at(point, opt.horizon,
                           initial_site(point, opt.initial_site_index));
    if (opt.optimize) {
      OptimizationProblem prob;
      prob.spec = point;
      prob.horizon = opt.horizon;
      prob.initial_site_index = opt.initial_site_index;
      prob.restarts = opt.restarts;
      prob.budget = opt.budget;
      prob.seed = opt.seed;
      prob.threads = opt.threads;
      OptimizationResult r = optimize_dephasing(prob);
      row.p_sink_opt = r.best_value;
      row.delta_p = r.best_value - row.p_sink;
    }
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace qnet
