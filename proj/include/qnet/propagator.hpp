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

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "qnet/csv.hpp"
#include "qnet/network.hpp"

namespace qnet {

inline constexpr double kInfiniteHorizon = std::numeric_limits<double>::infinity();

struct Tolerances {
  double rtol = 1e-9;
  double atol = 1e-12;
};

struct IntegratorDiagnostics {
  long steps = 0;
  long rejected = 0;
  double max_trace_drift = 0.0;
  bool expm_fallback = false;
};

class IntegrationError : public std::runtime_error {
 public:
  IntegratorDiagnostics diag;
  IntegrationError(const std::string& msg, IntegratorDiagnostics d)
      : std::runtime_error(msg), diag(d) {}
};

// Raised when the transient block of the generator is singular, e.g. a dark
// state disconnected from every decay path. Carries the smallest singular
// value as the non-convergence certificate.
class SingularTransientError : public std::runtime_error {
 public:
  double smallest_singular_value;
  explicit SingularTransientError(double sv)
      : std::runtime_error("transient block is singular (smallest singular value " +
                           csv_num(sv) + ")"),
        smallest_singular_value(sv) {}
};

struct Trajectory {
  int n_sites = 0;
  std::vector<double> times;
  std::vector<Eigen::VectorXd> populations;  // one length-(N+2) vector per sample
  std::vector<SEDensityMatrix> snapshots;    // filled only on request
  IntegratorDiagnostics diag;

  double final_p_sink() const {
    if (populations.empty()) throw std::runtime_error("empty trajectory");
    return populations.back()(n_sites + 1);
  }

  // Header: t,p_vac,p_1,...,p_N,p_sink
  void write_csv(std::ostream& os) const {
    os << "t,p_vac";
    for (int k = 1; k <= n_sites; ++k) os << ",p_" << k;
    os << ",p_sink\n";
    for (size_t i = 0; i < times.size(); ++i) {
      std::vector<double> row;
      row.reserve(populations[i].size() + 1);
      row.push_back(times[i]);
      for (int j = 0; j < populations[i].size(); ++j)
        row.push_back(populations[i](j));
      csv_row(os, row);
    }
  }
};

namespace detail {

inline Eigen::VectorXd populations_of(const SEDensityMatrix& rho) {
  return rho.diagonal().real();
}

inline void record_sample(Trajectory& tr, double t, const SEDensityMatrix& rho,
                          bool keep_snapshot) {
  tr.times.push_back(t);
  tr.populations.push_back(populations_of(rho));
  if (keep_snapshot) tr.snapshots.push_back(rho);
  tr.diag.max_trace_drift =
      std::max(tr.diag.max_trace_drift, std::abs(trace_real(rho) - 1.0));
}

// One Dormand-Prince 5(4) attempt from (t, y) with step h.
// Returns the embedded error estimate normalized against tolerances.
struct Dp45Workspace {
  Eigen::VectorXcd k1, k2, k3, k4, k5, k6, k7, y5, err;
};

inline double dp45_step(const Superoperator& lv, const Eigen::VectorXcd& y,
                        double h, const Tolerances& tol, Dp45Workspace& w,
                        bool have_k1) {
  if (!have_k1) w.k1 = lv * y;
  w.k2 = lv * (y + h * (1.0 / 5.0) * w.k1);
  w.k3 = lv * (y + h * ((3.0 / 40.0) * w.k1 + (9.0 / 40.0) * w.k2));
  w.k4 = lv * (y + h * ((44.0 / 45.0) * w.k1 - (56.0 / 15.0) * w.k2 +
                        (32.0 / 9.0) * w.k3));
  w.k5 = lv * (y + h * ((19372.0 / 6561.0) * w.k1 - (25360.0 / 2187.0) * w.k2 +
                        (64448.0 / 6561.0) * w.k3 - (212.0 / 729.0) * w.k4));
  w.k6 = lv * (y + h * ((9017.0 / 3168.0) * w.k1 - (355.0 / 33.0) * w.k2 +
                        (46732.0 / 5247.0) * w.k3 + (49.0 / 176.0) * w.k4 -
                        (5103.0 / 18656.0) * w.k5));
  w.y5 = y + h * ((35.0 / 384.0) * w.k1 + (500.0 / 1113.0) * w.k3 +
                  (125.0 / 192.0) * w.k4 - (2187.0 / 6784.0) * w.k5 +
                  (11.0 / 84.0) * w.k6);
  w.k7 = lv * w.y5;
  w.err = h * ((71.0 / 57600.0) * w.k1 - (71.0 / 16695.0) * w.k3 +
               (71.0 / 1920.0) * w.k4 - (17253.0 / 339200.0) * w.k5 +
               (22.0 / 525.0) * w.k6 - (1.0 / 40.0) * w.k7);
  double acc = 0.0;
  const auto n = y.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    double sc = tol.atol + tol.rtol * std::max(std::abs(y(i)), std::abs(w.y5(i)));
    double e = std::abs(w.err(i)) / sc;
    acc += e * e;
  }
  return std::sqrt(acc / static_cast<double>(n));
}

}  // namespace detail

// Fixed-grid propagation with a precomputed matrix exponential. Unconditionally
// stable, so it is the backend of choice for stiff (large-rate) generators.
inline Trajectory evolve_expm(const Superoperator& lv, const SEDensityMatrix& rho0,
                              double horizon, int n_samples = 200,
                              bool keep_snapshots = false) {
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw std::invalid_argument("horizon must be positive and finite");
  if (n_samples < 2) throw std::invalid_argument("need at least two samples");
  const int d = static_cast<int>(rho0.rows());
  const double dt = horizon / (n_samples - 1);
  const Eigen::MatrixXcd step = (lv * dt).exp();

  Trajectory tr;
  tr.n_sites = d - 2;
  detail::record_sample(tr, 0.0, rho0, keep_snapshots);
  Eigen::VectorXcd y = vec(rho0);
  for (int i = 1; i < n_samples; ++i) {
    y = step * y;
    detail::record_sample(tr, i * dt, unvec(y, d), keep_snapshots);
    ++tr.diag.steps;
  }
  return tr;
}

// Adaptive embedded Runge-Kutta 4(5) integration of drho/dt = L rho with
// uniform output sampling. Falls back to the matrix-exponential path when the
// step controller rejects more than 10^4 steps (stiff generator), recording
// the fallback in the diagnostics.
inline Trajectory evolve(const Superoperator& lv, const SEDensityMatrix& rho0,
                         double horizon, const Tolerances& tol = {},
                         int n_samples = 200, bool keep_snapshots = false) {
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw std::invalid_argument("horizon must be positive and finite");
  if (n_samples < 2) throw std::invalid_argument("need at least two samples");
  if (!(tol.rtol > 0.0) || !(tol.atol > 0.0))
    throw std::invalid_argument("tolerances must be positive");
  const int d = static_cast<int>(rho0.rows());
  const long max_rejected = 10000;

  Trajectory tr;
  tr.n_sites = d - 2;
  detail::record_sample(tr, 0.0, rho0, keep_snapshots);

  Eigen::VectorXcd y = vec(rho0);
  detail::Dp45Workspace w;
  double t = 0.0;
  double h = horizon / 100.0;
  bool have_k1 = false;

  for (int i = 1; i < n_samples; ++i) {
    const double t_target = horizon * i / (n_samples - 1);
    while (t < t_target) {
      bool clipped = false;
      if (h > t_target - t) {
        h = t_target - t;
        clipped = true;
      }
      if (h <= std::abs(t) * 1e-16 + 1e-300) {
        throw IntegrationError("step size underflow at t=" + csv_num(t), tr.diag);
      }
      double err = detail::dp45_step(lv, y, h, tol, w, have_k1);
      if (err <= 1.0) {
        t += h;
        y = w.y5;
        w.k1 = w.k7;  // first-same-as-last
        have_k1 = true;
        ++tr.diag.steps;
      } else {
        ++tr.diag.rejected;
        if (tr.diag.rejected > max_rejected) {
          Trajectory fb = evolve_expm(lv, rho0, horizon, n_samples, keep_snapshots);
          fb.diag.rejected = tr.diag.rejected;
          fb.diag.expm_fallback = true;
          return fb;
        }
      }
      double scale = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
      double grown = h * std::clamp(scale, 0.2, 5.0);
      // a step clipped to hit the sample boundary must not poison the
      // controller's idea of the natural step size
      h = clipped ? std::max(grown, h) : grown;
    }
    detail::record_sample(tr, t_target, unvec(y, d), keep_snapshots);
  }
  return tr;
}

inline Trajectory evolve(const NetworkSpec& spec, const SEDensityMatrix& rho0,
                         double horizon, const Tolerances& tol = {},
                         int n_samples = 200, bool keep_snapshots = false) {
  return evolve(build_liouvillian(spec), rho0, horizon, tol, n_samples,
                keep_snapshots);
}

inline Trajectory evolve_expm(const NetworkSpec& spec, const SEDensityMatrix& rho0,
                              double horizon, int n_samples = 200,
                              bool keep_snapshots = false) {
  return evolve_expm(build_liouvillian(spec), rho0, horizon, n_samples,
                     keep_snapshots);
}

// Infinite-horizon sink population by direct linear solve on the site-site
// block. Writing x for the vectorized block restricted to site pairs (the only
// coordinates that feed the sink), dx/dt = T x is autonomous with T invertible
// whenever every site has a decay path, and
//   p_sink(inf) = 2 Gamma_sink * (-T^{-1} x0)[(k_s, k_s)].
inline double p_sink_infinite(const NetworkSpec& spec, const SEDensityMatrix& rho0) {
  spec.validate();
  const int n = spec.n_sites;
  const Eigen::MatrixXcd h = build_hamiltonian(spec);
  const Complex i1(0.0, 1.0);
  auto idx = [n](int k, int l) { return (k - 1) + (l - 1) * n; };  // 1-based sites

  Eigen::MatrixXcd tm = Eigen::MatrixXcd::Zero(n * n, n * n);
  for (int k = 1; k <= n; ++k) {
    for (int l = 1; l <= n; ++l) {
      const int r = idx(k, l);
      for (int m = 1; m <= n; ++m) {
        tm(r, idx(m, l)) -= i1 * h(k, m);
        tm(r, idx(k, m)) += i1 * h(m, l);
      }
      double decay = spec.gamma_diss[k - 1] + spec.gamma_diss[l - 1];
      if (k != l) decay += spec.gamma_deph[k - 1] + spec.gamma_deph[l - 1];
      if (k == spec.sink_site) decay += spec.sink_rate;
      if (l == spec.sink_site) decay += spec.sink_rate;
      tm(r, r) -= decay;
    }
  }

  Eigen::VectorXcd x0(n * n);
  for (int k = 1; k <= n; ++k)
    for (int l = 1; l <= n; ++l) x0(idx(k, l)) = rho0(k, l);

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(tm);
  Eigen::VectorXcd y = lu.solve(-x0);
  double resid = (tm * y + x0).norm();
  double scale = tm.cwiseAbs().maxCoeff() * y.norm() + x0.norm();
  if (!y.allFinite() || resid > 1e-8 * std::max(scale, 1.0)) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(tm);
    throw SingularTransientError(svd.singularValues().minCoeff());
  }
  return 2.0 * spec.sink_rate * y(idx(spec.sink_site, spec.sink_site)).real();
}

inline double p_sink_infinite(const NetworkSpec& spec) {
  return p_sink_infinite(spec, initial_site(spec, 1));
}

// Finite- or infinite-horizon sink population. Finite horizons use the matrix
// exponential directly; T = inf dispatches to the linear solve.
inline double p_sink_at(const NetworkSpec& spec, double horizon,
                        const SEDensityMatrix& rho0) {
  if (std::isinf(horizon)) return p_sink_infinite(spec, rho0);
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  const Superoperator lv = build_liouvillian(spec);
  const Eigen::VectorXcd y = (lv * horizon).exp() * vec(rho0);
  const int d = spec.dim();
  return y((d - 1) + (d - 1) * d).real();
}

inline double p_sink_at(const NetworkSpec& spec, double horizon) {
  return p_sink_at(spec, horizon, initial_site(spec, 1));
}

}  // namespace qnet
