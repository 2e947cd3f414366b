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

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qnet {

using Complex = std::complex<double>;

// Density matrix on the single-excitation sector.
// Basis index 0 is the vacuum, 1..N the site carrying the excitation,
// N+1 the sink. Dimension is therefore n_sites + 2.
using SEDensityMatrix = Eigen::MatrixXcd;

// Generator L acting on column-vectorized density matrices, drho/dt = L rho.
using Superoperator = Eigen::MatrixXcd;

struct Coupling {
  int k = 0;  // 1-based site index
  int l = 0;
  double v = 0.0;
};

// Dissipative quantum network with local dephasing and one sink attachment.
// All quantities are dimensionless; site indices are 1-based throughout.
struct NetworkSpec {
  int n_sites = 0;
  std::vector<double> omega;       // site excitation energies, length N
  std::vector<Coupling> couplings; // symmetric hopping amplitudes, each pair once
  std::vector<double> gamma_diss;  // dissipation rate parameters, length N
  std::vector<double> gamma_deph;  // dephasing rate parameters, length N
  int sink_site = 1;
  double sink_rate = 0.0;

  int dim() const { return n_sites + 2; }

  void validate() const {
    if (n_sites < 1) throw std::invalid_argument("n_sites must be >= 1");
    if (static_cast<int>(omega.size()) != n_sites)
      throw std::invalid_argument("omega length != n_sites");
    if (static_cast<int>(gamma_diss.size()) != n_sites)
      throw std::invalid_argument("gamma_diss length != n_sites");
    if (static_cast<int>(gamma_deph.size()) != n_sites)
      throw std::invalid_argument("gamma_deph length != n_sites");
    for (double g : gamma_diss)
      if (g < 0.0) throw std::invalid_argument("negative dissipation rate");
    for (double g : gamma_deph)
      if (g < 0.0) throw std::invalid_argument("negative dephasing rate");
    if (sink_site < 1 || sink_site > n_sites)
      throw std::invalid_argument("sink_site out of range");
    if (sink_rate < 0.0) throw std::invalid_argument("negative sink rate");
    std::vector<char> seen(static_cast<size_t>(n_sites) * n_sites, 0);
    for (const auto& c : couplings) {
      if (c.k < 1 || c.k > n_sites || c.l < 1 || c.l > n_sites)
        throw std::invalid_argument("coupling index out of range");
      if (c.k == c.l) throw std::invalid_argument("self-coupling not allowed");
      size_t a = static_cast<size_t>(std::min(c.k, c.l) - 1) * n_sites +
                 (std::max(c.k, c.l) - 1);
      if (seen[a]) throw std::invalid_argument("duplicate coupling pair");
      seen[a] = 1;
    }
  }

  double coupling_value(int k, int l) const {
    for (const auto& c : couplings)
      if ((c.k == k && c.l == l) || (c.k == l && c.l == k)) return c.v;
    return 0.0;
  }

  NetworkSpec with_dephasing(const std::vector<double>& g) const {
    if (static_cast<int>(g.size()) != n_sites)
      throw std::invalid_argument("dephasing vector length != n_sites");
    NetworkSpec out = *this;
    out.gamma_deph = g;
    return out;
  }
};

// Column-major vectorization, matching Eigen's default storage.
inline Eigen::VectorXcd vec(const SEDensityMatrix& rho) {
  return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

inline SEDensityMatrix unvec(const Eigen::VectorXcd& v, int d) {
  return Eigen::Map<const SEDensityMatrix>(v.data(), d, d);
}

inline Eigen::MatrixXcd build_hamiltonian(const NetworkSpec& spec) {
  spec.validate();
  const int d = spec.dim();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 1; k <= spec.n_sites; ++k) h(k, k) = spec.omega[k - 1];
  for (const auto& c : spec.couplings) {
    h(c.k, c.l) = c.v;
    h(c.l, c.k) = c.v;
  }
  return h;
}

// L = -i[H,.] + sum_j rate_j (2 A_j . A_j^dag - {A_j^dag A_j, .})
// with dissipation A = |g><k|, dephasing A = |k><k|, sink A = |N+1><k_s|.
inline Superoperator build_liouvillian(const NetworkSpec& spec) {
  const int d = spec.dim();
  const Eigen::MatrixXcd h = build_hamiltonian(spec);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  const Complex i1(0.0, 1.0);

  Superoperator lv =
      -i1 * (Eigen::kroneckerProduct(id, h) -
             Eigen::kroneckerProduct(h.transpose(), id))
                .eval();

  auto add_jump = [&](double rate, const Eigen::MatrixXcd& a) {
    const Eigen::MatrixXcd ada = a.adjoint() * a;
    lv += rate * (2.0 * Eigen::kroneckerProduct(a.conjugate(), a) -
                  Eigen::kroneckerProduct(id, ada) -
                  Eigen::kroneckerProduct(ada.transpose(), id))
                     .eval();
  };

  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 1; k <= spec.n_sites; ++k) {
    if (spec.gamma_diss[k - 1] > 0.0) {
      a.setZero();
      a(0, k) = 1.0;
      add_jump(spec.gamma_diss[k - 1], a);
    }
    if (spec.gamma_deph[k - 1] > 0.0) {
      a.setZero();
      a(k, k) = 1.0;
      add_jump(spec.gamma_deph[k - 1], a);
    }
  }
  if (spec.sink_rate > 0.0) {
    a.setZero();
    a(spec.n_sites + 1, spec.sink_site) = 1.0;
    add_jump(spec.sink_rate, a);
  }
  return lv;
}

inline SEDensityMatrix initial_site(const NetworkSpec& spec, int k) {
  if (k < 1 || k > spec.n_sites)
    throw std::invalid_argument("initial site index out of range");
  SEDensityMatrix rho = SEDensityMatrix::Zero(spec.dim(), spec.dim());
  rho(k, k) = 1.0;
  return rho;
}

inline SEDensityMatrix initial_vacuum(const NetworkSpec& spec) {
  SEDensityMatrix rho = SEDensityMatrix::Zero(spec.dim(), spec.dim());
  rho(0, 0) = 1.0;
  return rho;
}

// (|a> + |k>)/sqrt(2) in the sector basis; used with a decoupled ancilla site.
inline SEDensityMatrix initial_bell(const NetworkSpec& spec, int a, int k) {
  if (a < 1 || a > spec.n_sites || k < 1 || k > spec.n_sites || a == k)
    throw std::invalid_argument("bell state indices out of range");
  SEDensityMatrix rho = SEDensityMatrix::Zero(spec.dim(), spec.dim());
  rho(a, a) = 0.5;
  rho(k, k) = 0.5;
  rho(a, k) = 0.5;
  rho(k, a) = 0.5;
  return rho;
}

inline double trace_real(const SEDensityMatrix& rho) {
  return rho.trace().real();
}

inline double hermiticity_defect(const SEDensityMatrix& rho) {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

// Largest violation of tr(L rho) = 0 over unit basis inputs: the trace
// functional composed with L, evaluated column by column.
inline double trace_preservation_defect(const Superoperator& lv, int d) {
  double worst = 0.0;
  for (int j = 0; j < d * d; ++j) {
    Complex s = 0.0;
    for (int k = 0; k < d; ++k) s += lv(k + k * d, j);
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

inline bool is_valid_density(const SEDensityMatrix& rho, double trace_tol = 1e-9,
                             double herm_tol = 1e-12) {
  if (hermiticity_defect(rho) > herm_tol) return false;
  if (std::abs(trace_real(rho) - 1.0) > trace_tol) return false;
  for (int k = 0; k < rho.rows(); ++k) {
    double p = rho(k, k).real();
    if (p < -1e-12 || p > 1.0 + 1e-12) return false;
  }
  return true;
}

}  // namespace qnet
