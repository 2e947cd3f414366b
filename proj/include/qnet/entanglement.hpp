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

#include "qnet/propagator.hpp"

namespace qnet {

// A transport network extended by one decoupled, noiseless ancilla site. The
// ancilla holds the reference half of an entangled pair: it has no couplings
// and no Lindblad terms, so any entanglement change is caused by the chain.
struct AncillaNetwork {
  NetworkSpec chain;  // the N-site transport network

  int n_chain_sites() const { return chain.n_sites; }
  int ancilla_index() const { return chain.n_sites + 1; }

  // The combined spec: sites 1..N are the chain, site N+1 the ancilla.
  NetworkSpec extended() const {
    NetworkSpec ext = chain;
    ext.n_sites = chain.n_sites + 1;
    ext.omega.push_back(0.0);
    ext.gamma_diss.push_back(0.0);
    ext.gamma_deph.push_back(0.0);
    ext.validate();
    return ext;
  }

  void validate() const { extended(); }
};

// Concurrence of the reduced two-qubit state of sites (a, k). With at most
// one excitation in the network the doubly excited amplitude vanishes, which
// collapses the Wootters formula to 2|rho_{a,k}|.
inline double concurrence_pair(const SEDensityMatrix& rho, int a, int k) {
  const int n = static_cast<int>(rho.rows()) - 2;
  if (a < 1 || a > n || k < 1 || k > n || a == k)
    throw std::invalid_argument("concurrence_pair needs two distinct site indices");
  return 2.0 * std::abs(rho(a, k));
}

// Full Wootters concurrence of the reduced state, via the eigenvalues of
// rho_red (sigma_y x sigma_y) conj(rho_red) (sigma_y x sigma_y). Kept as an
// independent cross-check of the closed form above.
inline double concurrence_wootters(const SEDensityMatrix& rho, int a, int k) {
  const int n = static_cast<int>(rho.rows()) - 2;
  if (a < 1 || a > n || k < 1 || k > n || a == k)
    throw std::invalid_argument("concurrence_wootters needs two distinct site indices");

  // reduced state in the basis |00>, |01>, |10>, |11> of qubits (a, k);
  // tracing out the rest sends every other basis state to |00>
  Eigen::Matrix4cd red = Eigen::Matrix4cd::Zero();
  red(0, 0) = 1.0 - rho(a, a).real() - rho(k, k).real();
  red(1, 1) = rho(k, k);
  red(2, 2) = rho(a, a);
  red(2, 1) = rho(a, k);
  red(1, 2) = rho(k, a);

  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;

  const Eigen::Matrix4cd r = red * yy * red.conjugate() * yy;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(r, false);
  Eigen::Vector4d lam;
  for (int i = 0; i < 4; ++i)
    lam(i) = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
  std::sort(lam.data(), lam.data() + 4, std::greater<double>());
  return std::max(0.0, lam(0) - lam(1) - lam(2) - lam(3));
}

// Ancilla-site concurrences over time for an extended network prepared in a
// Bell state between the ancilla and a chain site.
struct EntanglementTrajectory {
  int n_chain_sites = 0;
  std::vector<double> times;
  std::vector<std::vector<double>> concurrence;  // rows: time, cols: chain site

  void write_csv(std::ostream& os) const {
    os << "t";
    for (int k = 1; k <= n_chain_sites; ++k) os << ",C_" << k;
    os << "\n";
    for (size_t i = 0; i < times.size(); ++i) {
      std::vector<double> row;
      row.reserve(1 + concurrence[i].size());
      row.push_back(times[i]);
      row.insert(row.end(), concurrence[i].begin(), concurrence[i].end());
      csv_row(os, row);
    }
  }
};

struct EntanglementOptions {
  int bell_site = 1;  // chain site initially entangled with the ancilla
  int n_samples = 200;
  Tolerances tol;
};

inline EntanglementTrajectory entanglement_trajectory(
    const AncillaNetwork& net, const std::vector<double>& chain_dephasing,
    double horizon, const EntanglementOptions& opt = {}) {
  if (static_cast<int>(chain_dephasing.size()) != net.n_chain_sites())
    throw std::invalid_argument("one dephasing rate per chain site expected");
  NetworkSpec ext = net.extended();
  for (int k = 0; k < net.n_chain_sites(); ++k) ext.gamma_deph[k] = chain_dephasing[k];
  ext.validate();

  const int a = net.ancilla_index();
  const SEDensityMatrix rho0 = initial_bell(ext, a, opt.bell_site);
  Trajectory tr = evolve(ext, rho0, horizon, opt.tol, opt.n_samples, true);

  EntanglementTrajectory out;
  out.n_chain_sites = net.n_chain_sites();
  out.times = tr.times;
  out.concurrence.reserve(tr.snapshots.size());
  for (const auto& rho : tr.snapshots) {
    std::vector<double> row(out.n_chain_sites);
    for (int k = 1; k <= out.n_chain_sites; ++k)
      row[k - 1] = concurrence_pair(rho, a, k);
    out.concurrence.push_back(std::move(row));
  }
  return out;
}

}  // namespace qnet
