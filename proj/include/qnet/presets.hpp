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

#include "qnet/entanglement.hpp"
#include "qnet/network.hpp"

namespace qnet {

// Seven-site FMO pigment network. Energies are relative to a common shift
// and expressed in units where 10/1.88 corresponds to about 1/ps; the site-3
// sink rate and the uniform exciton loss 2*Gamma_k = 1/188 follow the
// published parameterization. Dephasing defaults to zero.
inline NetworkSpec fmo_preset() {
  constexpr double h[7][7] = {
      {215.0, -104.1, 5.1, -4.3, 4.7, -15.1, -7.8},
      {-104.1, 220.0, 32.6, 7.1, 5.4, 8.3, 0.8},
      {5.1, 32.6, 0.0, -46.8, 1.0, -8.1, 5.1},
      {-4.3, 7.1, -46.8, 125.0, -70.7, -14.7, -61.5},
      {4.7, 5.4, 1.0, -70.7, 450.0, 89.7, -2.5},
      {-15.1, 8.3, -8.1, -14.7, 89.7, 330.0, 32.7},
      {-7.8, 0.8, 5.1, -61.5, -2.5, 32.7, 280.0}};
  NetworkSpec spec;
  spec.n_sites = 7;
  for (int k = 0; k < 7; ++k) {
    spec.omega.push_back(h[k][k]);
    for (int l = k + 1; l < 7; ++l) spec.couplings.push_back({k + 1, l + 1, h[k][l]});
  }
  spec.gamma_diss.assign(7, 1.0 / 376.0);
  spec.gamma_deph.assign(7, 0.0);
  spec.sink_site = 3;
  spec.sink_rate = 10.0 / 1.88;
  spec.validate();
  return spec;
}

// Published optimal dephasing vectors for the FMO transfer problem.
inline std::vector<double> fmo_t5_optimal_rates() {
  return {469.34, 5.36, 99.13, 5.55, 114.86, 1.88, 291.08};
}

inline std::vector<double> fmo_inf_optimal_rates() {
  return {27.40, 26.84, 1.22, 87.12, 99.59, 232.76, 88.35};
}

// Nearest-neighbor chain with the sink fed from the last site.
inline NetworkSpec linear_chain(int n, double v, std::vector<double> omega,
                                std::vector<double> gamma_diss, double sink_rate) {
  if (n < 1) throw std::invalid_argument("chain needs at least one site");
  NetworkSpec spec;
  spec.n_sites = n;
  spec.omega = std::move(omega);
  spec.gamma_diss = std::move(gamma_diss);
  spec.gamma_deph.assign(n, 0.0);
  for (int k = 1; k < n; ++k) spec.couplings.push_back({k, k + 1, v});
  spec.sink_site = n;
  spec.sink_rate = sink_rate;
  spec.validate();
  return spec;
}

// Three-site chain behind the site-energy sweeps: omega_1 = omega_3 = 1,
// v = 1/10, Gamma_k = 1/100, sink rate 1/5. omega_2 is the swept knob.
inline NetworkSpec fig2_chain(double omega2 = 1.0) {
  return linear_chain(3, 0.1, {1.0, omega2, 1.0}, {0.01, 0.01, 0.01}, 0.2);
}

// Four-site chain behind the entanglement trajectories: omega = (10,10,14,10),
// v = 1, Gamma_k = 1/10, sink rate 1.
inline NetworkSpec fig4_chain() {
  return linear_chain(4, 1.0, {10.0, 10.0, 14.0, 10.0},
                      {0.1, 0.1, 0.1, 0.1}, 1.0);
}

inline AncillaNetwork fig4_ancilla_network() { return AncillaNetwork{fig4_chain()}; }

}  // namespace qnet
