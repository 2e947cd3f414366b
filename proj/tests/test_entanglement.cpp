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

#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "qnet/entanglement.hpp"
#include "qnet/presets.hpp"

using namespace qnet;

TEST_CASE("the ancilla extension leaves the chain untouched") {
  AncillaNetwork net = fig4_ancilla_network();
  CHECK(net.n_chain_sites() == 4);
  CHECK(net.ancilla_index() == 5);
  NetworkSpec ext = net.extended();
  CHECK(ext.n_sites == 5);
  CHECK(ext.omega.back() == 0.0);
  CHECK(ext.gamma_diss.back() == 0.0);
  CHECK(ext.gamma_deph.back() == 0.0);
  CHECK(ext.couplings.size() == net.chain.couplings.size());
  CHECK(ext.coupling_value(4, 5) == 0.0);
  CHECK(ext.sink_site == net.chain.sink_site);
  CHECK(ext.sink_rate == net.chain.sink_rate);
}

TEST_CASE("bell state carries unit concurrence with its partner only") {
  AncillaNetwork net = fig4_ancilla_network();
  NetworkSpec ext = net.extended();
  const int a = net.ancilla_index();
  SEDensityMatrix rho0 = initial_bell(ext, a, 1);
  CHECK(concurrence_pair(rho0, a, 1) == Catch::Approx(1.0).margin(1e-14));
  CHECK(concurrence_wootters(rho0, a, 1) == Catch::Approx(1.0).margin(1e-12));
  for (int k = 2; k <= net.n_chain_sites(); ++k) {
    CHECK(concurrence_pair(rho0, a, k) == 0.0);
    CHECK(concurrence_wootters(rho0, a, k) == Catch::Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("product states carry no concurrence") {
  AncillaNetwork net = fig4_ancilla_network();
  NetworkSpec ext = net.extended();
  SEDensityMatrix rho = initial_site(ext, 1);
  for (int k = 2; k <= ext.n_sites; ++k) {
    CHECK(concurrence_pair(rho, 1, k) == 0.0);
    CHECK(concurrence_wootters(rho, 1, k) == Catch::Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("sector form agrees with the full Wootters evaluation") {
  AncillaNetwork net = fig4_ancilla_network();
  const int a = net.ancilla_index();
  const std::vector<std::vector<double>> rate_sets = {
      {0.0, 0.0, 0.0, 0.0}, {0.5, 1.5, 2.0, 0.3}};
  for (const auto& rates : rate_sets) {
    NetworkSpec ext = net.extended();
    for (int k = 0; k < net.n_chain_sites(); ++k) ext.gamma_deph[k] = rates[k];
    SEDensityMatrix rho0 = initial_bell(ext, a, 1);
    Trajectory tr = evolve(ext, rho0, 4.0, {}, 51, true);
    for (const auto& rho : tr.snapshots)
      for (int k = 1; k <= net.n_chain_sites(); ++k)
        CHECK(concurrence_pair(rho, a, k) ==
              Catch::Approx(concurrence_wootters(rho, a, k)).margin(1e-10));
  }
}

TEST_CASE("concurrence trajectories stay within physical bounds") {
  AncillaNetwork net = fig4_ancilla_network();
  EntanglementOptions opt;
  opt.n_samples = 101;
  EntanglementTrajectory tr =
      entanglement_trajectory(net, {0.0, 0.0, 0.0, 0.0}, 4.0, opt);
  REQUIRE(tr.times.size() == 101);
  REQUIRE(tr.concurrence.size() == 101);
  CHECK(tr.concurrence[0][0] == Catch::Approx(1.0).margin(1e-12));
  for (const auto& row : tr.concurrence)
    for (double c : row) {
      CHECK(c >= 0.0);
      CHECK(c <= 1.0 + 1e-9);
    }
}

TEST_CASE("entanglement trajectories match their CSV schema") {
  AncillaNetwork net = fig4_ancilla_network();
  EntanglementOptions opt;
  opt.n_samples = 5;
  EntanglementTrajectory tr =
      entanglement_trajectory(net, {0.0, 0.0, 0.0, 0.0}, 1.0, opt);
  std::ostringstream os;
  tr.write_csv(os);
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  CHECK(header == "t,C_1,C_2,C_3,C_4");
  int rows = 0;
  std::string row;
  while (std::getline(is, row)) ++rows;
  CHECK(rows == 5);
}

TEST_CASE("invalid site pairs are rejected") {
  NetworkSpec ext = fig4_ancilla_network().extended();
  SEDensityMatrix rho = initial_site(ext, 1);
  CHECK_THROWS_AS(concurrence_pair(rho, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(concurrence_pair(rho, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(concurrence_pair(rho, 1, 6), std::invalid_argument);
  CHECK_THROWS_AS(concurrence_wootters(rho, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(concurrence_wootters(rho, 1, 9), std::invalid_argument);
}

TEST_CASE("the dephasing list must match the chain length") {
  AncillaNetwork net = fig4_ancilla_network();
  CHECK_THROWS_AS(entanglement_trajectory(net, {0.0, 0.0, 0.0}, 1.0),
                  std::invalid_argument);
}
