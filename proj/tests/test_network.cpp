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

#include <unsupported/Eigen/MatrixFunctions>

#include <catch2/catch_amalgamated.hpp>

#include "qnet/network.hpp"

using namespace qnet;

namespace {

NetworkSpec two_site() {
  NetworkSpec spec;
  spec.n_sites = 2;
  spec.omega = {1.0, 1.5};
  spec.couplings = {{1, 2, 0.3}};
  spec.gamma_diss = {0.05, 0.02};
  spec.gamma_deph = {0.1, 0.4};
  spec.sink_site = 2;
  spec.sink_rate = 0.7;
  return spec;
}

}  // namespace

TEST_CASE("spec validation accepts a well-formed network") {
  REQUIRE_NOTHROW(two_site().validate());
  CHECK(two_site().dim() == 4);
}

TEST_CASE("spec validation rejects malformed networks") {
  auto bad = two_site();
  bad.omega.pop_back();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = two_site();
  bad.gamma_diss[0] = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = two_site();
  bad.sink_site = 3;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = two_site();
  bad.couplings.push_back({2, 2, 0.1});
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = two_site();
  bad.couplings.push_back({2, 1, 0.2});  // duplicate of (1,2)
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = two_site();
  bad.sink_rate = -0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("hamiltonian is hermitian and leaves vacuum and sink alone") {
  NetworkSpec spec = two_site();
  Eigen::MatrixXcd h = build_hamiltonian(spec);
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(h(1, 1).real() == Catch::Approx(1.0));
  CHECK(h(2, 2).real() == Catch::Approx(1.5));
  CHECK(h(1, 2).real() == Catch::Approx(0.3));
  CHECK(h.row(0).cwiseAbs().maxCoeff() == 0.0);
  CHECK(h.col(0).cwiseAbs().maxCoeff() == 0.0);
  CHECK(h.row(3).cwiseAbs().maxCoeff() == 0.0);
  CHECK(spec.coupling_value(2, 1) == Catch::Approx(0.3));
  CHECK(spec.coupling_value(1, 1) == 0.0);
}

TEST_CASE("vec and unvec are inverse and column-major") {
  NetworkSpec spec = two_site();
  SEDensityMatrix rho = initial_bell(spec, 1, 2);
  Eigen::VectorXcd y = vec(rho);
  CHECK(y.size() == 16);
  // column-major stacking: entry (i, j) lands at i + j*d
  CHECK(y(1 + 2 * 4) == rho(1, 2));
  CHECK((unvec(y, 4) - rho).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("liouvillian preserves trace and is trace-nonincreasing nowhere") {
  for (const NetworkSpec& spec : {two_site()}) {
    Superoperator lv = build_liouvillian(spec);
    CHECK(trace_preservation_defect(lv, spec.dim()) < 1e-12);
  }
}

TEST_CASE("vacuum and sink are absorbing") {
  NetworkSpec spec = two_site();
  Superoperator lv = build_liouvillian(spec);
  const int d = spec.dim();
  SEDensityMatrix vac = initial_vacuum(spec);
  CHECK((lv * vec(vac)).cwiseAbs().maxCoeff() < 1e-12);
  SEDensityMatrix sink = SEDensityMatrix::Zero(d, d);
  sink(d - 1, d - 1) = 1.0;
  CHECK((lv * vec(sink)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("single site population decays at rate 2*Gamma") {
  NetworkSpec spec;
  spec.n_sites = 1;
  spec.omega = {2.0};
  spec.gamma_diss = {0.25};
  spec.gamma_deph = {0.0};
  spec.sink_site = 1;
  spec.sink_rate = 0.0;
  Superoperator lv = build_liouvillian(spec);
  const double t = 1.7;
  Eigen::VectorXcd y = ((lv * t).exp() * vec(initial_site(spec, 1)));
  SEDensityMatrix rho = unvec(y, spec.dim());
  CHECK(rho(1, 1).real() == Catch::Approx(std::exp(-2.0 * 0.25 * t)).epsilon(1e-10));
  CHECK(rho(0, 0).real() == Catch::Approx(1.0 - std::exp(-0.5 * t)).epsilon(1e-9));
}

TEST_CASE("dephasing damps coherences at the summed site rates") {
  NetworkSpec spec = two_site();
  spec.gamma_diss = {0.0, 0.0};
  spec.sink_rate = 0.0;
  spec.couplings.clear();
  spec.omega = {0.0, 0.0};  // freeze phases so damping is directly readable
  Superoperator lv = build_liouvillian(spec);
  SEDensityMatrix rho0 = SEDensityMatrix::Zero(4, 4);
  rho0(1, 1) = 0.5;
  rho0(2, 2) = 0.5;
  rho0(1, 2) = rho0(2, 1) = 0.4;
  rho0(0, 1) = rho0(1, 0) = 0.1;
  const double t = 0.9;
  SEDensityMatrix rho = unvec(((lv * t).exp() * vec(rho0)).eval(), 4);
  const double g1 = 0.1, g2 = 0.4;
  // site-site coherence decays at gamma_1 + gamma_2
  CHECK(rho(1, 2).real() ==
        Catch::Approx(0.4 * std::exp(-(g1 + g2) * t)).epsilon(1e-10));
  // vacuum-site coherence decays at gamma_1 alone
  CHECK(rho(0, 1).real() == Catch::Approx(0.1 * std::exp(-g1 * t)).epsilon(1e-10));
  // populations untouched
  CHECK(rho(1, 1).real() == Catch::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("sink drains its source site at rate 2*sink_rate") {
  NetworkSpec spec = two_site();
  spec.couplings.clear();
  spec.gamma_diss = {0.0, 0.0};
  spec.gamma_deph = {0.0, 0.0};
  Superoperator lv = build_liouvillian(spec);
  const double t = 0.6;
  SEDensityMatrix rho = unvec(((lv * t).exp() * vec(initial_site(spec, 2))).eval(), 4);
  CHECK(rho(2, 2).real() == Catch::Approx(std::exp(-2.0 * 0.7 * t)).epsilon(1e-10));
  CHECK(rho(3, 3).real() == Catch::Approx(1.0 - std::exp(-1.4 * t)).epsilon(1e-10));
}

TEST_CASE("initial states are valid density matrices") {
  NetworkSpec spec = two_site();
  for (const SEDensityMatrix& rho :
       {initial_site(spec, 1), initial_vacuum(spec), initial_bell(spec, 1, 2)}) {
    CHECK(trace_real(rho) == Catch::Approx(1.0));
    CHECK(hermiticity_defect(rho) < 1e-15);
    CHECK(is_valid_density(rho));
  }
  CHECK_THROWS_AS(initial_site(spec, 3), std::invalid_argument);
  CHECK_THROWS_AS(initial_bell(spec, 1, 1), std::invalid_argument);
}

TEST_CASE("with_dephasing replaces the rate vector") {
  NetworkSpec spec = two_site();
  NetworkSpec noisy = spec.with_dephasing({1.0, 2.0});
  CHECK(noisy.gamma_deph == std::vector<double>{1.0, 2.0});
  CHECK(spec.gamma_deph == std::vector<double>{0.1, 0.4});
  CHECK_THROWS_AS(spec.with_dephasing({1.0}), std::invalid_argument);
}
