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

#include <numbers>

#include <catch2/catch_amalgamated.hpp>

#include "qnet/collision.hpp"
#include "qnet/presets.hpp"

using namespace qnet;

namespace {

NetworkSpec small_chain() {
  NetworkSpec spec;
  spec.n_sites = 2;
  spec.omega = {1.0, 1.2};
  spec.couplings = {{1, 2, 0.3}};
  spec.gamma_diss = {0.05, 0.05};
  spec.gamma_deph = {0.0, 0.0};
  spec.sink_site = 2;
  spec.sink_rate = 0.4;
  return spec;
}

double max_population_gap(const Trajectory& a, const Trajectory& b) {
  double gap = 0.0;
  for (size_t i = 0; i < a.populations.size(); ++i)
    gap = std::max(gap,
                   (a.populations[i] - b.populations[i]).cwiseAbs().maxCoeff());
  return gap;
}

}  // namespace

TEST_CASE("calibration maps rates to angles as documented") {
  CHECK(calibrate_angle(0.0, 0.1) == 0.0);
  // cos(theta) = exp(-2 * ln2/4) = 1/sqrt(2)
  CHECK(calibrate_angle(std::log(2.0) / 4.0, 1.0) ==
        Catch::Approx(std::numbers::pi / 4).margin(1e-14));
  CHECK_THROWS_AS(calibrate_angle(-1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(calibrate_angle(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(calibrate_angle(1e4, 0.1), CalibrationError);
}

TEST_CASE("calibrated schedules carry the requested layout") {
  CollisionSchedule s = calibrated_schedule({0.5, 2.0}, 0.01, 3.0, 2);
  CHECK(s.dt == 0.01);
  CHECK(s.memory == 2);
  CHECK(s.total_time == 3.0);
  REQUIRE(s.theta.size() == 2);
  CHECK(s.theta[0] == Catch::Approx(std::acos(std::exp(-2.0 * 0.5 * 0.01))));
  CHECK(s.theta[1] == Catch::Approx(std::acos(std::exp(-2.0 * 2.0 * 0.01))));
  CHECK(s.n_steps() == 300);
}

TEST_CASE("schedule validation enforces its preconditions") {
  NetworkSpec spec = small_chain();
  CollisionSchedule s = calibrated_schedule({0.1, 0.1}, 0.05, 1.0);
  s.validate(2);  // fine
  CHECK_THROWS_AS(s.validate(3), std::invalid_argument);

  CollisionSchedule bad = s;
  bad.dt = 0.0;
  CHECK_THROWS_AS(bad.validate(2), std::invalid_argument);
  bad = s;
  bad.theta[0] = 2.0;  // beyond pi/2
  CHECK_THROWS_AS(bad.validate(2), std::invalid_argument);
  bad = s;
  bad.memory = 0;
  CHECK_THROWS_AS(bad.validate(2), std::invalid_argument);
  bad = s;
  bad.total_time = 0.0;
  CHECK_THROWS_AS(bad.validate(2), std::invalid_argument);

  NetworkSpec dephased = spec;
  dephased.gamma_deph = {0.3, 0.0};
  CHECK_THROWS_AS(collision_evolve(dephased, s), std::invalid_argument);
}

TEST_CASE("zero-angle collisions reduce to the dephasing-free evolution") {
  NetworkSpec spec = small_chain();
  CollisionSchedule s = calibrated_schedule({0.0, 0.0}, 0.01, 1.0);
  Trajectory coll = collision_evolve(spec, s);
  CHECK(coll.final_p_sink() ==
        Catch::Approx(p_sink_at(spec, 1.0)).margin(1e-10));
}

TEST_CASE("an isolated site's coherence is damped at the calibrated rate") {
  NetworkSpec spec;
  spec.n_sites = 1;
  spec.omega = {0.7};
  spec.gamma_diss = {0.0};
  spec.gamma_deph = {0.0};
  spec.sink_site = 1;
  spec.sink_rate = 0.0;

  const double gamma = 2.0;
  const double dt = 0.01 / gamma;
  const double horizon = 1.0;
  CollisionSchedule s = calibrated_schedule({gamma}, dt, horizon);

  // vacuum-site superposition; |rho_01| isolates pure dephasing
  SEDensityMatrix rho0 = SEDensityMatrix::Zero(3, 3);
  rho0(0, 0) = rho0(1, 1) = 0.5;
  rho0(0, 1) = rho0(1, 0) = 0.5;

  const Superoperator lv = build_liouvillian(spec);
  const Eigen::MatrixXcd step = (lv * s.dt).exp();
  Eigen::VectorXcd y = vec(rho0);
  const double c = std::cos(s.theta[0]);
  double worst = 0.0;
  for (int n = 1; n <= s.n_steps(); ++n) {
    y = step * y;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) y(i + 3 * j) *= (i == 1 ? c : 1.0) * (j == 1 ? c : 1.0);
    const double want = 0.5 * std::exp(-2.0 * gamma * n * s.dt);
    const double got = std::abs(unvec(y, 3)(0, 1));
    worst = std::max(worst, std::abs(got - want) / want);
  }
  CHECK(worst < 0.01);

  // and the packaged evolution agrees with the hand-rolled loop
  Trajectory tr = collision_evolve(spec, s, rho0);
  CHECK(tr.populations.back()(1) ==
        Catch::Approx(unvec(y, 3)(1, 1).real()).margin(1e-12));
}

TEST_CASE("small intervals converge to the continuous limit") {
  NetworkSpec spec = small_chain();
  const std::vector<double> gamma_c = {0.8, 0.3};
  const double horizon = 1.0;

  // equivalent continuous generator: site coherences to vacuum decay at
  // 2*gamma_c in the collision model, which is the g-site rate gamma here
  NetworkSpec lind = spec;
  lind.gamma_deph = {2.0 * gamma_c[0], 2.0 * gamma_c[1]};
  const int samples = 11;
  Trajectory ref = evolve_expm(lind, initial_site(lind, 1), horizon, samples);

  double prev = 1e9;
  for (double dt : {1e-1, 1e-2, 1e-3}) {
    CollisionSchedule s = calibrated_schedule(gamma_c, dt, horizon);
    Trajectory coll = collision_evolve(spec, s);
    const int stride = (coll.times.size() - 1) / (samples - 1);
    double gap = 0.0;
    for (int i = 0; i < samples; ++i)
      gap = std::max(gap, (coll.populations[i * stride] - ref.populations[i])
                              .cwiseAbs()
                              .maxCoeff());
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev < 2e-4);
}

TEST_CASE("fresh and memory-one paths coincide") {
  NetworkSpec spec = small_chain();
  CollisionSchedule s = calibrated_schedule({3.0, 1.0}, 0.05, 0.5, 1);
  Trajectory fresh = detail::collision_evolve_fresh(spec, s, initial_site(spec, 1));
  Trajectory joint = detail::collision_evolve_memory(spec, s, initial_site(spec, 1));
  REQUIRE(fresh.populations.size() == joint.populations.size());
  CHECK(max_population_gap(fresh, joint) < 1e-12);
}

TEST_CASE("environment memory changes the trajectory but keeps it physical") {
  NetworkSpec spec = small_chain();
  CollisionSchedule m1 = calibrated_schedule({3.0, 1.0}, 0.05, 0.5, 1);
  CollisionSchedule m2 = m1;
  m2.memory = 2;
  Trajectory a = collision_evolve(spec, m1);
  Trajectory b = collision_evolve(spec, m2);
  CHECK(b.diag.max_trace_drift < 1e-10);
  for (const auto& row : b.populations) {
    CHECK(row.minCoeff() > -1e-10);
    CHECK(row.sum() == Catch::Approx(1.0).margin(1e-10));
  }
  CHECK(max_population_gap(a, b) > 1e-9);  // retained qubits matter
}
