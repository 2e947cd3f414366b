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

#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "qnet/oracles.hpp"
#include "qnet/propagator.hpp"

using namespace qnet;

namespace {

double log_uniform(std::mt19937& eng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log10(lo), std::log10(hi));
  return std::pow(10.0, u(eng));
}

}  // namespace

TEST_CASE("two-site closed form matches the transient linear solve") {
  std::mt19937 eng(2024);
  for (int i = 0; i < 100; ++i) {
    N2Params p;
    p.v = log_uniform(eng, 1e-2, 1.0);
    p.gamma1 = log_uniform(eng, 1e-3, 10.0);
    p.gamma2 = log_uniform(eng, 1e-3, 10.0);
    p.gamma_diss = log_uniform(eng, 1e-3, 10.0);
    p.sink_rate = log_uniform(eng, 1e-3, 10.0);
    const double formula = p_sink_n2(p);
    const double solver = p_sink_infinite(n2_network(p));
    CHECK(formula == Catch::Approx(solver).margin(1e-7));
  }
}

TEST_CASE("three-site closed form matches the transient linear solve") {
  std::mt19937 eng(4048);
  for (int i = 0; i < 100; ++i) {
    N3Params p;
    p.v = log_uniform(eng, 1e-2, 1.0);
    p.gamma1 = log_uniform(eng, 1e-3, 10.0);
    p.gamma2 = log_uniform(eng, 1e-3, 10.0);
    p.gamma3 = log_uniform(eng, 1e-3, 10.0);
    p.rate = log_uniform(eng, 1e-3, 10.0);
    const double formula = p_sink_n3(p);
    const double solver = p_sink_infinite(n3_network(p));
    CHECK(formula > 0.0);
    CHECK(formula <= 1.0 + 1e-12);
    CHECK(formula == Catch::Approx(solver).margin(1e-7));
  }
}

TEST_CASE("lossless two-site chain transfers completely") {
  N2Params p;
  p.v = 0.2;
  p.gamma1 = 1.3;
  p.gamma2 = 0.4;
  p.gamma_diss = 0.0;
  p.sink_rate = 0.7;
  CHECK(p_sink_n2(p) == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two-site transfer degrades monotonically with dephasing") {
  N2Params p;
  p.v = 0.1;
  p.gamma_diss = 0.05;
  p.sink_rate = 0.3;
  double prev = 2.0;
  for (double g : {0.0, 0.1, 1.0, 10.0, 100.0}) {
    p.gamma1 = g;
    p.gamma2 = 0.5 * g;
    const double val = p_sink_n2(p);
    CHECK(val < prev);
    prev = val;
  }
}

TEST_CASE("resonant three-site chain gains nothing from dephasing") {
  N3Params base;
  base.v = 0.15;
  base.rate = 0.02;
  const double zero = p_sink_n3(base);
  std::mt19937 eng(77);
  for (int i = 0; i < 100; ++i) {
    N3Params p = base;
    p.gamma1 = log_uniform(eng, 1e-3, 100.0);
    p.gamma2 = log_uniform(eng, 1e-3, 100.0);
    p.gamma3 = log_uniform(eng, 1e-3, 100.0);
    CHECK(p_sink_n3(p) < zero + 1e-12);
  }
}

TEST_CASE("detuned-limit improvement vanishes without dephasing") {
  CHECK(delta_p_limit(0.0, 100.0, 1e4) == 0.0);
  CHECK(delta_p_limit(0.0, 2.0, 10.0) == 0.0);
}

TEST_CASE("detuned-limit improvement peaks at the detuning") {
  const double omega2 = 100.0, f = 1e3;
  double best = -1.0, best_g = 0.0;
  for (int i = 1; i <= 200; ++i) {
    const double g = static_cast<double>(i);
    const double val = delta_p_limit(g, omega2, f);
    if (val > best) {
      best = val;
      best_g = g;
    }
  }
  CHECK(best_g == omega2 - 1.0);
}

TEST_CASE("detuned-limit value at the standard operating point") {
  CHECK(delta_p_limit(99.0, 100.0, 1e4) ==
        Catch::Approx(0.9435813463932037).margin(1e-12));
}

TEST_CASE("oracle preconditions are enforced") {
  CHECK_THROWS_AS(p_sink_n2({-0.1, 0, 0, 0.1, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(p_sink_n2({0.1, 0, 0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(p_sink_n3({0.1, 0, 0, -1.0, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(p_sink_n3({0.0, 0, 0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(delta_p_limit(1.0, 0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(delta_p_limit(1.0, 2.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(delta_p_limit(-1.0, 2.0, 1.0), std::invalid_argument);
}
