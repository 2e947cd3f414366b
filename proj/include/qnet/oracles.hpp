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

#include <cmath>
#include <stdexcept>

#include "qnet/network.hpp"

namespace qnet {

// Closed-form infinite-horizon solutions for short uniform chains, used as
// independent oracles for the propagator (and vice versa).

struct N2Params {
  double v = 0.0;        // hopping between the two sites
  double gamma1 = 0.0;   // dephasing rates
  double gamma2 = 0.0;
  double gamma_diss = 0.0;  // dissipation, identical on both sites
  double sink_rate = 0.0;   // drain attached to site 2
};

struct N3Params {
  double v = 0.0;  // nearest-neighbor hopping
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma3 = 0.0;
  double rate = 0.0;  // shared value of the three dissipation rates and the sink rate
};

// Two-site chain, excitation starting on site 1, sink fed from site 2.
// Site energies equal; dissipation identical on both sites.
inline double p_sink_n2(const N2Params& p) {
  if (p.v < 0 || p.gamma1 < 0 || p.gamma2 < 0 || p.gamma_diss < 0 || p.sink_rate < 0)
    throw std::invalid_argument("negative parameter");
  const double g = p.gamma1 + p.gamma2;
  const double g1 = p.gamma_diss;
  const double g3 = p.sink_rate;
  const double x = 2.0 * g1 * g1 * g1 + g1 * g3 * (3.0 * g1 + g3);
  const double den = x + g1 * (g1 + g3) * g + (g3 + 2.0 * g1) * p.v * p.v;
  if (den <= 0.0) throw std::invalid_argument("undefined input: zero denominator");
  return g3 * p.v * p.v / den;
}

// Three-site chain with uniform dissipation equal to the sink rate.
// The numerator is quartic in v; a quadratic one would leave the expression
// dimensionally inconsistent with the quintic rate polynomial below it.
inline double p_sink_n3(const N3Params& p) {
  if (p.v < 0 || p.gamma1 < 0 || p.gamma2 < 0 || p.gamma3 < 0 || p.rate < 0)
    throw std::invalid_argument("negative parameter");
  const double g1 = p.gamma1, g2 = p.gamma2, g3 = p.gamma3, G = p.rate;
  const double v2 = p.v * p.v;
  const double a = 5.0 * g1 + 5.0 * g2 + 4.0 * g3;
  const double b = g1 * g2 + g1 * g3 + g2 * g3;
  const double c = g1 * (g2 * g2 + g3 * g3) + g2 * (g1 * g1 + g3 * g3) +
                   g3 * (g1 * g1 + g2 * g2) + 2.0 * g1 * g2 * g3;
  const double d = 32.0 * g3 + 25.0 * g2 + 29.0 * g1;
  const double den =
      36.0 * std::pow(G, 5) + 6.0 * a * std::pow(G, 4) +
      2.0 * std::pow(G, 3) *
          (3.0 * g1 * g1 + 3.0 * g2 * g2 + 8.0 * b + 2.0 * g3 * g3 + 32.0 * v2) +
      G * G * (2.0 * c + d * v2) +
      G * v2 * (3.0 * g1 * g1 + 7.0 * b + 4.0 * g3 * g3 + 15.0 * v2) +
      4.0 * (g1 + g3) * v2 * v2;
  if (den <= 0.0) throw std::invalid_argument("undefined input: zero denominator");
  return (4.0 * G + g1 + g3) * v2 * v2 / den;
}

// Limiting improvement of the sink population for the strongly detuned
// three-site chain (site 2 at energy omega2, outer sites at 1) in the weak
// coupling regime, as a function of the dephasing rate on site 2.
inline double delta_p_limit(double gamma2, double omega2, double f) {
  if (!(f > 0.0)) throw std::invalid_argument("f must be positive");
  if (!(omega2 > 1.0)) throw std::invalid_argument("omega2 must exceed 1");
  if (gamma2 < 0.0) throw std::invalid_argument("negative dephasing rate");
  const double q = (omega2 - 1.0) * (omega2 - 1.0) + gamma2 * gamma2;
  const double num = f * f * gamma2 * gamma2;
  return num / (num + 3.0 * f * gamma2 * q + q * q);
}

// NetworkSpec equivalents of the oracle settings, for cross-validation.
inline NetworkSpec n2_network(const N2Params& p) {
  NetworkSpec s;
  s.n_sites = 2;
  s.omega = {1.0, 1.0};  // equal energies; the common value drops out
  s.couplings = {{1, 2, p.v}};
  s.gamma_diss = {p.gamma_diss, p.gamma_diss};
  s.gamma_deph = {p.gamma1, p.gamma2};
  s.sink_site = 2;
  s.sink_rate = p.sink_rate;
  return s;
}

inline NetworkSpec n3_network(const N3Params& p) {
  NetworkSpec s;
  s.n_sites = 3;
  s.omega = {1.0, 1.0, 1.0};
  s.couplings = {{1, 2, p.v}, {2, 3, p.v}};
  s.gamma_diss = {p.rate, p.rate, p.rate};
  s.gamma_deph = {p.gamma1, p.gamma2, p.gamma3};
  s.sink_site = 3;
  s.sink_rate = p.rate;
  return s;
}

}  // namespace qnet
