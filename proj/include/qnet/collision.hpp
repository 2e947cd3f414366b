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

#include <numbers>

#include "qnet/propagator.hpp"

namespace qnet {

class CalibrationError : public std::runtime_error {
 public:
  explicit CalibrationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Collision angle reproducing a target dephasing rate: an isolated site's
// coherence picks up cos(theta) per collision, so n collisions give
// cos^n(theta) = exp(-2 gamma n dt).
inline double calibrate_angle(double gamma, double dt) {
  if (gamma < 0.0) throw std::invalid_argument("dephasing rate must be nonnegative");
  if (!(dt > 0.0)) throw std::invalid_argument("collision interval must be positive");
  const double target = std::exp(-2.0 * gamma * dt);
  if (target <= 0.0)
    throw CalibrationError("gamma*dt too large to calibrate; reduce the interval");
  return std::acos(target);
}

struct CollisionSchedule {
  double dt = 1e-3;
  std::vector<double> theta;  // per-site collision angle
  int memory = 1;             // collisions per environment qubit before reset
  double total_time = 0.0;

  void validate(int n_sites) const {
    if (!(dt > 0.0)) throw std::invalid_argument("collision interval must be positive");
    if (static_cast<int>(theta.size()) != n_sites)
      throw std::invalid_argument("one collision angle per site expected");
    for (double th : theta)
      if (th < 0.0 || th > std::numbers::pi / 2 + 1e-12)
        throw std::invalid_argument("collision angles must lie in [0, pi/2]");
    if (memory < 1) throw std::invalid_argument("memory count must be >= 1");
    if (!(total_time > 0.0))
      throw std::invalid_argument("total time must be positive");
  }

  int n_steps() const {
    return std::max(1, static_cast<int>(std::llround(total_time / dt)));
  }
};

inline CollisionSchedule calibrated_schedule(const std::vector<double>& gamma,
                                             double dt, double total_time,
                                             int memory = 1) {
  CollisionSchedule s;
  s.dt = dt;
  s.memory = memory;
  s.total_time = total_time;
  s.theta.reserve(gamma.size());
  for (double g : gamma) s.theta.push_back(calibrate_angle(g, dt));
  return s;
}

namespace detail {

// m = 1: each collision uses a fresh environment qubit, so tracing it out
// right away is exact. The combined effect of one collision round is an
// elementwise damping of the coherences: rho_{i,j} *= c_i c_j (i != j) with
// c = cos(theta) on the sites and 1 on vacuum and sink.
inline Trajectory collision_evolve_fresh(const NetworkSpec& spec,
                                         const CollisionSchedule& schedule,
                                         const SEDensityMatrix& rho0) {
  const int d = spec.dim();
  Eigen::VectorXd c = Eigen::VectorXd::Ones(d);
  for (int k = 1; k <= spec.n_sites; ++k) c(k) = std::cos(schedule.theta[k - 1]);

  const Superoperator lv = build_liouvillian(spec);
  const Eigen::MatrixXcd step = (lv * schedule.dt).exp();
  const int n = schedule.n_steps();

  Trajectory tr;
  tr.n_sites = spec.n_sites;
  record_sample(tr, 0.0, rho0, false);
  Eigen::VectorXcd y = vec(rho0);
  for (int s = 1; s <= n; ++s) {
    y = step * y;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (i != j) y(i + j * d) *= c(i) * c(j);
    record_sample(tr, s * schedule.dt, unvec(y, d), false);
    ++tr.diag.steps;
  }
  return tr;
}

// m >= 1 general path: the joint state of the network and one environment
// qubit per site is propagated explicitly. Collisions are unitary rotations
// of a site's qubit conditioned on that site being excited; qubits are reset
// (traced out and reprepared in |0>) after every m collisions. Joint
// dimension is d * 2^N, so this path is for small networks.
class JointCollisionState {
 public:
  JointCollisionState(const NetworkSpec& spec, const SEDensityMatrix& rho0)
      : d_(spec.dim()), n_(spec.n_sites), ne_(1 << n_), dim_(d_ * ne_) {
    if (dim_ > 4096)
      throw std::invalid_argument(
          "joint collision state too large; use memory = 1 for big networks");
    joint_ = Eigen::MatrixXcd::Zero(dim_, dim_);
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j) joint_(id(i, 0), id(j, 0)) = rho0(i, j);
  }

  // system index i, environment configuration e (bit k-1 = qubit of site k)
  int id(int i, int e) const { return i + d_ * e; }

  // apply the system propagation map blockwise over environment indices;
  // the generator acts on the system factor only
  void evolve_system(const Eigen::MatrixXcd& step) {
    Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(dim_, dim_);
    for (int e = 0; e < ne_; ++e)
      for (int f = 0; f < ne_; ++f) {
        Eigen::MatrixXcd block = joint_.block(d_ * e, d_ * f, d_, d_);
        next.block(d_ * e, d_ * f, d_, d_) = unvec(step * vec(block), d_);
      }
    joint_ = std::move(next);
  }

  // rotate site k's qubit by 2*theta when site k is excited
  void collide(int k, double theta) {
    const double cth = std::cos(theta), sth = std::sin(theta);
    const int bit = 1 << (k - 1);
    // U acts on column pairs (|k, e0>, |k, e1>) with e1 = e0 | bit:
    //   |k,e0> -> c|k,e0> + s|k,e1>,  |k,e1> -> -s|k,e0> + c|k,e1>
    for (int e = 0; e < ne_; ++e) {
      if (e & bit) continue;
      const int r0 = id(k, e), r1 = id(k, e | bit);
      for (int col = 0; col < dim_; ++col) {
        const Complex a = joint_(r0, col), b = joint_(r1, col);
        joint_(r0, col) = cth * a - sth * b;
        joint_(r1, col) = sth * a + cth * b;
      }
    }
    for (int e = 0; e < ne_; ++e) {
      if (e & bit) continue;
      const int c0 = id(k, e), c1 = id(k, e | bit);
      for (int row = 0; row < dim_; ++row) {
        const Complex a = joint_(row, c0), b = joint_(row, c1);
        joint_(row, c0) = cth * a - sth * b;
        joint_(row, c1) = sth * a + cth * b;
      }
    }
  }

  // trace out all environment qubits and reprepare them in |0...0>
  void reset_environment() {
    SEDensityMatrix sys = reduced_system();
    joint_.setZero();
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j) joint_(id(i, 0), id(j, 0)) = sys(i, j);
  }

  SEDensityMatrix reduced_system() const {
    SEDensityMatrix sys = SEDensityMatrix::Zero(d_, d_);
    for (int e = 0; e < ne_; ++e)
      sys += joint_.block(d_ * e, d_ * e, d_, d_);
    return sys;
  }

 private:
  int d_, n_, ne_, dim_;
  Eigen::MatrixXcd joint_;
};

inline Trajectory collision_evolve_memory(const NetworkSpec& spec,
                                          const CollisionSchedule& schedule,
                                          const SEDensityMatrix& rho0) {
  const Superoperator lv = build_liouvillian(spec);
  const Eigen::MatrixXcd step = (lv * schedule.dt).exp();
  const int n = schedule.n_steps();

  JointCollisionState state(spec, rho0);
  Trajectory tr;
  tr.n_sites = spec.n_sites;
  record_sample(tr, 0.0, rho0, false);
  for (int s = 1; s <= n; ++s) {
    state.evolve_system(step);
    for (int k = 1; k <= spec.n_sites; ++k) state.collide(k, schedule.theta[k - 1]);
    if (s % schedule.memory == 0) state.reset_environment();
    record_sample(tr, s * schedule.dt, state.reduced_system(),
                                     false);
    ++tr.diag.steps;
  }
  return tr;
}

}  // namespace detail

// Repeated-interaction evolution: Lindblad propagation of the coherent and
// dissipative parts over each interval, interleaved with explicit collisions
// that carry all of the dephasing. The spec must not contain Lindblad
// dephasing of its own.
inline Trajectory collision_evolve(const NetworkSpec& spec,
                                   const CollisionSchedule& schedule,
                                   const SEDensityMatrix& rho0) {
  spec.validate();
  schedule.validate(spec.n_sites);
  for (double g : spec.gamma_deph)
    if (g != 0.0)
      throw std::invalid_argument(
          "collision_evolve owns the dephasing; set gamma_deph to zero");
  return schedule.memory == 1
             ? detail::collision_evolve_fresh(spec, schedule, rho0)
             : detail::collision_evolve_memory(spec, schedule, rho0);
}

inline Trajectory collision_evolve(const NetworkSpec& spec,
                                   const CollisionSchedule& schedule) {
  return collision_evolve(spec, schedule, initial_site(spec, 1));
}

}  // namespace qnet
