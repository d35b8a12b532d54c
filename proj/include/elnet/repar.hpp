// Copyright 2026 The elnet Authors
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

#include <vector>

#include "elnet/geometry.hpp"
#include "elnet/network.hpp"

namespace elnet {

// Node values of a map [0,1] -> [0,1] on the grid x_k = k/N.
struct Diffeomorphism {
  Vec values;
  bool monotone = true;

  static Diffeomorphism identity(int N);
  int intervals() const { return static_cast<int>(values.size()) - 1; }
  // Endpoints fixed and node values increasing by more than `floor`.
  bool valid(double floor = 1e-10) const;
};

struct Reparametrized {
  CurveSamples curve;
  Diffeomorphism phi;  // normalized arclength; new curve is curve o phi^-1
};

Reparametrized const_speed_reparam(const CurveSamples& curve);

// One curve sampled over time.
struct CurveTrajectory {
  std::vector<double> times;
  std::vector<Field> curves;
};

struct DiffeoFamily {
  std::vector<double> times;
  std::vector<Diffeomorphism> maps;
};

inline constexpr double kMonotoneFloor = 1e-10;

// How the speed fields vary between two snapshots.
enum class FieldInTime {
  linear,  // blend of the two slices
  end,     // the later slice throughout, matching an implicit Euler step
};

// RK4 in time for
//   d/dt phi(t,x) = (phi_other(t,x) - phi_ref(t,phi)) / |f_x(t,phi)|
// with f = reference. Fields are node values per snapshot. Each snapshot
// interval is split so that h L <= 1/2 for the Lipschitz bound L of the
// right-hand side. Starts from `initial` (identity when null).
DiffeoFamily tangential_ode(const CurveTrajectory& reference, const std::vector<Vec>& phi_ref,
                            const std::vector<Vec>& phi_other,
                            const Diffeomorphism* initial = nullptr,
                            FieldInTime field_time = FieldInTime::linear);

// psi with b(x) = a(psi(x)) at t = 0, by nearest-point projection of b's
// nodes onto the cubic interpolant of a.
Diffeomorphism recover_initial_diffeo(const CurveSamples& a, const CurveSamples& b);

// <f_t, T> from the motion of the samples (second order in time).
std::vector<Vec> tangential_speed_from_motion(const CurveTrajectory& traj);

// Curve i of every state.
CurveTrajectory curve_trajectory(const std::vector<NetworkState>& states, int curve);

struct EquivalenceReport {
  bool pass = false;
  double deviation = 0.0;
  int worst_curve = 0;
  double worst_time = 0.0;
  std::vector<DiffeoFamily> diffeos;
};

// Both runs must share q, N and snapshot times. Tangential speeds are the
// phi* fields of each run, held at their end-of-interval values since an
// implicit step moves the nodes with the velocity of the new state. Store
// every step: with a stride the initial layer, where phi* changes by orders
// of magnitude over a few steps, is not resolved.
EquivalenceReport geometric_equivalence(const std::vector<NetworkState>& a,
                                        const std::vector<NetworkState>& b,
                                        const std::vector<double>& lambda, double tol);

}  // namespace elnet
