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

#include <string>
#include <vector>

#include "elnet/network.hpp"

namespace elnet {

struct Scenario {
  std::string name;
  std::string description;
  NetworkState state;
  FlowParams params;
};

// sin(pi x)^5: first and third derivatives and all even ones vanish at both
// ends, so straight spokes bent by it keep their junction angles and satisfy
// the order-zero compatibility conditions.
double bend(double x);

// Smooth step: 1 on [0, a], 0 on [b, 1].
double cutoff(double x, double a, double b);

// Straight spokes from the origin at 90, 210 and 330 degrees, unit length.
Scenario triod_equilibrium(int N = 64, double lambda = 0.0);
// Spokes bent along their normals by bend(x); order-zero compatible.
Scenario triod_bent(int N = 64, double lambda = 0.1);
// Two opposite spokes: tangents at the junction are collinear.
Scenario collinear_bad(int N = 64);
// Four spokes along tetrahedral directions in R^3, slightly bent.
Scenario q4_spatial(int N = 64, double lambda = 0.1);
// Straight triod with c x^4 (cut off smoothly before x = 0.45) added along
// one normal: unequal fourth derivatives at the junction.
Scenario compatwo_bad(int N = 64, double c = 5.0);
// Single curve (x, 0.1 sin(pi x)) with both ends pinned.
Scenario clamped_arc(int N = 64);

std::vector<std::string> scenario_names();
Scenario make_scenario(const std::string& name, int N);

// Same network resampled to N intervals by eight-point local interpolation.
NetworkState resample(const NetworkState& state, int N);

}  // namespace elnet
