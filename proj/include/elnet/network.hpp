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

#include <optional>
#include <vector>

#include "elnet/geometry.hpp"

namespace elnet {

// q curves meeting at x = 0, each pinned at x = 1.
struct NetworkState {
  double time = 0.0;
  std::vector<CurveSamples> curves;

  int q() const { return static_cast<int>(curves.size()); }
  int dim() const { return curves.empty() ? 0 : curves[0].dim(); }
  int intervals() const { return curves.empty() ? 0 : curves[0].intervals(); }
};

struct FlowParams {
  int n = 2;
  int q = 3;
  std::vector<double> lambda;
  std::vector<Vec> endpoints;
  // Single-curve runs have no junction; x = 0 is then pinned here instead.
  std::optional<Vec> start_point;
};

// Throws ConfigError on any shape or sign inconsistency.
void validate(const NetworkState& state, const FlowParams& params);

std::vector<DerivativeBundle> bundles(const NetworkState& state);

// Smallest speed over all curves and nodes, with its location.
struct SpeedMin {
  double speed = 0.0;
  int curve = 0;
  int node = 0;
};
SpeedMin min_speed(const std::vector<DerivativeBundle>& bundles);

// Largest node displacement between two states of the same shape.
double max_displacement(const NetworkState& a, const NetworkState& b);

}  // namespace elnet
