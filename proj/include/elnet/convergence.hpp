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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "elnet/scenarios.hpp"
#include "elnet/solver.hpp"

namespace elnet {

// Builds the same physical problem at N intervals.
using ProblemFactory = std::function<Scenario(int N)>;

struct ConvergenceLevel {
  int N = 0;
  double dt = 0.0;
  double error = 0.0;
  std::optional<double> order;  // against the previous level
};

struct ConvergenceStudy {
  std::string mode;  // "space" or "time"
  std::vector<ConvergenceLevel> levels;
  double fitted_order = 0.0;  // least-squares slope of -log(error)
};

// Final states at each N compared with the reference at the coarse nodes.
// All runs share cfg.dt, so time error cancels to leading order.
ConvergenceStudy spatial_study(const ProblemFactory& make, const std::vector<int>& levels,
                               int reference, const SolverConfig& cfg);

// Fixed N; dt0, dt0/2, ... (`halvings` + 1 runs) against dt0 / ref_divisor.
ConvergenceStudy temporal_study(const ProblemFactory& make, int N, double dt0, int halvings,
                                int ref_divisor, const SolverConfig& cfg);

double fit_order(const std::vector<double>& h, const std::vector<double>& err);

// Max node distance between `coarse` and `fine` at the coarse nodes.
double coarse_node_error(const NetworkState& coarse, const NetworkState& fine);

}  // namespace elnet
