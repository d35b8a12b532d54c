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

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "elnet/network.hpp"

namespace elnet {

inline constexpr double kCompatTol = 1e-8;

struct CompatRecord {
  std::string condition;
  int curve = 0;     // 1-based; 0 for network-level conditions
  int other = 0;     // second curve of a pair condition, else 0
  int endpoint = 0;  // 0 junction side, 1 fixed end
  double residual = 0.0;
  double tolerance = 0.0;  // effective bound, includes the rounding floor
  bool pass = true;
};

struct CompatReport {
  std::vector<CompatRecord> records;
  bool pass = true;

  const CompatRecord* first_failure() const;
};

// Derivatives f, f', ..., f^(K) of one curve at one end, each with an error
// bound for its estimate: rounding plus a truncation estimate from one extra
// stencil point (zero for exact input).
struct EndpointJet {
  std::vector<Vec> d;
  std::vector<double> noise;
};

// jets[curve][end], end 0 at x = 0 and 1 at x = 1.
using NetworkJets = std::vector<std::array<EndpointJet, 2>>;

inline constexpr int kJetOrder = 7;

// One-sided stencil estimates up to f^(max_order) at both ends of every curve.
NetworkJets estimate_endpoint_jets(const NetworkState& state, int max_order = kJetOrder);

CompatReport check_compat_order0(const NetworkState& network, const FlowParams& params,
                                 double tol = kCompatTol);
CompatReport check_compat_order0(const NetworkJets& jets, const FlowParams& params,
                                 double tol = kCompatTol);

// Order-zero verdict is carried as the record "order0_prerequisite"; the
// first-time-derivative records are evaluated regardless.
CompatReport check_compat_order1(const NetworkState& network, const FlowParams& params,
                                 double tol = kCompatTol);
CompatReport check_compat_order1(const NetworkJets& jets, const FlowParams& params,
                                 double tol = kCompatTol);

// delta~^4 with delta~ = min 1/|f'| over all curves and nodes.
double parabolicity_margin(const std::vector<Vec>& speeds);

struct RootSet {
  std::complex<double> p;
  double theta = 0.0;
  std::vector<double> radii;
  // roots[i][k-1] = tau_{i,k}; k = 1, 2 upper half plane, k = 3, 4 lower.
  std::vector<std::array<std::complex<double>, 4>> roots;
};

RootSet positive_roots(std::complex<double> p, const std::vector<double>& D);

// The reduced omega-system at the junction, 2qn square; rows follow the
// b-c and a-c reductions per curve and component.
Eigen::MatrixXcd junction_omega_system(const std::vector<Vec>& tangents,
                                       const std::vector<double>& D, std::complex<double> p);

// True iff the omega-system has only the trivial solution (relative singular
// value test at `tol`).
bool junction_complementary(const std::vector<Vec>& tangents, const std::vector<double>& D,
                            std::complex<double> p, double tol = 1e-8);

bool fixed_end_complementary(double D, std::complex<double> p);

}  // namespace elnet
