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

#include "elnet/common.hpp"
#include "elnet/geometry.hpp"

namespace elnet {

// Relative rank tolerance shared by every span test.
inline constexpr double kRankTol = 1e-8;

struct JunctionFrame {
  std::vector<Vec> tangents;   // T_i at x = 0
  std::vector<Vec> a_vectors;  // nabla_s^2 kappa_i at x = 0
};

struct JunctionLinearization {
  std::vector<Eigen::MatrixXd> e_matrices;
  std::vector<Vec> d_vectors;
  std::vector<double> coefficients;  // D_i(0)
  Vec b;
};

double nc_value(const std::vector<Vec>& tangents);

// Singular values above tol * (largest singular value).
int span_dimension(const std::vector<Vec>& tangents, double tol = kRankTol);

Eigen::MatrixXd build_Q(const std::vector<Vec>& tangents);

// Right-hand side of the junction tangential-speed system.
Vec junction_phi_rhs(const JunctionFrame& frame);

// Solves Q phi = rhs; throws NonCollinearityError if the span test fails.
Vec junction_phi(const JunctionFrame& frame, double rank_tol = kRankTol);

// Tangents and nabla_s^2 kappa at node 0 of each curve.
JunctionFrame junction_frame(const std::vector<DerivativeBundle>& bundles);
std::vector<Vec> junction_tangents(const std::vector<DerivativeBundle>& bundles);

// E_i, d_i, D_i from `frozen`, b from `current`; only node 0 of each bundle
// is read.
JunctionLinearization linearize_boundary(const std::vector<DerivativeBundle>& frozen,
                                         const std::vector<DerivativeBundle>& current,
                                         const std::vector<double>& lambda);

}  // namespace elnet
