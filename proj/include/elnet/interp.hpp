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

#include "elnet/common.hpp"

namespace elnet {

// Four-point Lagrange interpolation of node values on the uniform grid
// x_k = k/N; the stencil shifts inward near the ends.
double cubic_eval(const Eigen::Ref<const Eigen::RowVectorXd>& values, double x);
double cubic_derivative(const Eigen::Ref<const Eigen::RowVectorXd>& values, double x);
Vec cubic_eval_field(const Field& values, double x);
Vec cubic_derivative_field(const Field& values, double x);

// Lagrange interpolation on `width` nodes centred on the cell of x (shifted
// inward near the ends). Resampling a curve for later differentiation needs
// this: the cubic error is O(h^4) but not smooth from node to node, and the
// fourth-derivative stencil turns it into an O(1) error.
double lagrange_eval(const Eigen::Ref<const Eigen::RowVectorXd>& values, double x, int width = 8);
Vec lagrange_eval_field(const Field& values, double x, int width = 8);

// Cumulative integral of g over the uniform grid, fourth order.
Vec cumulative_integral(const Vec& g);

}  // namespace elnet
