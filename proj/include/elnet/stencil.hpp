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

namespace elnet {

// Finite-difference weights for all derivative orders 0..max_order at x0 on
// an arbitrary set of distinct abscissae (Fornberg's recursion).
// Result is indexed [order][point].
std::vector<std::vector<double>> fornberg_weights(double x0, const std::vector<double>& xs,
                                                  int max_order);

// One stencil applied at a single node: f^(m)(x_node) ~ sum_i w[i] f[first + i].
// Weights are in grid-index units; divide by h^m before use.
struct Stencil {
  int first = 0;
  std::vector<double> w;
};

// Stencil used by finite_differences for derivative m in 1..4 at node k of a
// grid with N intervals: centered five points inside, six shifted points at
// the two nodes nearest each end.
Stencil node_stencil(int m, int k, int N);

// Wider one-sided stencil for derivative m at an endpoint (end = 0 or 1) using
// `points` nodes starting from that end.
Stencil endpoint_stencil(int m, int end, int points, int N);

// Endpoint stencil width used for the higher derivatives of the order-one
// compatibility checks: the finite_differences stencil for m <= 4, m + 2
// points beyond.
int endpoint_width(int m);

}  // namespace elnet
