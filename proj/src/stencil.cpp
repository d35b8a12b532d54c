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

#include "elnet/stencil.hpp"

#include <algorithm>
#include <string>

#include "elnet/common.hpp"

namespace elnet {

std::vector<std::vector<double>> fornberg_weights(double x0, const std::vector<double>& xs,
                                                  int max_order) {
  const int n = static_cast<int>(xs.size());
  std::vector<std::vector<double>> c(max_order + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = xs[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, max_order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = xs[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

namespace {

Stencil build(int m, int node, int first, int count) {
  std::vector<double> xs(count);
  for (int i = 0; i < count; ++i) xs[i] = first + i;
  Stencil s;
  s.first = first;
  s.w = fornberg_weights(static_cast<double>(node), xs, m)[m];
  return s;
}

}  // namespace

Stencil node_stencil(int m, int k, int N) {
  if (m < 1 || m > 4) throw ConfigError("stencil order must be in 1..4");
  if (N < kMinIntervals) throw ConfigError("grid too coarse: N = " + std::to_string(N));
  if (k < 0 || k > N) throw ConfigError("node index outside the grid");
  if (k >= 2 && k <= N - 2) return build(m, k, k - 2, 5);
  if (k <= 1) return build(m, k, 0, 6);
  return build(m, k, N - 5, 6);
}

int endpoint_width(int m) { return std::max(6, m + 2); }

Stencil endpoint_stencil(int m, int end, int points, int N) {
  if (points > N + 1) throw ConfigError("endpoint stencil wider than the grid");
  if (end == 0) return build(m, 0, 0, points);
  return build(m, N, N - points + 1, points);
}

}  // namespace elnet
