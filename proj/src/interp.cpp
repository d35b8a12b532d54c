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


#include "elnet/interp.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "elnet/stencil.hpp"

namespace elnet {

namespace {

struct Window {
  int first;
  double t;  // position in index units relative to `first`
};

Window window(int N, double x) {
  const double u = std::clamp(x, 0.0, 1.0) * N;
  int k = std::clamp(static_cast<int>(std::floor(u)), 0, N - 1);
  const int first = std::clamp(k - 1, 0, N - 3);
  return {first, u - first};
}

void weights(double t, double w[4], double dw[4]) {
  // Lagrange basis on nodes 0, 1, 2, 3.
  const double a = t, b = t - 1.0, c = t - 2.0, d = t - 3.0;
  w[0] = -b * c * d / 6.0;
  w[1] = a * c * d / 2.0;
  w[2] = -a * b * d / 2.0;
  w[3] = a * b * c / 6.0;
  dw[0] = -(c * d + b * d + b * c) / 6.0;
  dw[1] = (c * d + a * d + a * c) / 2.0;
  dw[2] = -(b * d + a * d + a * b) / 2.0;
  dw[3] = (b * c + a * c + a * b) / 6.0;
}

void require_nodes(Eigen::Index cols) {
  if (cols < 4) throw ConfigError("cubic interpolation needs at least four nodes");
}

}  // namespace

double cubic_eval(const Eigen::Ref<const Eigen::RowVectorXd>& v, double x) {
  require_nodes(v.size());
  const Window win = window(static_cast<int>(v.size()) - 1, x);
  double w[4], dw[4];
  weights(win.t, w, dw);
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) acc += w[i] * v[win.first + i];
  return acc;
}

double cubic_derivative(const Eigen::Ref<const Eigen::RowVectorXd>& v, double x) {
  require_nodes(v.size());
  const int N = static_cast<int>(v.size()) - 1;
  const Window win = window(N, x);
  double w[4], dw[4];
  weights(win.t, w, dw);
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) acc += dw[i] * v[win.first + i];
  return acc * N;
}

double lagrange_eval(const Eigen::Ref<const Eigen::RowVectorXd>& v, double x, int width) {
  Field f(1, v.size());
  f.row(0) = v;
  return lagrange_eval_field(f, x, width)[0];
}

Vec lagrange_eval_field(const Field& values, double x, int width) {
  const int N = static_cast<int>(values.cols()) - 1;
  if (width < 2 || N + 1 < width) throw ConfigError("too few nodes for the interpolation width");
  const double u = std::clamp(x, 0.0, 1.0) * N;
  const int k = std::clamp(static_cast<int>(std::floor(u)), 0, N - 1);
  const int first = std::clamp(k - width / 2 + 1, 0, N + 1 - width);
  std::vector<double> xs(width);
  for (int i = 0; i < width; ++i) xs[i] = first + i;
  const auto w = fornberg_weights(u, xs, 0)[0];
  Vec out = Vec::Zero(values.rows());
  for (int i = 0; i < width; ++i) out += w[i] * values.col(first + i);
  return out;
}

Vec cubic_eval_field(const Field& values, double x) {
  Vec out(values.rows());
  for (int j = 0; j < values.rows(); ++j) out[j] = cubic_eval(values.row(j), x);
  return out;
}

Vec cubic_derivative_field(const Field& values, double x) {
  Vec out(values.rows());
  for (int j = 0; j < values.rows(); ++j) out[j] = cubic_derivative(values.row(j), x);
  return out;
}

Vec cumulative_integral(const Vec& g) {
  const int N = static_cast<int>(g.size()) - 1;
  if (N < 3) throw ConfigError("cumulative integral needs at least four nodes");
  const double h = 1.0 / N;
  Vec out(N + 1);
  out[0] = 0.0;
  for (int k = 0; k < N; ++k) {
    // Integral over [x_k, x_k+1] of the cubic through four nearby nodes.
    double piece;
    if (k == 0)
      piece = h / 24.0 * (9 * g[0] + 19 * g[1] - 5 * g[2] + g[3]);
    else if (k == N - 1)
      piece = h / 24.0 * (9 * g[N] + 19 * g[N - 1] - 5 * g[N - 2] + g[N - 3]);
    else
      piece = h / 24.0 * (-g[k - 1] + 13 * g[k] + 13 * g[k + 1] - g[k + 2]);
    out[k + 1] = out[k] + piece;
  }
  return out;
}

}  // namespace elnet
