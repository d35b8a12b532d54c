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


#include "elnet/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "elnet/interp.hpp"

namespace elnet {

double bend(double x) { return std::pow(std::sin(std::numbers::pi * x), 5); }

double cutoff(double x, double a, double b) {
  if (x <= a) return 1.0;
  if (x >= b) return 0.0;
  const double t = (b - x) / (b - a);
  const double p = std::exp(-1.0 / t), r = std::exp(-1.0 / (1.0 - t));
  return p / (p + r);
}

namespace {

using Shape = std::function<Vec(double)>;

CurveSamples sample(const Shape& f, int N, int n) {
  Field nodes(n, N + 1);
  for (int k = 0; k <= N; ++k) nodes.col(k) = f(static_cast<double>(k) / N);
  return CurveSamples(std::move(nodes));
}

Vec planar(double angle_deg) {
  const double a = angle_deg * std::numbers::pi / 180.0;
  Vec v(2);
  v << std::cos(a), std::sin(a);
  return v;
}

Scenario spokes(const std::vector<Vec>& dirs, const std::vector<Vec>& normals,
                const std::vector<double>& amps, int N, double lambda) {
  Scenario s;
  const int n = static_cast<int>(dirs[0].size());
  s.params.n = n;
  s.params.q = static_cast<int>(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const Vec P = dirs[i];
    const Vec nu = normals[i];
    const double a = amps[i];
    s.state.curves.push_back(sample(
        [&](double x) { return Vec(x * P + a * bend(x) * nu); }, N, n));
    s.params.lambda.push_back(lambda);
    s.params.endpoints.push_back(P);
  }
  return s;
}

std::vector<Vec> triod_dirs() { return {planar(90), planar(210), planar(330)}; }

std::vector<Vec> triod_normals() { return {planar(180), planar(300), planar(60)}; }

}  // namespace

Scenario triod_equilibrium(int N, double lambda) {
  Scenario s = spokes(triod_dirs(), triod_normals(), {0, 0, 0}, N, lambda);
  s.name = "triod_equilibrium";
  s.description = "straight triod with 120 degree angles";
  return s;
}

Scenario triod_bent(int N, double lambda) {
  Scenario s =
      spokes(triod_dirs(), triod_normals(), {0.03, -0.02, 0.01}, N, lambda);
  s.name = "triod_bent";
  s.description = "triod with spokes bent along their normals by sin(pi x)^5";
  return s;
}

Scenario collinear_bad(int N) {
  Scenario s = spokes({planar(0), planar(180)}, {planar(90), planar(270)}, {0, 0}, N, 0.0);
  s.name = "collinear_bad";
  s.description = "two opposite spokes; junction tangents are collinear";
  return s;
}

Scenario q4_spatial(int N, double lambda) {
  const double r = 1.0 / std::sqrt(3.0);
  std::vector<Vec> dirs(4, Vec(3)), normals(4, Vec(3));
  dirs[0] << r, r, r;
  dirs[1] << r, -r, -r;
  dirs[2] << -r, r, -r;
  dirs[3] << -r, -r, r;
  const double t = 1.0 / std::sqrt(2.0);
  normals[0] << t, -t, 0;
  normals[1] << 0, t, -t;
  normals[2] << t, 0, -t;
  normals[3] << t, t, 0;
  Scenario s = spokes(dirs, normals, {0.05, -0.04, 0.03, 0.02}, N, lambda);
  s.name = "q4_spatial";
  s.description = "four spokes along tetrahedral directions in R^3";
  return s;
}

Scenario compatwo_bad(int N, double c) {
  Scenario s = triod_equilibrium(N, 0.0);
  const Vec nu = triod_normals()[0];
  Field nodes = s.state.curves[0].nodes();
  for (int k = 0; k <= N; ++k) {
    const double x = static_cast<double>(k) / N;
    nodes.col(k) += c * std::pow(x, 4) * cutoff(x, 0.2, 0.45) * nu;
  }
  s.state.curves[0] = CurveSamples(std::move(nodes));
  s.name = "compatwo_bad";
  s.description = "straight triod with c x^4 added near the junction of spoke 1";
  return s;
}

Scenario clamped_arc(int N) {
  Scenario s;
  s.name = "clamped_arc";
  s.description = "single smooth arc pinned at both ends";
  s.params.n = 2;
  s.params.q = 1;
  s.params.lambda = {0.0};
  Vec P(2), S(2);
  P << 1.0, 0.0;
  S << 0.0, 0.0;
  s.params.endpoints = {P};
  s.params.start_point = S;
  s.state.curves.push_back(sample(
      [](double x) {
        Vec v(2);
        v << x, 0.1 * std::sin(std::numbers::pi * x);
        return v;
      },
      N, 2));
  return s;
}

std::vector<std::string> scenario_names() {
  return {"triod_equilibrium", "triod_bent", "collinear_bad", "q4_spatial", "compatwo_bad",
          "clamped_arc"};
}

Scenario make_scenario(const std::string& name, int N) {
  if (name == "triod_equilibrium") return triod_equilibrium(N);
  if (name == "triod_bent") return triod_bent(N);
  if (name == "collinear_bad") return collinear_bad(N);
  if (name == "q4_spatial") return q4_spatial(N);
  if (name == "compatwo_bad") return compatwo_bad(N);
  if (name == "clamped_arc") return clamped_arc(N);
  throw ConfigError("unknown scenario '" + name + "'");
}

NetworkState resample(const NetworkState& state, int N) {
  if (N < kMinIntervals) throw ConfigError("too few intervals");
  NetworkState out;
  out.time = state.time;
  for (const auto& c : state.curves) {
    if (c.intervals() == N) {
      out.curves.push_back(c);
      continue;
    }
    Field nodes(c.dim(), N + 1);
    const int width = std::min(8, c.count());
    for (int k = 0; k <= N; ++k)
      nodes.col(k) = lagrange_eval_field(c.nodes(), static_cast<double>(k) / N, width);
    out.curves.emplace_back(std::move(nodes));
  }
  return out;
}

}  // namespace elnet
