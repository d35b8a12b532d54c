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

#include "elnet/network.hpp"

#include <algorithm>
#include <string>

namespace elnet {

void validate(const NetworkState& state, const FlowParams& p) {
  if (p.q < 1) throw ConfigError("curve count q must be at least 1");
  if (p.n < 2 || p.n > kMaxDim)
    throw ConfigError("ambient dimension n must be in 2.." + std::to_string(kMaxDim));
  if (state.q() != p.q)
    throw ConfigError("network has " + std::to_string(state.q()) + " curves, parameters say " +
                      std::to_string(p.q));
  if (static_cast<int>(p.lambda.size()) != p.q)
    throw ConfigError("lambda must have q entries");
  if (static_cast<int>(p.endpoints.size()) != p.q)
    throw ConfigError("endpoints must have q entries");
  for (int i = 0; i < p.q; ++i) {
    if (!(p.lambda[i] >= 0.0)) throw ConfigError("lambda must be non-negative");
    if (p.endpoints[i].size() != p.n) throw ConfigError("endpoint dimension mismatch");
    if (state.curves[i].dim() != p.n) throw ConfigError("curve dimension mismatch");
    if (state.curves[i].intervals() != state.intervals())
      throw ConfigError("all curves must share the same grid");
  }
  if (p.q == 1 && !p.start_point)
    throw ConfigError("a single curve needs a pinned start point");
  if (p.start_point && p.start_point->size() != p.n)
    throw ConfigError("start point dimension mismatch");
}

std::vector<DerivativeBundle> bundles(const NetworkState& state) {
  std::vector<DerivativeBundle> out;
  out.reserve(state.curves.size());
  for (const auto& c : state.curves) out.push_back(finite_differences(c));
  return out;
}

SpeedMin min_speed(const std::vector<DerivativeBundle>& bs) {
  SpeedMin m;
  m.speed = bs.at(0).speed[0];
  for (std::size_t i = 0; i < bs.size(); ++i) {
    for (int k = 0; k < bs[i].count(); ++k) {
      if (bs[i].speed[k] < m.speed) {
        m.speed = bs[i].speed[k];
        m.curve = static_cast<int>(i);
        m.node = k;
      }
    }
  }
  return m;
}

double max_displacement(const NetworkState& a, const NetworkState& b) {
  double d = 0.0;
  for (int i = 0; i < a.q(); ++i)
    d = std::max(d, (a.curves[i].nodes() - b.curves[i].nodes()).cwiseAbs().maxCoeff());
  return d;
}

}  // namespace elnet
