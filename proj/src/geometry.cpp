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

#include "elnet/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "elnet/kernels.hpp"
#include "elnet/stencil.hpp"

namespace elnet {

CurveSamples::CurveSamples(Field nodes) : nodes_(std::move(nodes)) {
  if (nodes_.rows() < 2 || nodes_.rows() > kMaxDim)
    throw ConfigError("ambient dimension must be in 2.." + std::to_string(kMaxDim));
  if (nodes_.cols() - 1 < kMinIntervals)
    throw ConfigError("need at least " + std::to_string(kMinIntervals) + " intervals, got " +
                      std::to_string(nodes_.cols() - 1));
  if (!nodes_.allFinite()) throw ConfigError("curve nodes must be finite");
}

formulas::Local<double> DerivativeBundle::local(int k) const {
  formulas::Local<double> L;
  L.n = dim();
  for (int j = 0; j < L.n; ++j) {
    L.d1[j] = d1(j, k);
    L.d2[j] = d2(j, k);
    L.d3[j] = d3(j, k);
    L.d4[j] = d4(j, k);
  }
  return L;
}

void require_regular(const DerivativeBundle& bundle, int curve) {
  for (int k = 0; k < bundle.count(); ++k) {
    if (!(bundle.speed[k] >= kMinSpeed)) {
      std::string where = "node " + std::to_string(k);
      if (curve >= 0) where = "curve " + std::to_string(curve + 1) + ", " + where;
      throw RegularityError("regularity violation: speed " + std::to_string(bundle.speed[k]) +
                                " at " + where,
                            curve, k, bundle.speed[k]);
    }
  }
}

Field wide_derivative(const Field& f, int m, int width) {
  const int N = static_cast<int>(f.cols()) - 1;
  const int w = std::min(width, N + 1);
  Field out(f.rows(), f.cols());
  std::vector<double> xs(w);
  const double scale = std::pow(N, m);
  for (int k = 0; k <= N; ++k) {
    const int first = std::clamp(k - w / 2, 0, N + 1 - w);
    for (int i = 0; i < w; ++i) xs[i] = first + i;
    const auto wt = fornberg_weights(k, xs, m)[m];
    for (int j = 0; j < f.rows(); ++j) {
      double acc = 0.0;
      for (int i = 0; i < w; ++i) acc += wt[i] * f(j, first + i);
      out(j, k) = acc * scale;
    }
  }
  return out;
}

DerivativeBundle wide_bundle(const CurveSamples& curve) {
  DerivativeBundle b;
  b.d1 = wide_derivative(curve.nodes(), 1);
  b.d2 = wide_derivative(curve.nodes(), 2);
  b.d3 = wide_derivative(curve.nodes(), 3);
  b.d4 = wide_derivative(curve.nodes(), 4);
  b.speed = b.d1.colwise().norm().transpose();
  return b;
}

DerivativeBundle finite_differences(const CurveSamples& curve) {
  const int n = curve.dim();
  const int N = curve.intervals();
  const int cnt = curve.count();
  const double inv_h = static_cast<double>(N);
  DerivativeBundle b;
  b.d1.resize(n, cnt);
  b.d2.resize(n, cnt);
  b.d3.resize(n, cnt);
  b.d4.resize(n, cnt);

  const auto& kt = kernels::table(kernels::active());
  const Field& f = curve.nodes();
  for (int j = 0; j < n; ++j)
    kt.interior(f.row(j).data(), cnt, inv_h, b.d1.row(j).data(), b.d2.row(j).data(),
                b.d3.row(j).data(), b.d4.row(j).data());

  Field* outs[4] = {&b.d1, &b.d2, &b.d3, &b.d4};
  const int edge[4] = {0, 1, N - 1, N};
  for (int m = 1; m <= 4; ++m) {
    const double scale = std::pow(inv_h, m);
    for (int k : edge) {
      const Stencil s = node_stencil(m, k, N);
      for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < s.w.size(); ++i) acc += s.w[i] * f(j, s.first + i);
        (*outs[m - 1])(j, k) = acc * scale;
      }
    }
  }
  b.speed = b.d1.colwise().norm().transpose();
  return b;
}

namespace {

template <class Fn>
Field per_node(const DerivativeBundle& b, Fn fn) {
  require_regular(b);
  Field out(b.dim(), b.count());
  for (int k = 0; k < b.count(); ++k) {
    const auto v = fn(b.local(k));
    for (int j = 0; j < b.dim(); ++j) out(j, k) = v[j];
  }
  return out;
}

}  // namespace

Field curvature(const DerivativeBundle& b) {
  return per_node(b, [](const auto& L) { return formulas::kappa(L); });
}

Field nabla_s_kappa(const DerivativeBundle& b) {
  return per_node(b, [](const auto& L) { return formulas::nabla_s_kappa(L); });
}

Field nabla_s2_kappa(const DerivativeBundle& b) {
  return per_node(b, [](const auto& L) { return formulas::nabla_s2_kappa(L); });
}

Field nabla_s2_kappa_const_speed(const DerivativeBundle& b) {
  return per_node(b, [](const auto& L) { return formulas::nabla_s2_kappa_const_speed(L); });
}

Field h_lower(const DerivativeBundle& b, double lambda) {
  return per_node(b, [lambda](const auto& L) { return formulas::h_lower(L, lambda); });
}

Field flow_velocity_geometric(const DerivativeBundle& b, double lambda) {
  return per_node(b, [lambda](const auto& L) { return formulas::velocity_geometric(L, lambda); });
}

Field unit_tangent(const DerivativeBundle& b) {
  require_regular(b);
  Field t = b.d1;
  for (int k = 0; k < b.count(); ++k) t.col(k) /= b.speed[k];
  return t;
}

Vec phi_star(const DerivativeBundle& b, double lambda) {
  require_regular(b);
  Vec out(b.count());
  for (int k = 0; k < b.count(); ++k) out[k] = formulas::phi_star(b.local(k), lambda);
  return out;
}

Field flow_velocity(const DerivativeBundle& b, double lambda) {
  require_regular(b);
  Field out(b.dim(), b.count());
  kernels::VelocityArgs args;
  args.n = b.dim();
  args.count = b.count();
  args.stride = b.count();
  args.d1 = b.d1.data();
  args.d2 = b.d2.data();
  args.d3 = b.d3.data();
  args.d4 = b.d4.data();
  args.lambda = lambda;
  args.out = out.data();
  kernels::table(kernels::active()).velocity(args);
  return out;
}

GeometricFields geometric_fields(const DerivativeBundle& b, double lambda) {
  GeometricFields g;
  g.kappa = curvature(b);
  g.ds_kappa = nabla_s_kappa(b);
  g.ds2_kappa = nabla_s2_kappa(b);
  g.phi_star = phi_star(b, lambda);
  g.velocity = flow_velocity(b, lambda);
  return g;
}

}  // namespace elnet
