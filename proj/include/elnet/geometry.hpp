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
#include "elnet/formulas.hpp"

namespace elnet {

// One curve sampled at x_k = k/N, k = 0..N.
class CurveSamples {
 public:
  CurveSamples() = default;
  explicit CurveSamples(Field nodes);

  int dim() const { return static_cast<int>(nodes_.rows()); }
  int intervals() const { return static_cast<int>(nodes_.cols()) - 1; }
  int count() const { return static_cast<int>(nodes_.cols()); }
  double spacing() const { return 1.0 / intervals(); }
  const Field& nodes() const { return nodes_; }
  Vec node(int k) const { return nodes_.col(k); }

 private:
  Field nodes_;
};

struct DerivativeBundle {
  Field d1, d2, d3, d4;
  Vec speed;

  int dim() const { return static_cast<int>(d1.rows()); }
  int count() const { return static_cast<int>(d1.cols()); }
  formulas::Local<double> local(int k) const;
};

struct GeometricFields {
  Field kappa;
  Field ds_kappa;
  Field ds2_kappa;
  Vec phi_star;
  Field velocity;
};

DerivativeBundle finite_differences(const CurveSamples& curve);

// Derivative m of each row by Fornberg weights on `width`-point windows,
// shifted inward near the ends; scaled by N^m.
Field wide_derivative(const Field& f, int m, int width = 9);
// finite_differences with nine-point windows throughout.
DerivativeBundle wide_bundle(const CurveSamples& curve);

Field curvature(const DerivativeBundle& bundle);
Field nabla_s_kappa(const DerivativeBundle& bundle);
Field nabla_s2_kappa(const DerivativeBundle& bundle);
// Constant-speed closed form; only meaningful on constant-speed samples.
Field nabla_s2_kappa_const_speed(const DerivativeBundle& bundle);
Vec phi_star(const DerivativeBundle& bundle, double lambda);
Field h_lower(const DerivativeBundle& bundle, double lambda);
// Coordinate form through the active SIMD kernel.
Field flow_velocity(const DerivativeBundle& bundle, double lambda);
// -nabla_s2 kappa - |kappa|^2 kappa / 2 + lambda kappa + phi* T.
Field flow_velocity_geometric(const DerivativeBundle& bundle, double lambda);
Field unit_tangent(const DerivativeBundle& bundle);

GeometricFields geometric_fields(const DerivativeBundle& bundle, double lambda);

// Throws RegularityError naming the first node with speed below kMinSpeed.
void require_regular(const DerivativeBundle& bundle, int curve = -1);

}  // namespace elnet
