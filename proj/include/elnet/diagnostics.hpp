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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "elnet/network.hpp"

namespace elnet {

// Ordered label -> magnitude list; order is stable so CSV columns line up.
using ResidualMap = std::vector<std::pair<std::string, double>>;

struct DiagnosticsRecord {
  double time = 0.0;
  double energy_total = 0.0;
  std::vector<double> energy_per_curve;
  std::vector<double> length_per_curve;
  double nc_at_junction = 0.0;
  ResidualMap residuals;
  double min_speed = 0.0;
};

double curve_length(const CurveSamples& curve);
double curve_length(const DerivativeBundle& bundle);

// Trapezoidal rule for 1/2 |kappa|^2 ds + lambda ds.
double elastic_energy(const CurveSamples& curve, double lambda);
double elastic_energy(const DerivativeBundle& bundle, double lambda);

struct NetworkEnergy {
  double total = 0.0;
  std::vector<double> per_curve;
};
NetworkEnergy network_energy(const NetworkState& state, const FlowParams& params);

// Labels: endpoint_pin[i], d2_start[i], d2_end[i], concurrency[i] (i >= 2),
// junction_sum; single-curve runs report start_pin instead of the junction
// entries. Curve indices are 1-based.
ResidualMap boundary_residuals(const NetworkState& state, const FlowParams& params);
ResidualMap boundary_residuals(const NetworkState& state, const FlowParams& params,
                               const std::vector<DerivativeBundle>& bundles);

double max_residual(const ResidualMap& residuals);

DiagnosticsRecord diagnostics_record(const NetworkState& state, const FlowParams& params);
DiagnosticsRecord diagnostics_record(const NetworkState& state, const FlowParams& params,
                                     const std::vector<DerivativeBundle>& bundles);

enum class Functional { length, elastic };

struct VariationPair {
  double analytic = 0.0;
  double finite_difference = 0.0;
};

// Directional derivative of length or of 1/2 int |kappa|^2 ds along
// `direction` (same shape as the nodes), analytic versus central difference.
VariationPair first_variation_check(const CurveSamples& curve, const Field& direction,
                                    Functional functional, double eps = 1e-5);

bool variation_agrees(const VariationPair& v);

// Values of a scalar or vector field on a time-by-node grid.
struct GridField {
  std::vector<double> times;
  std::vector<Field> slices;  // components x nodes, one per time
};

struct SeminormReport {
  double rho = 0.0;
  std::optional<double> value_x;
  std::optional<double> value_t;
  std::optional<double> norm_parabolic;
};

enum class SeminormMode { space, time };

// At most max_slices evenly strided slices, always keeping the last one.
GridField decimate(const GridField& field, int max_slices = 200);

// Exact maximization over all grid pairs after decimation. Vector fields sum
// their component seminorms.
SeminormReport holder_seminorms(const GridField& field, double rho, SeminormMode mode);

// Parabolic Hoelder norm for k in {0, 1} and alpha in {1/4, 1/2}.
double parabolic_norm(const GridField& field, int k, double alpha);

}  // namespace elnet
