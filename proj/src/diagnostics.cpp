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

#include "elnet/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "elnet/interp.hpp"
#include "elnet/junction.hpp"
#include "elnet/stencil.hpp"

namespace elnet {

namespace {

double trapezoid(const Vec& g) {
  const int N = static_cast<int>(g.size()) - 1;
  return (g.sum() - 0.5 * (g[0] + g[N])) / N;
}

std::string label(const char* base, int i) {
  return std::string(base) + "[" + std::to_string(i + 1) + "]";
}

}  // namespace

double curve_length(const DerivativeBundle& b) { return trapezoid(b.speed); }

double curve_length(const CurveSamples& curve) { return curve_length(finite_differences(curve)); }

double elastic_energy(const DerivativeBundle& b, double lambda) {
  const Field k = curvature(b);
  Vec g(b.count());
  for (int i = 0; i < b.count(); ++i)
    g[i] = 0.5 * k.col(i).squaredNorm() * b.speed[i] + lambda * b.speed[i];
  return trapezoid(g);
}

double elastic_energy(const CurveSamples& curve, double lambda) {
  return elastic_energy(finite_differences(curve), lambda);
}

NetworkEnergy network_energy(const NetworkState& state, const FlowParams& params) {
  NetworkEnergy e;
  for (int i = 0; i < state.q(); ++i) {
    e.per_curve.push_back(elastic_energy(state.curves[i], params.lambda[i]));
    e.total += e.per_curve.back();
  }
  return e;
}

ResidualMap boundary_residuals(const NetworkState& state, const FlowParams& params) {
  return boundary_residuals(state, params, bundles(state));
}

ResidualMap boundary_residuals(const NetworkState& state, const FlowParams& params,
                               const std::vector<DerivativeBundle>& bs) {
  ResidualMap r;
  const int q = state.q();
  const int N = state.intervals();
  for (int i = 0; i < q; ++i)
    r.emplace_back(label("endpoint_pin", i),
                   (state.curves[i].node(N) - params.endpoints[i]).norm());
  for (int i = 0; i < q; ++i) {
    r.emplace_back(label("d2_start", i), bs[i].d2.col(0).norm());
    r.emplace_back(label("d2_end", i), bs[i].d2.col(N).norm());
  }
  if (q == 1) {
    const Vec start = params.start_point ? *params.start_point : state.curves[0].node(0);
    r.emplace_back("start_pin", (state.curves[0].node(0) - start).norm());
    return r;
  }
  for (int i = 1; i < q; ++i)
    r.emplace_back(label("concurrency", i),
                   (state.curves[i].node(0) - state.curves[0].node(0)).norm());
  Vec sum = Vec::Zero(state.dim());
  for (int i = 0; i < q; ++i) {
    require_regular(bs[i], i);
    const auto L = bs[i].local(0);
    const auto nk = formulas::nabla_s_kappa(L);
    for (int j = 0; j < state.dim(); ++j)
      sum[j] += nk[j] - params.lambda[i] * L.d1[j] / bs[i].speed[0];
  }
  r.emplace_back("junction_sum", sum.norm());
  return r;
}

double max_residual(const ResidualMap& residuals) {
  double m = 0.0;
  for (const auto& [name, v] : residuals) m = std::max(m, v);
  return m;
}

DiagnosticsRecord diagnostics_record(const NetworkState& state, const FlowParams& params) {
  return diagnostics_record(state, params, bundles(state));
}

DiagnosticsRecord diagnostics_record(const NetworkState& state, const FlowParams& params,
                                     const std::vector<DerivativeBundle>& bs) {
  DiagnosticsRecord rec;
  rec.time = state.time;
  for (int i = 0; i < state.q(); ++i) {
    rec.energy_per_curve.push_back(elastic_energy(bs[i], params.lambda[i]));
    rec.length_per_curve.push_back(curve_length(bs[i]));
    rec.energy_total += rec.energy_per_curve.back();
  }
  rec.nc_at_junction = nc_value(junction_tangents(bs));
  rec.residuals = boundary_residuals(state, params, bs);
  rec.min_speed = min_speed(bs).speed;
  return rec;
}

namespace {

// Both sides of the variation check use nine-point windows and fourth-order
// quadrature. With the five-point stencils the O(h^2) error of the fourth
// derivative, magnified by cancellation in the integral, exceeds the
// agreement tolerance.
double integral(const Vec& g) { return cumulative_integral(g)[g.size() - 1]; }

double functional_value(const Field& nodes, Functional fn) {
  const auto b = wide_bundle(CurveSamples(nodes));
  if (fn == Functional::length) return integral(b.speed);
  const Field k = curvature(b);
  Vec g(b.count());
  for (int i = 0; i < b.count(); ++i) g[i] = 0.5 * k.col(i).squaredNorm() * b.speed[i];
  return integral(g);
}

}  // namespace

VariationPair first_variation_check(const CurveSamples& curve, const Field& direction,
                                    Functional fn, double eps) {
  if (direction.rows() != curve.dim() || direction.cols() != curve.count())
    throw ConfigError("direction field shape does not match the curve");
  require_regular(finite_differences(curve));
  const auto b = wide_bundle(curve);
  const int N = curve.intervals();
  const Field T = unit_tangent(b);
  const Field kap = curvature(b);

  VariationPair v;
  v.finite_difference = (functional_value(curve.nodes() + eps * direction, fn) -
                         functional_value(curve.nodes() - eps * direction, fn)) /
                        (2.0 * eps);

  Vec g(curve.count());
  if (fn == Functional::length) {
    for (int k = 0; k <= N; ++k) g[k] = -kap.col(k).dot(direction.col(k)) * b.speed[k];
    const double bdry = T.col(N).dot(direction.col(N)) - T.col(0).dot(direction.col(0));
    v.analytic = bdry + integral(g);
    return v;
  }

  const Field dphi = wide_derivative(direction, 1);
  const Field nk = nabla_s_kappa(b);
  const Field n2k = nabla_s2_kappa(b);
  auto boundary = [&](int k) {
    const double kk = kap.col(k).squaredNorm();
    const Vec dsphi = dphi.col(k) / b.speed[k];
    return dsphi.dot(kap.col(k)) - direction.col(k).dot(nk.col(k) + 0.5 * kk * T.col(k));
  };
  for (int k = 0; k <= N; ++k) {
    const double kk = kap.col(k).squaredNorm();
    g[k] = (n2k.col(k) + 0.5 * kk * kap.col(k)).dot(direction.col(k)) * b.speed[k];
  }
  v.analytic = boundary(N) - boundary(0) + integral(g);
  return v;
}

bool variation_agrees(const VariationPair& v) {
  return std::abs(v.analytic - v.finite_difference) <= std::max(1e-6, 1e-4 * std::abs(v.analytic));
}

GridField decimate(const GridField& field, int max_slices) {
  const int m = static_cast<int>(field.slices.size());
  if (m <= max_slices) return field;
  GridField out;
  const int stride = (m + max_slices - 2) / (max_slices - 1);
  for (int i = 0; i < m; i += stride) {
    out.times.push_back(field.times[i]);
    out.slices.push_back(field.slices[i]);
  }
  if (out.times.back() != field.times.back()) {
    out.times.push_back(field.times.back());
    out.slices.push_back(field.slices.back());
  }
  return out;
}

namespace {

double seminorm_x(const GridField& f, double rho) {
  double total = 0.0;
  const int comps = static_cast<int>(f.slices.at(0).rows());
  const int cnt = static_cast<int>(f.slices[0].cols());
  const int N = cnt - 1;
  // |x - y|^-rho depends only on the index gap.
  std::vector<double> w(cnt, 0.0);
  for (int g = 1; g < cnt; ++g) w[g] = std::pow(static_cast<double>(g) / N, -rho);
  for (int j = 0; j < comps; ++j) {
    double best = 0.0;
    for (const auto& s : f.slices)
      for (int a = 0; a < cnt; ++a)
        for (int b = a + 1; b < cnt; ++b)
          best = std::max(best, std::abs(s(j, a) - s(j, b)) * w[b - a]);
    total += best;
  }
  return total;
}

double seminorm_t(const GridField& f, double rho) {
  double total = 0.0;
  const int comps = static_cast<int>(f.slices.at(0).rows());
  const int cnt = static_cast<int>(f.slices[0].cols());
  const int m = static_cast<int>(f.slices.size());
  for (int j = 0; j < comps; ++j) {
    double best = 0.0;
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) {
        const double dt = std::abs(f.times[b] - f.times[a]);
        if (dt == 0.0) continue;
        const double w = std::pow(dt, -rho);
        for (int k = 0; k < cnt; ++k)
          best = std::max(best, std::abs(f.slices[a](j, k) - f.slices[b](j, k)) * w);
      }
    total += best;
  }
  return total;
}

double sup_norm(const GridField& f) {
  double total = 0.0;
  const int comps = static_cast<int>(f.slices.at(0).rows());
  for (int j = 0; j < comps; ++j) {
    double best = 0.0;
    for (const auto& s : f.slices) best = std::max(best, s.row(j).cwiseAbs().maxCoeff());
    total += best;
  }
  return total;
}

GridField dx(const GridField& f) {
  GridField out;
  out.times = f.times;
  for (const auto& s : f.slices) {
    const int N = static_cast<int>(s.cols()) - 1;
    Field d(s.rows(), s.cols());
    for (int k = 0; k <= N; ++k) {
      const Stencil st = node_stencil(1, k, N);
      for (int j = 0; j < s.rows(); ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < st.w.size(); ++i) acc += st.w[i] * s(j, st.first + i);
        d(j, k) = acc * N;
      }
    }
    out.slices.push_back(std::move(d));
  }
  return out;
}

}  // namespace

SeminormReport holder_seminorms(const GridField& field, double rho, SeminormMode mode) {
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("Hoelder exponent must lie in (0, 1)");
  if (field.slices.empty()) throw ConfigError("empty field");
  const GridField f = decimate(field);
  SeminormReport r;
  r.rho = rho;
  if (mode == SeminormMode::space)
    r.value_x = seminorm_x(f, rho);
  else
    r.value_t = seminorm_t(f, rho);
  return r;
}

double parabolic_norm(const GridField& field, int k, double alpha) {
  if (k != 0 && k != 1) throw DomainError("parabolic norm is exposed for k in {0, 1} only");
  if (alpha != 0.25 && alpha != 0.5) throw DomainError("alpha must be 1/4 or 1/2");
  const GridField f = decimate(field);
  if (k == 0) return sup_norm(f) + seminorm_x(f, alpha) + seminorm_t(f, alpha / 4.0);
  const GridField g = dx(f);
  return sup_norm(f) + sup_norm(g) + seminorm_x(g, alpha) + seminorm_t(f, (1.0 + alpha) / 4.0) +
         seminorm_t(g, alpha / 4.0);
}

}  // namespace elnet
