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


#include "elnet/convergence.hpp"

#include <cmath>
#include <sstream>

#include "elnet/interp.hpp"

namespace elnet {

namespace {

NetworkState run(const ProblemFactory& make, int N, const SolverConfig& cfg, const char* what) {
  const Scenario sc = make(N);
  SolverConfig c = cfg;
  c.snapshot_stride = 1 << 30;
  EvolveResult r = evolve(sc.state, sc.params, c);
  if (r.failure) {
    std::ostringstream os;
    os << what << " run failed at N = " << N << ", dt = " << effective_dt(c, N) << ": "
       << r.failure->message;
    throw SolverError(os.str());
  }
  return r.last_good;
}

void fill_orders(ConvergenceStudy& s, const std::vector<double>& h) {
  std::vector<double> err;
  for (std::size_t i = 0; i < s.levels.size(); ++i) {
    err.push_back(s.levels[i].error);
    if (i > 0 && s.levels[i].error > 0 && s.levels[i - 1].error > 0)
      s.levels[i].order = std::log(s.levels[i - 1].error / s.levels[i].error) /
                          std::log(h[i - 1] / h[i]);
  }
  s.fitted_order = fit_order(h, err);
}

}  // namespace

double fit_order(const std::vector<double>& h, const std::vector<double>& err) {
  if (h.size() != err.size() || h.size() < 2) throw ConfigError("need at least two levels");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(err[i] > 0.0)) return INFINITY;
    const double x = std::log(h[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

double coarse_node_error(const NetworkState& coarse, const NetworkState& fine) {
  if (coarse.q() != fine.q() || coarse.dim() != fine.dim())
    throw ConfigError("states differ in shape");
  const int Nc = coarse.intervals();
  const int Nf = fine.intervals();
  double e = 0.0;
  for (int i = 0; i < coarse.q(); ++i)
    for (int k = 0; k <= Nc; ++k) {
      Vec ref;
      if (Nf % Nc == 0)
        ref = fine.curves[i].node(k * (Nf / Nc));
      else
        ref = cubic_eval_field(fine.curves[i].nodes(), static_cast<double>(k) / Nc);
      e = std::max(e, (coarse.curves[i].node(k) - ref).norm());
    }
  return e;
}

ConvergenceStudy spatial_study(const ProblemFactory& make, const std::vector<int>& levels,
                               int reference, const SolverConfig& cfg) {
  if (levels.empty()) throw ConfigError("no levels given");
  for (std::size_t i = 0; i < levels.size(); ++i)
    if ((i > 0 && levels[i] <= levels[i - 1]) || levels[i] < kMinIntervals)
      throw ConfigError("levels must be strictly increasing and at least 8");
  if (reference <= levels.back()) throw ConfigError("reference must exceed every level");
  if (!(cfg.dt > 0.0)) throw ConfigError("a spatial study needs an explicit dt shared by all levels");
  validate(cfg);
  const NetworkState ref = run(make, reference, cfg, "reference");
  ConvergenceStudy s;
  s.mode = "space";
  std::vector<double> h;
  for (int N : levels) {
    const NetworkState fin = run(make, N, cfg, "level");
    s.levels.push_back({N, cfg.dt, coarse_node_error(fin, ref), std::nullopt});
    h.push_back(1.0 / N);
  }
  fill_orders(s, h);
  return s;
}

ConvergenceStudy temporal_study(const ProblemFactory& make, int N, double dt0, int halvings,
                                int ref_divisor, const SolverConfig& cfg) {
  if (!(dt0 > 0.0) || halvings < 1 || ref_divisor <= (1 << halvings))
    throw ConfigError("reference dt must be finer than every level");
  SolverConfig c = cfg;
  c.dt = dt0 / ref_divisor;
  validate(c);
  const NetworkState ref = run(make, N, c, "reference");
  ConvergenceStudy s;
  s.mode = "time";
  std::vector<double> h;
  for (int j = 0; j <= halvings; ++j) {
    c.dt = dt0 / (1 << j);
    const NetworkState fin = run(make, N, c, "level");
    s.levels.push_back({N, c.dt, coarse_node_error(fin, ref), std::nullopt});
    h.push_back(c.dt);
  }
  fill_orders(s, h);
  return s;
}

}  // namespace elnet
