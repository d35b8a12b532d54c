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

#include "elnet/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/SparseLU>

#include "elnet/formulas.hpp"
#include "elnet/jet.hpp"
#include "elnet/junction.hpp"
#include "elnet/stencil.hpp"

namespace elnet {

void validate(const SolverConfig& c) {
  if (!(c.dt >= 0.0)) throw ConfigError("dt must be positive (or 0 for the default)");
  if (!(c.t_end >= 0.0)) throw ConfigError("t_end must be non-negative");
  if (!(c.picard_tol > 0.0)) throw ConfigError("picard_tol must be positive");
  if (c.picard_max < 1) throw ConfigError("picard_max must be at least 1");
  if (!(c.delta_guard_factor > 0.0 && c.delta_guard_factor < 1.0))
    throw ConfigError("delta_guard_factor must lie in (0, 1)");
  if (c.snapshot_stride < 1) throw ConfigError("snapshot stride must be at least 1");
}

double effective_dt(const SolverConfig& cfg, int N) {
  return cfg.dt > 0.0 ? cfg.dt : 0.1 / (static_cast<double>(N) * N);
}

namespace {

Vec fourth_power_coefficients(const DerivativeBundle& b) {
  Vec c(b.count());
  for (int k = 0; k < b.count(); ++k) {
    const double inv2 = 1.0 / b.d1.col(k).squaredNorm();
    c[k] = inv2 * inv2;
  }
  return c;
}

void check_shapes(const NetworkState& a, const NetworkState& b) {
  if (a.q() != b.q() || a.dim() != b.dim() || a.intervals() != b.intervals())
    throw ConfigError("states differ in shape");
}

struct Frozen {
  std::vector<DerivativeBundle> bundles;
  std::vector<Vec> d4coef;
  JunctionLinearization lin;
  double dmax3 = 1.0;
};

Frozen freeze(const NetworkState& frozen, const FlowParams& params) {
  Frozen fz;
  fz.bundles = bundles(frozen);
  for (int i = 0; i < frozen.q(); ++i) {
    require_regular(fz.bundles[i], i);
    fz.d4coef.push_back(fourth_power_coefficients(fz.bundles[i]));
  }
  if (frozen.q() >= 2) {
    fz.lin = linearize_boundary(fz.bundles, fz.bundles, params.lambda);
    double dmax = 0.0;
    for (double d : fz.lin.coefficients) dmax = std::max(dmax, d);
    fz.dmax3 = dmax * dmax * dmax;
  }
  return fz;
}

// d/d(d_m) of V + c d4 at one node, c the frozen D^4; J[m-1](j, l) is the
// derivative of component j with respect to component l of d_m.
std::array<Eigen::MatrixXd, 4> lower_jacobian(const formulas::Local<double>& L, double lambda,
                                              double c) {
  const int n = L.n;
  std::array<Eigen::MatrixXd, 4> J;
  for (auto& m : J) m = Eigen::MatrixXd::Zero(n, n);
  formulas::Local<Jet<1>> X;
  X.n = n;
  for (int j = 0; j < n; ++j) {
    X.d1[j] = L.d1[j];
    X.d2[j] = L.d2[j];
    X.d3[j] = L.d3[j];
    X.d4[j] = L.d4[j];
  }
  std::array<formulas::Vector<Jet<1>>*, 4> rows{&X.d1, &X.d2, &X.d3, &X.d4};
  for (int m = 0; m < 4; ++m)
    for (int l = 0; l < n; ++l) {
      (*rows[m])[l].c[1] = 1.0;
      const auto V = formulas::velocity(X, lambda);
      for (int j = 0; j < n; ++j) J[m](j, l) = V[j].c[1];
      (*rows[m])[l].c[1] = 0.0;
    }
  J[3] += c * Eigen::MatrixXd::Identity(n, n);
  return J;
}

}  // namespace

Field remainder(const DerivativeBundle& frozen, const DerivativeBundle& current) {
  const Vec D4 = fourth_power_coefficients(frozen);
  const Vec S4 = fourth_power_coefficients(current);
  Field r(current.dim(), current.count());
  for (int k = 0; k < current.count(); ++k) r.col(k) = (D4[k] - S4[k]) * current.d4.col(k);
  return r;
}

LinearStepSystem assemble_matrix(const NetworkState& frozen, const FlowParams& params, double dt,
                                 bool implicit_lower) {
  validate(frozen, params);
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  const Frozen fz = freeze(frozen, params);
  LinearStepSystem sys;
  sys.q = frozen.q();
  sys.n = frozen.dim();
  sys.count = frozen.intervals() + 1;
  const int N = frozen.intervals();
  const int size = sys.q * sys.n * sys.count;
  sys.rows.resize(size);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(size) * 6 + sys.q * sys.n * sys.n * 6);

  const double N4 = std::pow(static_cast<double>(N), 4);
  const Stencil d2_start = node_stencil(2, 0, N);
  const Stencil d2_end = node_stencil(2, N, N);
  const Stencil d3_start = node_stencil(3, 0, N);
  const double w4[5] = {1.0, -4.0, 6.0, -4.0, 1.0};

  for (int i = 0; i < sys.q; ++i) {
    for (int j = 0; j < sys.n; ++j) {
      for (int k = 2; k <= N - 2; ++k) {
        const int r = sys.index(i, j, k);
        sys.rows[r] = {RowKind::pde, i, k, j, 0};
        const double c = dt * fz.d4coef[i][k] * N4;
        for (int t = 0; t < 5; ++t)
          trip.emplace_back(r, sys.index(i, j, k - 2 + t), c * w4[t] + (t == 2 ? 1.0 : 0.0));
      }
      int r = sys.index(i, j, N);
      sys.rows[r] = {RowKind::endpoint_pin, i, N, j, 1};
      trip.emplace_back(r, r, 1.0);

      r = sys.index(i, j, N - 1);
      sys.rows[r] = {RowKind::second_derivative, i, N - 1, j, 1};
      for (std::size_t t = 0; t < d2_end.w.size(); ++t)
        trip.emplace_back(r, sys.index(i, j, d2_end.first + t), d2_end.w[t]);

      r = sys.index(i, j, 1);
      sys.rows[r] = {RowKind::second_derivative, i, 1, j, 0};
      for (std::size_t t = 0; t < d2_start.w.size(); ++t)
        trip.emplace_back(r, sys.index(i, j, d2_start.first + t), d2_start.w[t]);

      r = sys.index(i, j, 0);
      if (sys.q == 1) {
        sys.rows[r] = {RowKind::start_pin, i, 0, j, 0};
        trip.emplace_back(r, r, 1.0);
      } else if (i > 0) {
        sys.rows[r] = {RowKind::concurrency, i, 0, j, 0};
        trip.emplace_back(r, r, 1.0);
        trip.emplace_back(r, sys.index(0, j, 0), -1.0);
      } else {
        // sum_c E_c d3 f_c(0) = b, scaled by 1 / (N^3 max D^3).
        sys.rows[r] = {RowKind::junction_sum, 0, 0, j, 0};
        for (int c = 0; c < sys.q; ++c)
          for (int l = 0; l < sys.n; ++l) {
            const double e = fz.lin.e_matrices[c](j, l) / fz.dmax3;
            if (e == 0.0) continue;
            for (std::size_t t = 0; t < d3_start.w.size(); ++t)
              trip.emplace_back(r, sys.index(c, l, d3_start.first + t), e * d3_start.w[t]);
          }
      }
    }
  }
  sys.matrix.resize(size, size);
  sys.matrix.setFromTriplets(trip.begin(), trip.end());
  if (implicit_lower) {
    std::vector<Eigen::Triplet<double>> low;
    for (int i = 0; i < sys.q; ++i) {
      const auto& b = fz.bundles[i];
      for (int k = 2; k <= N - 2; ++k) {
        const auto J = lower_jacobian(b.local(k), params.lambda[i], fz.d4coef[i][k]);
        for (int m = 1; m <= 4; ++m) {
          const Stencil st = node_stencil(m, k, N);
          const double scale = dt * std::pow(static_cast<double>(N), m);
          for (int j = 0; j < sys.n; ++j)
            for (int l = 0; l < sys.n; ++l) {
              const double a = J[m - 1](j, l) * scale;
              if (a == 0.0) continue;
              for (std::size_t t = 0; t < st.w.size(); ++t)
                low.emplace_back(sys.index(i, j, k), sys.index(i, l, st.first + t), a * st.w[t]);
            }
        }
      }
    }
    sys.lower.resize(size, size);
    sys.lower.setFromTriplets(low.begin(), low.end());
    sys.matrix -= sys.lower;
  }
  sys.matrix.makeCompressed();
  sys.rhs = Vec::Zero(size);
  return sys;
}

void assemble_rhs(LinearStepSystem& sys, const NetworkState& frozen, const NetworkState& start,
                  const NetworkState& current, const FlowParams& params, double dt) {
  check_shapes(frozen, current);
  check_shapes(start, current);
  const Frozen fz = freeze(frozen, params);
  const auto cur = bundles(current);
  const int N = current.intervals();
  sys.rhs.resize(sys.q * sys.n * sys.count);
  Vec b;
  double jscale = 1.0;
  if (sys.q >= 2) {
    b = linearize_boundary(fz.bundles, cur, params.lambda).b;
    jscale = 1.0 / (std::pow(static_cast<double>(N), 3) * fz.dmax3);
  }
  for (int i = 0; i < sys.q; ++i) {
    require_regular(cur[i], i);
    const Field V = flow_velocity(cur[i], params.lambda[i]);
    const Field& f0 = start.curves[i].nodes();
    for (int j = 0; j < sys.n; ++j) {
      for (int k = 2; k <= N - 2; ++k)
        sys.rhs[sys.index(i, j, k)] =
            f0(j, k) + dt * (V(j, k) + fz.d4coef[i][k] * cur[i].d4(j, k));
      sys.rhs[sys.index(i, j, N)] = params.endpoints[i][j];
      sys.rhs[sys.index(i, j, N - 1)] = 0.0;
      sys.rhs[sys.index(i, j, 1)] = 0.0;
      if (sys.q == 1)
        sys.rhs[sys.index(i, j, 0)] =
            params.start_point ? (*params.start_point)[j] : current.curves[0].nodes()(j, 0);
      else if (i > 0)
        sys.rhs[sys.index(i, j, 0)] = 0.0;
      else
        sys.rhs[sys.index(0, j, 0)] = b[j] * jscale;
    }
  }
  if (sys.lower.nonZeros() > 0) sys.rhs -= sys.lower * state_to_vector(current);
}

LinearStepSystem assemble_step(const NetworkState& frozen, const NetworkState& start,
                               const NetworkState& current, const FlowParams& params, double dt,
                               bool implicit_lower) {
  LinearStepSystem sys = assemble_matrix(frozen, params, dt, implicit_lower);
  assemble_rhs(sys, frozen, start, current, params, dt);
  return sys;
}

LinearStepSystem assemble_step(const NetworkState& frozen, const NetworkState& current,
                               const FlowParams& params, double dt, bool implicit_lower) {
  return assemble_step(frozen, frozen, current, params, dt, implicit_lower);
}

struct StepFactorization::Impl {
  Eigen::SparseMatrix<double> A;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  double norm_inf = 0.0;
};

StepFactorization::StepFactorization(const LinearStepSystem& sys) : impl_(std::make_unique<Impl>()) {
  impl_->A = sys.matrix;
  Vec rowsum = Vec::Zero(impl_->A.rows());
  for (int c = 0; c < impl_->A.outerSize(); ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(impl_->A, c); it; ++it)
      rowsum[it.row()] += std::abs(it.value());
  impl_->norm_inf = rowsum.size() ? rowsum.maxCoeff() : 0.0;
  impl_->lu.analyzePattern(impl_->A);
  impl_->lu.factorize(impl_->A);
  if (impl_->lu.info() != Eigen::Success)
    throw SolverError("step matrix is singular: " + impl_->lu.lastErrorMessage() +
                      " (possible loss of non-collinearity or speed degeneration)");
  // Power-style lower estimate of ||A^-1||, enough to flag near-singularity.
  Vec x = Vec::Ones(impl_->A.rows());
  double inv_norm = 0.0;
  for (int it = 0; it < 3; ++it) {
    const Vec y = impl_->lu.solve(x);
    const double g = y.lpNorm<Eigen::Infinity>() / x.lpNorm<Eigen::Infinity>();
    if (!std::isfinite(g)) {
      inv_norm = INFINITY;
      break;
    }
    inv_norm = std::max(inv_norm, g);
    x = y / y.lpNorm<Eigen::Infinity>();
  }
  cond_ = impl_->norm_inf * inv_norm;
  if (!(cond_ < kConditionLimit)) {
    std::ostringstream os;
    os << "step matrix is ill-conditioned (estimate " << cond_
       << "); possible loss of non-collinearity or speed degeneration";
    throw SolverError(os.str());
  }
}

StepFactorization::~StepFactorization() = default;
StepFactorization::StepFactorization(StepFactorization&&) noexcept = default;
StepFactorization& StepFactorization::operator=(StepFactorization&&) noexcept = default;

Vec StepFactorization::solve(const Vec& rhs) const {
  Vec x = impl_->lu.solve(rhs);
  if (impl_->lu.info() != Eigen::Success) throw SolverError("sparse solve failed");
  const double res = (impl_->A * x - rhs).lpNorm<Eigen::Infinity>();
  const double scale =
      impl_->norm_inf * x.lpNorm<Eigen::Infinity>() + rhs.lpNorm<Eigen::Infinity>();
  if (!(res <= 1e-10 * scale)) throw SolverError("sparse solve residual too large");
  return x;
}

Vec solve_linear(const LinearStepSystem& system) {
  return StepFactorization(system).solve(system.rhs);
}

Vec state_to_vector(const NetworkState& s) {
  const int n = s.dim();
  const int cnt = s.intervals() + 1;
  Vec x(s.q() * n * cnt);
  for (int i = 0; i < s.q(); ++i)
    for (int j = 0; j < n; ++j) x.segment((i * n + j) * cnt, cnt) = s.curves[i].nodes().row(j);
  return x;
}

NetworkState state_from_vector(const Vec& x, const NetworkState& like, double time) {
  const int n = like.dim();
  const int cnt = like.intervals() + 1;
  NetworkState s;
  s.time = time;
  for (int i = 0; i < like.q(); ++i) {
    Field f(n, cnt);
    for (int j = 0; j < n; ++j) f.row(j) = x.segment((i * n + j) * cnt, cnt).transpose();
    s.curves.emplace_back(std::move(f));
  }
  return s;
}

GuardVerdict regularity_guard(const NetworkState& state, double delta0, double factor) {
  const SpeedMin m = min_speed(bundles(state));
  GuardVerdict v;
  v.curve = m.curve;
  v.node = m.node;
  v.speed = m.speed;
  v.ok = m.speed >= factor * delta0;
  return v;
}

namespace {

void require_nc(const NetworkState& state, const std::vector<DerivativeBundle>& bs) {
  if (state.q() < 2) return;
  const int dim = span_dimension(junction_tangents(bs));
  if (dim < 2) {
    std::ostringstream os;
    os << "(NC) violated at t = " << state.time << ": junction tangents span dimension " << dim;
    throw NonCollinearityError(os.str(), dim);
  }
}

NetworkState iterate(const NetworkState& state, const FlowParams& params, const SolverConfig& cfg,
                     double dt, const NetworkState& frozen, LinearStepSystem& sys,
                     const StepFactorization& fact, double delta0, StepStats* stats) {
  NetworkState fbar = state;
  const double scale = std::max(1.0, state_to_vector(state).lpNorm<Eigen::Infinity>());
  // Rounding in dt D^4 d4 (stencil weight sum 16, amplified by N^4) limits
  // the attainable increment; below this level a stalled iteration counts as
  // converged.
  const double N = frozen.intervals();
  const double dmin = min_speed(bundles(frozen)).speed;
  const double floor = 4096 * std::numeric_limits<double>::epsilon() * dt * std::pow(N, 4) /
                       std::pow(dmin, 4) * scale;
  double last_inc = INFINITY;
  const Vec prev0 = state_to_vector(state);
  Vec prev = prev0;
  for (int it = 1; it <= cfg.picard_max; ++it) {
    assemble_rhs(sys, frozen, state, fbar, params, dt);
    const Vec x = fact.solve(sys.rhs);
    const double inc = (x - prev).lpNorm<Eigen::Infinity>();
    fbar = state_from_vector(x, state, state.time + dt);
    prev = x;
    if (stats) {
      stats->iterations = it;
      stats->last_increment = inc;
    }
    const bool stalled = inc <= floor && inc > 0.5 * last_inc;
    last_inc = inc;
    if (inc <= cfg.picard_tol * scale || stalled) {
      const GuardVerdict g = regularity_guard(fbar, delta0, cfg.delta_guard_factor);
      if (!g.ok) {
        std::ostringstream os;
        os << "regularity guard tripped at t = " << fbar.time << ": speed " << g.speed
           << " on curve " << g.curve + 1 << ", node " << g.node << " below "
           << cfg.delta_guard_factor << " * " << delta0;
        throw RegularityError(os.str(), g.curve, g.node, g.speed);
      }
      return fbar;
    }
    if (!std::isfinite(inc)) break;
  }
  std::ostringstream os;
  os << "Picard iteration did not converge within " << cfg.picard_max
     << " iterations at t = " << state.time + dt << "; reduce dt";
  throw SolverError(os.str());
}

}  // namespace

NetworkState picard_step(const NetworkState& state, const FlowParams& params,
                         const SolverConfig& cfg, const NetworkState* frozen,
                         std::optional<double> delta0, StepStats* stats) {
  validate(cfg);
  validate(state, params);
  const auto bs = bundles(state);
  for (int i = 0; i < state.q(); ++i) require_regular(bs[i], i);
  require_nc(state, bs);
  const NetworkState& fz = frozen ? *frozen : state;
  const double dt = effective_dt(cfg, state.intervals());
  LinearStepSystem sys = assemble_matrix(fz, params, dt, cfg.implicit_lower_order);
  const StepFactorization fact(sys);
  return iterate(state, params, cfg, dt, fz, sys, fact, delta0 ? *delta0 : min_speed(bs).speed,
                 stats);
}

EvolveResult evolve(const NetworkState& initial, const FlowParams& params,
                    const SolverConfig& cfg, const std::vector<Observer>& observers) {
  validate(cfg);
  validate(initial, params);
  EvolveResult out;
  out.last_good = initial;
  // The default step is shortened so that the run ends on t_end.
  double dt = effective_dt(cfg, initial.intervals());
  long nsteps = std::lround(cfg.t_end / dt);
  if (cfg.dt == 0.0) {
    nsteps = static_cast<long>(std::ceil(cfg.t_end / dt * (1 - 1e-12)));
    if (nsteps > 0) dt = cfg.t_end / nsteps;
  }
  const auto bs0 = bundles(initial);
  const double delta0 = min_speed(bs0).speed;

  out.trajectory.records.push_back(diagnostics_record(initial, params, bs0));
  out.trajectory.snapshots.push_back({0, initial});
  for (const auto& ob : observers) ob({0, initial.time, initial, out.trajectory.records.back()});

  std::optional<LinearStepSystem> frozen_sys;
  std::optional<StepFactorization> frozen_fact;
  NetworkState cur = initial;
  for (long step = 1; step <= nsteps; ++step) {
    const double t_next = initial.time + step * dt;
    try {
      const auto bs = bundles(cur);
      for (int i = 0; i < cur.q(); ++i) require_regular(bs[i], i);
      require_nc(cur, bs);
      StepStats st;
      NetworkState next;
      if (cfg.relinearize_every_step) {
        LinearStepSystem sys = assemble_matrix(cur, params, dt, cfg.implicit_lower_order);
        const StepFactorization fact(sys);
        next = iterate(cur, params, cfg, dt, cur, sys, fact, delta0, &st);
      } else {
        if (!frozen_fact) {
          frozen_sys = assemble_matrix(initial, params, dt, cfg.implicit_lower_order);
          frozen_fact.emplace(*frozen_sys);
        }
        next = iterate(cur, params, cfg, dt, initial, *frozen_sys, *frozen_fact, delta0, &st);
      }
      next.time = t_next;
      out.max_picard_iterations = std::max(out.max_picard_iterations, st.iterations);
      cur = std::move(next);
    } catch (const RegularityError& e) {
      out.failure = RunFailure{RunFailure::Kind::regularity, t_next, e.what()};
      break;
    } catch (const NonCollinearityError& e) {
      out.failure = RunFailure{RunFailure::Kind::non_collinearity, t_next, e.what()};
      break;
    } catch (const Error& e) {
      out.failure = RunFailure{RunFailure::Kind::solver, t_next, e.what()};
      break;
    }
    out.steps = static_cast<int>(step);
    out.trajectory.records.push_back(diagnostics_record(cur, params));
    if (step % cfg.snapshot_stride == 0 || step == nsteps)
      out.trajectory.snapshots.push_back({static_cast<int>(step), cur});
    for (const auto& ob : observers)
      ob({static_cast<int>(step), cur.time, cur, out.trajectory.records.back()});
    out.last_good = cur;
  }
  return out;
}

PreflightReport preflight(const NetworkState& state, const FlowParams& params, double tol) {
  PreflightReport r;
  validate(state, params);
  const auto bs = bundles(state);
  for (int i = 0; i < state.q(); ++i) require_regular(bs[i], i);
  r.compat = check_compat_order0(state, params, tol);
  std::vector<Vec> speeds;
  for (const auto& b : bs) speeds.push_back(b.speed);
  r.parabolicity = parabolicity_margin(speeds);
  if (state.q() >= 2) {
    const auto t = junction_tangents(bs);
    r.span_dimension = span_dimension(t);
    r.nc = nc_value(t);
    r.nc_ok = r.span_dimension >= 2;
  } else {
    r.span_dimension = 1;
    r.nc = 0.0;
    r.nc_ok = true;
  }
  r.pass = r.nc_ok && r.compat.pass;
  if (!r.nc_ok) {
    r.message = "(NC) violated: junction tangents span dimension " +
                std::to_string(r.span_dimension) + " < 2";
  } else if (const auto* f = r.compat.first_failure()) {
    std::ostringstream os;
    os << "compatibility condition " << f->condition << " failed";
    if (f->curve) os << " on curve " << f->curve;
    if (f->other) os << " and curve " << f->other;
    os << " at x = " << f->endpoint << " (residual " << f->residual << ")";
    r.message = os.str();
  }
  return r;
}

}  // namespace elnet
