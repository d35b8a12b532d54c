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

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "elnet/diagnostics.hpp"
#include "elnet/network.hpp"
#include "elnet/wellposed.hpp"

namespace elnet {

struct SolverConfig {
  // 0 selects the largest step <= 0.1 / N^2 that divides t_end; otherwise
  // the run takes round(t_end / dt) steps.
  double dt = 0.0;
  double t_end = 0.01;
  double picard_tol = 1e-12;
  int picard_max = 20;
  double delta_guard_factor = 0.5;
  bool relinearize_every_step = true;
  int snapshot_stride = 1;
  // Also moves the frozen Jacobian of the explicit terms to the left side
  // (added on both sides, so the fixed point is unchanged). Without it the
  // Picard map contracts only for dt below roughly N^-3.
  bool implicit_lower_order = true;
};

void validate(const SolverConfig& cfg);
double effective_dt(const SolverConfig& cfg, int N);

enum class RowKind {
  pde,
  endpoint_pin,
  second_derivative,
  concurrency,
  junction_sum,
  start_pin,
};

struct RowTag {
  RowKind kind = RowKind::pde;
  int curve = 0;
  int node = 0;
  int component = 0;
  int endpoint = 0;  // for second_derivative rows
};

// Unknown (curve i, component j, node k) sits at ((i * n) + j) * (N + 1) + k.
struct LinearStepSystem {
  Eigen::SparseMatrix<double> matrix;
  Vec rhs;
  std::vector<RowTag> rows;
  // dt times the frozen Jacobian of V + D^4 d4 at the pde rows; empty unless
  // assembled with implicit_lower. `matrix` already contains -lower.
  Eigen::SparseMatrix<double> lower;
  int q = 0;
  int n = 0;
  int count = 0;

  int index(int curve, int component, int node) const {
    return (curve * n + component) * count + node;
  }
};

// Matrix part: depends on the frozen state and dt only.
LinearStepSystem assemble_matrix(const NetworkState& frozen, const FlowParams& params, double dt,
                                 bool implicit_lower = false);

// Fills rhs: step start `start`, Picard iterate `current`.
void assemble_rhs(LinearStepSystem& sys, const NetworkState& frozen, const NetworkState& start,
                  const NetworkState& current, const FlowParams& params, double dt);

// Full system with start = frozen.
LinearStepSystem assemble_step(const NetworkState& frozen, const NetworkState& current,
                               const FlowParams& params, double dt, bool implicit_lower = false);
LinearStepSystem assemble_step(const NetworkState& frozen, const NetworkState& start,
                               const NetworkState& current, const FlowParams& params, double dt,
                               bool implicit_lower = false);

// (D^4 - |f'|^-4) f'''' per node with D from `frozen`.
Field remainder(const DerivativeBundle& frozen, const DerivativeBundle& current);

// Factorized matrix of one step, reusable across Picard iterations.
class StepFactorization {
 public:
  explicit StepFactorization(const LinearStepSystem& sys);
  ~StepFactorization();
  StepFactorization(StepFactorization&&) noexcept;
  StepFactorization& operator=(StepFactorization&&) noexcept;

  Vec solve(const Vec& rhs) const;
  double condition_estimate() const { return cond_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  double cond_ = 0.0;
};

inline constexpr double kConditionLimit = 1e14;

Vec solve_linear(const LinearStepSystem& system);

NetworkState state_from_vector(const Vec& x, const NetworkState& like, double time);
Vec state_to_vector(const NetworkState& s);

struct StepStats {
  int iterations = 0;
  double last_increment = 0.0;
};

// One implicit step. `frozen` defaults to `state`; `delta0` defaults to the
// minimal speed of `state`.
NetworkState picard_step(const NetworkState& state, const FlowParams& params,
                         const SolverConfig& cfg, const NetworkState* frozen = nullptr,
                         std::optional<double> delta0 = std::nullopt, StepStats* stats = nullptr);

struct GuardVerdict {
  bool ok = true;
  int curve = 0;
  int node = 0;
  double speed = 0.0;
};

GuardVerdict regularity_guard(const NetworkState& state, double delta0, double factor);

struct Snapshot {
  int step = 0;
  NetworkState state;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  std::vector<DiagnosticsRecord> records;
};

struct RunFailure {
  enum class Kind { regularity, non_collinearity, solver };
  Kind kind = Kind::solver;
  double time = 0.0;
  std::string message;
};

struct EvolveResult {
  Trajectory trajectory;
  NetworkState last_good;
  std::optional<RunFailure> failure;
  int steps = 0;
  int max_picard_iterations = 0;
};

struct StepEvent {
  int step;
  double time;
  const NetworkState& state;
  const DiagnosticsRecord& record;
};
using Observer = std::function<void(const StepEvent&)>;

EvolveResult evolve(const NetworkState& initial, const FlowParams& params,
                    const SolverConfig& cfg, const std::vector<Observer>& observers = {});

struct PreflightReport {
  CompatReport compat;
  int span_dimension = 0;
  double nc = 0.0;
  double parabolicity = 0.0;
  bool nc_ok = true;
  bool pass = true;
  std::string message;
};

PreflightReport preflight(const NetworkState& state, const FlowParams& params,
                          double tol = kCompatTol);

}  // namespace elnet
