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


#include "elnet/repar.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "elnet/diagnostics.hpp"
#include "elnet/interp.hpp"
#include "elnet/junction.hpp"
#include "elnet/scenarios.hpp"
#include "elnet/solver.hpp"

namespace elnet {
namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
Field sample(F f, int N, int n = 2) {
  Field out(n, N + 1);
  for (int k = 0; k <= N; ++k) out.col(k) = f(static_cast<double>(k) / N);
  return out;
}

double speed_spread(const CurveSamples& c) {
  const Vec s = finite_differences(c).speed;
  return (s.maxCoeff() - s.minCoeff()) / s.mean();
}

// psi - x = O(x^5) at both ends, so boundary conditions of a composed curve
// hold; min psi' = 1 - a.
double psi(double x, double a) {
  return x + a * 512.0 * std::pow(x * (1 - x), 5) * (1 - 2 * x);
}

Field compose(const Field& f, double a) {
  const int N = static_cast<int>(f.cols()) - 1;
  Field out(f.rows(), N + 1);
  for (int k = 0; k <= N; ++k) out.col(k) = lagrange_eval_field(f, psi(static_cast<double>(k) / N, a));
  return out;
}

TEST(Diffeo, IdentityAndValidity) {
  const auto id = Diffeomorphism::identity(8);
  EXPECT_TRUE(id.valid());
  EXPECT_EQ(id.values[0], 0.0);
  EXPECT_EQ(id.values[8], 1.0);
  Diffeomorphism d = id;
  d.values[3] = d.values[2];
  EXPECT_FALSE(d.valid());
  d = id;
  d.values[8] = 0.9;
  EXPECT_FALSE(d.valid());
}

TEST(ConstSpeed, AlreadyConstantSpeedIsIdentity) {
  const CurveSamples c(sample(
      [](double x) {
        Vec v(2);
        v << std::cos(x), std::sin(x);
        return v;
      },
      64));
  const auto r = const_speed_reparam(c);
  EXPECT_LE((r.phi.values - Diffeomorphism::identity(64).values).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((r.curve.nodes() - c.nodes()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ConstSpeed, QuadraticSpeedHasClosedFormMap) {
  // f = p + e (x^2 + x) / 2: speed (2x + 1) / 2, length 1.
  Vec p(2), e(2);
  p << 0.3, -0.2;
  e << 0.6, 0.8;
  const CurveSamples c(sample([&](double x) { return Vec(p + e * (x * x + x) / 2); }, 50));
  const auto r = const_speed_reparam(c);
  EXPECT_TRUE(r.phi.valid());
  for (int k = 0; k <= 50; ++k) {
    const double x = k / 50.0;
    EXPECT_NEAR(r.phi.values[k], (x * x + x) / 2, 1e-13);
  }
  // New curve is p + e x exactly at the nodes up to interpolation error.
  for (int k = 0; k <= 50; ++k)
    EXPECT_LE((r.curve.node(k) - (p + e * (k / 50.0))).norm(), 1e-6);
}

TEST(ConstSpeed, StretchedArcBecomesConstantSpeedAtSecondOrder) {
  auto arc = [](double x) {
    const double t = 2.0 * x * x;  // quadratic stretch of the angle
    Vec v(2);
    v << std::cos(t), std::sin(t);
    return v;
  };
  double prev = 0.0;
  for (int N : {64, 128, 256}) {
    const auto r = const_speed_reparam(CurveSamples(sample(arc, N)));
    const double spread = speed_spread(r.curve);
    EXPECT_NEAR(finite_differences(r.curve).speed.mean(), 2.0, 1e-3);
    if (N > 64) {
      EXPECT_GT(std::log2(prev / spread), 1.9);
    }
    prev = spread;
  }
  EXPECT_LT(prev, 1e-4);
}

TEST(ConstSpeed, Idempotent) {
  const auto s = triod_bent(256);
  for (const auto& c : s.state.curves) {
    const auto once = const_speed_reparam(c);
    const auto twice = const_speed_reparam(once.curve);
    EXPECT_LE((twice.curve.nodes() - once.curve.nodes()).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(ConstSpeed, PreservesGeometry) {
  // Warped spokes; energy, length and nc agree before and after at O(N^-2).
  double prev[3] = {0, 0, 0};
  for (int N : {64, 128}) {
    auto s = triod_bent(N);
    NetworkState warped = s.state;
    for (auto& c : warped.curves) c = CurveSamples(compose(c.nodes(), 0.3));
    NetworkState rep = warped;
    for (auto& c : rep.curves) c = const_speed_reparam(c).curve;
    const double de = std::abs(network_energy(warped, s.params).total -
                               network_energy(rep, s.params).total);
    double dl = 0.0;
    for (int i = 0; i < 3; ++i)
      dl = std::max(dl, std::abs(curve_length(warped.curves[i]) - curve_length(rep.curves[i])));
    const double dn = std::abs(nc_value(junction_tangents(bundles(warped))) -
                               nc_value(junction_tangents(bundles(rep))));
    EXPECT_LT(de, 50.0 / (N * N));
    EXPECT_LT(dl, 5.0 / (N * N));
    EXPECT_LT(dn, 1e-10);
    if (N == 128) {
      EXPECT_LT(de, prev[0] / 3.0);
      EXPECT_LT(dl, prev[1] / 3.0);
    }
    prev[0] = de;
    prev[1] = dl;
    prev[2] = dn;
  }
}

// Snapshots of a solver run with dt = 1e-5.
std::vector<NetworkState> run(const NetworkState& s, const FlowParams& p, int N_snap_stride,
                              double t_end) {
  SolverConfig c;
  c.dt = 1e-5;
  c.t_end = t_end;
  c.snapshot_stride = N_snap_stride;
  const auto r = evolve(s, p, c);
  EXPECT_FALSE(r.failure.has_value());
  std::vector<NetworkState> out;
  for (const auto& sn : r.trajectory.snapshots) out.push_back(sn.state);
  return out;
}

TEST(TangentialOde, EqualFieldsGiveIdentity) {
  const auto s = triod_bent(64);
  const auto states = run(s.state, s.params, 10, 5e-4);
  const auto traj = curve_trajectory(states, 0);
  std::vector<Vec> phi;
  for (const auto& st : states) phi.push_back(phi_star(finite_differences(st.curves[0]), 0.1));
  const auto fam = tangential_ode(traj, phi, phi);
  ASSERT_EQ(fam.maps.size(), states.size());
  for (const auto& m : fam.maps)
    EXPECT_EQ((m.values - Diffeomorphism::identity(64).values).cwiseAbs().maxCoeff(), 0.0);
}

TEST(TangentialOde, RecoversFixedComposition) {
  const int N = 128;
  const auto s = triod_bent(N);
  const auto states = run(s.state, s.params, 10, 2e-3);
  const auto ref = curve_trajectory(states, 0);
  CurveTrajectory other = ref;
  for (auto& f : other.curves) f = compose(f, 0.3);
  const Diffeomorphism psi0 = recover_initial_diffeo(CurveSamples(ref.curves[0]),
                                                     CurveSamples(other.curves[0]));
  for (int k = 0; k <= N; ++k) EXPECT_NEAR(psi0.values[k], psi(k / double(N), 0.3), 1e-8);
  const auto fam = tangential_ode(ref, tangential_speed_from_motion(ref),
                                  tangential_speed_from_motion(other), &psi0);
  for (const auto& m : fam.maps) {
    EXPECT_EQ(m.values[0], 0.0);
    EXPECT_EQ(m.values[N], 1.0);
    for (int k = 0; k <= N; ++k) EXPECT_NEAR(m.values[k], psi(k / double(N), 0.3), 1e-4);
  }
}

TEST(TangentialOde, RecoversTimeDependentComposition) {
  // other(t, x) = f(t, psi_t(x)) with psi_t = psi(x, 20 t).
  const int N = 128;
  const auto s = triod_bent(N);
  const auto states = run(s.state, s.params, 10, 2e-3);
  const auto ref = curve_trajectory(states, 0);
  CurveTrajectory other = ref;
  for (std::size_t i = 0; i < other.curves.size(); ++i)
    other.curves[i] = compose(ref.curves[i], 20.0 * ref.times[i]);
  const auto fam = tangential_ode(ref, tangential_speed_from_motion(ref),
                                  tangential_speed_from_motion(other));
  double worst = 0.0;
  for (std::size_t i = 0; i < fam.maps.size(); ++i) {
    EXPECT_TRUE(fam.maps[i].valid());
    for (int k = 0; k <= N; ++k)
      worst = std::max(worst, std::abs(fam.maps[i].values[k] -
                                       psi(k / double(N), 20.0 * fam.times[i])));
  }
  EXPECT_LT(worst, 1e-4);
}

TEST(TangentialOde, MonotonicityLossIsReported) {
  // A field that drags interior nodes across each other.
  const int N = 32;
  CurveTrajectory ref;
  std::vector<Vec> pr, po;
  for (int s = 0; s < 4; ++s) {
    ref.times.push_back(s * 0.1);
    ref.curves.push_back(sample(
        [](double x) {
          Vec v(2);
          v << x, 0.0;
          return v;
        },
        N));
    pr.push_back(Vec::Zero(N + 1));
    Vec o(N + 1);
    for (int k = 0; k <= N; ++k) o[k] = (k % 2 ? 1.0 : -1.0) * (k > 0 && k < N);
    po.push_back(o);
  }
  try {
    tangential_ode(ref, pr, po);
    FAIL() << "expected DiffeoBreakdown";
  } catch (const DiffeoBreakdown& e) {
    EXPECT_NEAR(e.time(), 0.1, 1e-15);
  }
}

TEST(Equivalence, IdenticalRunsHaveZeroDeviation) {
  const auto s = triod_bent(48);
  const auto a = run(s.state, s.params, 10, 5e-4);
  const auto r = geometric_equivalence(a, a, s.params.lambda, 1e-12);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.deviation, 1e-14);
  EXPECT_EQ(r.diffeos.size(), 3u);
}

TEST(Equivalence, ReparametrizedStartIsSameGeometricFlow) {
  const auto s = triod_bent(64);
  NetworkState b0 = s.state;
  for (auto& c : b0.curves) c = CurveSamples(compose(c.nodes(), 0.3));
  const auto a = run(s.state, s.params, 1, 2e-3);
  const auto b = run(b0, s.params, 1, 2e-3);
  const auto r = geometric_equivalence(a, b, s.params.lambda, 1e-3);
  EXPECT_TRUE(r.pass) << "deviation " << r.deviation;
  // The starting parametrizations differ by far more than the tolerance.
  EXPECT_GT(max_displacement(a.front(), b.front()), 1e-2);
}

TEST(Equivalence, NormalPerturbationFails) {
  const auto s = triod_bent(64);
  const double eps = 5e-3;
  NetworkState b0 = s.state;
  const Vec nu = triod_equilibrium(64).state.curves[0].node(64);  // spoke 1 points along +y
  Vec n(2);
  n << -nu[1], nu[0];
  Field f = b0.curves[0].nodes();
  for (int k = 0; k <= 64; ++k) f.col(k) += eps * bend(k / 64.0) * n;
  b0.curves[0] = CurveSamples(f);
  const auto a = run(s.state, s.params, 10, 1e-3);
  const auto b = run(b0, s.params, 10, 1e-3);
  const auto r = geometric_equivalence(a, b, s.params.lambda, 1e-3);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.worst_curve, 0);
  EXPECT_NEAR(r.deviation, eps, 0.2 * eps);
}

TEST(Equivalence, RejectsMismatchedRuns) {
  const auto s = triod_bent(32);
  const auto a = run(s.state, s.params, 10, 3e-4);
  auto b = a;
  b.pop_back();
  EXPECT_THROW(geometric_equivalence(a, b, s.params.lambda, 1e-3), ConfigError);
  EXPECT_THROW(geometric_equivalence(a, a, {0.1}, 1e-3), ConfigError);
}

}  // namespace
}  // namespace elnet
