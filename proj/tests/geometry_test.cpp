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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_util.hpp"

namespace elnet {
namespace {

using testing::definitional;
using testing::random_curve;
using testing::to_vec;

constexpr double kPi = std::numbers::pi;

Field circle(int N, double R, double turns = 1.0) {
  Field f(2, N + 1);
  for (int k = 0; k <= N; ++k) {
    const double t = 2 * kPi * turns * k / N;
    f(0, k) = R * std::cos(t);
    f(1, k) = R * std::sin(t);
  }
  return f;
}

// Written out term by term from the tangential-speed definition.
double phi_star_reference(const formulas::Local<double>& L, double lambda) {
  Vec d1 = to_vec(L.d1, L.n), d2 = to_vec(L.d2, L.n), d3 = to_vec(L.d3, L.n),
      d4 = to_vec(L.d4, L.n);
  const double s = d1.norm();
  const double a = d2.dot(d1);
  return -d4.dot(d1) / std::pow(s, 5) + 10 * a / std::pow(s, 7) * d3.dot(d1) +
         2.5 * a * d2.squaredNorm() / std::pow(s, 7) - 17.5 * a * a * a / std::pow(s, 9) +
         lambda * a / std::pow(s, 3);
}

TEST(CurveSamples, Validation) {
  EXPECT_THROW(CurveSamples(Field::Zero(1, 20)), ConfigError);
  EXPECT_THROW(CurveSamples(Field::Zero(2, 8)), ConfigError);
  EXPECT_THROW(CurveSamples(Field::Zero(kMaxDim + 1, 20)), ConfigError);
  EXPECT_NO_THROW(CurveSamples(Field::Zero(2, 9)));
}

TEST(FiniteDifferences, ExactOnQuadratic) {
  const int N = 20;
  Field f(2, N + 1);
  for (int k = 0; k <= N; ++k) {
    const double x = static_cast<double>(k) / N;
    f(0, k) = x;
    f(1, k) = x * x;
  }
  const auto b = finite_differences(CurveSamples(f));
  for (int k = 0; k <= N; ++k) {
    const double x = static_cast<double>(k) / N;
    EXPECT_NEAR(b.d1(1, k), 2 * x, 1e-10);
    EXPECT_NEAR(b.d2(1, k), 2.0, 1e-8);
    EXPECT_NEAR(b.d3(1, k), 0.0, 1e-6);
    EXPECT_NEAR(b.d4(1, k), 0.0, 1e-4);
    EXPECT_NEAR(b.speed[k], std::sqrt(1 + 4 * x * x), 1e-10);
  }
}

TEST(Formulas, MatchDefinitionsOnRandomCurves) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ux(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = random_curve(rng, 2 + trial % 3);
    for (int r = 0; r < 5; ++r) {
      const double x = ux(rng);
      const auto L = c.local(x);
      const auto g = definitional(c, x);
      const double scale = 1.0 + g.nabla2_kappa.norm();
      EXPECT_LT((to_vec(formulas::kappa(L), L.n) - g.kappa).norm(), 1e-12 * (1 + g.kappa.norm()));
      EXPECT_LT((to_vec(formulas::nabla_s_kappa(L), L.n) - g.nabla_kappa).norm(),
                1e-11 * (1 + g.nabla_kappa.norm()));
      EXPECT_LT((to_vec(formulas::nabla_s2_kappa(L), L.n) - g.nabla2_kappa).norm(), 1e-10 * scale);
    }
  }
}

TEST(Formulas, VelocitySplitsIntoGeometricFlowPlusPhiStar) {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> ux(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = random_curve(rng, 2 + trial % 2);
    const double lambda = 0.5 * ux(rng);
    const double x = ux(rng);
    const auto L = c.local(x);
    const auto g = definitional(c, x);
    const Vec expected = -g.nabla2_kappa - 0.5 * g.kappa.squaredNorm() * g.kappa +
                         lambda * g.kappa + phi_star_reference(L, lambda) * g.T;
    const Vec v = to_vec(formulas::velocity(L, lambda), L.n);
    EXPECT_LT((v - expected).norm(), 1e-10 * (1 + expected.norm()));
    EXPECT_NEAR(formulas::phi_star(L, lambda), phi_star_reference(L, lambda),
                1e-11 * (1 + std::abs(phi_star_reference(L, lambda))));
  }
}

TEST(Formulas, ConstantSpeedFormOnCircle) {
  // Constant speed 2 pi R: both forms of nabla_s^2 kappa vanish on a circle,
  // and the discrete values go to zero at second order.
  double prev_a = 0.0, prev_diff = 0.0;
  for (int N : {64, 128, 256}) {
    const auto b = finite_differences(CurveSamples(circle(N, 1.5)));
    const Field a = nabla_s2_kappa(b);
    const Field c = nabla_s2_kappa_const_speed(b);
    const double ea = a.cwiseAbs().maxCoeff();
    const double ed = (a - c).cwiseAbs().maxCoeff();
    if (N > 64) {
      EXPECT_GT(std::log2(prev_a / ea), 1.9);
      EXPECT_GT(std::log2(prev_diff / ed), 1.9);
    }
    prev_a = ea;
    prev_diff = ed;
  }
  EXPECT_LT(prev_a, 1e-3);
}

// Curvature is geometric: same value at corresponding points of f and f o psi.
TEST(Formulas, CurvatureInvariantUnderReparametrization) {
  std::mt19937 rng(13);
  auto c = random_curve(rng, 3);
  c.warp = 0.0;
  auto w = c;
  w.warp = 0.4;
  std::uniform_real_distribution<double> ux(0.05, 0.95);
  for (int r = 0; r < 10; ++r) {
    const double y = ux(rng);
    const double x = y + 0.4 / kPi * std::sin(kPi * y);  // w(y) = c(x)
    const auto gc = definitional(c, x);
    const Vec kw = to_vec(formulas::kappa(w.local(y)), 3);
    const Vec nw = to_vec(formulas::nabla_s2_kappa(w.local(y)), 3);
    EXPECT_LT((kw - gc.kappa).norm(), 1e-11 * (1 + gc.kappa.norm()));
    EXPECT_LT((nw - gc.nabla2_kappa).norm(), 1e-9 * (1 + gc.nabla2_kappa.norm()));
  }
}

TEST(Geometry, CircleCurvatureConvergesAtSecondOrder) {
  for (double R : {0.5, 1.0, 2.0}) {
    double err[2];
    int i = 0;
    for (int N : {128, 256}) {
      const Field k = curvature(finite_differences(CurveSamples(circle(N, R, 0.75))));
      double e = 0;
      for (int j = 0; j <= N; ++j) e = std::max(e, std::abs(k.col(j).norm() - 1.0 / R));
      err[i++] = e;
    }
    EXPECT_GE(std::log2(err[0] / err[1]), 1.9) << "R=" << R;
  }
}

TEST(Geometry, CoordinateAndGeometricVelocityAgree) {
  std::mt19937 rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = random_curve(rng, 2 + trial % 3);
    const auto b = finite_differences(CurveSamples(c.sample(256)));
    const Field v = flow_velocity(b, 0.3);
    const Field g = flow_velocity_geometric(b, 0.3);
    EXPECT_LT(testing::rel_err(v, g), 1e-8);
  }
}

TEST(Geometry, PhiStarAndTangentOnSamples) {
  std::mt19937 rng(15);
  const auto c = random_curve(rng, 2);
  const int N = 256;
  const auto b = finite_differences(CurveSamples(c.sample(N)));
  const Vec ps = phi_star(b, 0.1);
  const Field T = unit_tangent(b);
  const Field V = flow_velocity(b, 0.1);
  for (int k = 0; k <= N; ++k) {
    EXPECT_NEAR(T.col(k).norm(), 1.0, 1e-14);
    EXPECT_NEAR(V.col(k).dot(T.col(k)), ps[k], 1e-8 * (1 + std::abs(ps[k])));
  }
}

TEST(Geometry, RegularityErrorNamesNode) {
  Field f = circle(32, 1.0, 0.25);
  for (int k = 10; k <= 32; ++k) f.col(k) = f.col(10);
  const auto b = finite_differences(CurveSamples(f));
  try {
    require_regular(b, 2);
    FAIL() << "expected RegularityError";
  } catch (const RegularityError& e) {
    EXPECT_EQ(e.curve(), 2);
    EXPECT_GE(e.node(), 10);
  }
  EXPECT_THROW(flow_velocity(b, 0.0), RegularityError);
}

}  // namespace
}  // namespace elnet
