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


#include "elnet/common.hpp"
#include "elnet/geometry.hpp"
#include "elnet/interp.hpp"
#include "elnet/stencil.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace elnet {
namespace {

TEST(Fornberg, CenteredClassics) {
  const auto w = fornberg_weights(0.0, {-2, -1, 0, 1, 2}, 4);
  const double d2[] = {-1.0 / 12, 4.0 / 3, -2.5, 4.0 / 3, -1.0 / 12};
  const double d4[] = {1, -4, 6, -4, 1};
  for (int i = 0; i < 5; ++i) {
    EXPECT_NEAR(w[2][i], d2[i], 1e-14);
    EXPECT_NEAR(w[4][i], d4[i], 1e-13);
  }
  EXPECT_NEAR(w[0][2], 1.0, 1e-15);
}

double poly(int deg, double x) { return std::pow(x, deg); }

double poly_derivative(int deg, int m, double x) {
  if (m > deg) return 0.0;
  double c = 1.0;
  for (int i = 0; i < m; ++i) c *= deg - i;
  return c * std::pow(x, deg - m);
}

// Every node stencil differentiates polynomials up to degree width-1 exactly.
TEST(NodeStencil, ExactOnPolynomials) {
  const int N = 16;
  for (int m = 1; m <= 4; ++m)
    for (int k = 0; k <= N; ++k) {
      const Stencil s = node_stencil(m, k, N);
      ASSERT_GE(s.first, 0);
      ASSERT_LE(s.first + static_cast<int>(s.w.size()) - 1, N);
      for (int deg = 0; deg < static_cast<int>(s.w.size()); ++deg) {
        double acc = 0.0;
        for (std::size_t i = 0; i < s.w.size(); ++i)
          acc += s.w[i] * poly(deg, static_cast<double>(s.first + i) / N);
        acc *= std::pow(N, m);
        const double exact = poly_derivative(deg, m, static_cast<double>(k) / N);
        EXPECT_NEAR(acc, exact, 1e-8 * std::max(1.0, std::abs(exact)))
            << "m=" << m << " k=" << k << " deg=" << deg;
      }
    }
}

TEST(NodeStencil, WidthsAndPlacement) {
  const int N = 32;
  EXPECT_EQ(node_stencil(4, 10, N).w.size(), 5u);
  EXPECT_EQ(node_stencil(4, 10, N).first, 8);
  EXPECT_EQ(node_stencil(1, 0, N).w.size(), 6u);
  EXPECT_EQ(node_stencil(1, 0, N).first, 0);
  EXPECT_EQ(node_stencil(3, N, N).first, N - 5);
  EXPECT_EQ(node_stencil(2, N - 1, N).first, N - 5);
}

TEST(EndpointStencil, HighOrderExactness) {
  const int N = 40;
  for (int end = 0; end <= 1; ++end)
    for (int m = 5; m <= 7; ++m) {
      const int width = endpoint_width(m);
      EXPECT_GE(width, m + 2);
      const Stencil s = endpoint_stencil(m, end, width, N);
      const double x0 = end == 0 ? 0.0 : 1.0;
      for (int deg = 0; deg < width; ++deg) {
        double acc = 0.0, mag = 0.0;
        for (std::size_t i = 0; i < s.w.size(); ++i) {
          const double v = s.w[i] * poly(deg, static_cast<double>(s.first + i) / N);
          acc += v;
          mag += std::abs(v);
        }
        acc *= std::pow(N, m);
        // Cancellation in the weighted sum is amplified by N^m.
        const double rounding = 64 * 2.2e-16 * mag * std::pow(N, m);
        const double exact = poly_derivative(deg, m, x0);
        EXPECT_NEAR(acc, exact, 1e-9 * std::max(1.0, std::abs(exact)) + rounding);
      }
    }
}

TEST(NodeStencil, RejectsBadArguments) {
  EXPECT_THROW(node_stencil(5, 3, 16), Error);
  EXPECT_THROW(node_stencil(2, 17, 16), Error);
}

// Polynomial sampled on the grid k/N.
Eigen::RowVectorXd poly_row(const std::vector<double>& c, int N) {
  Eigen::RowVectorXd r(N + 1);
  for (int k = 0; k <= N; ++k) {
    double x = static_cast<double>(k) / N, acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    r[k] = acc;
  }
  return r;
}

double poly(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

TEST(Interp, CubicAndLagrangeExactOnPolynomials) {
  const std::vector<double> cubic = {0.3, -1.1, 0.7, 2.0};
  const std::vector<double> septic = {0.3, -1.1, 0.7, 2.0, -0.4, 0.9, -1.3, 0.5};
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto rc = poly_row(cubic, 20), rs = poly_row(septic, 20);
  for (int t = 0; t < 200; ++t) {
    const double x = t < 2 ? t : u(rng);
    EXPECT_NEAR(cubic_eval(rc, x), poly(cubic, x), 1e-13);
    EXPECT_NEAR(lagrange_eval(rs, x), poly(septic, x), 1e-12);
    EXPECT_NEAR(lagrange_eval(rs, x, 4), lagrange_eval(poly_row(cubic, 20), x, 4) +
                                             lagrange_eval(rs - rc, x, 4), 1e-12);
  }
  // At nodes the interpolant reproduces the samples.
  for (int k = 0; k <= 20; ++k) EXPECT_NEAR(lagrange_eval(rs, k / 20.0), rs[k], 1e-15);
  EXPECT_THROW(lagrange_eval(rs.head(5), 0.5), ConfigError);
}

TEST(Interp, CumulativeIntegralExactOnCubics) {
  const std::vector<double> cubic = {0.3, -1.1, 0.7, 2.0};
  const Vec g = poly_row(cubic, 16).transpose();
  const Vec c = cumulative_integral(g);
  for (int k = 0; k <= 16; ++k) {
    const double x = k / 16.0;
    const double exact = 0.3 * x - 1.1 * x * x / 2 + 0.7 * x * x * x / 3 + 2.0 * x * x * x * x / 4;
    EXPECT_NEAR(c[k], exact, 1e-14);
  }
}

TEST(Interp, WideDerivativeExactOnOctics) {
  std::vector<double> c = {0.1, 0.2, -0.3, 0.4, -0.5, 0.6, -0.7, 0.8, -0.9};
  Field f(1, 33);
  f.row(0) = poly_row(c, 32);
  for (int m = 1; m <= 4; ++m) {
    std::vector<double> d = c;
    for (int r = 0; r < m; ++r) {
      for (std::size_t i = 0; i + 1 < d.size(); ++i) d[i] = d[i + 1] * (i + 1);
      d.pop_back();
    }
    const Field w = wide_derivative(f, m);
    for (int k = 0; k <= 32; ++k)
      EXPECT_NEAR(w(0, k), poly(d, k / 32.0), 1e-6 * std::pow(32.0, m - 1)) << m << " " << k;
  }
}

}  // namespace
}  // namespace elnet
