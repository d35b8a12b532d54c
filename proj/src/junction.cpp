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

#include "elnet/junction.hpp"

#include <cmath>
#include <string>

#include <Eigen/LU>
#include <Eigen/SVD>

namespace elnet {

double nc_value(const std::vector<Vec>& tangents) {
  double prod = 1.0;
  for (std::size_t i = 0; i < tangents.size(); ++i)
    for (std::size_t j = i + 1; j < tangents.size(); ++j)
      prod *= std::abs(tangents[i].dot(tangents[j]));
  return 1.0 - prod;
}

int span_dimension(const std::vector<Vec>& tangents, double tol) {
  if (tangents.empty()) return 0;
  Eigen::MatrixXd m(tangents[0].size(), tangents.size());
  for (std::size_t i = 0; i < tangents.size(); ++i) m.col(i) = tangents[i];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > tol * s[0]) ++r;
  return r;
}

Eigen::MatrixXd build_Q(const std::vector<Vec>& tangents) {
  const int q = static_cast<int>(tangents.size());
  Eigen::MatrixXd Q(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      Q(i, j) = i == j ? q - 1.0 : -tangents[i].dot(tangents[j]);
  return Q;
}

Vec junction_phi_rhs(const JunctionFrame& frame) {
  const int q = static_cast<int>(frame.tangents.size());
  Vec total = Vec::Zero(frame.tangents[0].size());
  for (const auto& a : frame.a_vectors) total += a;
  Vec rhs(q);
  for (int i = 0; i < q; ++i) rhs[i] = -(total - frame.a_vectors[i]).dot(frame.tangents[i]);
  return rhs;
}

Vec junction_phi(const JunctionFrame& frame, double rank_tol) {
  const int dim = span_dimension(frame.tangents, rank_tol);
  if (dim < 2)
    throw NonCollinearityError(
        "(NC) violated: junction tangents span dimension " + std::to_string(dim) + " < 2", dim);
  const Eigen::MatrixXd Q = build_Q(frame.tangents);
  const Vec rhs = junction_phi_rhs(frame);
  Vec phi = Q.partialPivLu().solve(rhs);
  const double res = (Q * phi - rhs).norm();
  if (res > 1e-10 * (Q.norm() * phi.norm() + rhs.norm()) && res > 1e-300)
    throw NonCollinearityError("junction speed system is numerically singular", dim);
  return phi;
}

std::vector<Vec> junction_tangents(const std::vector<DerivativeBundle>& bundles) {
  std::vector<Vec> t;
  t.reserve(bundles.size());
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    const auto& b = bundles[i];
    if (!(b.speed[0] >= kMinSpeed))
      throw RegularityError("regularity violation at the junction", static_cast<int>(i), 0,
                            b.speed[0]);
    t.push_back(b.d1.col(0) / b.speed[0]);
  }
  return t;
}

JunctionFrame junction_frame(const std::vector<DerivativeBundle>& bundles) {
  JunctionFrame f;
  f.tangents = junction_tangents(bundles);
  for (const auto& b : bundles) {
    const auto v = formulas::nabla_s2_kappa(b.local(0));
    Vec a(b.dim());
    for (int j = 0; j < b.dim(); ++j) a[j] = v[j];
    f.a_vectors.push_back(a);
  }
  return f;
}

JunctionLinearization linearize_boundary(const std::vector<DerivativeBundle>& frozen,
                                         const std::vector<DerivativeBundle>& current,
                                         const std::vector<double>& lambda) {
  const std::vector<Vec> d = junction_tangents(frozen);
  const std::vector<Vec> t = junction_tangents(current);
  const int n = frozen[0].dim();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  JunctionLinearization lin;
  lin.b = Vec::Zero(n);
  for (std::size_t i = 0; i < frozen.size(); ++i) {
    const double D = 1.0 / frozen[i].speed[0];
    const double s = current[i].speed[0];
    Eigen::MatrixXd E = D * D * D * (I - d[i] * d[i].transpose());
    Eigen::MatrixXd Ebar = (I - t[i] * t[i].transpose()) / (s * s * s);
    lin.b += (E - Ebar) * current[i].d3.col(0) + lambda[i] * t[i];
    lin.e_matrices.push_back(std::move(E));
    lin.d_vectors.push_back(d[i]);
    lin.coefficients.push_back(D);
  }
  return lin;
}

}  // namespace elnet
