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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "elnet/interp.hpp"

namespace elnet {

Diffeomorphism Diffeomorphism::identity(int N) {
  Diffeomorphism d;
  d.values.resize(N + 1);
  for (int k = 0; k <= N; ++k) d.values[k] = static_cast<double>(k) / N;
  return d;
}

bool Diffeomorphism::valid(double floor) const {
  const int N = intervals();
  if (N < 1 || values[0] != 0.0 || values[N] != 1.0) return false;
  for (int k = 0; k < N; ++k)
    if (!(values[k + 1] - values[k] > floor)) return false;
  return true;
}

namespace {

constexpr int kResampleWidth = 8;

// x in [x_j, x_{j+1}] with q(x) = u, where q is the Lagrange interpolant of
// `p`. Bisection: q(x_j) <= u <= q(x_{j+1}).
double local_inverse(const Vec& p, int j, double u) {
  const int N = static_cast<int>(p.size()) - 1;
  const Eigen::RowVectorXd row = p.transpose();
  const int width = std::min(kResampleWidth, N + 1);
  double lo = static_cast<double>(j) / N, hi = static_cast<double>(j + 1) / N;
  for (int it = 0; it < 60 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    (lagrange_eval(row, mid, width) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Reparametrized const_speed_reparam(const CurveSamples& curve) {
  require_regular(finite_differences(curve));
  const int N = curve.intervals();
  // Nine-point speed: the five-point one leaves an O(h^4) ripple in the map
  // that shows up as first-order speed spread after inversion.
  const DerivativeBundle b = wide_bundle(curve);
  const Vec cum = cumulative_integral(b.speed);
  Reparametrized out;
  out.phi.values = cum / cum[N];
  out.phi.values[0] = 0.0;
  out.phi.values[N] = 1.0;
  out.phi.monotone = out.phi.valid(0.0);
  if (!out.phi.monotone) throw DomainError("arclength map is not monotone; refine the grid");

  const Vec& p = out.phi.values;
  Field nodes(curve.dim(), N + 1);
  nodes.col(0) = curve.nodes().col(0);
  nodes.col(N) = curve.nodes().col(N);
  int j = 0;
  for (int k = 1; k < N; ++k) {
    const double u = static_cast<double>(k) / N;
    while (j < N - 1 && p[j + 1] <= u) ++j;
    nodes.col(k) = lagrange_eval_field(curve.nodes(), local_inverse(p, j, u),
                                        std::min(kResampleWidth, N + 1));
  }
  out.curve = CurveSamples(std::move(nodes));
  return out;
}

namespace {

struct SliceFields {
  Eigen::RowVectorXd phi_ref;
  Eigen::RowVectorXd speed;
  Eigen::RowVectorXd phi_other;
};

void check_monotone(const Diffeomorphism& d, double t) {
  const int N = d.intervals();
  for (int k = 0; k < N; ++k)
    if (!(d.values[k + 1] - d.values[k] > kMonotoneFloor)) {
      std::ostringstream os;
      os << "diffeomorphism lost monotonicity at t = " << t << " between nodes " << k << " and "
         << k + 1;
      throw DiffeoBreakdown(os.str(), t);
    }
}

}  // namespace

DiffeoFamily tangential_ode(const CurveTrajectory& reference, const std::vector<Vec>& phi_ref,
                            const std::vector<Vec>& phi_other, const Diffeomorphism* initial,
                            FieldInTime field_time) {
  const std::size_t m = reference.times.size();
  if (m == 0 || reference.curves.size() != m || phi_ref.size() != m || phi_other.size() != m)
    throw ConfigError("trajectory and speed fields must have one entry per snapshot");
  const int N = static_cast<int>(reference.curves[0].cols()) - 1;
  std::vector<SliceFields> slices(m);
  for (std::size_t s = 0; s < m; ++s) {
    if (phi_ref[s].size() != N + 1 || phi_other[s].size() != N + 1)
      throw ConfigError("speed field size does not match the grid");
    const DerivativeBundle b = finite_differences(CurveSamples(reference.curves[s]));
    require_regular(b);
    slices[s] = {phi_ref[s].transpose(), b.speed.transpose(), phi_other[s].transpose()};
  }

  Diffeomorphism phi = initial ? *initial : Diffeomorphism::identity(N);
  if (phi.intervals() != N) throw ConfigError("initial diffeomorphism grid mismatch");
  check_monotone(phi, reference.times[0]);

  DiffeoFamily fam;
  fam.times.push_back(reference.times[0]);
  fam.maps.push_back(phi);

  // Right-hand side at a convex blend (1 - w) slice a + w slice b.
  auto rhs = [&](const SliceFields& a, const SliceFields& b, double w, const Vec& y) {
    if (field_time == FieldInTime::end) w = 1.0;
    Vec g = Vec::Zero(N + 1);
    for (int k = 1; k < N; ++k) {
      const double pr = (1 - w) * cubic_eval(a.phi_ref, y[k]) + w * cubic_eval(b.phi_ref, y[k]);
      const double sp = (1 - w) * cubic_eval(a.speed, y[k]) + w * cubic_eval(b.speed, y[k]);
      const double po = (1 - w) * a.phi_other[k] + w * b.phi_other[k];
      g[k] = (po - pr) / sp;
    }
    return g;
  };

  // Lipschitz bound of the right-hand side in y on one slice.
  auto lipschitz = [&](const SliceFields& a) {
    double l = 0.0;
    for (int k = 0; k < N; ++k) l = std::max(l, std::abs(a.phi_ref[k + 1] - a.phi_ref[k]));
    return l * N / a.speed.minCoeff();
  };

  for (std::size_t s = 0; s + 1 < m; ++s) {
    const double H = reference.times[s + 1] - reference.times[s];
    if (!(H > 0.0)) throw ConfigError("snapshot times must increase");
    const auto& A = slices[s];
    const auto& B = slices[s + 1];
    // Substeps keep h L below 1/2, inside the RK4 stability region.
    const int sub = std::max(1, static_cast<int>(std::ceil(
                                    2.0 * H * std::max(lipschitz(A), lipschitz(B)))));
    const double h = H / sub;
    for (int j = 0; j < sub; ++j) {
      const double w0 = static_cast<double>(j) / sub, dw = 1.0 / sub;
      const Vec y = phi.values;
      const Vec k1 = rhs(A, B, w0, y);
      const Vec k2 = rhs(A, B, w0 + 0.5 * dw, y + 0.5 * h * k1);
      const Vec k3 = rhs(A, B, w0 + 0.5 * dw, y + 0.5 * h * k2);
      const Vec k4 = rhs(A, B, w0 + dw, y + h * k3);
      phi.values = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      phi.values[0] = 0.0;
      phi.values[N] = 1.0;
      check_monotone(phi, reference.times[s] + (j + 1) * h);
    }
    fam.times.push_back(reference.times[s + 1]);
    fam.maps.push_back(phi);
  }
  return fam;
}

Diffeomorphism recover_initial_diffeo(const CurveSamples& a, const CurveSamples& b) {
  if (a.dim() != b.dim() || a.intervals() != b.intervals())
    throw ConfigError("curves differ in shape");
  const int N = a.intervals();
  Diffeomorphism d = Diffeomorphism::identity(N);
  for (int k = 1; k < N; ++k) {
    const Vec p = b.node(k);
    int best = 0;
    double bd = INFINITY;
    for (int j = 0; j <= N; ++j) {
      const double dist = (a.node(j) - p).squaredNorm();
      if (dist < bd) {
        bd = dist;
        best = j;
      }
    }
    double y = static_cast<double>(best) / N;
    for (int it = 0; it < 30; ++it) {
      const Vec r = cubic_eval_field(a.nodes(), y) - p;
      const Vec t = cubic_derivative_field(a.nodes(), y);
      const double step = r.dot(t) / t.squaredNorm();
      y = std::clamp(y - step, 0.0, 1.0);
      if (std::abs(step) < 1e-15) break;
    }
    d.values[k] = y;
  }
  d.monotone = d.valid(kMonotoneFloor);
  if (!d.monotone) throw DiffeoBreakdown("recovered initial map is not monotone", 0.0);
  return d;
}

std::vector<Vec> tangential_speed_from_motion(const CurveTrajectory& traj) {
  const std::size_t m = traj.times.size();
  if (m < 3) throw ConfigError("need at least three snapshots");
  std::vector<Vec> out;
  for (std::size_t s = 0; s < m; ++s) {
    Field ft;
    const auto& t = traj.times;
    if (s == 0) {
      const double h0 = t[1] - t[0], h1 = t[2] - t[1];
      ft = (-(2 * h0 + h1) / (h0 * (h0 + h1))) * traj.curves[0] +
           ((h0 + h1) / (h0 * h1)) * traj.curves[1] - (h0 / (h1 * (h0 + h1))) * traj.curves[2];
    } else if (s == m - 1) {
      const double h0 = t[s - 1] - t[s - 2], h1 = t[s] - t[s - 1];
      ft = (h1 / (h0 * (h0 + h1))) * traj.curves[s - 2] - ((h0 + h1) / (h0 * h1)) * traj.curves[s - 1] +
           ((2 * h1 + h0) / (h1 * (h0 + h1))) * traj.curves[s];
    } else {
      const double h0 = t[s] - t[s - 1], h1 = t[s + 1] - t[s];
      ft = (-h1 / (h0 * (h0 + h1))) * traj.curves[s - 1] + ((h1 - h0) / (h0 * h1)) * traj.curves[s] +
           (h0 / (h1 * (h0 + h1))) * traj.curves[s + 1];
    }
    const Field T = unit_tangent(finite_differences(CurveSamples(traj.curves[s])));
    Vec v(ft.cols());
    for (int k = 0; k < ft.cols(); ++k) v[k] = ft.col(k).dot(T.col(k));
    out.push_back(std::move(v));
  }
  return out;
}

CurveTrajectory curve_trajectory(const std::vector<NetworkState>& states, int curve) {
  CurveTrajectory t;
  for (const auto& s : states) {
    t.times.push_back(s.time);
    t.curves.push_back(s.curves.at(curve).nodes());
  }
  return t;
}

EquivalenceReport geometric_equivalence(const std::vector<NetworkState>& a,
                                        const std::vector<NetworkState>& b,
                                        const std::vector<double>& lambda, double tol) {
  if (a.empty() || a.size() != b.size()) throw ConfigError("trajectories differ in snapshot count");
  const int q = a[0].q();
  if (static_cast<int>(lambda.size()) != q) throw ConfigError("lambda must have q entries");
  for (std::size_t s = 0; s < a.size(); ++s) {
    if (a[s].q() != q || b[s].q() != q || a[s].intervals() != b[s].intervals() ||
        a[s].dim() != b[s].dim())
      throw ConfigError("trajectories differ in network shape");
    if (std::abs(a[s].time - b[s].time) > 1e-12 * std::max(1.0, std::abs(a[s].time)))
      throw ConfigError("trajectories differ in snapshot times");
  }
  EquivalenceReport rep;
  for (int i = 0; i < q; ++i) {
    const CurveTrajectory ta = curve_trajectory(a, i);
    const CurveTrajectory tb = curve_trajectory(b, i);
    std::vector<Vec> pa, pb;
    for (std::size_t s = 0; s < a.size(); ++s) {
      pa.push_back(phi_star(finite_differences(a[s].curves[i]), lambda[i]));
      pb.push_back(phi_star(finite_differences(b[s].curves[i]), lambda[i]));
    }
    const Diffeomorphism psi0 = recover_initial_diffeo(a[0].curves[i], b[0].curves[i]);
    DiffeoFamily fam = tangential_ode(ta, pa, pb, &psi0, FieldInTime::end);
    for (std::size_t s = 0; s < fam.maps.size(); ++s) {
      const Field& fa = ta.curves[s];
      const Field& fb = tb.curves[s];
      for (int k = 0; k < fb.cols(); ++k) {
        const double dev = (fb.col(k) - cubic_eval_field(fa, fam.maps[s].values[k])).norm();
        if (dev > rep.deviation) {
          rep.deviation = dev;
          rep.worst_curve = i;
          rep.worst_time = fam.times[s];
        }
      }
    }
    rep.diffeos.push_back(std::move(fam));
  }
  rep.pass = rep.deviation <= tol;
  return rep;
}

}  // namespace elnet
