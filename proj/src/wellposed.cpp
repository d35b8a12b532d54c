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

#include "elnet/wellposed.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include <Eigen/SVD>

#include "elnet/jet.hpp"
#include "elnet/stencil.hpp"

namespace elnet {

const CompatRecord* CompatReport::first_failure() const {
  for (const auto& r : records)
    if (!r.pass) return &r;
  return nullptr;
}

NetworkJets estimate_endpoint_jets(const NetworkState& state, int max_order) {
  const int N = state.intervals();
  constexpr double eps = std::numeric_limits<double>::epsilon();
  NetworkJets jets(state.q());
  for (int i = 0; i < state.q(); ++i) {
    const Field& f = state.curves[i].nodes();
    for (int end = 0; end < 2; ++end) {
      EndpointJet& J = jets[i][end];
      const int k0 = end == 0 ? 0 : N;
      J.d.push_back(f.col(k0));
      J.noise.push_back(eps * f.col(k0).cwiseAbs().maxCoeff());
      for (int m = 1; m <= max_order; ++m) {
        const double scale = std::pow(static_cast<double>(N), m);
        auto apply = [&](int width, double* mag) {
          const Stencil s = endpoint_stencil(m, end, width, N);
          Vec v = Vec::Zero(f.rows());
          for (std::size_t t = 0; t < s.w.size(); ++t) {
            v += s.w[t] * f.col(s.first + t);
            if (mag) *mag += std::abs(s.w[t]) * f.col(s.first + t).cwiseAbs().maxCoeff();
          }
          return Vec(v * scale);
        };
        double mag = 0.0;
        const int width = endpoint_width(m);
        const Vec v = apply(width, &mag);
        // Truncation bound: twice the change when one more point is used.
        double trunc = 0.0;
        if (width + 1 <= N + 1) trunc = 2.0 * (apply(width + 1, nullptr) - v).cwiseAbs().maxCoeff();
        J.d.push_back(v);
        J.noise.push_back(4.0 * eps * mag * scale + trunc);
      }
    }
  }
  return jets;
}

namespace {

using CondFn = std::function<double(const NetworkJets&)>;

struct Condition {
  std::string name;
  int curve = 0;
  int other = 0;
  int endpoint = 0;
  double scale = 1.0;
  CondFn fn;
};

// First-order propagation of the per-derivative rounding bounds.
double rounding_floor(const CondFn& fn, const NetworkJets& jets, double base) {
  double total = 0.0;
  NetworkJets p = jets;
  for (std::size_t i = 0; i < jets.size(); ++i)
    for (int e = 0; e < 2; ++e)
      for (std::size_t m = 0; m < jets[i][e].d.size(); ++m) {
        const double nu = jets[i][e].noise.empty() ? 0.0 : jets[i][e].noise[m];
        if (nu == 0.0) continue;
        for (int j = 0; j < jets[i][e].d[m].size(); ++j) {
          p[i][e].d[m][j] += nu;
          total += std::abs(fn(p) - base);
          p[i][e].d[m][j] = jets[i][e].d[m][j];
        }
      }
  return total;
}

CompatReport evaluate(const std::vector<Condition>& conds, const NetworkJets& jets, double tol) {
  CompatReport rep;
  for (const auto& c : conds) {
    CompatRecord r;
    r.condition = c.name;
    r.curve = c.curve;
    r.other = c.other;
    r.endpoint = c.endpoint;
    r.residual = c.fn(jets);
    r.tolerance = tol * c.scale + rounding_floor(c.fn, jets, r.residual);
    r.pass = std::isfinite(r.residual) && r.residual <= r.tolerance;
    rep.pass = rep.pass && r.pass;
    rep.records.push_back(std::move(r));
  }
  return rep;
}

template <int R>
formulas::Local<Jet<R>> x_jet(const EndpointJet& J) {
  formulas::Local<Jet<R>> L;
  L.n = static_cast<int>(J.d[0].size());
  double fact[R + 1];
  fact[0] = 1.0;
  for (int r = 1; r <= R; ++r) fact[r] = fact[r - 1] * r;
  std::array<formulas::Vector<Jet<R>>*, 4> rows{&L.d1, &L.d2, &L.d3, &L.d4};
  for (int m = 1; m <= 4; ++m)
    for (int j = 0; j < L.n; ++j)
      for (int r = 0; r <= R; ++r) (*rows[m - 1])[j].c[r] = J.d[m + r][j] / fact[r];
  return L;
}

formulas::Local<double> plain(const EndpointJet& J) {
  formulas::Local<double> L;
  L.n = static_cast<int>(J.d[0].size());
  for (int j = 0; j < L.n; ++j) {
    L.d1[j] = J.d[1][j];
    L.d2[j] = J.d[2][j];
    L.d3[j] = J.d[3][j];
    L.d4[j] = J.d[4][j];
  }
  return L;
}

double sum_lambda(const FlowParams& p) {
  double s = 0.0;
  for (double l : p.lambda) s += l;
  return std::max(1.0, s);
}

std::vector<Condition> order0_conditions(const NetworkJets& jets, const FlowParams& p) {
  std::vector<Condition> cs;
  const int q = static_cast<int>(jets.size());
  for (int i = 0; i < q; ++i) {
    const Vec P = p.endpoints[i];
    cs.push_back({"endpoint_pin", i + 1, 0, 1, std::max(1.0, P.norm()),
                  [i, P](const NetworkJets& J) { return (J[i][1].d[0] - P).norm(); }});
  }
  if (q == 1 && p.start_point) {
    const Vec S = *p.start_point;
    cs.push_back({"start_pin", 1, 0, 0, std::max(1.0, S.norm()),
                  [S](const NetworkJets& J) { return (J[0][0].d[0] - S).norm(); }});
  }
  for (int i = 0; i < q; ++i)
    for (int e = 0; e < 2; ++e)
      cs.push_back({"d2_zero", i + 1, 0, e, 1.0, [i, e](const NetworkJets& J) {
                      return J[i][e].d[2].norm() / J[i][e].d[1].squaredNorm();
                    }});
  for (int i = 1; i < q; ++i)
    cs.push_back({"concurrency", i + 1, 1, 0, std::max(1.0, jets[0][0].d[0].norm()),
                  [i](const NetworkJets& J) { return (J[i][0].d[0] - J[0][0].d[0]).norm(); }});
  if (q >= 2) {
    const std::vector<double> lam = p.lambda;
    cs.push_back({"junction_third_order_sum", 0, 0, 0, sum_lambda(p),
                  [lam](const NetworkJets& J) {
                    const int n = static_cast<int>(J[0][0].d[0].size());
                    Vec s = Vec::Zero(n);
                    for (std::size_t i = 0; i < J.size(); ++i) {
                      const auto L = plain(J[i][0]);
                      const auto nk = formulas::nabla_s_kappa(L);
                      const double sp = J[i][0].d[1].norm();
                      for (int j = 0; j < n; ++j) s[j] += nk[j] - lam[i] * L.d1[j] / sp;
                    }
                    return s.norm();
                  }});
  }
  auto fourth = [](const EndpointJet& e) {
    const double s2 = e.d[1].squaredNorm();
    return Vec(e.d[4] / (s2 * s2));
  };
  for (int i = 0; i < q; ++i)
    cs.push_back({"compaone", i + 1, 0, 1, 1.0,
                  [i, fourth](const NetworkJets& J) { return fourth(J[i][1]).norm(); }});
  if (q == 1)
    cs.push_back({"compaone", 1, 0, 0, 1.0,
                  [fourth](const NetworkJets& J) { return fourth(J[0][0]).norm(); }});
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j)
      cs.push_back({"compatwo", i + 1, j + 1, 0, 1.0, [i, j, fourth](const NetworkJets& J) {
                      return (fourth(J[i][0]) - fourth(J[j][0])).norm();
                    }});
  return cs;
}

void require_jets(const NetworkJets& jets, int order) {
  for (const auto& c : jets)
    for (const auto& e : c)
      if (static_cast<int>(e.d.size()) < order + 1)
        throw ConfigError("endpoint jets carry too few derivatives");
}

}  // namespace

CompatReport check_compat_order0(const NetworkJets& jets, const FlowParams& params, double tol) {
  require_jets(jets, 4);
  return evaluate(order0_conditions(jets, params), jets, tol);
}

CompatReport check_compat_order0(const NetworkState& network, const FlowParams& params,
                                 double tol) {
  validate(network, params);
  return check_compat_order0(estimate_endpoint_jets(network, 4), params, tol);
}

CompatReport check_compat_order1(const NetworkJets& jets, const FlowParams& params, double tol) {
  require_jets(jets, kJetOrder);
  const int q = static_cast<int>(jets.size());
  std::vector<Condition> cs;
  for (int i = 0; i < q; ++i)
    for (int e = 0; e < 2; ++e) {
      const double lam = params.lambda[i];
      cs.push_back({"d2_velocity", i + 1, 0, e, 1.0, [i, e, lam](const NetworkJets& J) {
                      const auto L = x_jet<2>(J[i][e]);
                      const auto V = formulas::velocity(L, lam);
                      double s = 0.0;
                      for (int j = 0; j < L.n; ++j) s += std::pow(V[j].derivative(2), 2);
                      return std::sqrt(s) / J[i][e].d[1].squaredNorm();
                    }});
    }
  if (q >= 2) {
    const std::vector<double> lam = params.lambda;
    cs.push_back({"junction_sum_rate", 0, 0, 0, sum_lambda(params), [lam](const NetworkJets& J) {
                    const int n = static_cast<int>(J[0][0].d[0].size());
                    std::vector<double> rate(n, 0.0);
                    for (std::size_t i = 0; i < J.size(); ++i) {
                      const auto Lx = x_jet<3>(J[i][0]);
                      const auto V = formulas::velocity(Lx, lam[i]);
                      // Time dual numbers: f^(m) + eps * d_x^m V.
                      formulas::Local<Jet<1>> Lt;
                      Lt.n = n;
                      for (int j = 0; j < n; ++j) {
                        Lt.d1[j].c = {J[i][0].d[1][j], V[j].derivative(1)};
                        Lt.d2[j].c = {J[i][0].d[2][j], V[j].derivative(2)};
                        Lt.d3[j].c = {J[i][0].d[3][j], V[j].derivative(3)};
                        Lt.d4[j].c = {J[i][0].d[4][j], 0.0};
                      }
                      const auto nk = formulas::nabla_s_kappa(Lt);
                      const auto inv = formulas::invariants(Lt);
                      for (int j = 0; j < n; ++j) {
                        const Jet<1> t = Lt.d1[j] / inv.s;
                        rate[j] += nk[j].c[1] - lam[i] * t.c[1];
                      }
                    }
                    double s = 0.0;
                    for (double r : rate) s += r * r;
                    return std::sqrt(s);
                  }});
  }
  CompatReport rep = evaluate(cs, jets, tol);
  const CompatReport pre = check_compat_order0(jets, params, tol);
  CompatRecord r;
  r.condition = "order0_prerequisite";
  r.residual = pre.pass ? 0.0 : 1.0;
  r.tolerance = 0.5;
  r.pass = pre.pass;
  rep.records.insert(rep.records.begin(), r);
  rep.pass = rep.pass && pre.pass;
  return rep;
}

CompatReport check_compat_order1(const NetworkState& network, const FlowParams& params,
                                 double tol) {
  validate(network, params);
  return check_compat_order1(estimate_endpoint_jets(network, kJetOrder), params, tol);
}

double parabolicity_margin(const std::vector<Vec>& speeds) {
  double smax = 0.0;
  for (const auto& s : speeds)
    for (int k = 0; k < s.size(); ++k) {
      if (!(s[k] > 0.0)) throw RegularityError("non-positive speed in parabolicity margin", -1, k, s[k]);
      smax = std::max(smax, s[k]);
    }
  const double d = 1.0 / smax;
  return d * d * d * d;
}

namespace {

void check_p(std::complex<double> p) {
  if (p == 0.0 || !(p.real() >= 0.0)) throw DomainError("p must satisfy Re p >= 0 and p != 0");
}

}  // namespace

RootSet positive_roots(std::complex<double> p, const std::vector<double>& D) {
  check_p(p);
  RootSet rs;
  rs.p = p;
  rs.theta = std::arg(p);
  const double mag = std::pow(std::abs(p), 0.25);
  for (double d : D) {
    if (!(d > 0.0)) throw DomainError("coefficients D must be positive");
    const double r = mag / d;
    rs.radii.push_back(r);
    std::array<std::complex<double>, 4> t;
    for (int k = 1; k <= 4; ++k)
      t[k - 1] = std::polar(r, (rs.theta + (2 * k - 1) * std::numbers::pi) / 4.0);
    rs.roots.push_back(t);
  }
  return rs;
}

Eigen::MatrixXcd junction_omega_system(const std::vector<Vec>& tangents,
                                       const std::vector<double>& D, std::complex<double> p) {
  using C = std::complex<double>;
  const RootSet rs = positive_roots(p, D);
  const int q = static_cast<int>(tangents.size());
  const int n = static_cast<int>(tangents[0].size());
  const C I(0.0, 1.0);
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(2 * q * n, 2 * q * n);
  const int vbase = (2 * q - 1) * n;
  for (int i = 0; i < q; ++i) {
    const C x1 = rs.roots[i][0];
    const C x2 = rs.roots[i][1];
    const C beta = (x1 * x1 + x1 * x2 + x2 * x2) / (x1 + x2);
    const C alpha = x1 * x1 * x2 * x2 / (x1 + x2);
    const Vec d = tangents[i] / tangents[i].norm();
    const Eigen::MatrixXd E =
        std::pow(D[i], 3) * (Eigen::MatrixXd::Identity(n, n) - d * d.transpose());
    for (int k = 0; k < n; ++k) {
      const int rb = 2 * (i * n + k);
      const int ra = rb + 1;
      // b - beta c = 0 with c = -i sum_j E_jk v_j.
      M(rb, (q - 1 + i) * n + k) += 1.0;
      // a - alpha c = 0.
      if (i == 0) {
        for (int m = 0; m <= q - 2; ++m) M(ra, m * n + k) += 1.0;
      } else {
        M(ra, (i - 1) * n + k) += -1.0;
      }
      for (int j = 0; j < n; ++j) {
        M(rb, vbase + j) += I * beta * E(j, k);
        M(ra, vbase + j) += I * alpha * E(j, k);
      }
    }
  }
  return M;
}

bool junction_complementary(const std::vector<Vec>& tangents, const std::vector<double>& D,
                            std::complex<double> p, double tol) {
  check_p(p);
  if (tangents.size() != D.size()) throw ConfigError("one coefficient per tangent required");
  const Eigen::MatrixXcd M = junction_omega_system(tangents, D, p);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  const auto& s = svd.singularValues();
  return s[s.size() - 1] > tol * s[0];
}

bool fixed_end_complementary(double D, std::complex<double> p) {
  check_p(p);
  if (!(D > 0.0)) throw DomainError("D must be positive");
  const RootSet rs = positive_roots(p, {D});
  const std::complex<double> w =
      std::complex<double>(0.0, 1.0) * rs.radii[0] * rs.radii[0] *
      std::polar(1.0, rs.theta / 2.0);
  Eigen::Matrix2cd M;
  M << 1.0, -w, 1.0, w;
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(M);
  const auto& s = svd.singularValues();
  return s[1] > 1e-12 * s[0];
}

}  // namespace elnet
