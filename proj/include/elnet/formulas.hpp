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

// Pointwise coordinate formulas of the curve geometry. Everything is written
// in terms of the parameter derivatives d1..d4 of f at one node and is
// templated on the scalar so the same code runs on doubles and on Jets.

#pragma once

#include <array>
#include <cmath>

#include "elnet/common.hpp"

namespace elnet::formulas {

template <class T>
struct Local {
  int n = 0;
  std::array<T, kMaxDim> d1{}, d2{}, d3{}, d4{};
};

template <class T>
using Vector = std::array<T, kMaxDim>;

template <class T>
T dot(int n, const Vector<T>& u, const Vector<T>& v) {
  T s = u[0] * v[0];
  for (int j = 1; j < n; ++j) s += u[j] * v[j];
  return s;
}

// Scalar invariants with the short names used below:
// s2 = |d1|^2, a = <d2,d1>, b = |d2|^2, c = <d3,d1>, e = <d3,d2>, g = <d4,d1>.
template <class T>
struct Invariants {
  T s2, s, a, b, c, e, g;
};

template <class T>
Invariants<T> invariants(const Local<T>& L) {
  using std::sqrt;
  Invariants<T> v;
  v.s2 = dot(L.n, L.d1, L.d1);
  v.s = sqrt(v.s2);
  v.a = dot(L.n, L.d2, L.d1);
  v.b = dot(L.n, L.d2, L.d2);
  v.c = dot(L.n, L.d3, L.d1);
  v.e = dot(L.n, L.d3, L.d2);
  v.g = dot(L.n, L.d4, L.d1);
  return v;
}

template <class T>
Vector<T> unit_tangent(const Local<T>& L, const Invariants<T>& v) {
  Vector<T> t{};
  for (int j = 0; j < L.n; ++j) t[j] = L.d1[j] / v.s;
  return t;
}

template <class T>
Vector<T> kappa(const Local<T>& L) {
  auto v = invariants(L);
  T s4 = v.s2 * v.s2;
  Vector<T> k{};
  for (int j = 0; j < L.n; ++j) k[j] = L.d2[j] / v.s2 - v.a * L.d1[j] / s4;
  return k;
}

// Full arclength derivative of the curvature vector (not projected).
template <class T>
Vector<T> ds_kappa(const Local<T>& L) {
  auto v = invariants(L);
  T s3 = v.s2 * v.s;
  T s5 = s3 * v.s2;
  T s7 = s5 * v.s2;
  T c1 = (-v.c - v.b) / s5 + T(4.0) * v.a * v.a / s7;
  T c2 = T(-3.0) * v.a / s5;
  Vector<T> r{};
  for (int j = 0; j < L.n; ++j) r[j] = L.d3[j] / s3 + c2 * L.d2[j] + c1 * L.d1[j];
  return r;
}

// Full second arclength derivative of the curvature vector.
template <class T>
Vector<T> ds2_kappa(const Local<T>& L) {
  auto v = invariants(L);
  T s4 = v.s2 * v.s2;
  T s5 = s4 * v.s;
  T s6 = s4 * v.s2;
  T s7 = s5 * v.s2;
  T s8 = s4 * s4;
  T s9 = s7 * v.s2;
  T c3 = T(-6.0) * v.a / s6;
  T c2 = T(-4.0) * (v.b + v.c) / s6 + T(19.0) * v.a * v.a / s8;
  T ct = (-v.g - T(3.0) * v.e) / s5 + T(13.0) * v.a * (v.c + v.b) / s7 -
         T(28.0) * v.a * v.a * v.a / s9;
  Vector<T> r{};
  for (int j = 0; j < L.n; ++j)
    r[j] = L.d4[j] / s4 + c3 * L.d3[j] + c2 * L.d2[j] + ct * (L.d1[j] / v.s);
  return r;
}

template <class T>
Vector<T> normal_part(const Local<T>& L, const Vector<T>& w) {
  auto v = invariants(L);
  auto t = unit_tangent(L, v);
  T p = dot(L.n, w, t);
  Vector<T> r{};
  for (int j = 0; j < L.n; ++j) r[j] = w[j] - p * t[j];
  return r;
}

template <class T>
Vector<T> nabla_s_kappa(const Local<T>& L) {
  return normal_part(L, ds_kappa(L));
}

// Normal projection of d/ds of the normal field nabla_s kappa:
// (ds2 kappa)^perp - <ds kappa, T> kappa.
template <class T>
Vector<T> nabla_s2_kappa(const Local<T>& L) {
  auto v = invariants(L);
  auto t = unit_tangent(L, v);
  auto k = kappa(L);
  T tang = dot(L.n, ds_kappa(L), t);
  auto r = normal_part(L, ds2_kappa(L));
  for (int j = 0; j < L.n; ++j) r[j] -= tang * k[j];
  return r;
}

// Constant-speed simplification of nabla_s2 kappa; only valid when |d1| is
// constant along the curve.
template <class T>
Vector<T> nabla_s2_kappa_const_speed(const Local<T>& L) {
  auto v = invariants(L);
  T s4 = v.s2 * v.s2;
  T s6 = s4 * v.s2;
  Vector<T> r{};
  for (int j = 0; j < L.n; ++j)
    r[j] = L.d4[j] / s4 + T(3.0) * v.e * L.d1[j] / s6 + v.b * L.d2[j] / s6;
  return r;
}

template <class T>
T phi_star(const Local<T>& L, double lambda) {
  auto v = invariants(L);
  T s3 = v.s2 * v.s;
  T s5 = s3 * v.s2;
  T s7 = s5 * v.s2;
  T s9 = s7 * v.s2;
  return -v.g / s5 + T(10.0) * v.a * v.c / s7 + T(2.5) * v.a * v.b / s7 -
         T(17.5) * v.a * v.a * v.a / s9 + T(lambda) * v.a / s3;
}

template <class T>
Vector<T> h_lower(const Local<T>& L, double lambda) {
  auto v = invariants(L);
  T s4 = v.s2 * v.s2;
  T s6 = s4 * v.s2;
  T c3 = T(6.0) * v.a / s6;
  T c2 = ((T(2.5) * v.b + T(4.0) * v.c) / s4 - T(17.5) * v.a * v.a / s6 + T(lambda)) / v.s2;
  Vector<T> r{};
  for (int j = 0; j < L.n; ++j) r[j] = c3 * L.d3[j] + c2 * L.d2[j];
  return r;
}

// Coordinate form: -d4/|d1|^4 + h(f).
template <class T>
Vector<T> velocity(const Local<T>& L, double lambda) {
  auto v = invariants(L);
  T s4 = v.s2 * v.s2;
  auto r = h_lower(L, lambda);
  for (int j = 0; j < L.n; ++j) r[j] -= L.d4[j] / s4;
  return r;
}

// Geometric form: -nabla_s2 kappa - |kappa|^2 kappa / 2 + lambda kappa + phi* T.
template <class T>
Vector<T> velocity_geometric(const Local<T>& L, double lambda) {
  auto v = invariants(L);
  auto t = unit_tangent(L, v);
  auto k = kappa(L);
  auto n2 = nabla_s2_kappa(L);
  T kk = dot(L.n, k, k);
  T phi = phi_star(L, lambda);
  Vector<T> r{};
  for (int j = 0; j < L.n; ++j)
    r[j] = -n2[j] - T(0.5) * kk * k[j] + T(lambda) * k[j] + phi * t[j];
  return r;
}

}  // namespace elnet::formulas
