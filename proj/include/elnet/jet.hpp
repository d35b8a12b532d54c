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

#include <array>
#include <cmath>

namespace elnet {

// Truncated Taylor series in one variable: c[k] is the k-th coefficient, so
// the k-th derivative at the expansion point is k! * c[k].
template <int K>
struct Jet {
  static_assert(K >= 0);
  std::array<double, K + 1> c{};

  Jet() = default;
  Jet(double v) { c[0] = v; }  // NOLINT: implicit on purpose, formulas mix scalars

  static Jet variable(double v) {
    Jet j(v);
    if constexpr (K >= 1) j.c[1] = 1.0;
    return j;
  }

  double value() const { return c[0]; }

  double derivative(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f * c[k];
  }

  Jet& operator+=(const Jet& o) {
    for (int k = 0; k <= K; ++k) c[k] += o.c[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k <= K; ++k) c[k] -= o.c[k];
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) {
    for (auto& v : a.c) v = -v;
    return a;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k <= K; ++k) {
      double s = 0.0;
      for (int i = 0; i <= k; ++i) s += a.c[i] * b.c[k - i];
      r.c[k] = s;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k <= K; ++k) {
      double s = a.c[k];
      for (int i = 1; i <= k; ++i) s -= b.c[i] * r.c[k - i];
      r.c[k] = s / b.c[0];
    }
    return r;
  }

  friend Jet sqrt(const Jet& a) {
    Jet r;
    r.c[0] = std::sqrt(a.c[0]);
    for (int k = 1; k <= K; ++k) {
      double s = a.c[k];
      for (int i = 1; i < k; ++i) s -= r.c[i] * r.c[k - i];
      r.c[k] = s / (2.0 * r.c[0]);
    }
    return r;
  }
};

// Derivative of the truncated series; the top coefficient is lost.
template <int K>
Jet<K - 1> differentiate(const Jet<K>& a) {
  Jet<K - 1> r;
  for (int k = 0; k < K; ++k) r.c[k] = (k + 1) * a.c[k + 1];
  return r;
}

template <int K>
Jet<K - 1> truncate(const Jet<K>& a) {
  Jet<K - 1> r;
  for (int k = 0; k < K; ++k) r.c[k] = a.c[k];
  return r;
}

inline double value_of(double v) { return v; }
template <int K>
double value_of(const Jet<K>& j) {
  return j.value();
}

}  // namespace elnet
