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

#include "elnet/kernels.hpp"

namespace elnet::kernels::scalar {

void interior(const double* f, int count, double inv_h, double* d1, double* d2, double* d3,
              double* d4) {
  const double c1 = inv_h / 12.0;
  const double c2 = inv_h * inv_h / 12.0;
  const double c3 = inv_h * inv_h * inv_h / 2.0;
  const double c4 = inv_h * inv_h * inv_h * inv_h;
  for (int k = 2; k < count - 2; ++k) {
    const double fm2 = f[k - 2], fm1 = f[k - 1], f0 = f[k], fp1 = f[k + 1], fp2 = f[k + 2];
    const double odd1 = fp1 - fm1;
    const double odd2 = fp2 - fm2;
    const double even1 = fm1 + fp1;
    const double even2 = fm2 + fp2;
    d1[k] = (8.0 * odd1 - odd2) * c1;
    d2[k] = (16.0 * even1 - even2 - 30.0 * f0) * c2;
    d3[k] = (odd2 - 2.0 * odd1) * c3;
    d4[k] = (even2 - 4.0 * even1 + 6.0 * f0) * c4;
  }
}

void velocity(const VelocityArgs& a) {
  const int n = a.n;
  const int st = a.stride;
  for (int k = 0; k < a.count; ++k) {
    double s2 = a.d1[k] * a.d1[k];
    double da = a.d2[k] * a.d1[k];
    double db = a.d2[k] * a.d2[k];
    double dc = a.d3[k] * a.d1[k];
    for (int j = 1; j < n; ++j) {
      const int i = j * st + k;
      s2 = s2 + a.d1[i] * a.d1[i];
      da = da + a.d2[i] * a.d1[i];
      db = db + a.d2[i] * a.d2[i];
      dc = dc + a.d3[i] * a.d1[i];
    }
    const double inv2 = 1.0 / s2;
    const double inv4 = inv2 * inv2;
    const double inv6 = inv4 * inv2;
    const double coef3 = 6.0 * da * inv6;
    const double coef2 =
        inv2 * ((2.5 * db + 4.0 * dc) * inv4 - 17.5 * (da * da) * inv6 + a.lambda);
    for (int j = 0; j < n; ++j) {
      const int i = j * st + k;
      a.out[i] = (coef3 * a.d3[i] + coef2 * a.d2[i]) - a.d4[i] * inv4;
    }
  }
}

}  // namespace elnet::kernels::scalar
