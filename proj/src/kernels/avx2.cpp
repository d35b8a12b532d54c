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

// Compiled with -mavx2 only. Mirrors scalar.cpp operation by operation.

#include <immintrin.h>

#include "elnet/kernels.hpp"

namespace elnet::kernels::avx2 {

void interior(const double* f, int count, double inv_h, double* d1, double* d2, double* d3,
              double* d4) {
  const double c1s = inv_h / 12.0;
  const double c2s = inv_h * inv_h / 12.0;
  const double c3s = inv_h * inv_h * inv_h / 2.0;
  const double c4s = inv_h * inv_h * inv_h * inv_h;
  const __m256d c1 = _mm256_set1_pd(c1s);
  const __m256d c2 = _mm256_set1_pd(c2s);
  const __m256d c3 = _mm256_set1_pd(c3s);
  const __m256d c4 = _mm256_set1_pd(c4s);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d six = _mm256_set1_pd(6.0);
  const __m256d eight = _mm256_set1_pd(8.0);
  const __m256d sixteen = _mm256_set1_pd(16.0);
  const __m256d thirty = _mm256_set1_pd(30.0);

  int k = 2;
  for (; k + 4 <= count - 2; k += 4) {
    const __m256d fm2 = _mm256_loadu_pd(f + k - 2);
    const __m256d fm1 = _mm256_loadu_pd(f + k - 1);
    const __m256d f0 = _mm256_loadu_pd(f + k);
    const __m256d fp1 = _mm256_loadu_pd(f + k + 1);
    const __m256d fp2 = _mm256_loadu_pd(f + k + 2);
    const __m256d odd1 = _mm256_sub_pd(fp1, fm1);
    const __m256d odd2 = _mm256_sub_pd(fp2, fm2);
    const __m256d even1 = _mm256_add_pd(fm1, fp1);
    const __m256d even2 = _mm256_add_pd(fm2, fp2);
    _mm256_storeu_pd(d1 + k, _mm256_mul_pd(_mm256_sub_pd(_mm256_mul_pd(eight, odd1), odd2), c1));
    _mm256_storeu_pd(
        d2 + k,
        _mm256_mul_pd(_mm256_sub_pd(_mm256_sub_pd(_mm256_mul_pd(sixteen, even1), even2),
                                    _mm256_mul_pd(thirty, f0)),
                      c2));
    _mm256_storeu_pd(d3 + k, _mm256_mul_pd(_mm256_sub_pd(odd2, _mm256_mul_pd(two, odd1)), c3));
    _mm256_storeu_pd(
        d4 + k,
        _mm256_mul_pd(_mm256_add_pd(_mm256_sub_pd(even2, _mm256_mul_pd(four, even1)),
                                    _mm256_mul_pd(six, f0)),
                      c4));
  }
  for (; k < count - 2; ++k) {
    const double fm2 = f[k - 2], fm1 = f[k - 1], f0 = f[k], fp1 = f[k + 1], fp2 = f[k + 2];
    const double odd1 = fp1 - fm1;
    const double odd2 = fp2 - fm2;
    const double even1 = fm1 + fp1;
    const double even2 = fm2 + fp2;
    d1[k] = (8.0 * odd1 - odd2) * c1s;
    d2[k] = (16.0 * even1 - even2 - 30.0 * f0) * c2s;
    d3[k] = (odd2 - 2.0 * odd1) * c3s;
    d4[k] = (even2 - 4.0 * even1 + 6.0 * f0) * c4s;
  }
}

void velocity(const VelocityArgs& a) {
  const int n = a.n;
  const int st = a.stride;
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d k25 = _mm256_set1_pd(2.5);
  const __m256d k4 = _mm256_set1_pd(4.0);
  const __m256d k6 = _mm256_set1_pd(6.0);
  const __m256d k175 = _mm256_set1_pd(17.5);
  const __m256d lam = _mm256_set1_pd(a.lambda);

  int k = 0;
  for (; k + 4 <= a.count; k += 4) {
    __m256d x1 = _mm256_loadu_pd(a.d1 + k);
    __m256d x2 = _mm256_loadu_pd(a.d2 + k);
    __m256d x3 = _mm256_loadu_pd(a.d3 + k);
    __m256d s2 = _mm256_mul_pd(x1, x1);
    __m256d da = _mm256_mul_pd(x2, x1);
    __m256d db = _mm256_mul_pd(x2, x2);
    __m256d dc = _mm256_mul_pd(x3, x1);
    for (int j = 1; j < n; ++j) {
      const int i = j * st + k;
      x1 = _mm256_loadu_pd(a.d1 + i);
      x2 = _mm256_loadu_pd(a.d2 + i);
      x3 = _mm256_loadu_pd(a.d3 + i);
      s2 = _mm256_add_pd(s2, _mm256_mul_pd(x1, x1));
      da = _mm256_add_pd(da, _mm256_mul_pd(x2, x1));
      db = _mm256_add_pd(db, _mm256_mul_pd(x2, x2));
      dc = _mm256_add_pd(dc, _mm256_mul_pd(x3, x1));
    }
    const __m256d inv2 = _mm256_div_pd(one, s2);
    const __m256d inv4 = _mm256_mul_pd(inv2, inv2);
    const __m256d inv6 = _mm256_mul_pd(inv4, inv2);
    const __m256d coef3 = _mm256_mul_pd(_mm256_mul_pd(k6, da), inv6);
    const __m256d t1 = _mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(k25, db), _mm256_mul_pd(k4, dc)),
                                     inv4);
    const __m256d t2 = _mm256_mul_pd(_mm256_mul_pd(k175, _mm256_mul_pd(da, da)), inv6);
    const __m256d coef2 = _mm256_mul_pd(inv2, _mm256_add_pd(_mm256_sub_pd(t1, t2), lam));
    for (int j = 0; j < n; ++j) {
      const int i = j * st + k;
      const __m256d y2 = _mm256_loadu_pd(a.d2 + i);
      const __m256d y3 = _mm256_loadu_pd(a.d3 + i);
      const __m256d y4 = _mm256_loadu_pd(a.d4 + i);
      const __m256d lo = _mm256_add_pd(_mm256_mul_pd(coef3, y3), _mm256_mul_pd(coef2, y2));
      _mm256_storeu_pd(a.out + i, _mm256_sub_pd(lo, _mm256_mul_pd(y4, inv4)));
    }
  }
  if (k < a.count) {
    VelocityArgs tail = a;
    tail.count = a.count - k;
    tail.d1 += k;
    tail.d2 += k;
    tail.d3 += k;
    tail.d4 += k;
    tail.out += k;
    scalar::velocity(tail);
  }
}

}  // namespace elnet::kernels::avx2
