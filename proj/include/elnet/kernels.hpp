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

// Hot loops with a scalar reference and an AVX2 variant. Both variants use
// the same operation order and no fused multiply-add, so their results are
// bitwise identical. The variant is picked once at runtime; ELNET_ISA=scalar
// forces the reference path.

#pragma once

#include <string_view>

namespace elnet::kernels {

enum class Isa { scalar, avx2 };

// Centered five-point derivatives of one component row f[0..count) written to
// indices 2..count-3 of d1..d4. Boundary nodes are left untouched.
using InteriorFn = void (*)(const double* f, int count, double inv_h, double* d1, double* d2,
                            double* d3, double* d4);

// Per-node coordinate velocity -d4/|d1|^4 + h(f). Arrays are n rows of
// `stride` doubles (component-major); nodes [0, count) are processed.
struct VelocityArgs {
  int n = 0;
  int count = 0;
  int stride = 0;
  const double* d1 = nullptr;
  const double* d2 = nullptr;
  const double* d3 = nullptr;
  const double* d4 = nullptr;
  double lambda = 0.0;
  double* out = nullptr;
};
using VelocityFn = void (*)(const VelocityArgs& args);

struct Table {
  InteriorFn interior;
  VelocityFn velocity;
};

bool supported(Isa isa);
const Table& table(Isa isa);

// Active variant: AVX2 when the CPU has it unless ELNET_ISA=scalar.
Isa active();
void set_active(Isa isa);
std::string_view name(Isa isa);

namespace scalar {
void interior(const double* f, int count, double inv_h, double* d1, double* d2, double* d3,
              double* d4);
void velocity(const VelocityArgs& args);
}  // namespace scalar

#ifdef ELNET_HAVE_AVX2
namespace avx2 {
void interior(const double* f, int count, double inv_h, double* d1, double* d2, double* d3,
              double* d4);
void velocity(const VelocityArgs& args);
}  // namespace avx2
#endif

}  // namespace elnet::kernels
