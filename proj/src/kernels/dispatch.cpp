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

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "elnet/common.hpp"
#include "elnet/kernels.hpp"

namespace elnet::kernels {

namespace {

constexpr Table kScalar{&scalar::interior, &scalar::velocity};
#ifdef ELNET_HAVE_AVX2
constexpr Table kAvx2{&avx2::interior, &avx2::velocity};
#endif

Isa detect() {
  const char* env = std::getenv("ELNET_ISA");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return Isa::scalar;
  return supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool supported(Isa isa) {
  if (isa == Isa::scalar) return true;
#ifdef ELNET_HAVE_AVX2
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const Table& table(Isa isa) {
  if (!supported(isa)) throw ConfigError("kernel variant not supported on this CPU");
#ifdef ELNET_HAVE_AVX2
  if (isa == Isa::avx2) return kAvx2;
#endif
  return kScalar;
}

Isa active() { return current().load(std::memory_order_relaxed); }

void set_active(Isa isa) {
  if (!supported(isa)) throw ConfigError("kernel variant not supported on this CPU");
  current().store(isa, std::memory_order_relaxed);
}

std::string_view name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

}  // namespace elnet::kernels
