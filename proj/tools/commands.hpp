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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace elnet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitSolver = 2;
inline constexpr int kExitIo = 3;

struct CheckOptions {
  std::string network;
  bool json = false;
  bool order1 = false;
  double tol = 1e-8;
};

struct SimulateOptions {
  std::string network;
  std::string config;
  std::string out;
  std::optional<bool> strict;  // overrides the config's preflight mode
  bool svg = false;
  std::optional<int> stride;
  std::optional<double> dt;
  std::optional<double> t_end;
};

struct ConvergenceOptions {
  std::string scenario;
  std::string network;
  std::string mode = "space";
  std::vector<int> levels = {32, 64, 128};
  int reference = 256;
  double dt = 1e-5;
  double t_end = 1e-3;
  // time mode
  int N = 64;
  int halvings = 2;
  int ref_divisor = 16;
  std::string out;
};

struct EquivalenceOptions {
  std::string a;
  std::string b;
  double tol = 1e-3;
  std::string out;
};

int cmd_check(const CheckOptions& opt, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);
int cmd_convergence(const ConvergenceOptions& opt, std::ostream& out, std::ostream& err);
int cmd_equivalence(const EquivalenceOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace elnet::cli
