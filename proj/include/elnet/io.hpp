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

#include <string>
#include <vector>

#include "elnet/repar.hpp"
#include "elnet/scenarios.hpp"
#include "elnet/solver.hpp"
#include "elnet/wellposed.hpp"

namespace elnet {

struct NetworkFile {
  std::string name;
  std::string description;
  NetworkState state;
  FlowParams params;
};

NetworkFile to_network_file(const Scenario& s);

// Throws ParseError with line or field context.
NetworkFile parse_network(const std::string& text);
std::string dump_network(const NetworkFile& file);

enum class PreflightMode { strict, warn };

struct OutputConfig {
  std::string dir = "out";
  bool csv = true;
  bool json = true;
  bool svg = false;
  int svg_width = 600;
  int svg_height = 600;
};

struct RunConfig {
  SolverConfig solver;
  OutputConfig output;
  PreflightMode preflight = PreflightMode::strict;
};

void validate(const RunConfig& cfg);
RunConfig parse_run_config(const std::string& text);
std::string dump_run_config(const RunConfig& cfg);

struct TrajectoryFile {
  FlowParams params;
  std::vector<Snapshot> snapshots;

  std::vector<NetworkState> states() const;
};

std::string dump_trajectory(const std::vector<Snapshot>& snapshots, const FlowParams& params);
TrajectoryFile parse_trajectory(const std::string& text);

// One row per record; the step column is the record index.
std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& records);

// Polylines of a planar network; ConfigError unless n = 2.
std::string svg_frame(const NetworkState& state, int width, int height);

std::string compat_report_json(const PreflightReport& report, int indent = 2);
std::string equivalence_json(const EquivalenceReport& report, double tol);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace elnet
