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


#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace elnet::cli;
  CLI::App app{"Elastic flow of curve networks"};
  app.require_subcommand(1);

  CheckOptions check;
  auto* c = app.add_subcommand("check", "Compatibility, (NC) and parabolicity checks");
  c->add_option("--network,network", check.network, "Network file")->required();
  c->add_flag("--json", check.json, "Print the report as JSON");
  c->add_flag("--order1", check.order1, "Also check first time-derivative conditions");
  c->add_option("--tol", check.tol, "Residual tolerance");

  SimulateOptions sim;
  bool strict = false, warn = false;
  auto* s = app.add_subcommand("simulate", "Run the flow");
  s->add_option("--network,network", sim.network, "Network file")->required();
  s->add_option("--config", sim.config, "Run configuration file");
  s->add_option("--out", sim.out, "Output directory");
  auto* fs = s->add_flag("--strict", strict, "Abort when preflight fails");
  s->add_flag("--warn", warn, "Warn when preflight fails")->excludes(fs);
  s->add_flag("--svg", sim.svg, "Write SVG frames (n = 2)");
  s->add_option("--stride", sim.stride, "Snapshot stride")->check(CLI::PositiveNumber);
  s->add_option("--dt", sim.dt, "Time step");
  s->add_option("--t-end", sim.t_end, "Final time");

  ConvergenceOptions conv;
  auto* v = app.add_subcommand("convergence", "Refinement study");
  v->add_option("--scenario", conv.scenario, "Built-in scenario (default clamped_arc)");
  v->add_option("--network", conv.network, "Network file resampled to each level");
  v->add_option("--mode", conv.mode, "space or time")->check(CLI::IsMember({"space", "time"}));
  v->add_option("--levels", conv.levels, "Interval counts")->delimiter(',');
  v->add_option("--reference", conv.reference, "Reference interval count");
  v->add_option("--dt", conv.dt, "Time step (space) or coarsest time step (time)");
  v->add_option("--t-end", conv.t_end, "Final time");
  v->add_option("--N", conv.N, "Interval count for the time study");
  v->add_option("--halvings", conv.halvings, "Number of dt halvings");
  v->add_option("--ref-divisor", conv.ref_divisor, "Reference dt = dt / divisor");
  v->add_option("--out", conv.out, "Write the table as JSON");

  EquivalenceOptions eq;
  auto* e = app.add_subcommand("equivalence", "Geometric equivalence of two trajectories");
  e->add_option("--a", eq.a, "Reference trajectory")->required();
  e->add_option("--b", eq.b, "Second trajectory")->required();
  e->add_option("--tol", eq.tol, "Deviation tolerance");
  e->add_option("--out", eq.out, "Write the report with diffeomorphisms as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitValidation;
  }

  if (*c) return cmd_check(check, std::cout, std::cerr);
  if (*s) {
    if (strict) sim.strict = true;
    if (warn) sim.strict = false;
    return cmd_simulate(sim, std::cout, std::cerr);
  }
  if (*v) return cmd_convergence(conv, std::cout, std::cerr);
  return cmd_equivalence(eq, std::cout, std::cerr);
}
