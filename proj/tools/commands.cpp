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


#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "elnet/convergence.hpp"
#include "elnet/io.hpp"
#include "elnet/repar.hpp"
#include "elnet/solver.hpp"

#include "json.hpp"

namespace elnet::cli {

namespace fs = std::filesystem;

namespace {

const char* end_name(int endpoint) { return endpoint == 0 ? "x=0" : "x=1"; }

void print_report(const PreflightReport& r, std::ostream& out) {
  for (const auto& c : r.compat.records) {
    out << (c.pass ? "PASS " : "FAIL ") << c.condition;
    if (c.curve) out << " curve " << c.curve;
    if (c.other) out << "," << c.other;
    out << " " << end_name(c.endpoint) << " residual " << c.residual << " tol " << c.tolerance
        << "\n";
  }
  out << (r.nc_ok ? "PASS " : "FAIL ") << "(NC) span dimension " << r.span_dimension
      << " nc " << r.nc << "\n";
  out << "parabolicity margin " << r.parabolicity << "\n";
}

// Runs `body`, mapping library errors to exit codes.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const RegularityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NonCollinearityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

PreflightReport run_preflight(const NetworkFile& f, double tol, bool order1) {
  PreflightReport r = preflight(f.state, f.params, tol);
  if (order1) {
    const CompatReport o1 = check_compat_order1(f.state, f.params, tol);
    for (const auto& c : o1.records)
      if (c.condition != "order0_prerequisite") r.compat.records.push_back(c);
    r.compat.pass = r.compat.pass && o1.pass;
    r.pass = r.pass && o1.pass;
    if (r.message.empty() && !o1.pass) {
      const auto* c = o1.first_failure();
      r.message = "compatibility condition " + c->condition + " failed";
      if (c->curve) r.message += " on curve " + std::to_string(c->curve);
    }
  }
  return r;
}

std::string frame_name(int step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%06d.svg", step);
  return buf;
}

}  // namespace

int cmd_check(const CheckOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const NetworkFile f = parse_network(read_text(opt.network));
    const PreflightReport r = run_preflight(f, opt.tol, opt.order1);
    if (opt.json)
      out << compat_report_json(r);
    else
      print_report(r, out);
    if (!r.pass) {
      err << "check failed: " << r.message << "\n";
      return kExitValidation;
    }
    return kExitOk;
  });
}

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const NetworkFile f = parse_network(read_text(opt.network));
    RunConfig cfg = opt.config.empty() ? RunConfig{} : parse_run_config(read_text(opt.config));
    if (!opt.out.empty()) cfg.output.dir = opt.out;
    if (opt.strict) cfg.preflight = *opt.strict ? PreflightMode::strict : PreflightMode::warn;
    if (opt.svg) cfg.output.svg = true;
    if (opt.stride) cfg.solver.snapshot_stride = *opt.stride;
    if (opt.dt) cfg.solver.dt = *opt.dt;
    if (opt.t_end) cfg.solver.t_end = *opt.t_end;
    validate(cfg);
    if (cfg.output.svg && f.params.n != 2) {
      err << "error: SVG frames are available for planar networks (n = 2) only; this network "
             "has n = "
          << f.params.n << "\n";
      return kExitValidation;
    }

    const PreflightReport pre = preflight(f.state, f.params);
    if (!pre.pass) {
      if (cfg.preflight == PreflightMode::strict) {
        print_report(pre, err);
        err << "preflight failed: " << pre.message << "\n";
        return kExitValidation;
      }
      err << "warning: preflight failed: " << pre.message << "\n";
    }

    const fs::path dir(cfg.output.dir);
    fs::create_directories(dir);
    if (cfg.output.svg) fs::create_directories(dir / "frames");

    std::vector<Observer> observers;
    if (cfg.output.svg) {
      const int stride = cfg.solver.snapshot_stride;
      observers.push_back([&, stride](const StepEvent& ev) {
        if (ev.step % stride == 0)
          write_text((dir / "frames" / frame_name(ev.step)).string(),
                     svg_frame(ev.state, cfg.output.svg_width, cfg.output.svg_height));
      });
    }
    EvolveResult res = evolve(f.state, f.params, cfg.solver, observers);

    auto& snaps = res.trajectory.snapshots;
    if (snaps.empty() || snaps.back().step != res.steps) snaps.push_back({res.steps, res.last_good});
    if (cfg.output.json)
      write_text((dir / "trajectory.json").string(), dump_trajectory(snaps, f.params));
    if (cfg.output.csv)
      write_text((dir / "diagnostics.csv").string(), diagnostics_csv(res.trajectory.records));

    const auto& last = res.trajectory.records.back();
    out << "steps " << res.steps << " t " << res.last_good.time << " energy "
        << last.energy_total << " max residual " << max_residual(last.residuals)
        << " max picard " << res.max_picard_iterations << "\n";
    if (res.failure) {
      err << "error: run stopped at t = " << res.failure->time << ": " << res.failure->message
          << "\n"
          << "last good state (t = " << res.last_good.time << ") written to "
          << (dir / "trajectory.json").string() << "\n";
      return kExitSolver;
    }
    return kExitOk;
  });
}

int cmd_convergence(const ConvergenceOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ProblemFactory make;
    if (!opt.network.empty()) {
      const NetworkFile f = parse_network(read_text(opt.network));
      make = [f](int N) {
        Scenario s{f.name, f.description, resample(f.state, N), f.params};
        return s;
      };
    } else {
      const std::string name = opt.scenario.empty() ? "clamped_arc" : opt.scenario;
      make_scenario(name, kMinIntervals);  // rejects unknown names early
      make = [name](int N) { return make_scenario(name, N); };
    }
    SolverConfig cfg;
    cfg.t_end = opt.t_end;
    ConvergenceStudy st;
    if (opt.mode == "space") {
      cfg.dt = opt.dt;
      st = spatial_study(make, opt.levels, opt.reference, cfg);
    } else if (opt.mode == "time") {
      st = temporal_study(make, opt.N, opt.dt, opt.halvings, opt.ref_divisor, cfg);
    } else {
      throw ConfigError("mode must be 'space' or 'time'");
    }
    nlohmann::json rows = nlohmann::json::array();
    out << "mode " << st.mode << "\n";
    out << "N dt error order\n";
    for (const auto& l : st.levels) {
      out << l.N << " " << l.dt << " " << l.error << " ";
      if (l.order)
        out << *l.order;
      else
        out << "-";
      out << "\n";
      nlohmann::json row = {{"N", l.N}, {"dt", l.dt}, {"error", l.error}};
      if (l.order) row["order"] = *l.order;
      rows.push_back(std::move(row));
    }
    out << "fitted order " << st.fitted_order << "\n";
    if (!opt.out.empty()) {
      nlohmann::json j = {{"mode", st.mode}, {"levels", rows}, {"fitted_order", st.fitted_order}};
      write_text(opt.out, j.dump(2) + "\n");
    }
    return kExitOk;
  });
}

int cmd_equivalence(const EquivalenceOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const TrajectoryFile a = parse_trajectory(read_text(opt.a));
    const TrajectoryFile b = parse_trajectory(read_text(opt.b));
    if (a.params.n != b.params.n || a.params.q != b.params.q)
      throw ConfigError("trajectories describe networks of different shape");
    const EquivalenceReport r =
        geometric_equivalence(a.states(), b.states(), a.params.lambda, opt.tol);
    out << (r.pass ? "PASS" : "FAIL") << " deviation " << r.deviation << " tol " << opt.tol
        << " worst curve " << r.worst_curve + 1 << " at t " << r.worst_time << "\n";
    if (!opt.out.empty()) write_text(opt.out, equivalence_json(r, opt.tol));
    return r.pass ? kExitOk : kExitValidation;
  });
}

}  // namespace elnet::cli
