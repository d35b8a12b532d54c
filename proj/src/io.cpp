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


#include "elnet/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace elnet {

using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) +
                     ": malformed JSON (" + e.what() + ")");
  }
}

const json& field(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where, "missing field '" + key + "'");
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<int>();
}

bool boolean(const json& v, const std::string& where) {
  if (!v.is_boolean()) fail(where, "expected true or false");
  return v.get<bool>();
}

const json& array(const json& v, const std::string& where, std::size_t size = 0) {
  if (!v.is_array()) fail(where, "expected an array");
  if (size && v.size() != size)
    fail(where, "expected " + std::to_string(size) + " entries, found " + std::to_string(v.size()));
  return v;
}

Vec point(const json& v, int n, const std::string& where) {
  array(v, where, static_cast<std::size_t>(n));
  Vec p(n);
  for (int j = 0; j < n; ++j) p[j] = number(v[j], where + "[" + std::to_string(j) + "]");
  return p;
}

json point_json(const Vec& p) {
  json a = json::array();
  for (int j = 0; j < p.size(); ++j) a.push_back(p[j]);
  return a;
}

json curves_json(const NetworkState& s) {
  json cs = json::array();
  for (const auto& c : s.curves) {
    json pts = json::array();
    for (int k = 0; k < c.count(); ++k) pts.push_back(point_json(c.node(k)));
    cs.push_back(std::move(pts));
  }
  return cs;
}

std::vector<CurveSamples> parse_curves(const json& v, int n, int q, const std::string& where) {
  array(v, where, static_cast<std::size_t>(q));
  std::vector<CurveSamples> out;
  std::size_t count = 0;
  for (int i = 0; i < q; ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    const json& pts = array(v[i], w);
    if (i == 0) count = pts.size();
    if (pts.size() != count)
      fail(w, "curve has " + std::to_string(pts.size()) + " points, curve 0 has " +
                  std::to_string(count));
    if (count < static_cast<std::size_t>(kMinIntervals) + 1)
      fail(w, "need at least " + std::to_string(kMinIntervals + 1) + " points");
    Field f(n, static_cast<Eigen::Index>(count));
    for (std::size_t k = 0; k < count; ++k)
      f.col(static_cast<Eigen::Index>(k)) = point(pts[k], n, w + "[" + std::to_string(k) + "]");
    out.emplace_back(std::move(f));
  }
  return out;
}

FlowParams parse_params(const json& root, const std::string& where) {
  FlowParams p;
  p.n = integer(field(root, "n", where), where + ".n");
  p.q = integer(field(root, "q", where), where + ".q");
  if (p.n < 2 || p.n > kMaxDim) fail(where + ".n", "must lie in [2, " + std::to_string(kMaxDim) + "]");
  if (p.q < 1) fail(where + ".q", "must be at least 1");
  const json& lam = array(field(root, "lambda", where), where + ".lambda", p.q);
  for (int i = 0; i < p.q; ++i)
    p.lambda.push_back(number(lam[i], where + ".lambda[" + std::to_string(i) + "]"));
  const json& ep = array(field(root, "endpoints", where), where + ".endpoints", p.q);
  for (int i = 0; i < p.q; ++i)
    p.endpoints.push_back(point(ep[i], p.n, where + ".endpoints[" + std::to_string(i) + "]"));
  if (root.contains("start_point"))
    p.start_point = point(root["start_point"], p.n, where + ".start_point");
  return p;
}

json params_json(const FlowParams& p) {
  json j;
  j["n"] = p.n;
  j["q"] = p.q;
  j["lambda"] = p.lambda;
  json ep = json::array();
  for (const auto& e : p.endpoints) ep.push_back(point_json(e));
  j["endpoints"] = ep;
  if (p.start_point) j["start_point"] = point_json(*p.start_point);
  return j;
}

}  // namespace

NetworkFile to_network_file(const Scenario& s) {
  return {s.name, s.description, s.state, s.params};
}

NetworkFile parse_network(const std::string& text) {
  const json root = parse_text(text);
  NetworkFile f;
  f.params = parse_params(root, "network");
  if (root.contains("name")) {
    if (!root["name"].is_string()) fail("network.name", "expected a string");
    f.name = root["name"].get<std::string>();
  }
  if (root.contains("description")) {
    if (!root["description"].is_string()) fail("network.description", "expected a string");
    f.description = root["description"].get<std::string>();
  }
  if (root.contains("time")) f.state.time = number(root["time"], "network.time");
  f.state.curves = parse_curves(field(root, "curves", "network"), f.params.n, f.params.q,
                                "network.curves");
  try {
    validate(f.state, f.params);
  } catch (const ConfigError& e) {
    throw ParseError(std::string("network: ") + e.what());
  }
  return f;
}

std::string dump_network(const NetworkFile& f) {
  json j = params_json(f.params);
  if (!f.name.empty()) j["name"] = f.name;
  if (!f.description.empty()) j["description"] = f.description;
  j["time"] = f.state.time;
  j["curves"] = curves_json(f.state);
  return j.dump(1) + "\n";
}

void validate(const RunConfig& c) {
  validate(c.solver);
  if (c.output.svg_width < 16 || c.output.svg_height < 16)
    throw ConfigError("SVG canvas must be at least 16 x 16");
}

RunConfig parse_run_config(const std::string& text) {
  const json root = parse_text(text);
  if (!root.is_object()) fail("config", "expected an object");
  RunConfig c;
  if (root.contains("solver")) {
    const json& s = root["solver"];
    const std::string w = "config.solver";
    if (!s.is_object()) fail(w, "expected an object");
    for (const auto& [key, v] : s.items()) {
      const std::string wk = w + "." + key;
      if (key == "dt") c.solver.dt = number(v, wk);
      else if (key == "t_end") c.solver.t_end = number(v, wk);
      else if (key == "picard_tol") c.solver.picard_tol = number(v, wk);
      else if (key == "picard_max") c.solver.picard_max = integer(v, wk);
      else if (key == "delta_guard_factor") c.solver.delta_guard_factor = number(v, wk);
      else if (key == "relinearize_every_step") c.solver.relinearize_every_step = boolean(v, wk);
      else if (key == "snapshot_stride") c.solver.snapshot_stride = integer(v, wk);
      else if (key == "implicit_lower_order") c.solver.implicit_lower_order = boolean(v, wk);
      else fail(wk, "unknown field");
    }
  }
  if (root.contains("output")) {
    const json& o = root["output"];
    const std::string w = "config.output";
    if (!o.is_object()) fail(w, "expected an object");
    for (const auto& [key, v] : o.items()) {
      const std::string wk = w + "." + key;
      if (key == "dir") {
        if (!v.is_string()) fail(wk, "expected a string");
        c.output.dir = v.get<std::string>();
      } else if (key == "csv") c.output.csv = boolean(v, wk);
      else if (key == "json") c.output.json = boolean(v, wk);
      else if (key == "svg") c.output.svg = boolean(v, wk);
      else if (key == "svg_width") c.output.svg_width = integer(v, wk);
      else if (key == "svg_height") c.output.svg_height = integer(v, wk);
      else if (key == "stride") c.solver.snapshot_stride = integer(v, wk);
      else fail(wk, "unknown field");
    }
  }
  if (root.contains("preflight")) {
    const json& p = root["preflight"];
    if (p == "strict") c.preflight = PreflightMode::strict;
    else if (p == "warn") c.preflight = PreflightMode::warn;
    else fail("config.preflight", "expected \"strict\" or \"warn\"");
  }
  for (const auto& [key, v] : root.items())
    if (key != "solver" && key != "output" && key != "preflight") fail("config." + key, "unknown field");
  try {
    validate(c);
  } catch (const ConfigError& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  return c;
}

std::string dump_run_config(const RunConfig& c) {
  json j;
  j["solver"] = {{"dt", c.solver.dt},
                 {"t_end", c.solver.t_end},
                 {"picard_tol", c.solver.picard_tol},
                 {"picard_max", c.solver.picard_max},
                 {"delta_guard_factor", c.solver.delta_guard_factor},
                 {"relinearize_every_step", c.solver.relinearize_every_step},
                 {"snapshot_stride", c.solver.snapshot_stride},
                 {"implicit_lower_order", c.solver.implicit_lower_order}};
  j["output"] = {{"dir", c.output.dir},         {"csv", c.output.csv},
                 {"json", c.output.json},       {"svg", c.output.svg},
                 {"svg_width", c.output.svg_width}, {"svg_height", c.output.svg_height}};
  j["preflight"] = c.preflight == PreflightMode::strict ? "strict" : "warn";
  return j.dump(2) + "\n";
}

std::vector<NetworkState> TrajectoryFile::states() const {
  std::vector<NetworkState> out;
  for (const auto& s : snapshots) out.push_back(s.state);
  return out;
}

std::string dump_trajectory(const std::vector<Snapshot>& snapshots, const FlowParams& params) {
  json j = params_json(params);
  json snaps = json::array();
  for (const auto& s : snapshots)
    snaps.push_back({{"step", s.step}, {"time", s.state.time}, {"curves", curves_json(s.state)}});
  j["snapshots"] = std::move(snaps);
  return j.dump(1) + "\n";
}

TrajectoryFile parse_trajectory(const std::string& text) {
  const json root = parse_text(text);
  TrajectoryFile t;
  t.params = parse_params(root, "trajectory");
  const json& snaps = array(field(root, "snapshots", "trajectory"), "trajectory.snapshots");
  if (snaps.empty()) fail("trajectory.snapshots", "no snapshots");
  for (std::size_t s = 0; s < snaps.size(); ++s) {
    const std::string w = "trajectory.snapshots[" + std::to_string(s) + "]";
    Snapshot snap;
    snap.step = integer(field(snaps[s], "step", w), w + ".step");
    snap.state.time = number(field(snaps[s], "time", w), w + ".time");
    snap.state.curves = parse_curves(field(snaps[s], "curves", w), t.params.n, t.params.q, w + ".curves");
    if (s > 0 && snap.state.intervals() != t.snapshots[0].state.intervals())
      fail(w, "grid size differs from the first snapshot");
    t.snapshots.push_back(std::move(snap));
  }
  return t;
}

std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& records) {
  std::ostringstream os;
  if (records.empty()) return "";
  const std::size_t q = records[0].energy_per_curve.size();
  os << "step,time,energy_total";
  for (std::size_t i = 0; i < q; ++i) os << ",energy_" << i + 1;
  for (std::size_t i = 0; i < q; ++i) os << ",length_" << i + 1;
  os << ",nc,min_speed,max_residual";
  for (const auto& [name, v] : records[0].residuals) os << "," << name;
  os << "\n";
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& d = records[r];
    os << r << "," << num(d.time) << "," << num(d.energy_total);
    for (double e : d.energy_per_curve) os << "," << num(e);
    for (double l : d.length_per_curve) os << "," << num(l);
    os << "," << num(d.nc_at_junction) << "," << num(d.min_speed) << ","
       << num(max_residual(d.residuals));
    for (const auto& [name, v] : d.residuals) os << "," << num(v);
    os << "\n";
  }
  return os.str();
}

std::string svg_frame(const NetworkState& state, int width, int height) {
  if (state.dim() != 2)
    throw ConfigError("SVG frames are available for planar networks (n = 2) only; got n = " +
                      std::to_string(state.dim()));
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& c : state.curves) {
    x0 = std::min(x0, c.nodes().row(0).minCoeff());
    x1 = std::max(x1, c.nodes().row(0).maxCoeff());
    y0 = std::min(y0, c.nodes().row(1).minCoeff());
    y1 = std::max(y1, c.nodes().row(1).maxCoeff());
  }
  const double pad = 0.05 * std::max({x1 - x0, y1 - y0, 1e-12});
  x0 -= pad;
  x1 += pad;
  y0 -= pad;
  y1 += pad;
  const double scale = std::min(width / (x1 - x0), height / (y1 - y0));
  char buf[64];
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\">\n";
  os << "<!-- t = " << num(state.time) << " -->\n";
  for (const auto& c : state.curves) {
    os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    for (int k = 0; k < c.count(); ++k) {
      std::snprintf(buf, sizeof buf, "%s%.3f,%.3f", k ? " " : "", (c.nodes()(0, k) - x0) * scale,
                    height - (c.nodes()(1, k) - y0) * scale);
      os << buf;
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string compat_report_json(const PreflightReport& r, int indent) {
  json recs = json::array();
  for (const auto& c : r.compat.records) {
    json e = {{"condition", c.condition}, {"endpoint", c.endpoint}, {"residual", c.residual},
              {"tolerance", c.tolerance}, {"pass", c.pass}};
    if (c.curve) e["curve"] = c.curve;
    if (c.other) e["other"] = c.other;
    recs.push_back(std::move(e));
  }
  json j = {{"pass", r.pass},
            {"compat_pass", r.compat.pass},
            {"nc", r.nc},
            {"nc_ok", r.nc_ok},
            {"span_dimension", r.span_dimension},
            {"parabolicity_margin", r.parabolicity},
            {"records", recs}};
  if (!r.message.empty()) j["message"] = r.message;
  return j.dump(indent) + "\n";
}

std::string equivalence_json(const EquivalenceReport& r, double tol) {
  json fams = json::array();
  for (const auto& f : r.diffeos) {
    json maps = json::array();
    for (std::size_t s = 0; s < f.maps.size(); ++s) {
      json vals = json::array();
      for (int k = 0; k < f.maps[s].values.size(); ++k) vals.push_back(f.maps[s].values[k]);
      maps.push_back({{"time", f.times[s]}, {"values", vals}});
    }
    fams.push_back(std::move(maps));
  }
  json j = {{"pass", r.pass},
            {"deviation", r.deviation},
            {"tolerance", tol},
            {"worst_curve", r.worst_curve + 1},
            {"worst_time", r.worst_time},
            {"diffeomorphisms", fams}};
  return j.dump(1) + "\n";
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace elnet
