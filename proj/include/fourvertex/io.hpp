#pragma once

// Text formats. Curvature input: CSV `t,kappa` or JSON
// {"n", "samples", "interp"}. Curves: CSV `s,x,y,theta` or JSON mirroring
// PlanarCurve. Reports and diagnostics: JSON.

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fourvertex/analysis.hpp"
#include "fourvertex/bicircle.hpp"
#include "fourvertex/curvature.hpp"
#include "fourvertex/error.hpp"
#include "fourvertex/integrator.hpp"
#include "fourvertex/moebius.hpp"
#include "fourvertex/solver.hpp"

namespace fourvertex::io {

using nlohmann::json;

enum class Format { Csv, Json };

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

inline bool looks_like_json(const std::string& text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && (text[pos] == '{' || text[pos] == '[');
}

namespace detail {

inline std::vector<std::vector<double>> parse_csv(const std::string& text, const std::vector<std::string>& header) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<double>> rows;
  bool seen_header = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t");
      const auto e = cell.find_last_not_of(" \t");
      cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    if (!seen_header) {
      if (cells != header) {
        std::string want;
        for (const auto& h : header) want += (want.empty() ? "" : ",") + h;
        throw Error(ErrorCode::InvalidArgument, "expected CSV header '" + want + "'");
      }
      seen_header = true;
      continue;
    }
    if (cells.size() != header.size()) {
      throw Error(ErrorCode::InvalidArgument, "line " + std::to_string(lineno) + ": wrong number of fields");
    }
    std::vector<double> row;
    for (const auto& c : cells) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(c, &used));
        if (used != c.size()) throw std::invalid_argument(c);
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidArgument, "line " + std::to_string(lineno) + ": bad number '" + c + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (!seen_header) throw Error(ErrorCode::InvalidArgument, "empty CSV input");
  return rows;
}

}  // namespace detail

/// Curvature samples at strictly increasing t in [0, 2pi), resampled
/// periodically-linearly onto an n-point grid.
inline CurvatureProfile parse_curvature_csv(const std::string& text, std::size_t n) {
  const auto rows = detail::parse_csv(text, {"t", "kappa"});
  require(rows.size() >= 2, ErrorCode::InvalidArgument, "need at least two curvature rows");
  std::vector<double> t, k;
  for (const auto& r : rows) {
    require(r[0] >= 0.0 && r[0] < kTwoPi, ErrorCode::InvalidArgument, "t must lie in [0, 2pi)");
    require(t.empty() || r[0] > t.back(), ErrorCode::InvalidArgument, "t must be strictly increasing");
    t.push_back(r[0]);
    k.push_back(r[1]);
  }
  const std::size_t m = t.size();
  return CurvatureProfile::from_function(
      [&](double x) {
        // Periodic linear interpolation between the given nodes.
        auto it = std::upper_bound(t.begin(), t.end(), x);
        const std::size_t hi = static_cast<std::size_t>(it - t.begin()) % m;
        const std::size_t lo = (hi + m - 1) % m;
        double t0 = t[lo], t1 = t[hi];
        double xx = x;
        if (t1 <= t0) {
          t1 += kTwoPi;
          if (xx < t0) xx += kTwoPi;
        }
        const double w = (xx - t0) / (t1 - t0);
        return (1.0 - w) * k[lo] + w * k[hi];
      },
      n, Interp::Linear);
}

inline CurvatureProfile parse_curvature_json(const std::string& text, std::size_t n) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad JSON: ") + e.what());
  }
  require(j.is_object() && j.contains("samples") && j["samples"].is_array(), ErrorCode::InvalidArgument,
          "curvature JSON needs a \"samples\" array");
  std::vector<double> samples;
  for (const auto& v : j["samples"]) {
    require(v.is_number(), ErrorCode::InvalidArgument, "samples must be numbers");
    samples.push_back(v.get<double>());
  }
  if (j.contains("n")) {
    require(j["n"].is_number_integer() && j["n"].get<std::size_t>() == samples.size(), ErrorCode::InvalidArgument,
            "\"n\" must equal the number of samples");
  }
  Interp interp = Interp::Linear;
  if (j.contains("interp")) {
    const std::string s = j["interp"].get<std::string>();
    require(s == "linear" || s == "step", ErrorCode::InvalidArgument, "interp must be \"linear\" or \"step\"");
    interp = s == "step" ? Interp::Step : Interp::Linear;
  }
  const CurvatureProfile raw(std::move(samples), interp);
  return raw.size() == n ? raw : raw.resampled(n);
}

inline CurvatureProfile read_curvature(const std::string& path, std::size_t n) {
  const std::string text = read_file(path);
  return looks_like_json(text) ? parse_curvature_json(text, n) : parse_curvature_csv(text, n);
}

inline std::string curve_to_csv(const PlanarCurve& c) {
  std::string out = "s,x,y,theta\n";
  for (const auto& smp : c.samples) {
    out += format_double(smp.s) + "," + format_double(smp.pos.real()) + "," + format_double(smp.pos.imag()) + "," +
           format_double(smp.theta) + "\n";
  }
  return out;
}

inline json curve_to_json(const PlanarCurve& c) {
  json samples = json::array();
  for (const auto& smp : c.samples) {
    samples.push_back({{"s", smp.s}, {"x", smp.pos.real()}, {"y", smp.pos.imag()}, {"theta", smp.theta}});
  }
  json j = {{"closed", c.closed}, {"scale", c.scale.c}, {"samples", samples}};
  if (!c.param.empty()) j["param"] = c.param;
  return j;
}

/// Closedness is decided from the data: first and last sample must coincide.
inline PlanarCurve parse_curve_csv(const std::string& text) {
  const auto rows = detail::parse_csv(text, {"s", "x", "y", "theta"});
  PlanarCurve c;
  for (const auto& r : rows) c.samples.push_back({r[0], Point(r[1], r[2]), r[3]});
  require(c.samples.size() >= 2, ErrorCode::InvalidArgument, "curve needs at least two samples");
  c.closed = fourvertex::detail::is_closed_at(c);
  return c;
}

inline PlanarCurve parse_curve_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad JSON: ") + e.what());
  }
  require(j.is_object() && j.contains("samples"), ErrorCode::InvalidArgument, "curve JSON needs \"samples\"");
  PlanarCurve c;
  try {
    for (const auto& s : j["samples"]) {
      c.samples.push_back({s.at("s").get<double>(), Point(s.at("x").get<double>(), s.at("y").get<double>()),
                           s.at("theta").get<double>()});
    }
    if (j.contains("param")) c.param = j["param"].get<std::vector<double>>();
    if (j.contains("scale")) c.scale = ScaleFactor(j["scale"].get<double>());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad curve JSON: ") + e.what());
  }
  require(c.samples.size() >= 2, ErrorCode::InvalidArgument, "curve needs at least two samples");
  require(c.param.empty() || c.param.size() == c.samples.size(), ErrorCode::InvalidArgument,
          "param must have one entry per sample");
  c.closed = fourvertex::detail::is_closed_at(c);
  return c;
}

inline PlanarCurve read_curve(const std::string& path) {
  const std::string text = read_file(path);
  return looks_like_json(text) ? parse_curve_json(text) : parse_curve_csv(text);
}

inline json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline json config_to_json(const Configuration& c) {
  json j = json::array();
  for (const auto& z : c.points()) j.push_back(complex_to_json(z));
  return j;
}

inline Configuration config_from_json(const json& j) {
  require(j.is_array() && j.size() == 4, ErrorCode::InvalidArgument, "configuration needs four [re, im] pairs");
  std::array<Complex, 4> p{};
  for (std::size_t i = 0; i < 4; ++i) p[i] = Complex(j[i].at(0).get<double>(), j[i].at(1).get<double>());
  return Configuration(p);
}

inline json reduced_to_json(const ReducedConfigCoords& r) { return json::array({r.x, r.y, r.z}); }

inline ReducedConfigCoords reduced_from_json(const json& j) {
  require(j.is_array() && j.size() == 3, ErrorCode::InvalidArgument, "reduced coordinates need [x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

inline json interval_to_json(double t0, double t1, bool wraps) {
  return {{"interval", json::array({t0, t1})}, {"wraps", wraps}};
}

inline json vertices_to_json(const std::vector<Extremum>& vs) {
  json arr = json::array();
  for (const auto& v : vs) {
    json e = interval_to_json(v.t_begin, v.t_end, v.last < v.first);
    e["kind"] = v.kind == ExtremumKind::Max ? "max" : "min";
    e["curvature"] = v.value;
    arr.push_back(e);
  }
  return arr;
}

inline json vertex_report_to_json(const VertexReport& r) {
  return {{"count", r.count}, {"vertices", vertices_to_json(r.vertices)}};
}

inline json witnesses_to_json(const std::vector<CurvatureWitness>& ws) {
  json arr = json::array();
  for (const auto& w : ws) arr.push_back({{"t", w.t}, {"curvature", w.curvature}, {"holds", w.holds}});
  return arr;
}

inline json osserman_to_json(const OssermanReport& r) {
  json comps = json::array();
  for (const auto& c : r.contacts.components) {
    json e = interval_to_json(c.t_begin, c.t_end, c.wraps);
    e["kind"] = c.kind == ContactKind::Arc ? "arc" : "point";
    e["samples"] = c.count;
    e["mean_curvature"] = c.mean_curvature;
    comps.push_back(e);
  }
  return {{"circle", {{"center", complex_to_json(r.circle.center)}, {"radius", r.circle.radius}}},
          {"K", 1.0 / r.circle.radius},
          {"components", comps},
          {"n", r.n},
          {"contact_max_gap", r.contacts.max_gap},
          {"not_in_open_semicircle", r.contacts.not_in_open_semicircle},
          {"vertex_count", r.vertex_count},
          {"excluded_circle", r.excluded_circle},
          {"bound_2n_satisfied", r.bound_2n_satisfied},
          {"per_component_high_points", witnesses_to_json(r.per_component_high_points)},
          {"per_gap_low_points", witnesses_to_json(r.per_gap_low_points)},
          {"bonus_vertices", r.bonus_vertices},
          {"all_arcs", r.all_arcs},
          {"bonus_bound_satisfied", r.bonus_bound_satisfied},
          {"single_component", r.single_component},
          {"four_vertices", r.four_vertices}};
}

inline json diagnostics_to_json(const SynthesisResult& r) {
  const auto& d = r.diagnostics;
  return {{"beta_star", complex_to_json(r.beta_star.beta)},
          {"scale", r.scale.c},
          {"eps_used", r.eps_used},
          {"final_error", d.final_error},
          {"c1_position", d.c1_position},
          {"c1_theta", d.c1_theta},
          {"curvature_residual", d.curvature_residual},
          {"curvature_tolerance", 0.05 * (d.b - d.a)},
          {"sliver_measure", d.sliver_measure},
          {"a", d.a},
          {"b", d.b},
          {"sign_flipped", d.sign_flipped},
          {"winding", d.winding},
          {"rounds", d.rounds},
          {"quadtree_levels", d.quadtree_levels},
          {"evaluations", d.evaluations},
          {"polish_iterations", d.polish_iterations},
          {"r0_used", d.r0_used}};
}

}  // namespace fourvertex::io
