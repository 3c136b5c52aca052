#pragma once

// Commands behind the `fourvertex` executable. Each returns a process exit
// code: 0 success, 1 I/O or usage error, 2 hypothesis or closure failure,
// 3 synthesis failure.

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "fourvertex/analysis.hpp"
#include "fourvertex/bicircle.hpp"
#include "fourvertex/curvature.hpp"
#include "fourvertex/error.hpp"
#include "fourvertex/integrator.hpp"
#include "fourvertex/io.hpp"
#include "fourvertex/moebius.hpp"
#include "fourvertex/solver.hpp"
#include "fourvertex/svg.hpp"

namespace fourvertex::cli {

enum ExitCode : int { kOk = 0, kIoError = 1, kHypothesis = 2, kSynthesisFailed = 3 };

struct RunConfig {
  std::size_t grid = kDefaultGrid;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  io::Format format = io::Format::Csv;
  bool svg = false;

  void validate() const {
    require(grid >= 512 && (grid & (grid - 1)) == 0, ErrorCode::InvalidArgument,
            "--grid must be a power of two >= 512");
  }
  std::string path(const std::string& name) const { return (std::filesystem::path(out_dir) / name).string(); }
  std::string curve_name(const std::string& stem) const {
    return stem + (format == io::Format::Json ? ".json" : ".csv");
  }
};

struct SynthArgs {
  std::string kappa_file;
  SynthesisOptions options;
};

struct AnalyzeArgs {
  std::string curve_file;
  double band = -1.0;
};

struct DemoArgs {
  std::string which;
  double a = 0.5;
  double b = 2.0;
  double r = 0.2;
  std::size_t n = 8;
};

namespace detail {

inline void prepare(const RunConfig& cfg) {
  cfg.validate();
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + cfg.out_dir + ": " + ec.message());
}

inline void write_curve(const RunConfig& cfg, const std::string& stem, const PlanarCurve& c) {
  const std::string text =
      cfg.format == io::Format::Json ? io::curve_to_json(c).dump(1) + "\n" : io::curve_to_csv(c);
  io::write_file(cfg.path(cfg.curve_name(stem)), text);
}

inline std::vector<Point> positions(const PlanarCurve& c) {
  std::vector<Point> p;
  p.reserve(c.samples.size());
  for (const auto& s : c.samples) p.push_back(s.pos);
  return p;
}

inline double extent(const PlanarCurve& c) {
  double r = 0.0;
  const Point p0 = c.samples.front().pos;
  for (const auto& s : c.samples) r = std::max(r, std::abs(s.pos - p0));
  return std::max(r, 1e-9);
}

inline int fail(std::ostream& err, const Error& e) {
  err << "error: " << e.what() << "\n";
  switch (e.code()) {
    case ErrorCode::Io:
    case ErrorCode::InvalidArgument:
    case ErrorCode::TooFewSamples:
      return kIoError;
    case ErrorCode::SynthesisFailed:
      return kSynthesisFailed;
    default:
      return kHypothesis;
  }
}

}  // namespace detail

/// Realizes the curvature in `kappa_file` as a simple closed curve.
/// Writes curve.{csv,json}, synth.json and optionally curve.svg.
inline int cmd_synth(const RunConfig& cfg, const SynthArgs& args, std::ostream& out, std::ostream& err) {
  try {
    detail::prepare(cfg);
    const CurvatureProfile k = io::read_curvature(args.kappa_file, cfg.grid);
    const SynthesisResult r = synthesize(k, args.options);
    detail::write_curve(cfg, "curve", r.curve);
    io::write_file(cfg.path("synth.json"), io::diagnostics_to_json(r).dump(1) + "\n");
    if (cfg.svg) {
      svg::Document doc;
      const auto pts = detail::positions(r.curve);
      const double w = 0.004 * detail::extent(r.curve);
      doc.polyline(pts, "#1f4e9a", w, true);
      doc.dot(pts.front(), 2.5 * w, "#c0392b");
      io::write_file(cfg.path("curve.svg"), doc.str());
    }
    out << "closed simple curve: |E| = " << io::format_double(r.diagnostics.final_error)
        << ", eps = " << io::format_double(r.eps_used) << ", beta* = (" << io::format_double(r.beta_star.beta.real())
        << ", " << io::format_double(r.beta_star.beta.imag()) << "), rounds = " << r.diagnostics.rounds << "\n";
    return kOk;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConstructionFailed || e.code() == ErrorCode::NoWindingAtRadius ||
        e.code() == ErrorCode::PolishDiverged) {
      err << "error: " << e.what() << "\n";
      return kSynthesisFailed;
    }
    return detail::fail(err, e);
  }
}

/// Vertex and Osserman reports for a closed curve. A self-crossing curve
/// still gets its vertex report, with "simple": false.
inline int cmd_analyze(const RunConfig& cfg, const AnalyzeArgs& args, std::ostream& out, std::ostream& err) {
  try {
    detail::prepare(cfg);
    const PlanarCurve c = io::read_curve(args.curve_file);
    if (!c.closed) throw Error(ErrorCode::NotClosed, "curve in " + args.curve_file + " does not close");
    io::json report;
    const SimplicityResult simple = is_simple(c);
    report["simple"] = simple.simple;
    if (simple.witness) report["crossing_segments"] = {simple.witness->first, simple.witness->second};
    std::vector<Extremum> vertices;
    try {
      const VertexReport v = detect_vertices(c);
      vertices = v.vertices;
      report["vertices"] = io::vertex_report_to_json(v);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ConstantCurvature) throw;
      report["vertices"] = nullptr;
      report["constant_curvature"] = true;
    }
    std::optional<OssermanReport> oss;
    if (simple.simple) {
      oss = osserman_check(c, args.band, kDefaultPlateauTol, cfg.seed);
      report["osserman"] = io::osserman_to_json(*oss);
    } else {
      report["osserman"] = nullptr;
    }
    io::write_file(cfg.path("report.json"), report.dump(1) + "\n");

    if (cfg.svg) {
      svg::Document doc;
      const auto pts = detail::positions(c);
      const double w = 0.004 * detail::extent(c);
      if (oss) doc.circle(oss->circle.center, oss->circle.radius, "#999999", w);
      doc.polyline(pts, "#1f4e9a", w, true);
      for (const auto& v : vertices) {
        doc.dot(c.samples[v.first].pos, 3.0 * w, v.kind == ExtremumKind::Max ? "#c0392b" : "#27ae60");
      }
      io::write_file(cfg.path("report.svg"), doc.str());
    }
    out << "vertices: " << vertices.size() << (simple.simple ? "" : " (curve is not simple)");
    if (oss) out << ", contact components: " << oss->n << ", 2n bound " << (oss->bound_2n_satisfied ? "holds" : "fails");
    out << "\n";
    return kOk;
  } catch (const Error& e) {
    return detail::fail(err, e);
  }
}

namespace detail {

inline int demo_bicircle(const RunConfig& cfg, const DemoArgs& args, std::ostream& out) {
  const StepSpec step(args.a, args.b);
  const double c0 = kTwoPi / step.total();
  std::vector<Arc> arcs = step_arcs(step);
  for (Arc& arc : arcs) arc.curvature *= c0;
  const ErrorVector e = error_vector(integrate_arcs(arcs));
  PlanarCurve c = integrate_arcs(arcs, kTwoPi / static_cast<double>(cfg.grid));
  c.closed = true;
  write_curve(cfg, "bicircle", c);

  svg::Document doc;
  const double w = 0.004 * extent(c);
  // The two circles the arcs are cut from, through the arc midpoints.
  ArcChain chain(arcs);
  for (std::size_t i = 0; i < 2; ++i) {
    const double mid = 0.5 * (step.breakpoints[i] + step.breakpoints[i + 1]);
    const auto [p, th] = chain.at(mid);
    const double kv = step.value_of_arc(i) * c0;
    const Point centre = p + unit(th + kPi / 2) / kv;
    doc.circle(centre, 1.0 / kv, "#bbbbbb", w);
  }
  doc.polyline(positions(c), "#1f4e9a", 2 * w, true);
  io::write_file(cfg.path("bicircle.svg"), doc.str());
  out << "bicircle a = " << io::format_double(args.a) << ", b = " << io::format_double(args.b)
      << ": |E| = " << io::format_double(e.norm()) << "\n";
  return kOk;
}

inline int demo_compass(const RunConfig& cfg, const DemoArgs& args, std::ostream& out) {
  int winding = 0;
  const auto panels = compass_demo(args.a, args.b, args.r, args.n, &winding, cfg.grid);
  svg::Document doc;
  double size = 0.0;
  for (const auto& p : panels) size = std::max(size, extent(p.curve));
  const double ring = 2.2 * size;
  const double w = 0.006 * size;
  for (const auto& p : panels) {
    const double phi = std::arg(p.beta.beta);
    std::vector<Point> pts = positions(p.curve);
    Point lo = pts.front(), hi = pts.front();
    for (const Point& q : pts) {
      lo = Point(std::min(lo.real(), q.real()), std::min(lo.imag(), q.imag()));
      hi = Point(std::max(hi.real(), q.real()), std::max(hi.imag(), q.imag()));
    }
    const Point shift = ring * unit(phi) - 0.5 * (lo + hi);
    for (Point& q : pts) q += shift;
    doc.polyline(pts, "#1f4e9a", w);
    doc.dot(pts.front(), 2 * w, "#27ae60");
    // Error vector, magnified, from the panel centre.
    const Point centre = ring * unit(phi);
    const double mag = 0.5 * size / std::max(p.error.norm(), 1e-300);
    doc.arrow(centre, centre + p.error.e * std::min(mag, 4.0), "#c0392b", w);
  }
  doc.circle(Point{}, 0.15 * size, "#999999", w);
  doc.text(Point(-0.6 * size, -0.05 * size), "winding " + std::to_string(winding), 0.18 * size);
  io::write_file(cfg.path("compass.svg"), doc.str());
  out << "compass r = " << io::format_double(args.r) << ", n = " << args.n << ": winding " << winding << "\n";
  for (const auto& p : panels) {
    out << "  beta = (" << io::format_double(p.beta.beta.real()) << ", " << io::format_double(p.beta.beta.imag())
        << ")  E = (" << io::format_double(p.error.e.real()) << ", " << io::format_double(p.error.e.imag()) << ")\n";
  }
  return kOk;
}

/// Oblique projection of reduced coordinates (x, y, z).
inline Point project(double x, double y, double z) {
  return Point(x + 0.45 * y * std::cos(0.6), z + 0.45 * y * std::sin(0.6));
}

inline int demo_tetrahedron(const RunConfig& cfg, std::ostream& out) {
  svg::Document doc;
  const double w = 0.004;
  const std::array<std::array<double, 3>, 4> corners{{{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 1, 1}}};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      const auto& p = corners[i];
      const auto& q = corners[j];
      doc.line(project(p[0], p[1], p[2]), project(q[0], q[1], q[2]), "#333333", w);
    }
  }
  // Image of the disk through P0 = (1, i, -1, -i): polar grid in beta.
  const Configuration p0 = base_configuration();
  auto image = [&](Complex beta) {
    const auto [rot, rc] = to_reduced(moebius_on_config(MoebiusParameter(beta), p0));
    (void)rot;
    return project(rc.x, rc.y, rc.z);
  };
  const std::size_t spokes = 24, rings = 6, steps = 60;
  for (std::size_t i = 1; i <= rings; ++i) {
    const double r = 0.9 * static_cast<double>(i) / static_cast<double>(rings);
    std::vector<Point> loop;
    for (std::size_t j = 0; j <= steps * 4; ++j) loop.push_back(image(std::polar(r, kTwoPi * j / (steps * 4.0))));
    doc.polyline(loop, "#5d8fd6", 0.5 * w);
  }
  for (std::size_t j = 0; j < spokes; ++j) {
    std::vector<Point> spoke;
    for (std::size_t i = 0; i <= steps; ++i) spoke.push_back(image(std::polar(0.9 * i / double(steps), kTwoPi * j / double(spokes))));
    doc.polyline(spoke, "#5d8fd6", 0.5 * w);
  }
  const Point c0 = project(0.0, 0.5, 0.5);
  const Point c1 = project(0.5, 0.5, 1.0);
  doc.line(c0, c1, "#c0392b", 2 * w);
  doc.dot(c0, 3 * w, "#c0392b");
  doc.dot(c1, 3 * w, "#c0392b");
  doc.dot(image(0.0), 3 * w, "#27ae60");
  doc.text(c0 + Point(0.02, -0.05), "(0, 1/2, 1/2)", 0.05);
  doc.text(c1 + Point(0.02, 0.02), "(1/2, 1/2, 1)", 0.05);
  io::write_file(cfg.path("tetrahedron.svg"), doc.str());
  out << "tetrahedron: core segment (0, 0.5, 0.5) -> (0.5, 0.5, 1); disk image centred at (0.25, 0.5, 0.75)\n";
  return kOk;
}

}  // namespace detail

/// Figures: the bicircle, the compass of open curves around it, and the image
/// of the disk in the reduced configuration tetrahedron.
inline int cmd_demo(const RunConfig& cfg, const DemoArgs& args, std::ostream& out, std::ostream& err) {
  try {
    detail::prepare(cfg);
    if (args.which == "bicircle") return detail::demo_bicircle(cfg, args, out);
    if (args.which == "compass") return detail::demo_compass(cfg, args, out);
    if (args.which == "tetrahedron") return detail::demo_tetrahedron(cfg, out);
    throw Error(ErrorCode::InvalidArgument, "unknown demo '" + args.which + "'");
  } catch (const Error& e) {
    return detail::fail(err, e);
  }
}

}  // namespace fourvertex::cli
