// fourvertex: synthesize curves from curvature, analyze closed curves, and
// draw the bicircle, compass and tetrahedron figures.

#include <CLI11.hpp>

#include <iostream>

#include "fourvertex/cli.hpp"

int main(int argc, char** argv) {
  using namespace fourvertex;
  CLI::App app{"Curves with preassigned curvature and the Four Vertex Theorem"};
  app.require_subcommand(1);
  app.fallthrough();

  cli::RunConfig cfg;
  std::string format = "csv";
  app.add_option("--grid", cfg.grid, "samples per curve (power of two >= 512)")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for randomized steps")->capture_default_str();
  app.add_option("--out-dir", cfg.out_dir, "directory for output files")->capture_default_str();
  app.add_option("--format", format, "curve file format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_flag("--svg", cfg.svg, "also write SVG figures");

  cli::SynthArgs synth;
  auto* s = app.add_subcommand("synth", "realize a curvature function as a simple closed curve");
  s->add_option("kappa_file", synth.kappa_file, "CSV (t,kappa) or JSON curvature samples")->required();
  s->add_option("--eps0", synth.options.eps0, "initial measure tolerance")->capture_default_str();
  s->add_option("--r0", synth.options.r0, "initial search radius in the disk")->capture_default_str();
  s->add_option("--max-rounds", synth.options.max_rounds, "rounds before giving up")->capture_default_str();

  cli::AnalyzeArgs analyze;
  auto* a = app.add_subcommand("analyze", "vertices, circumscribed circle and Osserman bound of a closed curve");
  a->add_option("curve_file", analyze.curve_file, "CSV (s,x,y,theta) or JSON curve")->required();
  a->add_option("--band", analyze.band, "contact band (default 1e-5 R)");

  cli::DemoArgs demo;
  auto* d = app.add_subcommand("demo", "draw a figure");
  d->add_option("which", demo.which, "bicircle, compass or tetrahedron")
      ->required()
      ->check(CLI::IsMember({"bicircle", "compass", "tetrahedron"}));
  d->add_option("--a", demo.a, "low curvature level")->capture_default_str();
  d->add_option("--b", demo.b, "high curvature level")->capture_default_str();
  d->add_option("--r", demo.r, "compass radius |beta|")->capture_default_str();
  d->add_option("--n", demo.n, "compass panels")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kIoError;
  }
  cfg.format = format == "json" ? io::Format::Json : io::Format::Csv;

  if (*s) return cli::cmd_synth(cfg, synth, std::cout, std::cerr);
  if (*a) return cli::cmd_analyze(cfg, analyze, std::cout, std::cerr);
  return cli::cmd_demo(cfg, demo, std::cout, std::cerr);
}
