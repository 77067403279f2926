// Command-line front end: decompose, convergence, noise, bench, kernel-info,
// points.  Exit codes: 0 success, 2 configuration error, 3 data error.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "sphqi/errors.hpp"
#include "sphqi/experiments.hpp"

namespace {

using namespace sphqi;

int kExitConfig = 2;
int kExitData = 3;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open output: " + path);
  out << text;
}

struct ConfigFlags {
  std::string config_file;
  std::vector<std::string> overrides;  // key=value pairs
};

ExperimentConfig build_config(const ConfigFlags& cf,
                              const ExperimentConfig& defaults) {
  ExperimentConfig cfg =
      cf.config_file.empty() ? defaults : load_config(cf.config_file);
  for (const auto& kv : cf.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw DomainError("--set expects key=value, got '" + kv + "'");
    apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  return cfg;
}

void add_config_flags(CLI::App* cmd, ConfigFlags& cf) {
  cmd->add_option("--config", cf.config_file, "key=value config file");
  cmd->add_option("--set", cf.overrides,
                  "override a config key (key=value, repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tangential vector field approximation on the sphere via "
               "divergence/curl-free zonal kernels"};
  app.require_subcommand(1);

  // decompose
  auto* dec = app.add_subcommand(
      "decompose", "Helmholtz-Hodge decomposition of sampled vector data");
  std::string dec_input, dec_output = "decomposition.csv";
  DecomposeOptions dec_opts;
  dec->add_option("input", dec_input, "CSV with x1,x2,x3,f1,f2,f3 rows")
      ->required();
  dec->add_option("-o,--output", dec_output, "output CSV path");
  dec->add_option("--family", dec_opts.family,
                  "kernel family: gaussian|poisson|we31|we32");
  dec->add_option("--order", dec_opts.order, "kernel order m (1,2,4,6,8)");
  dec->add_option("--rho", dec_opts.rho, "explicit kernel scale");
  dec->add_option("--rho-c", dec_opts.rho_c, "c in rho = c h^p");
  dec->add_option("--rho-p", dec_opts.rho_p, "p in rho = c h^p");
  dec->add_option("--eval-grid", dec_opts.eval_grid,
                  "Fibonacci evaluation grid size");
  dec->add_option("--eval-points", dec_opts.eval_points_file,
                  "evaluation points file (overrides --eval-grid)");

  // convergence
  auto* conv = app.add_subcommand("convergence",
                                  "convergence table over the node sequence");
  ConfigFlags conv_cf;
  std::string conv_out = "convergence.csv";
  add_config_flags(conv, conv_cf);
  conv->add_option("-o,--output", conv_out, "output CSV path");

  // noise
  auto* noise = app.add_subcommand("noise", "noise-robustness experiment");
  ConfigFlags noise_cf;
  std::string noise_out = "noise.csv";
  add_config_flags(noise, noise_cf);
  noise->add_option("-o,--output", noise_out, "output CSV path");

  // bench
  auto* bench = app.add_subcommand("bench", "wall-time scaling experiment");
  ConfigFlags bench_cf;
  std::string bench_out = "bench.csv";
  add_config_flags(bench, bench_cf);
  bench->add_option("-o,--output", bench_out, "output CSV path");

  // kernel-info
  auto* kinfo =
      app.add_subcommand("kernel-info", "Fourier-Legendre coefficient table");
  std::string ki_family = "gaussian", ki_out;
  int ki_order = 2, ki_L = 100, ki_quad = 0;
  double ki_rho = 0.5;
  kinfo->add_option("--family", ki_family, "kernel family");
  kinfo->add_option("--order", ki_order, "kernel order m");
  kinfo->add_option("--rho", ki_rho, "kernel scale");
  kinfo->add_option("-L,--degree", ki_L, "max degree");
  kinfo->add_option("--quad-nodes", ki_quad, "quadrature node count");
  kinfo->add_option("-o,--output", ki_out, "output CSV path (default stdout)");

  // points
  auto* pts = app.add_subcommand("points", "generate or inspect node sets");
  std::string pts_kind = "fibonacci", pts_out, pts_file;
  int pts_N = 1000;
  std::uint64_t pts_seed = 1;
  bool pts_fetch_note = false;
  int pts_mesh_res = 0;
  pts->add_option("--kind", pts_kind, "fibonacci|random");
  pts->add_option("-N,--count", pts_N, "node count");
  pts->add_option("--seed", pts_seed, "random seed");
  pts->add_option("-o,--output", pts_out, "write nodes to file");
  pts->add_option("--inspect", pts_file, "load a node file and print stats");
  pts->add_option("--mesh-resolution", pts_mesh_res,
                  "covering grid size for the mesh norm (default 10N)");
  pts->add_flag("--fetch-note", pts_fetch_note,
                "print the expected layout of external design files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (dec->parsed()) {
      const int n = cmd_decompose(dec_input, dec_opts, dec_output);
      std::fprintf(stderr, "wrote %d rows to %s\n", n, dec_output.c_str());
    } else if (conv->parsed()) {
      const auto cfg = build_config(conv_cf, ExperimentConfig{});
      const auto report = run_convergence(cfg);
      write_text(conv_out, report.csv);
    } else if (noise->parsed()) {
      ExperimentConfig defaults;
      defaults.field = "field2";
      defaults.family = "we32";
      defaults.orders = {8};
      const auto cfg = build_config(noise_cf, defaults);
      const auto report = run_noise(cfg);
      write_text(noise_out, report.csv);
    } else if (bench->parsed()) {
      ExperimentConfig defaults;
      defaults.field = "field2";
      defaults.family = "we32";
      defaults.orders = {8};
      defaults.h_mode = "proxy";
      defaults.points = "fibonacci";
      const auto cfg = build_config(bench_cf, defaults);
      const auto report = run_timing(cfg);
      write_text(bench_out, report.csv);
    } else if (kinfo->parsed()) {
      const ZonalKernel k =
          make_kernel(parse_family(ki_family), ki_order, ki_rho);
      write_text(ki_out, kernel_info_csv(k, ki_L, ki_quad));
    } else if (pts->parsed()) {
      if (pts_fetch_note) {
        std::printf(
            "External symmetric spherical design files are read from\n"
            "data/designs/std_t{TTT}_n{NNNNN}.txt (three whitespace-separated\n"
            "coordinates per line, '#' comments allowed).  The convergence\n"
            "protocol uses (t, N) pairs (53,1434) (75,2852) (107,5780)\n"
            "(155,12092) (223,24978).  Files obtained elsewhere (for example\n"
            "Womersley's symmetric t-design distribution) can be renamed into\n"
            "that layout; no downloading happens here.\n");
        return 0;
      }
      PointSet ps;
      if (!pts_file.empty()) {
        ps = load_points(pts_file, 1e-6);
      } else if (pts_kind == "fibonacci") {
        ps = fibonacci_points(pts_N);
      } else if (pts_kind == "random") {
        ps = random_points(pts_N, pts_seed);
      } else {
        throw DomainError("unknown --kind: '" + pts_kind + "'");
      }
      if (!pts_out.empty()) save_points(ps, pts_out);
      const int res = pts_mesh_res > 0 ? pts_mesh_res
                                       : std::max(10 * ps.size(), 20000);
      std::printf("N=%d mesh_norm=%.6g\n", ps.size(), mesh_norm(ps, res));
    }
  } catch (const DomainError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  }
  return 0;
}
