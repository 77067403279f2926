#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sphqi/quasi_interp.hpp"
#include "sphqi/test_fields.hpp"

namespace sphqi {

/// Flat key=value configuration shared by the experiment drivers.  Every key
/// is also exposed as a CLI flag; flags win over the file.
struct ExperimentConfig {
  std::string field = "field1";
  std::string family = "gaussian";
  std::vector<int> orders = {2, 4, 6, 8};
  std::vector<double> rho_c;  // per order; empty selects family defaults
  double rho_p = 0.5;
  std::string h_mode = "measured";  // measured | proxy

  // Node sources: "designs" (files from designs_dir, error if missing),
  // "fibonacci", or "auto" (designs where available, Fibonacci otherwise).
  std::string points = "auto";
  std::string designs_dir = "data/designs";
  std::vector<int> point_N = {1434, 2852, 5780, 12092, 24978};

  int eval_grid = 52978;

  std::vector<double> noise_levels = {0.001, 0.01, 0.1, 0.5};
  int realizations = 30;
  std::uint64_t seed = 20260301;
  std::vector<int> sbf_N = {1434, 2852, 5780};

  std::vector<int> bench_qi_N = {1000, 2500, 6300, 15800, 25000};
  std::vector<int> bench_sbf_N = {500, 1000, 2000, 4000};
  int bench_eval_grid = 10000;
  double bench_target_error = 1e-3;

  bool emit_timings = false;  // wall-time columns are opt-in; they are the
                              // one output exempt from bitwise reproducibility
  std::string output;
};

ExperimentConfig load_config(const std::filesystem::path& path);
void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value);

/// Paper constants for the rho = c h^p schedule, per family and order.
double default_rho_c(KernelFamily family, int order);

KernelFamily parse_family(const std::string& name);
FieldId parse_field(const std::string& name);

/// The (strength, N) table of the symmetric spherical design sequence used
/// by the convergence protocol.
const std::map<int, int>& design_strengths();  // N -> t

std::filesystem::path design_file(const ExperimentConfig& cfg, int N);

/// Resolve a node source for the given N per cfg.points.
/// Throws MissingPointSet when a required design file is absent.
PointSet resolve_points(const ExperimentConfig& cfg, int N);

// --- error metrics ---------------------------------------------------------

/// Deterministic pairwise (tree) summation.
double pairwise_total(std::span<const double> v);

/// sqrt( (4pi/M) sum ||exact - approx||^2 ), pairwise-summed.
double l2_error(std::span<const Vec3> exact, std::span<const Vec3> approx);

/// sqrt( (1/M) sum ||exact - approx||^2 ).
double rmse(std::span<const Vec3> exact, std::span<const Vec3> approx);

struct FieldErrors {
  double combined, div, curl;
};

FieldErrors l2_errors(FieldId field, const DecompositionResult& approx);

/// Exact field values cached on an evaluation grid.
struct GridField {
  std::vector<Vec3> f, div, curl;
};

GridField eval_field_grid(FieldId id, std::span<const UnitVector3> pts);
FieldErrors grid_errors(const GridField& gf, const DecompositionResult& d);

/// Exact field data attached to the nodes.
VectorFieldSamples field_samples(FieldId id, const PointSet& ps);

/// Ambient Gaussian noise, three i.i.d. components per node.
VectorFieldSamples with_noise(const VectorFieldSamples& clean, double delta,
                              std::uint64_t seed);

double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

// --- drivers ---------------------------------------------------------------

struct ConvergenceRow {
  int order, N;
  double h, rho;
  double err_combined, err_div, err_curl;
  double rate;  // vs previous row of the same order, from the h-ratio
  double wall_seconds;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  std::string points_mode;  // "designs" or "fibonacci"
  std::string csv;
};

ConvergenceReport run_convergence(const ExperimentConfig& cfg);

struct NoiseRow {
  std::string method;  // QI | SBF
  int N;
  double delta;
  double rmse_mean;
};

struct NoiseReport {
  std::vector<NoiseRow> rows;
  std::string csv;
};

NoiseReport run_noise(const ExperimentConfig& cfg);

struct BenchRow {
  std::string method;
  int N;
  double seconds_total;
  double seconds_solve;  // SBF factorization+solve; 0 for QI
  double error;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  double qi_exponent = 0.0;
  double sbf_solve_exponent = 0.0;
  double qi_time_at_target = -1.0;   // seconds, -1 if target not reached
  double sbf_time_at_target = -1.0;
  std::string csv;
};

BenchReport run_timing(const ExperimentConfig& cfg);

struct DecomposeOptions {
  std::string family = "we32";
  int order = 2;
  double rho = 0.0;    // explicit scale; 0 selects the c h^p rule
  double rho_c = 0.0;  // 0 selects the family default
  double rho_p = 0.5;
  int eval_grid = 10000;
  std::string eval_points_file;  // overrides eval_grid when set
};

/// Read node+vector rows (x1,x2,x3,f1,f2,f3 CSV), decompose onto the grid,
/// write the y/div/curl/combined CSV with provenance headers.
/// Returns the number of rows written.
int cmd_decompose(const std::filesystem::path& input,
                  const DecomposeOptions& opts,
                  const std::filesystem::path& output);

/// CSV table ell,coeff of the Fourier-Legendre coefficients.
std::string kernel_info_csv(const ZonalKernel& kernel, int L, int n_quad = 0);

}  // namespace sphqi
