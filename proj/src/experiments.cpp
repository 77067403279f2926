#include "sphqi/experiments.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include "sphqi/errors.hpp"
#include "sphqi/sbf_interp.hpp"

namespace sphqi {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& s) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DomainError("bad numeric value: '" + s + "'");
  }
}

int to_int(const std::string& s) {
  const double v = to_double(s);
  if (v != std::floor(v)) throw DomainError("expected integer: '" + s + "'");
  return static_cast<int>(v);
}

std::vector<int> to_int_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& item : split_list(s)) out.push_back(to_int(item));
  return out;
}

std::vector<double> to_double_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split_list(s)) out.push_back(to_double(item));
  return out;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                          std::uint64_t b, std::uint64_t c) {
  std::uint64_t s = master;
  splitmix64(s);
  s ^= a;
  splitmix64(s);
  s ^= b;
  splitmix64(s);
  s ^= c;
  return splitmix64(s);
}

void append_num(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

int mesh_norm_resolution(int N) {
  return std::min(300000, std::max(10 * N, 20000));
}

}  // namespace

GridField eval_field_grid(FieldId id, std::span<const UnitVector3> pts) {
  GridField g;
  const size_t M = pts.size();
  g.f.resize(M);
  g.div.resize(M);
  g.curl.resize(M);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < static_cast<long>(M); ++i) {
    const auto ui = static_cast<size_t>(i);
    const FieldEval e = eval_field(id, pts[ui]);
    g.f[ui] = e.f;
    g.div[ui] = e.div;
    g.curl[ui] = e.curl;
  }
  return g;
}

FieldErrors grid_errors(const GridField& gf, const DecompositionResult& d) {
  FieldErrors e{};
  e.combined = l2_error(gf.f, d.combined);
  e.div = l2_error(gf.div, d.div);
  e.curl = l2_error(gf.curl, d.curl);
  return e;
}

VectorFieldSamples field_samples(FieldId id, const PointSet& ps) {
  VectorFieldSamples s;
  s.points = ps;
  s.values.resize(static_cast<size_t>(ps.size()));
  for (size_t i = 0; i < s.values.size(); ++i)
    s.values[i] = eval_field(id, ps.nodes[i]).f;
  return s;
}

VectorFieldSamples with_noise(const VectorFieldSamples& clean, double delta,
                              std::uint64_t seed) {
  VectorFieldSamples noisy = clean;
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> gauss(0.0, delta);
  for (auto& v : noisy.values) {
    v.x += gauss(gen);
    v.y += gauss(gen);
    v.z += gauss(gen);
  }
  return noisy;
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  const size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double default_rho_c(KernelFamily family, int order) {
  switch (family) {
    case KernelFamily::Gaussian:
      switch (order) {
        case 2: return 0.4;
        case 4: return 0.75;
        case 6: return 1.0;
        case 8: return 1.25;
        default: return 1.0;
      }
    case KernelFamily::WE31:
    case KernelFamily::WE32:
      switch (order) {
        case 2: return 1.6;
        case 4: return 3.2;
        case 6: return 4.3;
        case 8: return 6.4;
        default: return 1.6;
      }
    case KernelFamily::Poisson:
      return 1.0;
  }
  return 1.0;
}

KernelFamily parse_family(const std::string& name) {
  if (name == "gaussian") return KernelFamily::Gaussian;
  if (name == "poisson") return KernelFamily::Poisson;
  if (name == "we31") return KernelFamily::WE31;
  if (name == "we32") return KernelFamily::WE32;
  throw DomainError("unknown kernel family: '" + name + "'");
}

FieldId parse_field(const std::string& name) {
  if (name == "field1") return FieldId::Field1;
  if (name == "field2") return FieldId::Field2;
  throw DomainError("unknown field: '" + name + "'");
}

const std::map<int, int>& design_strengths() {
  static const std::map<int, int> table = {
      {1434, 53}, {2852, 75}, {5780, 107}, {12092, 155}, {24978, 223}};
  return table;
}

std::filesystem::path design_file(const ExperimentConfig& cfg, int N) {
  const auto it = design_strengths().find(N);
  if (it == design_strengths().end()) return {};
  char name[64];
  std::snprintf(name, sizeof name, "std_t%03d_n%05d.txt", it->second, N);
  return std::filesystem::path(cfg.designs_dir) / name;
}

PointSet resolve_points(const ExperimentConfig& cfg, int N) {
  if (cfg.points == "fibonacci") return fibonacci_points(N);
  if (cfg.points == "random") return random_points(N, cfg.seed);
  const std::filesystem::path file = design_file(cfg, N);
  const bool present = !file.empty() && std::filesystem::exists(file);
  if (cfg.points == "designs") {
    if (!present)
      throw MissingPointSet("no design file for N=" + std::to_string(N) +
                            " under " + cfg.designs_dir);
  } else if (cfg.points != "auto") {
    throw DomainError("unknown points mode: '" + cfg.points + "'");
  }
  if (!present) return fibonacci_points(N);
  PointSet ps = load_points(file, 1e-6);
  if (ps.size() != N)
    throw ParseError(file.string() + ": expected " + std::to_string(N) +
                     " nodes, found " + std::to_string(ps.size()));
  ps.design_strength = design_strengths().at(N);
  return ps;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file: " + path.string());
  ExperimentConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#' || s[0] == '[') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw DomainError("config line is not key=value: '" + s + "'");
    apply_override(cfg, trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
  }
  return cfg;
}

void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value) {
  if (key == "field") cfg.field = value;
  else if (key == "family") cfg.family = value;
  else if (key == "orders") cfg.orders = to_int_list(value);
  else if (key == "rho_c") cfg.rho_c = to_double_list(value);
  else if (key == "rho_p") cfg.rho_p = to_double(value);
  else if (key == "h_mode") cfg.h_mode = value;
  else if (key == "points") cfg.points = value;
  else if (key == "designs_dir") cfg.designs_dir = value;
  else if (key == "point_N") cfg.point_N = to_int_list(value);
  else if (key == "eval_grid") cfg.eval_grid = to_int(value);
  else if (key == "noise_levels") cfg.noise_levels = to_double_list(value);
  else if (key == "realizations") cfg.realizations = to_int(value);
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
  else if (key == "sbf_N") cfg.sbf_N = to_int_list(value);
  else if (key == "bench_qi_N") cfg.bench_qi_N = to_int_list(value);
  else if (key == "bench_sbf_N") cfg.bench_sbf_N = to_int_list(value);
  else if (key == "bench_eval_grid") cfg.bench_eval_grid = to_int(value);
  else if (key == "bench_target_error") cfg.bench_target_error = to_double(value);
  else if (key == "emit_timings")
    cfg.emit_timings = (value == "1" || value == "true" || value == "yes");
  else if (key == "output") cfg.output = value;
  else throw DomainError("unknown config key: '" + key + "'");
  if (cfg.h_mode != "measured" && cfg.h_mode != "proxy")
    throw DomainError("h_mode must be 'measured' or 'proxy'");
  if (cfg.realizations < 1) throw DomainError("realizations must be >= 1");
}

double pairwise_total(std::span<const double> v) {
  if (v.size() <= 32) {
    double s = 0.0;
    for (const double x : v) s += x;
    return s;
  }
  const size_t mid = v.size() / 2;
  return pairwise_total(v.subspan(0, mid)) + pairwise_total(v.subspan(mid));
}

namespace {

double weighted_defect_norm(std::span<const Vec3> exact,
                            std::span<const Vec3> approx, double weight) {
  std::vector<double> sq(exact.size());
  for (size_t i = 0; i < exact.size(); ++i)
    sq[i] = squared_norm(exact[i] - approx[i]);
  return std::sqrt(weight * pairwise_total(sq));
}

}  // namespace

double l2_error(std::span<const Vec3> exact, std::span<const Vec3> approx) {
  return weighted_defect_norm(exact, approx,
                              kFourPi / static_cast<double>(exact.size()));
}

double rmse(std::span<const Vec3> exact, std::span<const Vec3> approx) {
  return weighted_defect_norm(exact, approx,
                              1.0 / static_cast<double>(exact.size()));
}

FieldErrors l2_errors(FieldId field, const DecompositionResult& approx) {
  const GridField gf = eval_field_grid(field, approx.eval_points);
  return grid_errors(gf, approx);
}

// --- convergence ------------------------------------------------------------

ConvergenceReport run_convergence(const ExperimentConfig& cfg) {
  const FieldId field = parse_field(cfg.field);
  const KernelFamily family = parse_family(cfg.family);
  const PointSet grid = fibonacci_points(cfg.eval_grid);
  const GridField gf = eval_field_grid(field, grid.nodes);

  ConvergenceReport report;
  int from_files = 0;

  std::map<int, double> h_cache;
  std::map<int, PointSet> ps_cache;
  for (const int N : cfg.point_N) {
    PointSet ps = resolve_points(cfg, N);
    if (ps.source.kind == PointSet::SourceKind::File) ++from_files;
    const double h = cfg.h_mode == "proxy"
                         ? 1.0 / std::sqrt(static_cast<double>(N))
                         : mesh_norm(ps, mesh_norm_resolution(N));
    h_cache[N] = h;
    ps_cache[N] = std::move(ps);
  }
  report.points_mode =
      from_files == static_cast<int>(cfg.point_N.size()) ? "designs"
      : from_files == 0                                  ? "fibonacci"
                                                         : "mixed";

  for (size_t oi = 0; oi < cfg.orders.size(); ++oi) {
    const int m = cfg.orders[oi];
    const double c = oi < cfg.rho_c.size() ? cfg.rho_c[oi]
                                           : default_rho_c(family, m);
    double prev_h = 0.0, prev_e = 0.0;
    for (const int N : cfg.point_N) {
      const PointSet& ps = ps_cache.at(N);
      const double h = h_cache.at(N);
      const double rho = c * std::pow(h, cfg.rho_p);
      const ZonalKernel kernel = make_kernel(family, m, rho);
      const VectorFieldSamples samples = field_samples(field, ps);
      const double t0 = now_seconds();
      const DecompositionResult dec =
          qi_decompose(kernel, samples, grid.nodes);
      const double wall = now_seconds() - t0;
      const FieldErrors err = grid_errors(gf, dec);
      ConvergenceRow row{};
      row.order = m;
      row.N = N;
      row.h = h;
      row.rho = rho;
      row.err_combined = err.combined;
      row.err_div = err.div;
      row.err_curl = err.curl;
      row.rate = prev_e > 0.0
                     ? std::log(prev_e / err.combined) / std::log(prev_h / h)
                     : std::nan("");
      row.wall_seconds = wall;
      report.rows.push_back(row);
      prev_h = h;
      prev_e = err.combined;
    }
  }

  std::string csv;
  csv += "# sphqi convergence\n";
  csv += "# field=" + cfg.field + " family=" + cfg.family +
         " h_mode=" + cfg.h_mode + " points=" + report.points_mode + "\n";
  csv += "# rho_rule: rho = c * h^";
  append_num(csv, cfg.rho_p);
  csv += " with per-order c = {";
  for (size_t oi = 0; oi < cfg.orders.size(); ++oi) {
    if (oi) csv += ", ";
    csv += "m" + std::to_string(cfg.orders[oi]) + ":";
    append_num(csv, oi < cfg.rho_c.size()
                        ? cfg.rho_c[oi]
                        : default_rho_c(family, cfg.orders[oi]));
  }
  csv += "}\n";
  csv += "# eval_grid=" + std::to_string(cfg.eval_grid) +
         " seed=" + std::to_string(cfg.seed) + "\n";
  csv += "m,N,h,rho,err_combined,err_div,err_curl,rate";
  if (cfg.emit_timings) csv += ",wall_seconds";
  csv += "\n";
  for (const auto& r : report.rows) {
    csv += std::to_string(r.order) + "," + std::to_string(r.N) + ",";
    append_num(csv, r.h);
    csv += ",";
    append_num(csv, r.rho);
    csv += ",";
    append_num(csv, r.err_combined);
    csv += ",";
    append_num(csv, r.err_div);
    csv += ",";
    append_num(csv, r.err_curl);
    csv += ",";
    if (std::isnan(r.rate)) {
      csv += "";
    } else {
      append_num(csv, r.rate);
    }
    if (cfg.emit_timings) {
      csv += ",";
      append_num(csv, r.wall_seconds);
    }
    csv += "\n";
  }
  report.csv = std::move(csv);
  return report;
}

// --- noise ------------------------------------------------------------------

NoiseReport run_noise(const ExperimentConfig& cfg) {
  const FieldId field = parse_field(cfg.field);
  const KernelFamily family = parse_family(cfg.family);
  const int qi_order = cfg.orders.empty() ? 8 : cfg.orders.front();
  const PointSet grid = fibonacci_points(cfg.eval_grid);
  const GridField gf = eval_field_grid(field, grid.nodes);

  NoiseReport report;

  auto mean_rmse = [&](auto&& run_one, int N, double delta) {
    std::vector<double> vals(static_cast<size_t>(cfg.realizations));
    for (int r = 0; r < cfg.realizations; ++r) {
      const std::uint64_t s =
          derive_seed(cfg.seed, static_cast<std::uint64_t>(N),
                      std::bit_cast<std::uint64_t>(delta),
                      static_cast<std::uint64_t>(r));
      vals[static_cast<size_t>(r)] = run_one(delta, s);
    }
    return pairwise_total(vals) / cfg.realizations;
  };

  for (const int N : cfg.point_N) {
    const PointSet ps = resolve_points(cfg, N);
    const double h = cfg.h_mode == "proxy"
                         ? 1.0 / std::sqrt(static_cast<double>(N))
                         : mesh_norm(ps, mesh_norm_resolution(N));
    const double c = !cfg.rho_c.empty() ? cfg.rho_c.front()
                                        : default_rho_c(family, qi_order);
    const ZonalKernel kernel =
        make_kernel(family, qi_order, c * std::pow(h, cfg.rho_p));
    const VectorFieldSamples clean = field_samples(field, ps);
    for (const double delta : cfg.noise_levels) {
      const double mean = mean_rmse(
          [&](double d, std::uint64_t s) {
            const VectorFieldSamples noisy = with_noise(clean, d, s);
            const DecompositionResult dec =
                qi_decompose(kernel, noisy, grid.nodes);
            return rmse(gf.f, dec.combined);
          },
          N, delta);
      report.rows.push_back({"QI", N, delta, mean});
    }
  }

  for (const int N : cfg.sbf_N) {
    const PointSet ps = resolve_points(cfg, N);
    const double h = cfg.h_mode == "proxy"
                         ? 1.0 / std::sqrt(static_cast<double>(N))
                         : mesh_norm(ps, mesh_norm_resolution(N));
    const ZonalKernel kernel = make_kernel(
        family, 2, default_rho_c(family, 2) * std::pow(h, cfg.rho_p));
    const VectorFieldSamples clean = field_samples(field, ps);
    InterpSystem sys = assemble(kernel, clean);
    solve(sys);
    for (const double delta : cfg.noise_levels) {
      const double mean = mean_rmse(
          [&](double d, std::uint64_t s) {
            const VectorFieldSamples noisy = with_noise(clean, d, s);
            resolve(sys, noisy);
            const std::vector<Vec3> vals = interp_eval(sys, grid.nodes);
            return rmse(gf.f, vals);
          },
          N, delta);
      report.rows.push_back({"SBF", N, delta, mean});
    }
  }

  std::string csv;
  csv += "# sphqi noise\n";
  csv += "# field=" + cfg.field + " family=" + cfg.family +
         " qi_order=" + std::to_string(qi_order) + " h_mode=" + cfg.h_mode +
         " eval_grid=" + std::to_string(cfg.eval_grid) + "\n";
  csv += "# realizations=" + std::to_string(cfg.realizations) +
         " seed=" + std::to_string(cfg.seed) + "\n";
  csv += "method,N,delta,rmse\n";
  for (const auto& r : report.rows) {
    csv += r.method + "," + std::to_string(r.N) + ",";
    append_num(csv, r.delta);
    csv += ",";
    append_num(csv, r.rmse_mean);
    csv += "\n";
  }
  report.csv = std::move(csv);
  return report;
}

// --- timing -----------------------------------------------------------------

BenchReport run_timing(const ExperimentConfig& cfg) {
  const FieldId field = parse_field(cfg.field);
  const KernelFamily family = parse_family(cfg.family);
  const int qi_order = cfg.orders.empty() ? 8 : cfg.orders.front();
  const PointSet grid = fibonacci_points(cfg.bench_eval_grid);
  const GridField gf = eval_field_grid(field, grid.nodes);

  BenchReport report;

  for (const int N : cfg.bench_qi_N) {
    const PointSet ps = resolve_points(cfg, N);
    const double h = cfg.h_mode == "proxy"
                         ? 1.0 / std::sqrt(static_cast<double>(N))
                         : mesh_norm(ps, mesh_norm_resolution(N));
    const double c = !cfg.rho_c.empty() ? cfg.rho_c.front()
                                        : default_rho_c(family, qi_order);
    const ZonalKernel kernel =
        make_kernel(family, qi_order, c * std::pow(h, cfg.rho_p));
    const VectorFieldSamples samples = field_samples(field, ps);
    // warm-up on a slice of the grid
    const size_t warm = std::min<size_t>(grid.nodes.size(), 512);
    (void)qi_decompose(kernel, samples,
                       std::span(grid.nodes.data(), warm));
    std::array<double, 5> times{};
    DecompositionResult dec;
    for (auto& tv : times) {
      const double t0 = now_seconds();
      dec = qi_decompose(kernel, samples, grid.nodes);
      tv = now_seconds() - t0;
    }
    std::sort(times.begin(), times.end());
    const double err = l2_error(gf.f, dec.combined);
    report.rows.push_back({"QI", N, times[2], 0.0, err});
  }

  for (const int N : cfg.bench_sbf_N) {
    const PointSet ps = resolve_points(cfg, N);
    const double h = cfg.h_mode == "proxy"
                         ? 1.0 / std::sqrt(static_cast<double>(N))
                         : mesh_norm(ps, mesh_norm_resolution(N));
    const ZonalKernel kernel = make_kernel(
        family, 2, default_rho_c(family, 2) * std::pow(h, cfg.rho_p));
    const VectorFieldSamples samples = field_samples(field, ps);
    const double t0 = now_seconds();
    InterpSystem sys = assemble(kernel, samples);
    const double t1 = now_seconds();
    solve(sys);
    const double t2 = now_seconds();
    const std::vector<Vec3> vals = interp_eval(sys, grid.nodes);
    const double t3 = now_seconds();
    const double err = l2_error(gf.f, vals);
    report.rows.push_back({"SBF", N, t3 - t0, t2 - t1, err});
  }

  // Fitted log-log exponents over the criterion windows.
  {
    std::vector<double> xs, ys;
    for (const auto& r : report.rows)
      if (r.method == "QI" && r.N >= 1000 && r.N <= 25000) {
        xs.push_back(r.N);
        ys.push_back(r.seconds_total);
      }
    if (xs.size() >= 2) report.qi_exponent = fit_loglog_slope(xs, ys);
  }
  {
    std::vector<double> xs, ys;
    for (const auto& r : report.rows)
      if (r.method == "SBF" && r.N >= 500 && r.N <= 4000) {
        xs.push_back(r.N);
        ys.push_back(r.seconds_solve);
      }
    if (xs.size() >= 2) report.sbf_solve_exponent = fit_loglog_slope(xs, ys);
  }
  for (const auto& r : report.rows) {
    if (r.error > cfg.bench_target_error) continue;
    if (r.method == "QI" && report.qi_time_at_target < 0.0)
      report.qi_time_at_target = r.seconds_total;
    if (r.method == "SBF" && report.sbf_time_at_target < 0.0)
      report.sbf_time_at_target = r.seconds_total;
  }

  std::string csv;
  csv += "# sphqi bench (measurement output; times are not reproducible)\n";
  csv += "# field=" + cfg.field + " family=" + cfg.family +
         " qi_order=" + std::to_string(qi_order) +
         " eval_grid=" + std::to_string(cfg.bench_eval_grid) + "\n";
  csv += "# qi_exponent=";
  append_num(csv, report.qi_exponent);
  csv += " sbf_solve_exponent=";
  append_num(csv, report.sbf_solve_exponent);
  csv += "\n# target_error=";
  append_num(csv, cfg.bench_target_error);
  csv += " qi_time_at_target=";
  append_num(csv, report.qi_time_at_target);
  csv += " sbf_time_at_target=";
  append_num(csv, report.sbf_time_at_target);
  csv += "\nmethod,N,seconds_total,seconds_solve,error\n";
  for (const auto& r : report.rows) {
    csv += r.method + "," + std::to_string(r.N) + ",";
    append_num(csv, r.seconds_total);
    csv += ",";
    append_num(csv, r.seconds_solve);
    csv += ",";
    append_num(csv, r.error);
    csv += "\n";
  }
  report.csv = std::move(csv);
  return report;
}

// --- decompose / kernel-info -------------------------------------------------

namespace {

bool parse_six(const std::string& line, std::array<double, 6>& out) {
  std::string s = line;
  for (char& ch : s)
    if (ch == ',') ch = ' ';
  std::istringstream row(s);
  for (double& v : out)
    if (!(row >> v)) return false;
  std::string trailing;
  if (row >> trailing) return false;
  return true;
}

}  // namespace

int cmd_decompose(const std::filesystem::path& input,
                  const DecomposeOptions& opts,
                  const std::filesystem::path& output) {
  std::ifstream in(input);
  if (!in) throw ParseError("cannot open input: " + input.string());
  VectorFieldSamples samples;
  samples.points.source = {PointSet::SourceKind::File, input.string(), 0};
  std::string line;
  size_t lineno = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    std::array<double, 6> v{};
    if (!parse_six(s, v)) {
      if (header_allowed) {  // one-line column header accepted
        header_allowed = false;
        continue;
      }
      throw ParseError(input.string() + ":" + std::to_string(lineno) +
                       ": expected 6 numeric columns");
    }
    header_allowed = false;
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (std::abs(n - 1.0) > 1e-6)
      throw NormError(input.string() + ":" + std::to_string(lineno) +
                      ": node is off the unit sphere");
    samples.points.nodes.push_back(normalize(Vec3{v[0], v[1], v[2]}));
    samples.values.push_back(Vec3{v[3], v[4], v[5]});
  }
  if (samples.points.nodes.empty())
    throw EmptyFile("no data rows in " + input.string());

  const double defect = samples.max_tangency_defect();
  if (defect > 1e-8)
    std::fprintf(stderr,
                 "warning: input exceeds tangency tolerance "
                 "(max normal component %.3g); the kernels discard the "
                 "node-normal part\n",
                 defect);

  const KernelFamily family = parse_family(opts.family);
  const int N = samples.points.size();
  double rho = opts.rho;
  double h = 0.0;
  if (rho <= 0.0) {
    h = mesh_norm(samples.points, mesh_norm_resolution(N));
    const double c =
        opts.rho_c > 0.0 ? opts.rho_c : default_rho_c(family, opts.order);
    rho = c * std::pow(h, opts.rho_p);
  }
  const ZonalKernel kernel = make_kernel(family, opts.order, rho);

  PointSet evals;
  if (!opts.eval_points_file.empty())
    evals = load_points(opts.eval_points_file, 1e-6);
  else
    evals = fibonacci_points(opts.eval_grid);

  const DecompositionResult dec = qi_decompose(kernel, samples, evals.nodes);

  std::string csv;
  csv += "# sphqi decompose\n";
  csv += "# kernel=" + kernel.id() + "\n";
  csv += "# rho=";
  append_num(csv, rho);
  csv += "\n# N=" + std::to_string(N) + "\n";
  if (h > 0.0) {
    csv += "# h=";
    append_num(csv, h);
    csv += "\n";
  }
  csv += "# input=" + input.string() + "\n";
  csv +=
      "y1,y2,y3,div1,div2,div3,curl1,curl2,curl3,comb1,comb2,comb3\n";
  for (size_t i = 0; i < dec.eval_points.size(); ++i) {
    const Vec3& p = dec.eval_points[i].vec();
    const Vec3& d = dec.div[i];
    const Vec3& c = dec.curl[i];
    const Vec3& f = dec.combined[i];
    for (const double x : {p.x, p.y, p.z, d.x, d.y, d.z, c.x, c.y, c.z, f.x,
                           f.y, f.z}) {
      append_num(csv, x);
      csv += ",";
    }
    csv.back() = '\n';
  }
  std::ofstream out(output);
  if (!out) throw ParseError("cannot open output: " + output.string());
  out << csv;
  return static_cast<int>(dec.eval_points.size());
}

std::string kernel_info_csv(const ZonalKernel& kernel, int L, int n_quad) {
  const FourierCoeffs fc = fourier_coeffs(kernel, L, n_quad);
  std::string csv;
  csv += "# sphqi kernel-info\n";
  csv += "# kernel=" + kernel.id() +
         " quad_nodes=" + std::to_string(fc.quad_nodes) + "\n";
  csv += "ell,coeff\n";
  for (int l = 0; l <= L; ++l) {
    csv += std::to_string(l) + ",";
    append_num(csv, fc.values[static_cast<size_t>(l)]);
    csv += "\n";
  }
  return csv;
}

}  // namespace sphqi
