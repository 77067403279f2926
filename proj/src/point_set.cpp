#include "sphqi/point_set.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "sphqi/errors.hpp"

namespace sphqi {

PointSet load_points(const std::filesystem::path& path, double normalize_tol) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open point file: " + path.string());
  PointSet ps;
  ps.source = {PointSet::SourceKind::File, path.string(), 0};
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view sv(line);
    const size_t first = sv.find_first_not_of(" \t");
    if (first == std::string_view::npos || sv[first] == '#') continue;
    std::istringstream row(line);
    double x, y, z;
    if (!(row >> x >> y >> z)) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) +
                       ": expected three reals");
    }
    std::string trailing;
    if (row >> trailing) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) +
                       ": trailing data '" + trailing + "'");
    }
    const double n = std::sqrt(x * x + y * y + z * z);
    if (std::abs(n - 1.0) > normalize_tol) {
      throw NormError(path.string() + ":" + std::to_string(lineno) +
                      ": row norm " + std::to_string(n) + " is off the sphere");
    }
    ps.nodes.push_back(normalize(Vec3{x, y, z}));
  }
  if (ps.nodes.empty()) throw EmptyFile("no data rows in " + path.string());
  return ps;
}

void save_points(const PointSet& ps, const std::filesystem::path& path) {
  std::FILE* f = std::fopen(path.string().c_str(), "w");
  if (!f) throw ParseError("cannot open for writing: " + path.string());
  for (const auto& p : ps.nodes)
    std::fprintf(f, "%.17g %.17g %.17g\n", p.x(), p.y(), p.z());
  std::fclose(f);
}

PointSet fibonacci_points(int N) {
  PointSet ps;
  ps.source = {PointSet::SourceKind::Fibonacci, "", 0};
  ps.nodes.reserve(static_cast<size_t>(N));
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < N; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / N;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * i;
    ps.nodes.push_back(
        normalize(Vec3{r * std::cos(phi), r * std::sin(phi), z}));
  }
  return ps;
}

PointSet random_points(int N, std::uint64_t seed) {
  PointSet ps;
  ps.source = {PointSet::SourceKind::Random, "", seed};
  ps.nodes.reserve(static_cast<size_t>(N));
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (ps.size() < N) {
    const Vec3 v{gauss(gen), gauss(gen), gauss(gen)};
    if (norm(v) <= 1e-14) continue;
    ps.nodes.push_back(normalize(v));
  }
  return ps;
}

NearestNodeIndex::NearestNodeIndex(const PointSet& ps) : nodes_(ps.nodes) {
  const int N = ps.size();
  brute_ = N < 4000;
  if (brute_) return;
  bands_ = std::max(4, static_cast<int>(std::sqrt(N / 2.0)));
  sectors_ = 2 * bands_;
  cells_.assign(static_cast<size_t>(bands_) * sectors_, {});
  for (int i = 0; i < N; ++i)
    cells_[static_cast<size_t>(cell_of(nodes_[static_cast<size_t>(i)].vec()))]
        .push_back(i);
}

int NearestNodeIndex::cell_of(const Vec3& p) const {
  const double theta = std::acos(std::clamp(p.z, -1.0, 1.0));
  const double phi = std::atan2(p.y, p.x) + kPi;
  int b = std::min(bands_ - 1,
                   static_cast<int>(theta / kPi * bands_));
  int s = std::min(sectors_ - 1,
                   static_cast<int>(phi / (2.0 * kPi) * sectors_));
  return b * sectors_ + s;
}

double NearestNodeIndex::max_dot(const Vec3& p) const {
  double best = -2.0;
  if (brute_) {
    for (const auto& n : nodes_) best = std::max(best, dot(p, n.vec()));
    return best;
  }
  const double theta = std::acos(std::clamp(p.z, -1.0, 1.0));
  const double dtheta = kPi / bands_;
  const int bp = std::min(bands_ - 1, static_cast<int>(theta / dtheta));
  for (int k = 0;; ++k) {
    // Colatitude separation lower-bounds the geodesic distance, so once the
    // ring cannot beat the current best we are done.
    if (k > 0 && best > -1.0 &&
        (k - 1) * dtheta >= std::acos(std::clamp(best, -1.0, 1.0)))
      break;
    const int lo = bp - k, hi = bp + k;
    if (lo < 0 && hi >= bands_) {
      if (k > 0) break;  // all bands visited
    }
    for (const int b : {lo, hi}) {
      if (b < 0 || b >= bands_) continue;
      if (k > 0 && b == lo && b == hi) continue;  // avoid double visit
      const size_t base = static_cast<size_t>(b) * sectors_;
      for (int s = 0; s < sectors_; ++s) {
        for (const int i : cells_[base + static_cast<size_t>(s)])
          best = std::max(best, dot(p, nodes_[static_cast<size_t>(i)].vec()));
      }
      if (lo == hi) break;
    }
    if (lo <= 0 && hi >= bands_ - 1) break;
  }
  return best;
}

double NearestNodeIndex::geodesic_distance(const Vec3& p) const {
  return std::acos(std::clamp(max_dot(p), -1.0, 1.0));
}

double mesh_norm(const PointSet& ps, int resolution) {
  const NearestNodeIndex index(ps);
  const PointSet grid = fibonacci_points(resolution);
  std::vector<double> dist(static_cast<size_t>(resolution));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < resolution; ++i)
    dist[static_cast<size_t>(i)] =
        index.geodesic_distance(grid.nodes[static_cast<size_t>(i)].vec());
  size_t arg = 0;
  for (size_t i = 1; i < dist.size(); ++i)
    if (dist[i] > dist[arg]) arg = i;
  double best = dist[arg];

  // Local refinement around the deepest hole: sample shrinking rings in the
  // tangent plane.  Keeps the estimate an underestimate while removing the
  // grid-spacing bias.
  Vec3 center = grid.nodes[arg].vec();
  double radius = 2.0 * std::sqrt(kFourPi / resolution);
  for (int round = 0; round < 48; ++round) {
    const TangentFrame fr = tangent_frame(UnitVector3::unchecked(center));
    Vec3 improved = center;
    double improved_d = best;
    for (int dir = 0; dir < 8; ++dir) {
      const double a = 2.0 * kPi * dir / 8.0;
      const Vec3 q = normalize(center + radius * (std::cos(a) * fr.e1 +
                                                  std::sin(a) * fr.e2))
                         .vec();
      const double d = index.geodesic_distance(q);
      if (d > improved_d) {
        improved_d = d;
        improved = q;
      }
    }
    if (improved_d > best) {
      best = improved_d;
      center = improved;
    } else {
      radius *= 0.6;
      if (radius < 1e-9) break;
    }
  }
  return best;
}

}  // namespace sphqi
