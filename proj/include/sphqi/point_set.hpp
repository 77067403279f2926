#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sphqi/geometry.hpp"

namespace sphqi {

/// Nodes on the sphere with the equal quadrature weight 4pi/N.
struct PointSet {
  enum class SourceKind { File, Fibonacci, Random };

  struct Source {
    SourceKind kind = SourceKind::Fibonacci;
    std::string path;
    std::uint64_t seed = 0;
  };

  std::vector<UnitVector3> nodes;
  Source source;
  std::optional<int> design_strength;

  int size() const { return static_cast<int>(nodes.size()); }
  double weight() const { return kFourPi / static_cast<double>(nodes.size()); }
};

/// Parse whitespace-separated rows of three reals ('#' comments skipped);
/// rows must have norm within normalize_tol of one and are renormalized.
/// Throws ParseError, NormError, EmptyFile.
PointSet load_points(const std::filesystem::path& path,
                     double normalize_tol = 1e-6);

/// Full-precision text output; reloading reproduces coordinates bitwise.
void save_points(const PointSet& ps, const std::filesystem::path& path);

/// Deterministic spherical Fibonacci lattice.
PointSet fibonacci_points(int N);

/// I.i.d. uniform nodes via normalized Gaussian triples.
PointSet random_points(int N, std::uint64_t seed);

/// Mesh norm (fill distance) estimated over a Fibonacci covering grid of the
/// given size, with local refinement around the deepest hole.  Converges to
/// the true value from below as the resolution grows.
double mesh_norm(const PointSet& ps, int resolution);

/// Geodesic distance from p to the nearest node (brute force under 4000
/// nodes, spherical cell grid above).
class NearestNodeIndex {
 public:
  explicit NearestNodeIndex(const PointSet& ps);

  /// Largest dot product against any node (monotone proxy for the distance).
  double max_dot(const Vec3& p) const;
  double geodesic_distance(const Vec3& p) const;

 private:
  const std::vector<UnitVector3>& nodes_;
  bool brute_ = true;
  int bands_ = 0, sectors_ = 0;
  std::vector<std::vector<int>> cells_;
  int cell_of(const Vec3& p) const;
};

}  // namespace sphqi
