#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "bcover/geometry.hpp"
#include "bcover/parallel.hpp"
#include "bcover/reference_maps.hpp"

namespace bcover {

using Coords = std::vector<double>;  // 2 or 3 coordinates, matching the map

// Axis-aligned window; only the first dim axes are used.
struct Box {
  int dim = 3;
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};

  static Box planar(double xlo, double xhi, double ylo, double yhi);
  static Box spatial(double xlo, double xhi, double ylo, double yhi, double zlo, double zhi);
  static Box cube(double lo, double hi) { return spatial(lo, hi, lo, hi, lo, hi); }
  void validate() const;
};

// Regular lattice of points spanning a window, endpoints included.
struct Grid {
  Box box;
  std::array<std::int64_t, 3> n{1, 1, 1};

  Grid(const Box& window, double step);
  std::int64_t size() const { return n[0] * n[1] * n[2]; }
  double coordinate(int axis, std::int64_t i) const;
  double step(int axis) const;
  std::array<std::int64_t, 3> unravel(std::int64_t index) const;
  std::int64_t ravel(const std::array<std::int64_t, 3>& idx) const;
  Coords point(std::int64_t index) const;
};

// ---------------------------------------------------------------- index

enum class Projection {
  SamePlane,   // project image offsets onto the probe plane itself
  VectorArea,  // project onto the plane normal to the image loop's vector area
};

struct ProbePlane {
  SpatialPoint e1{1.0, 0.0, 0.0};
  SpatialPoint e2{0.0, 1.0, 0.0};
  Projection projection = Projection::SamePlane;
};

// Meridian plane for maps that preserve planes through the z-axis, the
// horizontal plane for the spatial winding map, and a plane transverse to the
// XZ unit circle (with adaptive projection) for the remark map.
ProbePlane default_probe_plane(const MapHandle& map, SpatialPoint base);

struct IndexReport {
  Coords base;
  double radius = 0.0;
  std::int64_t samples = 0;
  int winding = 0;
  bool refined = false;
};

inline constexpr int kDefaultIndexSamples = 16;
inline constexpr std::int64_t kMaxIndexSamples = std::int64_t{1} << 20;

// Winding number of theta -> map(base + radius e(theta)) - map(base), with the
// sample count doubled until every angle increment is below pi/4.
IndexReport local_index(const MapHandle& map, PlanarPoint base, double radius, int n0 = kDefaultIndexSamples);
IndexReport local_index(const MapHandle& map, SpatialPoint base, double radius, int n0 = kDefaultIndexSamples,
                        std::optional<ProbePlane> plane = std::nullopt);
IndexReport local_index(const MapHandle& map, const Coords& base, double radius, int n0 = kDefaultIndexSamples);

// ------------------------------------------------------- continuity, openness

struct ContinuityEntry {
  double delta = 0.0;
  double modulus = 0.0;
  std::int64_t samples = 0;
  std::int64_t skipped = 0;
};

std::vector<ContinuityEntry> continuity_modulus(const MapHandle& map, const Coords& base,
                                                const std::vector<double>& deltas, int samples = 64);

struct OpennessReport {
  Coords base;
  double delta = 0.0;
  double epsilon = 0.0;
  std::int64_t targets = 0;
  std::int64_t covered = 0;
  double fraction = 0.0;
};

OpennessReport openness_probe(const MapHandle& map, const Coords& base, double delta, double epsilon,
                              std::int64_t m, std::uint64_t seed = 0, const Exec& exec = {});

// ---------------------------------------------------------------- scans

struct ReferenceSet {
  enum class Kind { None, Point, UnitCircleXY, UnitCircleXZ, ZAxis };
  Kind kind = Kind::None;
  Coords point;

  double distance(const Coords& p) const;
};

struct BranchHit {
  Coords point;
  int winding = 0;
};

struct BranchScanReport {
  Box window;
  double step = 0.0;
  double probe_radius = 0.0;
  std::int64_t cells = 0;
  std::vector<BranchHit> hits;
  std::int64_t rejected = 0;  // index >= 2 at the probe radius but not at half of it
  std::int64_t errors = 0;
  double tube_max = 0.0;
  double tube_mean = 0.0;
};

BranchScanReport branch_scan(const MapHandle& map, const Box& window, double step, double probe_radius,
                             const ReferenceSet& reference = {}, const Exec& exec = {});

struct PreimageHistogram {
  Box window;
  std::int64_t targets = 0;
  std::uint64_t seed = 0;
  std::map<int, std::int64_t> counts;  // preimage count -> number of targets
  std::int64_t errors = 0;
};

// Seeded uniform target in the window; shared by the serial reference kernel.
Coords histogram_target(const Box& window, std::uint64_t seed, std::int64_t i);

PreimageHistogram preimage_histogram(const MapHandle& map, const Box& window, std::int64_t m,
                                     std::uint64_t seed = 0, const Exec& exec = {});

// ---------------------------------------------------------------- growth

struct GrowthFit {
  std::vector<double> radii;
  std::vector<double> sup_outer;
  std::vector<double> sup_paper;
  std::vector<std::int64_t> skipped;
  double slope_outer = 0.0;
  double slope_paper = 0.0;
  double intercept = 0.0;        // log C for the |DF| / J ratio
  double intercept_outer = 0.0;  // same fit for |DF|^3 / J
};

// Deterministic low-discrepancy point i of n on the sphere of radius R, with
// a seeded counter-based jitter of the azimuth.
SpatialPoint sphere_sample(double radius, std::int64_t i, std::int64_t n, std::uint64_t seed);

// Least-squares slope and intercept of log(values) against log(radii).
std::pair<double, double> loglog_fit(const std::vector<double>& radii, const std::vector<double>& values);

inline constexpr double kDefaultBoundaryMargin = 1e-6;

GrowthFit growth_fit(const MapHandle& map, const std::vector<double>& radii, std::int64_t samples_per_sphere,
                     double boundary_margin = kDefaultBoundaryMargin, std::uint64_t seed = 0, const Exec& exec = {});
GrowthFit growth_fit(const MapConfig& cfg, const std::vector<double>& radii, std::int64_t samples_per_sphere,
                     double boundary_margin = kDefaultBoundaryMargin, std::uint64_t seed = 0, const Exec& exec = {});

// ---------------------------------------------------------------- poles

struct PoleComponent {
  std::int64_t cells = 0;
  std::optional<int> pole;  // index into the declared poles
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};
};

struct SweepEntry {
  double threshold = 0.0;
  std::int64_t components = 0;
  bool separated = false;
};

struct PoleComponentsReport {
  double threshold = 0.0;
  Box window;
  double step = 0.0;
  std::vector<PoleComponent> components;
  bool separated = false;  // every declared pole sits in its own component
  std::vector<SweepEntry> sweep;
  std::optional<double> min_separating_threshold;
  std::optional<double> r0_surrogate;  // 1 / min_separating_threshold
};

// Norm of the map on every grid cell, +inf at punctures and poles.
std::vector<double> grid_norms(const MapHandle& map, const Grid& grid, const Exec& exec = {});

PoleComponentsReport pole_components(const MapHandle& map, double threshold, const Box& window, double step,
                                     const std::vector<SpatialPoint>& poles,
                                     const std::vector<double>& sweep_thresholds = {}, const Exec& exec = {});

// ---------------------------------------------------------------- oracle

struct OracleCluster {
  Coords representative;  // cell with the smallest residual
  double residual = 0.0;
  std::int64_t cells = 0;
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};
};

struct OracleReport {
  Coords target;
  Box window;
  double step = 0.0;
  double tolerance = 0.0;
  std::vector<OracleCluster> clusters;
};

// Grid cells whose image lies within tol of the target, clustered by grid
// adjacency (including diagonals).
OracleReport brute_preimage_oracle(const MapHandle& map, const Coords& target, const Box& window, double step,
                                   double tol, const Exec& exec = {});

struct OracleComparison {
  std::int64_t targets = 0;
  std::int64_t count_mismatches = 0;
  std::int64_t location_mismatches = 0;
};

// Solver output against the brute-force oracle for seeded targets.
OracleComparison compare_solver_with_oracle(const MapHandle& map, const Box& target_window,
                                            const Box& search_window, std::int64_t targets, double step,
                                            double tol, std::uint64_t seed = 0, const Exec& exec = {});

}  // namespace bcover
