#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bcover/geometry.hpp"

namespace bcover {

// z -> z^2 on the plane.
PlanarPoint winding_planar(PlanarPoint z);

// (rho, phi, z) -> (rho, 2 phi, z). Fixes the z-axis.
SpatialPoint winding_spatial(SpatialPoint p);

// x -> x / |x|^2, an involution of the punctured space.
SpatialPoint inversion(SpatialPoint p);

// x -> a + s^2 (x - a) / |x - a|^2.
SpatialPoint sphere_inversion(SpatialPoint p, SpatialPoint center, double radius);

// The inversion that conjugates the winding map in remark_map. It carries the
// z-axis onto the unit circle of the XZ-plane and the origin onto (-1,0,0).
inline constexpr SpatialPoint kRemarkCenter{1.0, 0.0, 0.0};
inline const double kRemarkRadius = std::sqrt(2.0);

// iota o winding_spatial o iota: poles at 0 and infinity, branch set the unit
// circle of the XZ-plane. The branch point (1,0,0) maps to itself.
SpatialPoint remark_map(SpatialPoint p);

enum class MapKind {
  PaperF,
  PaperFPlanar,
  Winding2,
  Winding3,
  InversionOrigin,
  SphereInversion,
  RemarkMap,
  Composition,
  Identity2,
  Identity3,
};

std::string_view to_string(MapKind kind);

struct MapHandle {
  MapKind kind = MapKind::PaperF;
  MapConfig config;
  SpatialPoint center;  // SphereInversion
  double radius = 1.0;  // SphereInversion
  std::vector<MapHandle> stages;  // Composition, applied right to left
  std::string name;
  std::string domain_note;
  std::optional<double> domain_radius;  // restrict to the open ball of this radius

  int dimension() const;

  static MapHandle paper_f(const MapConfig& cfg = {});
  static MapHandle paper_f_planar(const MapConfig& cfg = {});
  static MapHandle winding2();
  static MapHandle winding3();
  static MapHandle inversion_origin();
  static MapHandle sphere_inversion(SpatialPoint center, double radius);
  static MapHandle remark();
  static MapHandle identity2();
  static MapHandle identity3();
  static MapHandle composition(std::vector<MapHandle> stages, std::string name = "composition");
};

// PaperF o InversionOrigin on the punctured unit ball.
MapHandle punctured_ball_map(const MapConfig& cfg = {});

// Resolves the map names used on the command line.
std::optional<MapHandle> make_map(std::string_view name, const MapConfig& cfg);

SpatialPoint apply(const MapHandle& map, SpatialPoint p);
PlanarPoint apply(const MapHandle& map, PlanarPoint p);

// Right-to-left application; a failing stage is reported by its index.
SpatialPoint compose(std::span<const MapHandle> maps, SpatialPoint p);

bool has_preimage_solver(const MapHandle& map);
std::vector<SpatialPoint> solve_preimages(const MapHandle& map, SpatialPoint q);
std::vector<PlanarPoint> solve_preimages(const MapHandle& map, PlanarPoint q);

}  // namespace bcover
