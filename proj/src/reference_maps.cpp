#include "bcover/reference_maps.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "bcover/error.hpp"
#include "bcover/planar_map.hpp"
#include "bcover/spatial_map.hpp"

namespace bcover {

PlanarPoint winding_planar(PlanarPoint z) { return {z.x * z.x - z.y * z.y, 2.0 * z.x * z.y}; }

SpatialPoint winding_spatial(SpatialPoint p) {
  const double rho = std::hypot(p.x, p.y);
  if (rho == 0.0) return p;
  // cos 2phi and sin 2phi from the horizontal components directly.
  const double cs = p.x / rho;
  const double sn = p.y / rho;
  return {rho * (cs * cs - sn * sn), rho * (2.0 * cs * sn), p.z};
}

SpatialPoint inversion(SpatialPoint p) {
  const double n2 = norm_squared(p);
  if (!(n2 > 1e-300)) {
    throw MapError(ErrorCode::PunctureInput, "inversion is undefined at the origin");
  }
  return (1.0 / n2) * p;
}

SpatialPoint sphere_inversion(SpatialPoint p, SpatialPoint center, double radius) {
  if (!(radius > 0.0)) {
    throw MapError(ErrorCode::InvalidArgument, "inversion radius must be positive");
  }
  const SpatialPoint d = p - center;
  const double n2 = norm_squared(d);
  if (!(n2 > 1e-300)) {
    throw MapError(ErrorCode::PunctureInput, "sphere inversion is undefined at its center");
  }
  return center + (radius * radius / n2) * d;
}

SpatialPoint remark_map(SpatialPoint p) {
  if (p == SpatialPoint{}) {
    throw MapError(ErrorCode::PunctureInput, "remark map has a pole at the origin");
  }
  if (p == kRemarkCenter) return p;
  const SpatialPoint inner = winding_spatial(sphere_inversion(p, kRemarkCenter, kRemarkRadius));
  if (!(norm_squared(inner - kRemarkCenter) > 1e-300)) {
    throw MapError(ErrorCode::PoleOverflow, "remark map evaluated at a pole");
  }
  return sphere_inversion(inner, kRemarkCenter, kRemarkRadius);
}

std::string_view to_string(MapKind kind) {
  switch (kind) {
    case MapKind::PaperF: return "paperF";
    case MapKind::PaperFPlanar: return "paperF-planar";
    case MapKind::Winding2: return "winding2";
    case MapKind::Winding3: return "winding3";
    case MapKind::InversionOrigin: return "inversion";
    case MapKind::SphereInversion: return "sphere-inversion";
    case MapKind::RemarkMap: return "remark";
    case MapKind::Composition: return "composition";
    case MapKind::Identity2: return "identity2";
    case MapKind::Identity3: return "identity3";
  }
  return "unknown";
}

int MapHandle::dimension() const {
  switch (kind) {
    case MapKind::PaperFPlanar:
    case MapKind::Winding2:
    case MapKind::Identity2:
      return 2;
    default:
      return 3;
  }
}

MapHandle MapHandle::paper_f(const MapConfig& cfg) {
  cfg.validate();
  MapHandle m;
  m.kind = MapKind::PaperF;
  m.config = cfg;
  m.name = "paperF";
  return m;
}

MapHandle MapHandle::paper_f_planar(const MapConfig& cfg) {
  cfg.validate();
  MapHandle m;
  m.kind = MapKind::PaperFPlanar;
  m.config = cfg;
  m.name = "paperF-planar";
  m.domain_note = "open half-plane x > 0";
  return m;
}

namespace {
MapHandle simple(MapKind kind, std::string note = {}) {
  MapHandle m;
  m.kind = kind;
  m.name = std::string(to_string(kind));
  m.domain_note = std::move(note);
  return m;
}
}  // namespace

MapHandle MapHandle::winding2() { return simple(MapKind::Winding2); }
MapHandle MapHandle::winding3() { return simple(MapKind::Winding3); }
MapHandle MapHandle::inversion_origin() { return simple(MapKind::InversionOrigin, "puncture at 0"); }
MapHandle MapHandle::remark() { return simple(MapKind::RemarkMap, "pole at 0"); }
MapHandle MapHandle::identity2() { return simple(MapKind::Identity2); }
MapHandle MapHandle::identity3() { return simple(MapKind::Identity3); }

MapHandle MapHandle::sphere_inversion(SpatialPoint center, double radius) {
  if (!(radius > 0.0)) {
    throw MapError(ErrorCode::InvalidArgument, "inversion radius must be positive");
  }
  MapHandle m = simple(MapKind::SphereInversion, "puncture at the center");
  m.center = center;
  m.radius = radius;
  return m;
}

MapHandle MapHandle::composition(std::vector<MapHandle> stages, std::string name) {
  if (stages.empty()) {
    throw MapError(ErrorCode::InvalidArgument, "composition needs at least one map");
  }
  for (const MapHandle& s : stages) {
    if (s.dimension() != 3) {
      throw MapError(ErrorCode::InvalidArgument, "compositions are formed from spatial maps");
    }
  }
  MapHandle m = simple(MapKind::Composition);
  m.stages = std::move(stages);
  m.name = std::move(name);
  return m;
}

MapHandle punctured_ball_map(const MapConfig& cfg) {
  MapHandle m = MapHandle::composition({MapHandle::paper_f(cfg), MapHandle::inversion_origin()}, "punctured-ball");
  m.config = cfg;
  m.domain_note = "B(0,1) minus {0}";
  m.domain_radius = 1.0;
  return m;
}

std::optional<MapHandle> make_map(std::string_view name, const MapConfig& cfg) {
  if (name == "paperF") return MapHandle::paper_f(cfg);
  if (name == "paperF-planar") return MapHandle::paper_f_planar(cfg);
  if (name == "winding2") return MapHandle::winding2();
  if (name == "winding3") return MapHandle::winding3();
  if (name == "inversion") return MapHandle::inversion_origin();
  if (name == "remark") return MapHandle::remark();
  if (name == "identity2") return MapHandle::identity2();
  if (name == "identity3") return MapHandle::identity3();
  if (name == "punctured-ball") return punctured_ball_map(cfg);
  return std::nullopt;
}

namespace {

void require_dimension(const MapHandle& map, int dim) {
  if (map.dimension() != dim) {
    throw MapError(ErrorCode::InvalidArgument,
                   std::string(to_string(map.kind)) + " is a " + std::to_string(map.dimension()) +
                       "-dimensional map, evaluated on " + std::to_string(dim) + "-dimensional input");
  }
}

}  // namespace

SpatialPoint apply(const MapHandle& map, SpatialPoint p) {
  require_dimension(map, 3);
  if (map.domain_radius && !(norm(p) < *map.domain_radius)) {
    throw MapError(ErrorCode::InvalidArgument, map.name + " is defined on " + map.domain_note);
  }
  switch (map.kind) {
    case MapKind::PaperF: return eval_spatial(p, map.config);
    case MapKind::Winding3: return winding_spatial(p);
    case MapKind::InversionOrigin: return inversion(p);
    case MapKind::SphereInversion: return sphere_inversion(p, map.center, map.radius);
    case MapKind::RemarkMap: return remark_map(p);
    case MapKind::Composition: return compose(map.stages, p);
    case MapKind::Identity3: return p;
    default: break;
  }
  throw MapError(ErrorCode::InvalidArgument, "unsupported spatial map");
}

PlanarPoint apply(const MapHandle& map, PlanarPoint p) {
  require_dimension(map, 2);
  switch (map.kind) {
    case MapKind::PaperFPlanar: return eval_planar(p, map.config);
    case MapKind::Winding2: return winding_planar(p);
    case MapKind::Identity2: return p;
    default: break;
  }
  throw MapError(ErrorCode::InvalidArgument, "unsupported planar map");
}

SpatialPoint compose(std::span<const MapHandle> maps, SpatialPoint p) {
  if (maps.empty()) {
    throw MapError(ErrorCode::InvalidArgument, "composition needs at least one map");
  }
  SpatialPoint value = p;
  for (std::size_t i = maps.size(); i-- > 0;) {
    try {
      value = apply(maps[i], value);
    } catch (const MapError& e) {
      throw MapError(e.code(), "stage " + std::to_string(i) + ": " + e.what(), static_cast<int>(i));
    }
  }
  return value;
}

bool has_preimage_solver(const MapHandle& map) {
  switch (map.kind) {
    case MapKind::PaperF:
    case MapKind::PaperFPlanar:
    case MapKind::Winding2:
    case MapKind::Winding3:
    case MapKind::Identity2:
    case MapKind::Identity3:
      return true;
    default:
      return false;
  }
}

namespace {
[[noreturn]] void no_solver(const MapHandle& map) {
  throw MapError(ErrorCode::NoSolver, "no analytic preimage solver for " + std::string(to_string(map.kind)));
}
}  // namespace

std::vector<SpatialPoint> solve_preimages(const MapHandle& map, SpatialPoint q) {
  require_dimension(map, 3);
  switch (map.kind) {
    case MapKind::PaperF: return preimage_spatial(q, map.config).points;
    case MapKind::Identity3: return {q};
    case MapKind::Winding3: {
      const double rho = std::hypot(q.x, q.y);
      if (rho == 0.0) return {q};
      const std::complex<double> root = std::sqrt(std::complex<double>(q.x / rho, q.y / rho));
      return {{rho * root.real(), rho * root.imag(), q.z}, {-rho * root.real(), -rho * root.imag(), q.z}};
    }
    default: no_solver(map);
  }
}

std::vector<PlanarPoint> solve_preimages(const MapHandle& map, PlanarPoint q) {
  require_dimension(map, 2);
  switch (map.kind) {
    case MapKind::PaperFPlanar: return preimage_planar(q, map.config).points;
    case MapKind::Identity2: return {q};
    case MapKind::Winding2: {
      if (q.x == 0.0 && q.y == 0.0) return {q};
      const std::complex<double> root = std::sqrt(std::complex<double>(q.x, q.y));
      return {{root.real(), root.imag()}, {-root.real(), -root.imag()}};
    }
    default: no_solver(map);
  }
}

}  // namespace bcover
