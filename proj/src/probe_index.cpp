#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bcover/error.hpp"
#include "bcover/probes.hpp"

namespace bcover {

Box Box::planar(double xlo, double xhi, double ylo, double yhi) {
  Box b;
  b.dim = 2;
  b.lo = {xlo, ylo, 0.0};
  b.hi = {xhi, yhi, 0.0};
  return b;
}

Box Box::spatial(double xlo, double xhi, double ylo, double yhi, double zlo, double zhi) {
  Box b;
  b.dim = 3;
  b.lo = {xlo, ylo, zlo};
  b.hi = {xhi, yhi, zhi};
  return b;
}

void Box::validate() const {
  if (dim != 2 && dim != 3) throw MapError(ErrorCode::InvalidArgument, "window must be 2- or 3-dimensional");
  for (int a = 0; a < dim; ++a) {
    if (!(lo[a] <= hi[a]) || !std::isfinite(lo[a]) || !std::isfinite(hi[a])) {
      throw MapError(ErrorCode::InvalidArgument, "window bounds must be finite and ordered");
    }
  }
}

Grid::Grid(const Box& window, double step) : box(window) {
  window.validate();
  if (!(step > 0.0)) throw MapError(ErrorCode::InvalidArgument, "grid step must be positive");
  for (int a = 0; a < window.dim; ++a) {
    n[a] = std::llround((window.hi[a] - window.lo[a]) / step) + 1;
    if (n[a] < 1) n[a] = 1;
  }
}

double Grid::coordinate(int axis, std::int64_t i) const {
  if (n[axis] == 1) return box.lo[axis];
  // lo + span * i / (n - 1) lands exactly on symmetric midpoints such as 0.
  return box.lo[axis] + (box.hi[axis] - box.lo[axis]) * static_cast<double>(i) / static_cast<double>(n[axis] - 1);
}

double Grid::step(int axis) const {
  return n[axis] > 1 ? (box.hi[axis] - box.lo[axis]) / static_cast<double>(n[axis] - 1) : 0.0;
}

std::array<std::int64_t, 3> Grid::unravel(std::int64_t index) const {
  const std::int64_t k = index % n[2];
  const std::int64_t rest = index / n[2];
  return {rest / n[1], rest % n[1], k};
}

std::int64_t Grid::ravel(const std::array<std::int64_t, 3>& idx) const {
  return (idx[0] * n[1] + idx[1]) * n[2] + idx[2];
}

Coords Grid::point(std::int64_t index) const {
  const auto idx = unravel(index);
  Coords p(box.dim);
  for (int a = 0; a < box.dim; ++a) p[a] = coordinate(a, idx[a]);
  return p;
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMaxIncrement = std::numbers::pi / 4.0;

SpatialPoint normalized(SpatialPoint v) { return (1.0 / norm(v)) * v; }

bool preserves_meridians(const MapHandle& map) {
  switch (map.kind) {
    case MapKind::PaperF:
    case MapKind::Identity3:
    case MapKind::InversionOrigin:
      return true;
    case MapKind::Composition:
      return std::all_of(map.stages.begin(), map.stages.end(), preserves_meridians);
    default:
      return false;
  }
}

SpatialPoint radial_direction(double a, double b, SpatialPoint ea, SpatialPoint eb) {
  const double len = std::hypot(a, b);
  if (len == 0.0) return ea;
  return (a / len) * ea + (b / len) * eb;
}

struct WindingResult {
  int winding = 0;
  bool done = false;
};

WindingResult wind(const std::vector<std::array<double, 2>>& v) {
  double total = 0.0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = v[i];
    const auto& q = v[(i + 1) % n];
    const double inc = std::atan2(p[0] * q[1] - p[1] * q[0], p[0] * q[0] + p[1] * q[1]);
    if (std::abs(inc) >= kMaxIncrement) return {0, false};
    total += inc;
  }
  return {static_cast<int>(std::lround(total / kTwoPi)), true};
}

[[noreturn]] void collision() {
  throw MapError(ErrorCode::ValueCollision, "probe circle meets the preimage of the base value");
}

}  // namespace

ProbePlane default_probe_plane(const MapHandle& map, SpatialPoint base) {
  const SpatialPoint ex{1.0, 0.0, 0.0}, ey{0.0, 1.0, 0.0}, ez{0.0, 0.0, 1.0};
  if (map.kind == MapKind::Winding3) return {ex, ey, Projection::SamePlane};
  if (map.kind == MapKind::RemarkMap) {
    return {radial_direction(base.x, base.z, ex, ez), ey, Projection::VectorArea};
  }
  const SpatialPoint radial = radial_direction(base.x, base.y, ex, ey);
  return {radial, ez, preserves_meridians(map) ? Projection::SamePlane : Projection::VectorArea};
}

IndexReport local_index(const MapHandle& map, PlanarPoint base, double radius, int n0) {
  if (!(radius > 0.0) || n0 < 3) throw MapError(ErrorCode::InvalidArgument, "probe needs radius > 0 and n0 >= 3");
  const PlanarPoint center = apply(map, base);
  std::vector<std::array<double, 2>> v;
  for (std::int64_t n = n0; n <= kMaxIndexSamples; n *= 2) {
    v.resize(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
      const double theta = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
      const PlanarPoint d = apply(map, PlanarPoint{base.x + radius * std::cos(theta), base.y + radius * std::sin(theta)}) - center;
      if (d.x == 0.0 && d.y == 0.0) collision();
      v[static_cast<std::size_t>(i)] = {d.x, d.y};
    }
    const WindingResult w = wind(v);
    if (w.done) return {{base.x, base.y}, radius, n, w.winding, n > n0};
  }
  throw MapError(ErrorCode::RefinementExhausted, "winding did not resolve within the sample cap");
}

IndexReport local_index(const MapHandle& map, SpatialPoint base, double radius, int n0,
                        std::optional<ProbePlane> plane) {
  if (!(radius > 0.0) || n0 < 3) throw MapError(ErrorCode::InvalidArgument, "probe needs radius > 0 and n0 >= 3");
  const ProbePlane pl = plane.value_or(default_probe_plane(map, base));
  const SpatialPoint center = apply(map, base);
  std::vector<SpatialPoint> d;
  std::vector<std::array<double, 2>> v;
  SpatialPoint u1 = pl.e1, u2 = pl.e2;
  bool basis_fixed = pl.projection == Projection::SamePlane;
  for (std::int64_t n = n0; n <= kMaxIndexSamples; n *= 2) {
    d.resize(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
      const double theta = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
      const SpatialPoint x = base + (radius * std::cos(theta)) * pl.e1 + (radius * std::sin(theta)) * pl.e2;
      d[static_cast<std::size_t>(i)] = apply(map, x) - center;
    }
    if (!basis_fixed) {
      SpatialPoint area{};
      for (std::size_t i = 0; i < d.size(); ++i) area = area + cross(d[i], d[(i + 1) % d.size()]);
      if (!(norm(area) > 0.0)) collision();
      const SpatialPoint normal = normalized(area);
      // Any unit vector orthogonal to the normal; the orientation comes from it.
      const SpatialPoint helper = std::abs(normal.x) < 0.9 ? SpatialPoint{1.0, 0.0, 0.0} : SpatialPoint{0.0, 1.0, 0.0};
      u1 = normalized(cross(helper, normal));
      u2 = cross(normal, u1);
      basis_fixed = true;
    }
    v.resize(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      v[i] = {dot(d[i], u1), dot(d[i], u2)};
      if (v[i][0] == 0.0 && v[i][1] == 0.0) collision();
    }
    const WindingResult w = wind(v);
    if (w.done) return {{base.x, base.y, base.z}, radius, n, w.winding, n > n0};
  }
  throw MapError(ErrorCode::RefinementExhausted, "winding did not resolve within the sample cap");
}

IndexReport local_index(const MapHandle& map, const Coords& base, double radius, int n0) {
  if (static_cast<int>(base.size()) != map.dimension()) {
    throw MapError(ErrorCode::InvalidArgument, "base point dimension does not match the map");
  }
  if (map.dimension() == 2) return local_index(map, PlanarPoint{base[0], base[1]}, radius, n0);
  return local_index(map, SpatialPoint{base[0], base[1], base[2]}, radius, n0);
}

double ReferenceSet::distance(const Coords& p) const {
  const double x = p.size() > 0 ? p[0] : 0.0;
  const double y = p.size() > 1 ? p[1] : 0.0;
  const double z = p.size() > 2 ? p[2] : 0.0;
  switch (kind) {
    case Kind::None: return 0.0;
    case Kind::Point: {
      double s = 0.0;
      for (std::size_t i = 0; i < p.size() && i < point.size(); ++i) s += (p[i] - point[i]) * (p[i] - point[i]);
      return std::sqrt(s);
    }
    case Kind::UnitCircleXY: return std::hypot(std::hypot(x, y) - 1.0, z);
    case Kind::UnitCircleXZ: return std::hypot(std::hypot(x, z) - 1.0, y);
    case Kind::ZAxis: return std::hypot(x, y);
  }
  return 0.0;
}

// ------------------------------------------------------------ continuity

namespace {

Coords evaluate(const MapHandle& map, const Coords& p) {
  if (map.dimension() == 2) {
    const PlanarPoint v = apply(map, PlanarPoint{p[0], p[1]});
    return {v.x, v.y};
  }
  const SpatialPoint v = apply(map, SpatialPoint{p[0], p[1], p[2]});
  return {v.x, v.y, v.z};
}

double coords_distance(const Coords& a, const Coords& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

constexpr double kGoldenAngle = 2.399963229728653;

SpatialPoint unit_fibonacci(std::int64_t i, std::int64_t n) {
  const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = kGoldenAngle * static_cast<double>(i);
  return {s * std::cos(phi), s * std::sin(phi), z};
}

}  // namespace

std::vector<ContinuityEntry> continuity_modulus(const MapHandle& map, const Coords& base,
                                                const std::vector<double>& deltas, int samples) {
  const int dim = map.dimension();
  if (static_cast<int>(base.size()) != dim) {
    throw MapError(ErrorCode::InvalidArgument, "base point dimension does not match the map");
  }
  if (samples < 1) throw MapError(ErrorCode::InvalidArgument, "continuity needs at least one sample per ring");
  const Coords center = evaluate(map, base);
  constexpr int kRings = 8;

  const bool planar_apex = map.kind == MapKind::PaperFPlanar && base[0] == 1.0 && base[1] == 0.0;
  const bool spatial_circle = map.kind == MapKind::PaperF && base[2] == 0.0 &&
                              std::abs(std::hypot(base[0], base[1]) - 1.0) < 1e-12;

  std::vector<ContinuityEntry> out;
  for (double delta : deltas) {
    if (!(delta > 0.0)) throw MapError(ErrorCode::InvalidArgument, "continuity deltas must be positive");
    std::vector<Coords> pts;
    for (int k = 1; k <= kRings; ++k) {
      const double rad = delta * (k == kRings ? 1.0 - 1e-9 : static_cast<double>(k) / kRings);
      for (int j = 0; j < samples; ++j) {
        if (dim == 2) {
          const double theta = kTwoPi * (static_cast<double>(j) + 0.5 * (k % 2)) / samples;
          pts.push_back({base[0] + rad * std::cos(theta), base[1] + rad * std::sin(theta)});
        } else {
          const SpatialPoint u = unit_fibonacci(j, samples);
          pts.push_back({base[0] + rad * u.x, base[1] + rad * u.y, base[2] + rad * u.z});
        }
      }
    }
    // Midpoints of the strata I_r closest to the apex.
    for (double frac : {0.5, 0.25, 0.125}) {
      const double r = frac * delta;
      if (planar_apex) pts.push_back({1.0 + r, 0.0});
      if (spatial_circle) pts.push_back({base[0] * (1.0 + r), base[1] * (1.0 + r), 0.0});
    }
    ContinuityEntry entry{delta, 0.0, 0, 0};
    for (const Coords& p : pts) {
      try {
        entry.modulus = std::max(entry.modulus, coords_distance(evaluate(map, p), center));
        ++entry.samples;
      } catch (const MapError&) {
        ++entry.skipped;
      }
    }
    out.push_back(entry);
  }
  return out;
}

// ------------------------------------------------------------ openness

OpennessReport openness_probe(const MapHandle& map, const Coords& base, double delta, double epsilon,
                              std::int64_t m, std::uint64_t seed, const Exec& exec) {
  if (!has_preimage_solver(map)) {
    throw MapError(ErrorCode::NoSolver, "openness probe needs an analytic preimage solver for " +
                                            std::string(to_string(map.kind)));
  }
  const int dim = map.dimension();
  if (static_cast<int>(base.size()) != dim) {
    throw MapError(ErrorCode::InvalidArgument, "base point dimension does not match the map");
  }
  if (!(delta > 0.0) || !(epsilon > 0.0) || m < 1) {
    throw MapError(ErrorCode::InvalidArgument, "openness probe needs delta > 0, epsilon > 0 and m >= 1");
  }
  const Coords center = evaluate(map, base);
  std::vector<unsigned char> covered(static_cast<std::size_t>(m), 0);
  parallel_for(m, exec, [&](std::int64_t i) {
    const double u1 = counter_uniform(seed, 11, static_cast<std::uint64_t>(i));
    const double u2 = counter_uniform(seed, 12, static_cast<std::uint64_t>(i));
    const double u3 = counter_uniform(seed, 13, static_cast<std::uint64_t>(i));
    try {
      if (dim == 2) {
        const double rad = epsilon * std::sqrt(u1);
        const PlanarPoint q{center[0] + rad * std::cos(kTwoPi * u2), center[1] + rad * std::sin(kTwoPi * u2)};
        for (const PlanarPoint& p : solve_preimages(map, q)) {
          if (std::hypot(p.x - base[0], p.y - base[1]) < delta) covered[static_cast<std::size_t>(i)] = 1;
        }
      } else {
        const double z = 2.0 * u1 - 1.0;
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double rad = epsilon * std::cbrt(u3);
        const SpatialPoint q{center[0] + rad * s * std::cos(kTwoPi * u2), center[1] + rad * s * std::sin(kTwoPi * u2),
                             center[2] + rad * z};
        for (const SpatialPoint& p : solve_preimages(map, q)) {
          if (distance(p, SpatialPoint{base[0], base[1], base[2]}) < delta) covered[static_cast<std::size_t>(i)] = 1;
        }
      }
    } catch (const MapError&) {
      // A target outside the codomain has no preimage; it counts as uncovered.
    }
  });
  OpennessReport report{base, delta, epsilon, m, 0, 0.0};
  for (unsigned char c : covered) report.covered += c;
  report.fraction = static_cast<double>(report.covered) / static_cast<double>(m);
  return report;
}

}  // namespace bcover
