#pragma once

#include <vector>

#include "bcover/geometry.hpp"

namespace bcover {

// Value and exact derivative of a map at a point.
struct Jet2 {
  PlanarPoint value;
  Mat2 jacobian;
  bool smooth = true;  // false on a band boundary, the cone boundary or the apex
};

struct PreimageSet {
  std::vector<PlanarPoint> points;
  std::vector<RegionTag> provenance;
  bool complete = true;

  std::size_t size() const { return points.size(); }
};

// Tolerance used for smoothness flags, candidate acceptance and deduplication.
inline constexpr double kPlanarTolerance = 1e-12;

// The half-plane map. Identity outside the cone; inside, the stratum through
// (1+r, 0) is carried around the rectangle with corners (1+r, +-W), (g(r), +-W).
PlanarPoint eval_planar(PlanarPoint p, const MapConfig& cfg);

// Formula of a single band evaluated at p regardless of which band p lies in.
// Requires p.x > 1 unless tag is Outside.
PlanarPoint eval_band(RegionTag tag, PlanarPoint p, const MapConfig& cfg);

Jet2 jet_planar(PlanarPoint p, const MapConfig& cfg);

// All preimages of q, found by inverting each affine band in closed form.
PreimageSet preimage_planar(PlanarPoint q, const MapConfig& cfg);

}  // namespace bcover
