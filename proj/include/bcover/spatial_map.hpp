#pragma once

#include <vector>

#include "bcover/geometry.hpp"
#include "bcover/planar_map.hpp"

namespace bcover {

// Derivative of the spatial map. In the cylindrical frame it splits into the
// half-plane block (planar_part) and a scaling of the angular direction.
struct Jet3 {
  SpatialPoint value;
  Mat3 jacobian;  // Cartesian frame
  Mat2 planar_part;
  double angular_factor = 1.0;  // image abscissa / base abscissa
  bool smooth = true;
};

struct DistortionSample {
  SpatialPoint point;
  double op_norm = 0.0;      // largest singular value of DF
  double jac_det = 0.0;      // J_F
  double outer_ratio = 0.0;  // |DF|^3 / J_F
  double paper_ratio = 0.0;  // |DF| / J_F
};

struct SpatialPreimageSet {
  std::vector<SpatialPoint> points;
  std::vector<RegionTag> provenance;
  bool complete = true;

  std::size_t size() const { return points.size(); }
};

// Applies the planar map in every half-plane through the z-axis and fixes the
// axis pointwise.
SpatialPoint eval_spatial(SpatialPoint p, const MapConfig& cfg);

Jet3 jet_spatial(SpatialPoint p, const MapConfig& cfg);

DistortionSample distortion_at(SpatialPoint p, const MapConfig& cfg);

SpatialPreimageSet preimage_spatial(SpatialPoint q, const MapConfig& cfg);

}  // namespace bcover
