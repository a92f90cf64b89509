#include "bcover/spatial_map.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bcover/error.hpp"

namespace bcover {

SpatialPoint eval_spatial(SpatialPoint p, const MapConfig& cfg) {
  if (p.x == 0.0 && p.y == 0.0) return p;
  const double rho = std::hypot(p.x, p.y);
  const PlanarPoint image = eval_planar({rho, p.z}, cfg);
  // Scaling the horizontal part keeps the angle without a trig round trip.
  const double k = image.x / rho;
  return {k * p.x, k * p.y, image.y};
}

Jet3 jet_spatial(SpatialPoint p, const MapConfig& cfg) {
  if (p.x == 0.0 && p.y == 0.0) {
    throw MapError(ErrorCode::OnAxisInput, "spatial jet is computed off the z-axis only");
  }
  const double rho = std::hypot(p.x, p.y);
  const double cs = p.x / rho;
  const double sn = p.y / rho;
  const Jet2 planar = jet_planar({rho, p.z}, cfg);
  const double k = planar.value.x / rho;
  const Mat2& m = planar.jacobian;

  // B M B^T with B = [e_rho e_phi e_z] and M block-diagonal in that frame.
  Mat3 j;
  j.a = {m(0, 0) * cs * cs + k * sn * sn, (m(0, 0) - k) * cs * sn, m(0, 1) * cs,
         (m(0, 0) - k) * cs * sn, m(0, 0) * sn * sn + k * cs * cs, m(0, 1) * sn,
         m(1, 0) * cs, m(1, 0) * sn, m(1, 1)};

  return {{k * p.x, k * p.y, planar.value.y}, j, m, k, planar.smooth};
}

DistortionSample distortion_at(SpatialPoint p, const MapConfig& cfg) {
  const Jet3 jet = jet_spatial(p, cfg);
  if (!jet.smooth) {
    throw MapError(ErrorCode::NonsmoothPoint, "distortion is only defined away from stratum boundaries");
  }
  const double det = jet.planar_part.det() * jet.angular_factor;
  if (!(det > 0.0)) {
    throw MapError(ErrorCode::DegenerateJacobian, "non-positive Jacobian determinant " + std::to_string(det));
  }
  const double op = std::max(jet.planar_part.singular_values().first, jet.angular_factor);
  return {p, op, det, op * op * op / det, op / det};
}

SpatialPreimageSet preimage_spatial(SpatialPoint q, const MapConfig& cfg) {
  SpatialPreimageSet result;
  if (q.x == 0.0 && q.y == 0.0) {
    result.points.push_back(q);
    result.provenance.push_back(RegionTag::Outside);
    return result;
  }
  const double rho = std::hypot(q.x, q.y);
  const PreimageSet planar = preimage_planar({rho, q.z}, cfg);
  for (std::size_t i = 0; i < planar.size(); ++i) {
    const double k = planar.points[i].x / rho;
    result.points.push_back({k * q.x, k * q.y, planar.points[i].y});
    result.provenance.push_back(planar.provenance[i]);
  }
  result.complete = planar.complete;
  return result;
}

}  // namespace bcover
