#include "bcover/planar_map.hpp"

#include <cmath>
#include <string>

#include "bcover/error.hpp"

namespace bcover {
namespace {

void require_halfplane(PlanarPoint p) {
  if (!(p.x > 0.0)) {
    throw MapError(ErrorCode::InvalidArgument, "point is not in the open half-plane x > 0 (x = " + std::to_string(p.x) + ")");
  }
}

struct BandJet {
  PlanarPoint value;
  Mat2 jacobian;
};

// Each band is affine in t along a stratum. With s the normalized position
// inside a middle band, the S2 edge runs from 1+r down to g and the S4 edge
// from g back up to 1+r.
BandJet band_jet(RegionTag tag, double r, double t, const MapConfig& cfg) {
  const double c = cfg.slope;
  const double w = c * r;
  const double x = 1.0 + r;
  Mat2 j;
  switch (tag) {
    case RegionTag::Outside:
      return {{x, t}, Mat2::identity()};
    case RegionTag::S1:
      j.a = {1.0, 0.0, 4.0 * c, 5.0};
      return {{x, 5.0 * t + 4.0 * w}, j};
    case RegionTag::S5:
      j.a = {1.0, 0.0, -4.0 * c, 5.0};
      return {{x, 5.0 * t - 4.0 * w}, j};
    case RegionTag::S3: {
      const double g = profile_eval(r, cfg);
      j.a = {profile_derivative(r, cfg), 0.0, 0.0, -5.0};
      return {{g, 0.0 - 5.0 * t}, j};
    }
    case RegionTag::S2: {
      const double g = profile_eval(r, cfg);
      const double dg = profile_derivative(r, cfg);
      const double span = g - x;  // signed length of the top edge
      const double s = 5.0 * t / (2.0 * w) + 1.5;
      const double ds_dr = -5.0 * t / (2.0 * c * r * r);
      const double ds_dt = 5.0 / (2.0 * w);
      j.a = {1.0 + ds_dr * span + s * (dg - 1.0), ds_dt * span, c, 0.0};
      return {{x + s * span, w}, j};
    }
    case RegionTag::S4: {
      const double g = profile_eval(r, cfg);
      const double dg = profile_derivative(r, cfg);
      const double span = x - g;
      const double s = 5.0 * t / (2.0 * w) - 0.5;
      const double ds_dr = -5.0 * t / (2.0 * c * r * r);
      const double ds_dt = 5.0 / (2.0 * w);
      j.a = {dg + ds_dr * span + s * (1.0 - dg), ds_dt * span, -c, 0.0};
      return {{g + s * span, -w}, j};
    }
  }
  return {{x, t}, Mat2::identity()};
}

double tolerance_for(PlanarPoint p) { return kPlanarTolerance * (1.0 + norm(p)); }

// Closed band test with tolerance, used to accept solver candidates that
// rounding pushed just across a junction.
bool in_closed_band(PlanarPoint p, RegionTag tag, const MapConfig& cfg) {
  const double tol = tolerance_for(p);
  if (tag == RegionTag::Outside) {
    return p.x <= 1.0 + tol || std::abs(p.y) >= cfg.slope * (p.x - 1.0) - tol;
  }
  const double r = p.x - 1.0;
  if (r <= 0.0) return false;
  const double w = cfg.slope * r;
  double lo = 0.0, hi = 0.0;
  switch (tag) {
    case RegionTag::S1: lo = -w; hi = -MapConfig::kOuterJunction * w; break;
    case RegionTag::S2: lo = -MapConfig::kOuterJunction * w; hi = -MapConfig::kInnerJunction * w; break;
    case RegionTag::S3: lo = -MapConfig::kInnerJunction * w; hi = MapConfig::kInnerJunction * w; break;
    case RegionTag::S4: lo = MapConfig::kInnerJunction * w; hi = MapConfig::kOuterJunction * w; break;
    case RegionTag::S5: lo = MapConfig::kOuterJunction * w; hi = w; break;
    case RegionTag::Outside: break;
  }
  return p.y >= lo - tol && p.y <= hi + tol;
}

}  // namespace

PlanarPoint eval_band(RegionTag tag, PlanarPoint p, const MapConfig& cfg) {
  if (tag == RegionTag::Outside) return p;
  if (!(p.x > 1.0)) {
    throw MapError(ErrorCode::InvalidArgument, "band formulas need x > 1");
  }
  return band_jet(tag, p.x - 1.0, p.y, cfg).value;
}

PlanarPoint eval_planar(PlanarPoint p, const MapConfig& cfg) {
  require_halfplane(p);
  const Region region = classify_region(p, cfg);
  if (region.tag == RegionTag::Outside) return p;
  return band_jet(region.tag, region.stratum->r, region.stratum->t, cfg).value;
}

Jet2 jet_planar(PlanarPoint p, const MapConfig& cfg) {
  require_halfplane(p);
  const Region region = classify_region(p, cfg);
  const bool smooth = distance_to_nonsmooth(p, cfg) > tolerance_for(p);
  if (region.tag == RegionTag::Outside) return {p, Mat2::identity(), smooth};
  const BandJet bj = band_jet(region.tag, region.stratum->r, region.stratum->t, cfg);
  return {bj.value, bj.jacobian, smooth};
}

PreimageSet preimage_planar(PlanarPoint q, const MapConfig& cfg) {
  require_halfplane(q);
  const double c = cfg.slope;
  const double u = q.x;
  const double v = q.y;

  struct Candidate {
    PlanarPoint p;
    RegionTag band;
  };
  std::vector<Candidate> candidates;
  candidates.push_back({q, RegionTag::Outside});

  if (u > 1.0) {
    const double w = c * (u - 1.0);
    candidates.push_back({{u, (v - 4.0 * w) / 5.0}, RegionTag::S1});
    candidates.push_back({{u, (v + 4.0 * w) / 5.0}, RegionTag::S5});
  }

  const auto [lo, hi] = profile_range(cfg);
  if (u > lo && u < hi) {
    const double r = profile_inverse(u, cfg);
    candidates.push_back({{1.0 + r, -v / 5.0}, RegionTag::S3});
  }

  // Top edge (S2) sits at height W = c r, bottom edge (S4) at -W.
  if (v != 0.0) {
    const double r = std::abs(v) / c;
    const double x = 1.0 + r;
    const double g = profile_eval(r, cfg);
    const double w = c * r;
    if (g != x) {
      if (v > 0.0) {
        const double s = (u - x) / (g - x);
        candidates.push_back({{x, -MapConfig::kOuterJunction * w + s * 0.4 * w}, RegionTag::S2});
      } else {
        const double s = (u - g) / (x - g);
        candidates.push_back({{x, MapConfig::kInnerJunction * w + s * 0.4 * w}, RegionTag::S4});
      }
    }
  }

  PreimageSet result;
  const double target_tol = kPlanarTolerance * (1.0 + norm(q));
  for (const Candidate& cand : candidates) {
    if (!(cand.p.x > 0.0) || !in_closed_band(cand.p, cand.band, cfg)) continue;
    // Inverting the band formula is only valid if the image agrees with q.
    const PlanarPoint image = cand.band == RegionTag::Outside ? cand.p : eval_band(cand.band, cand.p, cfg);
    if (distance(image, q) > 16.0 * target_tol) continue;
    bool duplicate = false;
    for (const PlanarPoint& kept : result.points) {
      if (distance(kept, cand.p) <= kPlanarTolerance * (1.0 + norm(kept))) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    result.points.push_back(cand.p);
    result.provenance.push_back(classify_region(cand.p, cfg).tag);
  }
  return result;
}

}  // namespace bcover
