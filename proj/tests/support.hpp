#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "bcover/geometry.hpp"

namespace testing {

using bcover::MapConfig;
using bcover::PlanarPoint;
using bcover::Profile;
using bcover::SpatialPoint;

// Seeded generators for the property tests.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

  // Point of the open cone, strictly inside one band: fractions of W near the
  // junctions are avoided by gap.
  PlanarPoint cone_point(const MapConfig& cfg, double rlo, double rhi, double gap = 1e-3) {
    static const double cuts[] = {-1.0, -0.6, -0.2, 0.2, 0.6, 1.0};
    const double r = log_uniform(rlo, rhi);
    const int band = static_cast<int>(uniform(0.0, 5.0));
    const double f = uniform(cuts[band] + gap, cuts[band + 1] - gap);
    return {1.0 + r, f * cfg.slope * r};
  }

  PlanarPoint halfplane_point(double xhi, double yabs) { return {uniform(1e-3, xhi), uniform(-yabs, yabs)}; }

  SpatialPoint rotate(PlanarPoint q, double angle) {
    return {q.x * std::cos(angle), q.x * std::sin(angle), q.y};
  }
};

// Independent statement of the half-plane map: the rectangle path written
// with the edge parametrizations xi and eta directly.
inline PlanarPoint planar_oracle(PlanarPoint p, const MapConfig& cfg) {
  const double x = p.x, t = p.y;
  const double r = x - 1.0;
  if (x <= 1.0) return p;
  const double w = cfg.slope * r;
  if (std::abs(t) >= w) return p;
  const double g = cfg.profile == Profile::Literal ? 1.0 / r : 1.0 / (1.0 + r);
  if (t < -0.6 * w) return {x, 5.0 * t + 4.0 * w};
  if (t < -0.2 * w) return {(1.0 + r) + (t + 0.6 * w) * (g - (1.0 + r)) / (0.4 * w), w};
  if (t <= 0.2 * w) return {g, -5.0 * t};
  if (t <= 0.6 * w) return {g + (t - 0.2 * w) * ((1.0 + r) - g) / (0.4 * w), -w};
  return {x, 5.0 * t - 4.0 * w};
}

inline SpatialPoint spatial_oracle(SpatialPoint p, const MapConfig& cfg) {
  const double rho = std::hypot(p.x, p.y);
  if (rho == 0.0) return p;
  const PlanarPoint v = planar_oracle({rho, p.z}, cfg);
  return {v.x * p.x / rho, v.x * p.y / rho, v.y};
}

inline bool close(double a, double b, double rel, double abs_tol = 0.0) {
  return std::abs(a - b) <= abs_tol + rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace testing
