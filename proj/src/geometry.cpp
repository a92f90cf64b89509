#include "bcover/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <string>

#include "bcover/error.hpp"

namespace bcover {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::OnAxisInput: return "on-axis-input";
    case ErrorCode::PunctureInput: return "puncture-input";
    case ErrorCode::PoleOverflow: return "pole-overflow";
    case ErrorCode::NonsmoothPoint: return "nonsmooth-point";
    case ErrorCode::DegenerateJacobian: return "degenerate-jacobian";
    case ErrorCode::RefinementExhausted: return "refinement-exhausted";
    case ErrorCode::ValueCollision: return "value-collision";
    case ErrorCode::NoSolver: return "no-solver";
    case ErrorCode::InsufficientSmoothSamples: return "insufficient-smooth-samples";
    case ErrorCode::Usage: return "usage-error";
  }
  return "unknown";
}

std::pair<double, double> Mat2::singular_values() const {
  const double s = a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3];
  const double d = std::abs(det());
  const double disc = std::sqrt(std::max(0.0, s * s - 4.0 * d * d));
  const double largest = std::sqrt(0.5 * (s + disc));
  const double smallest = largest > 0.0 ? d / largest : 0.0;
  return {largest, smallest};
}

double Mat3::det() const {
  return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
         a[2] * (a[3] * a[7] - a[4] * a[6]);
}

std::string_view to_string(Profile profile) {
  return profile == Profile::Literal ? "literal" : "regularized";
}

std::optional<Profile> parse_profile(std::string_view name) {
  if (name == "literal") return Profile::Literal;
  if (name == "regularized") return Profile::Regularized;
  return std::nullopt;
}

void MapConfig::validate() const {
  if (!(slope > 0.0) || !std::isfinite(slope)) {
    throw MapError(ErrorCode::InvalidArgument, "slope must be positive and finite, got " + std::to_string(slope));
  }
}

std::string_view to_string(RegionTag tag) {
  switch (tag) {
    case RegionTag::Outside: return "outside";
    case RegionTag::S1: return "S1";
    case RegionTag::S2: return "S2";
    case RegionTag::S3: return "S3";
    case RegionTag::S4: return "S4";
    case RegionTag::S5: return "S5";
  }
  return "unknown";
}

Region classify_region(PlanarPoint p, const MapConfig& cfg) {
  const double r = p.x - 1.0;
  if (!(r > 0.0)) return {};
  const double w = cfg.slope * r;
  const double t = p.y;
  if (std::abs(t) >= w) return {};

  const double outer = MapConfig::kOuterJunction * w;
  const double inner = MapConfig::kInnerJunction * w;
  RegionTag tag;
  if (t < -outer) {
    tag = RegionTag::S1;
  } else if (t < -inner) {
    tag = RegionTag::S2;
  } else if (t <= inner) {
    tag = RegionTag::S3;
  } else if (t <= outer) {
    tag = RegionTag::S4;
  } else {
    tag = RegionTag::S5;
  }
  return {tag, Stratum{r, w, t}};
}

double profile_eval(double r, const MapConfig& cfg) {
  if (!(r > 0.0)) {
    throw MapError(ErrorCode::InvalidArgument, "profile is defined for r > 0, got " + std::to_string(r));
  }
  return cfg.profile == Profile::Literal ? 1.0 / r : 1.0 / (1.0 + r);
}

double profile_derivative(double r, const MapConfig& cfg) {
  if (!(r > 0.0)) {
    throw MapError(ErrorCode::InvalidArgument, "profile is defined for r > 0, got " + std::to_string(r));
  }
  if (cfg.profile == Profile::Literal) return -1.0 / (r * r);
  return -1.0 / ((1.0 + r) * (1.0 + r));
}

std::pair<double, double> profile_range(const MapConfig& cfg) {
  if (cfg.profile == Profile::Literal) return {0.0, std::numeric_limits<double>::infinity()};
  return {0.0, 1.0};
}

double profile_inverse(double u, const MapConfig& cfg) {
  const auto [lo, hi] = profile_range(cfg);
  if (!(u > lo && u < hi)) {
    throw MapError(ErrorCode::InvalidArgument,
                   "value " + std::to_string(u) + " is outside the range of the " +
                       std::string(to_string(cfg.profile)) + " profile");
  }
  return cfg.profile == Profile::Literal ? 1.0 / u : 1.0 / u - 1.0;
}

HalfPlaneCoords to_halfplane(SpatialPoint p) {
  if (p.x == 0.0 && p.y == 0.0) {
    throw MapError(ErrorCode::OnAxisInput, "half-plane coordinates are undefined on the z-axis");
  }
  double angle = std::atan2(p.y, p.x);
  if (angle < 0.0) angle += 2.0 * std::numbers::pi;
  if (angle >= 2.0 * std::numbers::pi) angle = 0.0;
  return {angle, {std::hypot(p.x, p.y), p.z}};
}

SpatialPoint from_halfplane(double angle, PlanarPoint q) {
  if (q.x < 0.0) {
    throw MapError(ErrorCode::InvalidArgument, "half-plane abscissa must be non-negative");
  }
  return {q.x * std::cos(angle), q.x * std::sin(angle), q.y};
}

namespace {

double distance_to_ray(PlanarPoint p, PlanarPoint origin, PlanarPoint direction) {
  const PlanarPoint d = p - origin;
  const double len = norm(direction);
  const double along = (d.x * direction.x + d.y * direction.y) / len;
  if (along <= 0.0) return norm(d);
  const double across = (d.x * direction.y - d.y * direction.x) / len;
  return std::abs(across);
}

}  // namespace

double distance_to_nonsmooth(PlanarPoint p, const MapConfig& cfg) {
  constexpr std::array<double, 6> fractions{1.0, -1.0, MapConfig::kOuterJunction, -MapConfig::kOuterJunction,
                                            MapConfig::kInnerJunction, -MapConfig::kInnerJunction};
  const PlanarPoint apex{1.0, 0.0};
  double best = distance(p, apex);
  for (double f : fractions) {
    best = std::min(best, distance_to_ray(p, apex, {1.0, f * cfg.slope}));
  }
  return best;
}

}  // namespace bcover
