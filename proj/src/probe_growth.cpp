#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <tuple>

#include "bcover/error.hpp"
#include "bcover/probes.hpp"
#include "bcover/spatial_map.hpp"

namespace bcover {

SpatialPoint sphere_sample(double radius, std::int64_t i, std::int64_t n, std::uint64_t seed) {
  constexpr double kGoldenAngle = 2.399963229728653;
  const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double jitter = 2.0 * std::numbers::pi * counter_uniform(seed, 7, static_cast<std::uint64_t>(i));
  const double phi = kGoldenAngle * static_cast<double>(i) + jitter;
  return {radius * s * std::cos(phi), radius * s * std::sin(phi), radius * z};
}

std::pair<double, double> loglog_fit(const std::vector<double>& radii, const std::vector<double>& values) {
  const std::size_t n = radii.size();
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += std::log(radii[i]);
    sy += std::log(values[i]);
  }
  const double mx = sx / static_cast<double>(n);
  const double my = sy / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(radii[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(values[i]) - my);
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

namespace {

struct RatioPair {
  double outer = 0.0;
  double paper = 0.0;
  bool used = false;
};

// Identity3 has ratio 1 everywhere; PaperF skips points near the non-smooth
// set (margin relative to the half-plane norm) and on the axis.
RatioPair sample_ratios(const MapHandle& map, SpatialPoint p, double margin) {
  if (map.kind == MapKind::Identity3) return {1.0, 1.0, true};
  const double rho = std::hypot(p.x, p.y);
  const PlanarPoint q{rho, p.z};
  if (rho == 0.0 || distance_to_nonsmooth(q, map.config) <= margin * (1.0 + norm(q))) return {};
  const DistortionSample s = distortion_at(p, map.config);
  return {s.outer_ratio, s.paper_ratio, true};
}

}  // namespace

GrowthFit growth_fit(const MapHandle& map, const std::vector<double>& radii, std::int64_t samples_per_sphere,
                     double boundary_margin, std::uint64_t seed, const Exec& exec) {
  if (map.kind != MapKind::PaperF && map.kind != MapKind::Identity3) {
    throw MapError(ErrorCode::InvalidArgument, "growth fit supports paperF and identity3");
  }
  if (radii.size() < 4) throw MapError(ErrorCode::InvalidArgument, "growth fit needs at least 4 radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1]))) {
      throw MapError(ErrorCode::InvalidArgument, "growth radii must be positive and strictly increasing");
    }
  }
  if (samples_per_sphere < 1) throw MapError(ErrorCode::InvalidArgument, "growth fit needs samples on each sphere");

  const auto nr = static_cast<std::int64_t>(radii.size());
  const std::int64_t total = nr * samples_per_sphere;
  std::vector<RatioPair> ratios(static_cast<std::size_t>(total));
  parallel_for(total, exec, [&](std::int64_t k) {
    const std::int64_t ri = k / samples_per_sphere;
    const std::int64_t i = k % samples_per_sphere;
    const SpatialPoint p = sphere_sample(radii[static_cast<std::size_t>(ri)], i, samples_per_sphere, seed);
    ratios[static_cast<std::size_t>(k)] = sample_ratios(map, p, boundary_margin);
  });

  GrowthFit fit;
  fit.radii = radii;
  for (std::int64_t ri = 0; ri < nr; ++ri) {
    double so = 0.0, sp = 0.0;
    std::int64_t skipped = 0;
    for (std::int64_t i = 0; i < samples_per_sphere; ++i) {
      const RatioPair& rp = ratios[static_cast<std::size_t>(ri * samples_per_sphere + i)];
      if (!rp.used) {
        ++skipped;
        continue;
      }
      so = std::max(so, rp.outer);
      sp = std::max(sp, rp.paper);
    }
    if (2 * skipped > samples_per_sphere) {
      throw MapError(ErrorCode::InsufficientSmoothSamples,
                     "more than half of the samples on the sphere of radius " +
                         std::to_string(radii[static_cast<std::size_t>(ri)]) + " were skipped");
    }
    fit.sup_outer.push_back(so);
    fit.sup_paper.push_back(sp);
    fit.skipped.push_back(skipped);
  }
  std::tie(fit.slope_paper, fit.intercept) = loglog_fit(fit.radii, fit.sup_paper);
  std::tie(fit.slope_outer, fit.intercept_outer) = loglog_fit(fit.radii, fit.sup_outer);
  return fit;
}

GrowthFit growth_fit(const MapConfig& cfg, const std::vector<double>& radii, std::int64_t samples_per_sphere,
                     double boundary_margin, std::uint64_t seed, const Exec& exec) {
  return growth_fit(MapHandle::paper_f(cfg), radii, samples_per_sphere, boundary_margin, seed, exec);
}

}  // namespace bcover
