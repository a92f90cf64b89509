#include "bcover/serial_reference.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>

#include "bcover/error.hpp"
#include "bcover/spatial_map.hpp"

namespace bcover::serial {
namespace {

std::int64_t count_along(const Box& box, int axis, double step) {
  if (axis >= box.dim) return 1;
  return std::max<std::int64_t>(1, std::llround((box.hi[axis] - box.lo[axis]) / step) + 1);
}

double coord(const Box& box, int axis, std::int64_t i, std::int64_t n) {
  if (axis >= box.dim || n == 1) return box.lo[axis];
  return box.lo[axis] + (box.hi[axis] - box.lo[axis]) * static_cast<double>(i) / static_cast<double>(n - 1);
}

}  // namespace

BranchScanReport branch_scan(const MapHandle& map, const Box& window, double step, double probe_radius,
                             const ReferenceSet& reference) {
  const std::int64_t nx = count_along(window, 0, step);
  const std::int64_t ny = count_along(window, 1, step);
  const std::int64_t nz = count_along(window, 2, step);
  BranchScanReport report;
  report.window = window;
  report.step = step;
  report.probe_radius = probe_radius;
  report.cells = nx * ny * nz;
  double tube_sum = 0.0;
  for (std::int64_t i = 0; i < nx; ++i) {
    for (std::int64_t j = 0; j < ny; ++j) {
      for (std::int64_t k = 0; k < nz; ++k) {
        Coords p{coord(window, 0, i, nx), coord(window, 1, j, ny)};
        if (window.dim == 3) p.push_back(coord(window, 2, k, nz));
        try {
          const int w = local_index(map, p, probe_radius).winding;
          if (w < 2) continue;
          if (local_index(map, p, 0.5 * probe_radius).winding < 2) {
            ++report.rejected;
            continue;
          }
          const double d = reference.distance(p);
          report.tube_max = std::max(report.tube_max, d);
          tube_sum += d;
          report.hits.push_back({p, w});
        } catch (const MapError&) {
          ++report.errors;
        }
      }
    }
  }
  if (!report.hits.empty()) report.tube_mean = tube_sum / static_cast<double>(report.hits.size());
  return report;
}

PreimageHistogram preimage_histogram(const MapHandle& map, const Box& window, std::int64_t m, std::uint64_t seed) {
  PreimageHistogram h{window, m, seed, {}, 0};
  for (std::int64_t i = 0; i < m; ++i) {
    const Coords q = histogram_target(window, seed, i);
    try {
      const std::size_t n = map.dimension() == 2 ? solve_preimages(map, PlanarPoint{q[0], q[1]}).size()
                                                 : solve_preimages(map, SpatialPoint{q[0], q[1], q[2]}).size();
      ++h.counts[static_cast<int>(n)];
    } catch (const MapError&) {
      ++h.errors;
    }
  }
  return h;
}

std::vector<double> grid_norms(const MapHandle& map, const Box& window, double step) {
  const std::int64_t nx = count_along(window, 0, step);
  const std::int64_t ny = count_along(window, 1, step);
  const std::int64_t nz = count_along(window, 2, step);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(nx * ny * nz));
  for (std::int64_t i = 0; i < nx; ++i) {
    for (std::int64_t j = 0; j < ny; ++j) {
      for (std::int64_t k = 0; k < nz; ++k) {
        const SpatialPoint p{coord(window, 0, i, nx), coord(window, 1, j, ny), coord(window, 2, k, nz)};
        try {
          out.push_back(norm(apply(map, p)));
        } catch (const MapError& e) {
          const bool pole = e.code() == ErrorCode::PunctureInput || e.code() == ErrorCode::PoleOverflow;
          out.push_back(pole ? std::numeric_limits<double>::infinity() : 0.0);
        }
      }
    }
  }
  return out;
}

OracleReport brute_preimage_oracle(const MapHandle& map, const Coords& target, const Box& window, double step,
                                   double tol) {
  const int dim = window.dim;
  const std::int64_t nx = count_along(window, 0, step);
  const std::int64_t ny = count_along(window, 1, step);
  const std::int64_t nz = count_along(window, 2, step);

  // Candidate cells keyed by (i, j, k), flood filled with diagonal adjacency.
  std::map<std::array<std::int64_t, 3>, double> found;
  for (std::int64_t i = 0; i < nx; ++i) {
    for (std::int64_t j = 0; j < ny; ++j) {
      for (std::int64_t k = 0; k < nz; ++k) {
        double res;
        try {
          if (dim == 2) {
            const PlanarPoint v = apply(map, PlanarPoint{coord(window, 0, i, nx), coord(window, 1, j, ny)});
            res = std::hypot(v.x - target[0], v.y - target[1]);
          } else {
            const SpatialPoint v = apply(map, SpatialPoint{coord(window, 0, i, nx), coord(window, 1, j, ny),
                                                           coord(window, 2, k, nz)});
            res = distance(v, SpatialPoint{target[0], target[1], target[2]});
          }
        } catch (const MapError&) {
          continue;
        }
        if (res < tol) found[{i, j, k}] = res;
      }
    }
  }

  OracleReport report;
  report.target = target;
  report.window = window;
  report.step = step;
  report.tolerance = tol;
  std::map<std::array<std::int64_t, 3>, bool> visited;
  for (const auto& [seed_cell, seed_res] : found) {
    if (visited[seed_cell]) continue;
    OracleCluster c;
    c.residual = std::numeric_limits<double>::infinity();
    c.lo = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity()};
    c.hi = {-c.lo[0], -c.lo[1], -c.lo[2]};
    std::array<std::int64_t, 3> best{};
    std::deque<std::array<std::int64_t, 3>> queue{seed_cell};
    visited[seed_cell] = true;
    while (!queue.empty()) {
      const auto cell = queue.front();
      queue.pop_front();
      const double res = found.at(cell);
      ++c.cells;
      if (res < c.residual || (res == c.residual && cell < best)) {
        c.residual = res;
        best = cell;
      }
      for (int a = 0; a < dim; ++a) {
        const std::int64_t n = a == 0 ? nx : (a == 1 ? ny : nz);
        const double x = coord(window, a, cell[a], n);
        c.lo[a] = std::min(c.lo[a], x);
        c.hi[a] = std::max(c.hi[a], x);
      }
      for (int dx = -1; dx <= 1; ++dx) {
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dz = (dim == 3 ? -1 : 0); dz <= (dim == 3 ? 1 : 0); ++dz) {
            const std::array<std::int64_t, 3> nb{cell[0] + dx, cell[1] + dy, cell[2] + dz};
            if (found.count(nb) && !visited[nb]) {
              visited[nb] = true;
              queue.push_back(nb);
            }
          }
        }
      }
    }
    c.representative = {coord(window, 0, best[0], nx), coord(window, 1, best[1], ny)};
    if (dim == 3) c.representative.push_back(coord(window, 2, best[2], nz));
    for (int a = dim; a < 3; ++a) c.lo[a] = c.hi[a] = 0.0;
    report.clusters.push_back(c);
  }
  return report;
}

void growth_sups(const MapHandle& map, const std::vector<double>& radii, std::int64_t samples_per_sphere,
                 double boundary_margin, std::uint64_t seed, std::vector<double>& sup_outer,
                 std::vector<double>& sup_paper) {
  sup_outer.clear();
  sup_paper.clear();
  for (double radius : radii) {
    double so = 0.0, sp = 0.0;
    for (std::int64_t i = 0; i < samples_per_sphere; ++i) {
      const SpatialPoint p = sphere_sample(radius, i, samples_per_sphere, seed);
      if (map.kind == MapKind::Identity3) {
        so = std::max(so, 1.0);
        sp = std::max(sp, 1.0);
        continue;
      }
      const PlanarPoint q{std::hypot(p.x, p.y), p.z};
      if (q.x == 0.0 || distance_to_nonsmooth(q, map.config) <= boundary_margin * (1.0 + norm(q))) continue;
      const DistortionSample s = distortion_at(p, map.config);
      so = std::max(so, s.outer_ratio);
      sp = std::max(sp, s.paper_ratio);
    }
    sup_outer.push_back(so);
    sup_paper.push_back(sp);
  }
}

}  // namespace bcover::serial
