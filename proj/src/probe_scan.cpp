#include <cmath>
#include <string>

#include "bcover/error.hpp"
#include "bcover/probes.hpp"

namespace bcover {
namespace {

enum class CellStatus : unsigned char { Quiet, Hit, Rejected, Error };

void require_window_dimension(const MapHandle& map, const Box& window) {
  if (window.dim != map.dimension()) {
    throw MapError(ErrorCode::InvalidArgument, "window dimension does not match the map");
  }
}

}  // namespace

BranchScanReport branch_scan(const MapHandle& map, const Box& window, double step, double probe_radius,
                             const ReferenceSet& reference, const Exec& exec) {
  require_window_dimension(map, window);
  if (!(probe_radius > 0.0)) throw MapError(ErrorCode::InvalidArgument, "probe radius must be positive");
  const Grid grid(window, step);
  const std::int64_t cells = grid.size();
  std::vector<CellStatus> status(static_cast<std::size_t>(cells), CellStatus::Quiet);
  std::vector<int> winding(static_cast<std::size_t>(cells), 0);

  parallel_for(cells, exec, [&](std::int64_t i) {
    const auto idx = static_cast<std::size_t>(i);
    const Coords p = grid.point(i);
    try {
      const int w = local_index(map, p, probe_radius).winding;
      if (w < 2) return;
      winding[idx] = w;
      status[idx] = local_index(map, p, 0.5 * probe_radius).winding >= 2 ? CellStatus::Hit : CellStatus::Rejected;
    } catch (const MapError&) {
      status[idx] = CellStatus::Error;
    }
  });

  BranchScanReport report;
  report.window = window;
  report.step = step;
  report.probe_radius = probe_radius;
  report.cells = cells;
  double tube_sum = 0.0;
  for (std::int64_t i = 0; i < cells; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    switch (status[idx]) {
      case CellStatus::Hit: {
        BranchHit hit{grid.point(i), winding[idx]};
        const double d = reference.distance(hit.point);
        report.tube_max = std::max(report.tube_max, d);
        tube_sum += d;
        report.hits.push_back(std::move(hit));
        break;
      }
      case CellStatus::Rejected: ++report.rejected; break;
      case CellStatus::Error: ++report.errors; break;
      case CellStatus::Quiet: break;
    }
  }
  if (!report.hits.empty()) report.tube_mean = tube_sum / static_cast<double>(report.hits.size());
  return report;
}

Coords histogram_target(const Box& window, std::uint64_t seed, std::int64_t i) {
  Coords q(static_cast<std::size_t>(window.dim));
  for (int a = 0; a < window.dim; ++a) {
    const double u = counter_uniform(seed, 100 + static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(i));
    q[static_cast<std::size_t>(a)] = window.lo[a] + (window.hi[a] - window.lo[a]) * u;
  }
  return q;
}

namespace {

int preimage_count(const MapHandle& map, const Coords& q) {
  if (map.dimension() == 2) return static_cast<int>(solve_preimages(map, PlanarPoint{q[0], q[1]}).size());
  return static_cast<int>(solve_preimages(map, SpatialPoint{q[0], q[1], q[2]}).size());
}

}  // namespace

PreimageHistogram preimage_histogram(const MapHandle& map, const Box& window, std::int64_t m,
                                     std::uint64_t seed, const Exec& exec) {
  if (!has_preimage_solver(map)) {
    throw MapError(ErrorCode::NoSolver, "histogram needs an analytic preimage solver for " +
                                            std::string(to_string(map.kind)));
  }
  require_window_dimension(map, window);
  window.validate();
  if (m < 1) throw MapError(ErrorCode::InvalidArgument, "histogram needs at least one target");
  std::vector<int> counts(static_cast<std::size_t>(m), -1);
  parallel_for(m, exec, [&](std::int64_t i) {
    try {
      counts[static_cast<std::size_t>(i)] = preimage_count(map, histogram_target(window, seed, i));
    } catch (const MapError&) {
      counts[static_cast<std::size_t>(i)] = -1;
    }
  });
  PreimageHistogram h{window, m, seed, {}, 0};
  for (int c : counts) {
    if (c < 0) {
      ++h.errors;
    } else {
      ++h.counts[c];
    }
  }
  return h;
}

}  // namespace bcover
