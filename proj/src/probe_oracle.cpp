#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "bcover/error.hpp"
#include "bcover/probes.hpp"

namespace bcover {
namespace {

struct Candidate {
  std::int64_t cell;
  double residual;
};

double residual_at(const MapHandle& map, const Coords& p, const Coords& target) {
  if (map.dimension() == 2) {
    const PlanarPoint v = apply(map, PlanarPoint{p[0], p[1]});
    return std::hypot(v.x - target[0], v.y - target[1]);
  }
  const SpatialPoint v = apply(map, SpatialPoint{p[0], p[1], p[2]});
  return distance(v, SpatialPoint{target[0], target[1], target[2]});
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

OracleReport brute_preimage_oracle(const MapHandle& map, const Coords& target, const Box& window, double step,
                                   double tol, const Exec& exec) {
  const int dim = map.dimension();
  if (window.dim != dim || static_cast<int>(target.size()) != dim) {
    throw MapError(ErrorCode::InvalidArgument, "oracle window and target must match the map dimension");
  }
  if (!(tol > 0.0)) throw MapError(ErrorCode::InvalidArgument, "oracle tolerance must be positive");
  const Grid grid(window, step);
  const std::int64_t rows = grid.n[0];
  const std::int64_t row_size = grid.size() / rows;

  std::vector<std::vector<Candidate>> per_row(static_cast<std::size_t>(rows));
  parallel_for(rows, exec, [&](std::int64_t row) {
    auto& out = per_row[static_cast<std::size_t>(row)];
    for (std::int64_t j = 0; j < row_size; ++j) {
      const std::int64_t cell = row * row_size + j;
      try {
        const double res = residual_at(map, grid.point(cell), target);
        if (res < tol) out.push_back({cell, res});
      } catch (const MapError&) {
      }
    }
  });

  std::vector<Candidate> cands;
  for (auto& row : per_row) cands.insert(cands.end(), row.begin(), row.end());

  std::unordered_map<std::int64_t, std::size_t> position;
  position.reserve(cands.size());
  for (std::size_t i = 0; i < cands.size(); ++i) position.emplace(cands[i].cell, i);

  DisjointSets sets(cands.size());
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const auto idx = grid.unravel(cands[i].cell);
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dz = (dim == 3 ? -1 : 0); dz <= (dim == 3 ? 1 : 0); ++dz) {
          const std::array<std::int64_t, 3> nb{idx[0] + dx, idx[1] + dy, idx[2] + dz};
          bool inside = true;
          for (int a = 0; a < 3; ++a) inside = inside && nb[a] >= 0 && nb[a] < grid.n[a];
          if (!inside) continue;
          const auto it = position.find(grid.ravel(nb));
          if (it != position.end()) sets.unite(i, it->second);
        }
      }
    }
  }

  OracleReport report;
  report.target = target;
  report.window = window;
  report.step = step;
  report.tolerance = tol;
  // Roots are the smallest member, so clusters come out in cell order.
  std::unordered_map<std::size_t, std::size_t> cluster_of_root;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const std::size_t root = sets.find(i);
    auto [it, inserted] = cluster_of_root.emplace(root, report.clusters.size());
    if (inserted) {
      OracleCluster c;
      c.residual = std::numeric_limits<double>::infinity();
      c.lo = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
              std::numeric_limits<double>::infinity()};
      c.hi = {-c.lo[0], -c.lo[1], -c.lo[2]};
      report.clusters.push_back(c);
    }
    OracleCluster& c = report.clusters[it->second];
    const Coords p = grid.point(cands[i].cell);
    ++c.cells;
    for (int a = 0; a < dim; ++a) {
      c.lo[a] = std::min(c.lo[a], p[static_cast<std::size_t>(a)]);
      c.hi[a] = std::max(c.hi[a], p[static_cast<std::size_t>(a)]);
    }
    if (cands[i].residual < c.residual) {
      c.residual = cands[i].residual;
      c.representative = p;
    }
  }
  for (OracleCluster& c : report.clusters) {
    for (int a = dim; a < 3; ++a) c.lo[a] = c.hi[a] = 0.0;
  }
  return report;
}

OracleComparison compare_solver_with_oracle(const MapHandle& map, const Box& target_window,
                                            const Box& search_window, std::int64_t targets, double step,
                                            double tol, std::uint64_t seed, const Exec& exec) {
  if (!has_preimage_solver(map)) {
    throw MapError(ErrorCode::NoSolver, "oracle comparison needs an analytic solver");
  }
  const int dim = map.dimension();
  OracleComparison out;
  for (std::int64_t i = 0; i < targets; ++i) {
    const Coords q = histogram_target(target_window, seed, i);
    std::vector<Coords> analytic;
    if (dim == 2) {
      for (const PlanarPoint& p : solve_preimages(map, PlanarPoint{q[0], q[1]})) analytic.push_back({p.x, p.y});
    } else {
      for (const SpatialPoint& p : solve_preimages(map, SpatialPoint{q[0], q[1], q[2]})) {
        analytic.push_back({p.x, p.y, p.z});
      }
    }
    const OracleReport oracle = brute_preimage_oracle(map, q, search_window, step, tol, exec);
    ++out.targets;
    if (oracle.clusters.size() != analytic.size()) {
      ++out.count_mismatches;
      continue;
    }
    std::vector<bool> taken(oracle.clusters.size(), false);
    for (const Coords& p : analytic) {
      bool matched = false;
      for (std::size_t k = 0; k < oracle.clusters.size() && !matched; ++k) {
        if (taken[k]) continue;
        bool inside = true;
        for (int a = 0; a < dim; ++a) {
          inside = inside && p[static_cast<std::size_t>(a)] >= oracle.clusters[k].lo[a] - step &&
                   p[static_cast<std::size_t>(a)] <= oracle.clusters[k].hi[a] + step;
        }
        if (inside) {
          taken[k] = true;
          matched = true;
        }
      }
      if (!matched) {
        ++out.location_mismatches;
        break;
      }
    }
  }
  return out;
}

}  // namespace bcover
