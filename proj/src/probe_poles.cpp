#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "bcover/error.hpp"
#include "bcover/probes.hpp"

namespace bcover {

std::vector<double> grid_norms(const MapHandle& map, const Grid& grid, const Exec& exec) {
  if (map.dimension() != 3 || grid.box.dim != 3) {
    throw MapError(ErrorCode::InvalidArgument, "pole detection works on spatial maps and windows");
  }
  std::vector<double> norms(static_cast<std::size_t>(grid.size()));
  parallel_for(grid.size(), exec, [&](std::int64_t i) {
    const Coords p = grid.point(i);
    double value;
    try {
      value = norm(apply(map, SpatialPoint{p[0], p[1], p[2]}));
    } catch (const MapError& e) {
      const bool pole = e.code() == ErrorCode::PunctureInput || e.code() == ErrorCode::PoleOverflow;
      value = pole ? std::numeric_limits<double>::infinity() : 0.0;
    }
    norms[static_cast<std::size_t>(i)] = value;
  });
  return norms;
}

namespace {

struct Labeling {
  std::vector<int> label;  // -1 below threshold
  std::vector<PoleComponent> components;
};

// Face-adjacent flood fill; components are numbered by their smallest cell.
Labeling label_components(const Grid& grid, const std::vector<double>& norms, double threshold) {
  Labeling out;
  out.label.assign(norms.size(), -1);
  std::vector<std::int64_t> stack;
  for (std::int64_t start = 0; start < grid.size(); ++start) {
    if (!(norms[static_cast<std::size_t>(start)] > threshold) || out.label[static_cast<std::size_t>(start)] >= 0) {
      continue;
    }
    const int id = static_cast<int>(out.components.size());
    PoleComponent comp;
    comp.lo = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
               std::numeric_limits<double>::infinity()};
    comp.hi = {-comp.lo[0], -comp.lo[1], -comp.lo[2]};
    out.label[static_cast<std::size_t>(start)] = id;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::int64_t cell = stack.back();
      stack.pop_back();
      ++comp.cells;
      const auto idx = grid.unravel(cell);
      for (int a = 0; a < 3; ++a) {
        const double c = grid.coordinate(a, idx[a]);
        comp.lo[a] = std::min(comp.lo[a], c);
        comp.hi[a] = std::max(comp.hi[a], c);
      }
      for (int a = 0; a < 3; ++a) {
        for (int dir : {-1, 1}) {
          auto nb = idx;
          nb[a] += dir;
          if (nb[a] < 0 || nb[a] >= grid.n[a]) continue;
          const std::int64_t j = grid.ravel(nb);
          if (norms[static_cast<std::size_t>(j)] > threshold && out.label[static_cast<std::size_t>(j)] < 0) {
            out.label[static_cast<std::size_t>(j)] = id;
            stack.push_back(j);
          }
        }
      }
    }
    out.components.push_back(comp);
  }
  return out;
}

std::optional<std::int64_t> nearest_cell(const Grid& grid, SpatialPoint p) {
  const std::array<double, 3> c{p.x, p.y, p.z};
  std::array<std::int64_t, 3> idx{};
  for (int a = 0; a < 3; ++a) {
    const double h = grid.step(a);
    const double f = h > 0.0 ? (c[a] - grid.box.lo[a]) / h : 0.0;
    idx[a] = std::llround(f);
    if (idx[a] < 0 || idx[a] >= grid.n[a]) return std::nullopt;
  }
  return grid.ravel(idx);
}

// Assigns poles to components; true when no two poles share a component and
// every pole found one.
bool assign_poles(const Grid& grid, Labeling& lab, const std::vector<SpatialPoint>& poles) {
  bool separated = true;
  std::set<int> used;
  for (std::size_t k = 0; k < poles.size(); ++k) {
    const auto cell = nearest_cell(grid, poles[k]);
    const int id = cell ? lab.label[static_cast<std::size_t>(*cell)] : -1;
    if (id < 0 || !used.insert(id).second) {
      separated = false;
      continue;
    }
    lab.components[static_cast<std::size_t>(id)].pole = static_cast<int>(k);
  }
  return separated && !poles.empty();
}

}  // namespace

PoleComponentsReport pole_components(const MapHandle& map, double threshold, const Box& window, double step,
                                     const std::vector<SpatialPoint>& poles,
                                     const std::vector<double>& sweep_thresholds, const Exec& exec) {
  const Grid grid(window, step);
  const std::vector<double> norms = grid_norms(map, grid, exec);

  PoleComponentsReport report;
  report.threshold = threshold;
  report.window = window;
  report.step = step;
  Labeling lab = label_components(grid, norms, threshold);
  report.separated = assign_poles(grid, lab, poles);
  report.components = std::move(lab.components);

  for (double t : sweep_thresholds) {
    Labeling sl = label_components(grid, norms, t);
    const bool sep = assign_poles(grid, sl, poles);
    report.sweep.push_back({t, static_cast<std::int64_t>(sl.components.size()), sep});
    if (sep && (!report.min_separating_threshold || t < *report.min_separating_threshold)) {
      report.min_separating_threshold = t;
    }
  }
  if (report.min_separating_threshold) report.r0_surrogate = 1.0 / *report.min_separating_threshold;
  return report;
}

}  // namespace bcover
