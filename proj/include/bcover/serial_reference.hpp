#pragma once

// Straight-line serial versions of the grid and sampling kernels. They are
// kept for testing and benchmarking the OpenMP kernels in probes.hpp, which
// must reproduce them exactly for any worker count.

#include "bcover/probes.hpp"

namespace bcover::serial {

BranchScanReport branch_scan(const MapHandle& map, const Box& window, double step, double probe_radius,
                             const ReferenceSet& reference = {});

PreimageHistogram preimage_histogram(const MapHandle& map, const Box& window, std::int64_t m,
                                     std::uint64_t seed = 0);

std::vector<double> grid_norms(const MapHandle& map, const Box& window, double step);

OracleReport brute_preimage_oracle(const MapHandle& map, const Coords& target, const Box& window, double step,
                                   double tol);

// Per-sphere suprema of the two distortion ratios.
void growth_sups(const MapHandle& map, const std::vector<double>& radii, std::int64_t samples_per_sphere,
                 double boundary_margin, std::uint64_t seed, std::vector<double>& sup_outer,
                 std::vector<double>& sup_paper);

}  // namespace bcover::serial
