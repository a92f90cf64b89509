#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "bcover/planar_map.hpp"
#include "bcover/probes.hpp"
#include "bcover/spatial_map.hpp"

namespace bcover {

using json = nlohmann::json;

inline constexpr const char* kToolName = "bcover";
inline constexpr const char* kToolVersion = "0.1.0";

// Points serialize as coordinate arrays.
void to_json(json& j, const PlanarPoint& p);
void from_json(const json& j, PlanarPoint& p);
void to_json(json& j, const SpatialPoint& p);
void from_json(const json& j, SpatialPoint& p);
void to_json(json& j, const Mat2& m);
void from_json(const json& j, Mat2& m);
void to_json(json& j, const Mat3& m);
void from_json(const json& j, Mat3& m);

void to_json(json& j, const PoleComponent& c);
void from_json(const json& j, PoleComponent& c);
void to_json(json& j, const PoleComponentsReport& r);
void from_json(const json& j, PoleComponentsReport& r);

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Box, dim, lo, hi)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(IndexReport, base, radius, samples, winding, refined)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ContinuityEntry, delta, modulus, samples, skipped)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(OpennessReport, base, delta, epsilon, targets, covered, fraction)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(BranchHit, point, winding)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(BranchScanReport, window, step, probe_radius, cells, hits, rejected, errors,
                                   tube_max, tube_mean)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PreimageHistogram, window, targets, seed, counts, errors)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(GrowthFit, radii, sup_outer, sup_paper, skipped, slope_outer, slope_paper,
                                   intercept, intercept_outer)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SweepEntry, threshold, components, separated)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(OracleCluster, representative, residual, cells, lo, hi)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(OracleReport, target, window, step, tolerance, clusters)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(OracleComparison, targets, count_mismatches, location_mismatches)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(DistortionSample, point, op_norm, jac_det, outer_ratio, paper_ratio)

json preimages_to_json(const PreimageSet& set);
json preimages_to_json(const SpatialPreimageSet& set);

struct Verdict {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation;  // "<=" or ">="
  bool passed = false;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Verdict, name, value, threshold, relation, passed)

Verdict check_at_most(std::string name, double value, double threshold);
Verdict check_at_least(std::string name, double value, double threshold);

struct ReportEnvelope {
  std::string tool = kToolName;
  std::string version = kToolVersion;
  std::string command;
  json config;  // resolved configuration, keyed by flag name
  std::string timestamp;
  json payload;
  std::vector<Verdict> verdicts;

  bool all_passed() const;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ReportEnvelope, tool, version, command, config, timestamp, payload, verdicts)

}  // namespace bcover
