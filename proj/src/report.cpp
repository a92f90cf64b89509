#include "bcover/report.hpp"

#include <algorithm>

namespace bcover {

void to_json(json& j, const PlanarPoint& p) { j = json::array({p.x, p.y}); }
void from_json(const json& j, PlanarPoint& p) { p = {j.at(0).get<double>(), j.at(1).get<double>()}; }
void to_json(json& j, const SpatialPoint& p) { j = json::array({p.x, p.y, p.z}); }
void from_json(const json& j, SpatialPoint& p) {
  p = {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}
void to_json(json& j, const Mat2& m) { j = m.a; }
void from_json(const json& j, Mat2& m) { m.a = j.get<std::array<double, 4>>(); }
void to_json(json& j, const Mat3& m) { j = m.a; }
void from_json(const json& j, Mat3& m) { m.a = j.get<std::array<double, 9>>(); }

void to_json(json& j, const PoleComponent& c) {
  j = json{{"cells", c.cells}, {"pole", c.pole ? json(*c.pole) : json(nullptr)}, {"lo", c.lo}, {"hi", c.hi}};
}

void from_json(const json& j, PoleComponent& c) {
  j.at("cells").get_to(c.cells);
  c.pole = j.at("pole").is_null() ? std::nullopt : std::optional<int>(j.at("pole").get<int>());
  j.at("lo").get_to(c.lo);
  j.at("hi").get_to(c.hi);
}

namespace {
json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
std::optional<double> read_optional(const json& j) {
  return j.is_null() ? std::nullopt : std::optional<double>(j.get<double>());
}
}  // namespace

void to_json(json& j, const PoleComponentsReport& r) {
  j = json{{"threshold", r.threshold},
           {"window", r.window},
           {"step", r.step},
           {"components", r.components},
           {"separated", r.separated},
           {"sweep", r.sweep},
           {"min_separating_threshold", optional_number(r.min_separating_threshold)},
           {"r0_surrogate", optional_number(r.r0_surrogate)}};
}

void from_json(const json& j, PoleComponentsReport& r) {
  j.at("threshold").get_to(r.threshold);
  j.at("window").get_to(r.window);
  j.at("step").get_to(r.step);
  j.at("components").get_to(r.components);
  j.at("separated").get_to(r.separated);
  j.at("sweep").get_to(r.sweep);
  r.min_separating_threshold = read_optional(j.at("min_separating_threshold"));
  r.r0_surrogate = read_optional(j.at("r0_surrogate"));
}

json preimages_to_json(const PreimageSet& set) {
  json points = json::array();
  for (std::size_t i = 0; i < set.size(); ++i) {
    points.push_back({{"point", set.points[i]}, {"region", to_string(set.provenance[i])}});
  }
  return {{"count", set.size()}, {"complete", set.complete}, {"preimages", points}};
}

json preimages_to_json(const SpatialPreimageSet& set) {
  json points = json::array();
  for (std::size_t i = 0; i < set.size(); ++i) {
    points.push_back({{"point", set.points[i]}, {"region", to_string(set.provenance[i])}});
  }
  return {{"count", set.size()}, {"complete", set.complete}, {"preimages", points}};
}

Verdict check_at_most(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, "<=", value <= threshold};
}

Verdict check_at_least(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, ">=", value >= threshold};
}

bool ReportEnvelope::all_passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

}  // namespace bcover
