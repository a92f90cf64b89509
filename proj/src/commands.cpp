#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "bcover/cli_config.hpp"
#include "bcover/error.hpp"
#include "bcover/report.hpp"
#include "bcover/spatial_map.hpp"

namespace bcover {
namespace {

struct Output {
  json payload;
  std::vector<Verdict> verdicts;
  std::string csv;  // only figure-data and distortion fill this
};

bool is_planar(const MapHandle& map) { return map.dimension() == 2; }

Coords resolve_base(const RunConfig& cfg, const MapHandle& map) {
  const std::string& b = *cfg.base;
  if (b == "apex") return is_planar(map) ? Coords{1.0, 0.0} : Coords{1.0, 0.0, 0.0};
  if (b == "unit-circle") {
    if (is_planar(map)) throw MapError(ErrorCode::Usage, "--base: unit-circle needs a spatial map");
    return {1.0, 0.0, 0.0};
  }
  Coords c;
  std::istringstream is(b);
  std::string part;
  while (std::getline(is, part, ',')) c.push_back(std::stod(part));
  return c;
}

ReferenceSet resolve_reference(const std::string& name, const MapHandle& map) {
  ReferenceSet ref;
  if (name == "apex") {
    ref.kind = ReferenceSet::Kind::Point;
    ref.point = is_planar(map) ? Coords{1.0, 0.0} : Coords{1.0, 0.0, 0.0};
  } else if (name == "unit-circle") {
    ref.kind = ReferenceSet::Kind::UnitCircleXY;
  } else if (name == "unit-circle-xz") {
    ref.kind = ReferenceSet::Kind::UnitCircleXZ;
  } else if (name == "z-axis") {
    ref.kind = ReferenceSet::Kind::ZAxis;
  }
  return ref;
}

void require_paper_map(const MapHandle& map, const std::string& command) {
  if (map.kind != MapKind::PaperF && map.kind != MapKind::PaperFPlanar) {
    throw MapError(ErrorCode::Usage, command + " is available for paperF and paperF-planar");
  }
}

std::string csv_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

Output cmd_eval(const RunConfig& cfg, const MapHandle& map) {
  const Coords& p = *cfg.point;
  json value;
  if (is_planar(map)) {
    value = apply(map, PlanarPoint{p[0], p[1]});
  } else {
    value = apply(map, SpatialPoint{p[0], p[1], p[2]});
  }
  return {{{"point", p}, {"value", value}}, {}, {}};
}

Output cmd_jet(const RunConfig& cfg, const MapHandle& map) {
  require_paper_map(map, "jet");
  const Coords& p = *cfg.point;
  const MapConfig mc = cfg.map_config();
  if (is_planar(map)) {
    const Jet2 j = jet_planar({p[0], p[1]}, mc);
    return {{{"point", p}, {"value", j.value}, {"jacobian", j.jacobian}, {"det", j.jacobian.det()},
             {"smooth", j.smooth}},
            {},
            {}};
  }
  const Jet3 j = jet_spatial({p[0], p[1], p[2]}, mc);
  return {{{"point", p},
           {"value", j.value},
           {"jacobian", j.jacobian},
           {"det", j.jacobian.det()},
           {"planar_part", j.planar_part},
           {"angular_factor", j.angular_factor},
           {"smooth", j.smooth}},
          {},
          {}};
}

Output cmd_preimage(const RunConfig& cfg, const MapHandle& map) {
  const Coords& p = *cfg.point;
  const MapConfig mc = cfg.map_config();
  json body;
  if (map.kind == MapKind::PaperFPlanar) {
    body = preimages_to_json(preimage_planar({p[0], p[1]}, mc));
  } else if (map.kind == MapKind::PaperF) {
    body = preimages_to_json(preimage_spatial({p[0], p[1], p[2]}, mc));
  } else {
    json pts = json::array();
    if (is_planar(map)) {
      for (const PlanarPoint& q : solve_preimages(map, PlanarPoint{p[0], p[1]})) pts.push_back({{"point", q}});
    } else {
      for (const SpatialPoint& q : solve_preimages(map, SpatialPoint{p[0], p[1], p[2]})) pts.push_back({{"point", q}});
    }
    body = {{"count", pts.size()}, {"complete", true}, {"preimages", pts}};
  }
  body["target"] = p;
  return {body, {}, {}};
}

Output cmd_index(const RunConfig& cfg, const MapHandle& map) {
  const IndexReport r = local_index(map, resolve_base(cfg, map), *cfg.probe_radius, static_cast<int>(*cfg.n0));
  return {r, {}, {}};
}

Output cmd_branch_scan(const RunConfig& cfg, const MapHandle& map, const Exec& exec) {
  const BranchScanReport r =
      branch_scan(map, *cfg.window, *cfg.step, *cfg.probe_radius, resolve_reference(*cfg.reference, map), exec);
  Output out{r, {}, {}};
  out.payload["reference"] = *cfg.reference;
  if (cfg.assert_max_tube) out.verdicts.push_back(check_at_most("tube_max", r.tube_max, *cfg.assert_max_tube));
  return out;
}

Output cmd_continuity(const RunConfig& cfg, const MapHandle& map) {
  const Coords base = resolve_base(cfg, map);
  const auto entries = continuity_modulus(map, base, *cfg.deltas, static_cast<int>(*cfg.samples));
  return {{{"base", base}, {"entries", entries}}, {}, {}};
}

Output cmd_openness(const RunConfig& cfg, const MapHandle& map, const Exec& exec) {
  const OpennessReport r =
      openness_probe(map, resolve_base(cfg, map), *cfg.delta, *cfg.epsilon, *cfg.m, cfg.seed, exec);
  Output out{r, {}, {}};
  if (cfg.assert_min_fraction) {
    out.verdicts.push_back(check_at_least("covered_fraction", r.fraction, *cfg.assert_min_fraction));
  }
  return out;
}

Output cmd_histogram(const RunConfig& cfg, const MapHandle& map, const Exec& exec) {
  const PreimageHistogram h = preimage_histogram(map, *cfg.window, *cfg.m, cfg.seed, exec);
  const auto it = h.counts.find(static_cast<int>(*cfg.expect_count));
  const std::int64_t hits = it == h.counts.end() ? 0 : it->second;
  const double fraction = h.targets > 0 ? static_cast<double>(hits) / static_cast<double>(h.targets) : 0.0;
  Output out{h, {}, {}};
  out.payload["expect_count"] = *cfg.expect_count;
  out.payload["expected_fraction"] = fraction;
  if (cfg.assert_min_fraction) {
    out.verdicts.push_back(check_at_least("expected_fraction", fraction, *cfg.assert_min_fraction));
  }
  return out;
}

Output cmd_distortion(const RunConfig& cfg, const MapHandle& map) {
  if (map.kind != MapKind::PaperF) throw MapError(ErrorCode::Usage, "distortion is available for paperF");
  const MapConfig mc = cfg.map_config();
  std::vector<DistortionSample> samples;
  std::int64_t skipped = 0;
  if (cfg.point) {
    const Coords& p = *cfg.point;
    samples.push_back(distortion_at({p[0], p[1], p[2]}, mc));
  } else {
    for (double radius : *cfg.radii) {
      for (std::int64_t i = 0; i < *cfg.samples; ++i) {
        const SpatialPoint x = sphere_sample(radius, i, *cfg.samples, cfg.seed);
        const auto h = to_halfplane(x);
        if (distance_to_nonsmooth(h.q, mc) <= *cfg.margin * (1.0 + radius)) {
          ++skipped;
          continue;
        }
        try {
          samples.push_back(distortion_at(x, mc));
        } catch (const MapError&) {
          ++skipped;
        }
      }
    }
  }
  Output out{{{"samples", samples}, {"skipped", skipped}}, {}, {}};
  std::string csv = "X,Y,Z,op_norm,jac_det,outer_ratio,paper_ratio\n";
  for (const DistortionSample& s : samples) {
    csv += csv_number(s.point.x) + ',' + csv_number(s.point.y) + ',' + csv_number(s.point.z) + ',' +
           csv_number(s.op_norm) + ',' + csv_number(s.jac_det) + ',' + csv_number(s.outer_ratio) + ',' +
           csv_number(s.paper_ratio) + '\n';
  }
  out.csv = std::move(csv);
  return out;
}

Output cmd_growth(const RunConfig& cfg, const MapHandle& map, const Exec& exec) {
  const GrowthFit fit = growth_fit(map, *cfg.radii, *cfg.samples, *cfg.margin, cfg.seed, exec);
  Output out{fit, {}, {}};
  if (cfg.assert_slope_max) {
    out.verdicts.push_back(check_at_most("slope_paper", fit.slope_paper, *cfg.assert_slope_max));
    out.verdicts.push_back(check_at_most("slope_outer", fit.slope_outer, *cfg.assert_slope_max));
  }
  if (cfg.assert_slope_min) {
    out.verdicts.push_back(check_at_least("slope_paper", fit.slope_paper, *cfg.assert_slope_min));
    out.verdicts.push_back(check_at_least("slope_outer", fit.slope_outer, *cfg.assert_slope_min));
  }
  return out;
}

Output cmd_poles(const RunConfig& cfg, const MapHandle& map, const Exec& exec) {
  if (is_planar(map)) throw MapError(ErrorCode::Usage, "poles needs a spatial map");
  const PoleComponentsReport r = pole_components(map, *cfg.threshold, *cfg.window, *cfg.step, *cfg.poles,
                                                 cfg.sweep.value_or(std::vector<double>{}), exec);
  return {r, {}, {}};
}

Output cmd_oracle_check(const RunConfig& cfg, const MapHandle& map, const Exec& exec) {
  const OracleComparison c = compare_solver_with_oracle(map, *cfg.window, *cfg.search_window, *cfg.targets,
                                                        *cfg.step, *cfg.tolerance, cfg.seed, exec);
  Output out{c, {}, {}};
  if (cfg.assert_max_mismatches) {
    out.verdicts.push_back(check_at_most("mismatches", static_cast<double>(c.count_mismatches + c.location_mismatches),
                                         *cfg.assert_max_mismatches));
  }
  return out;
}

// Images of the five pieces of each stratum, as polylines.
Output cmd_figure_data(const RunConfig& cfg) {
  const MapConfig mc = cfg.map_config();
  constexpr int kPerSegment = 16;
  static const RegionTag tags[] = {RegionTag::S1, RegionTag::S2, RegionTag::S3, RegionTag::S4, RegionTag::S5};
  static const double cuts[] = {-1.0, -0.6, -0.2, 0.2, 0.6, 1.0};
  json paths = json::array();
  std::string csv = "r,segment_index,x,y\n";
  for (double r : *cfg.radii) {
    const double w = mc.slope * r;
    for (int s = 0; s < 5; ++s) {
      json line = json::array();
      for (int k = 0; k <= kPerSegment; ++k) {
        const double f = cuts[s] + (cuts[s + 1] - cuts[s]) * k / kPerSegment;
        const PlanarPoint v = eval_band(tags[s], {1.0 + r, f * w}, mc);
        line.push_back(v);
        csv += csv_number(r) + ',' + std::to_string(s + 1) + ',' + csv_number(v.x) + ',' + csv_number(v.y) + '\n';
      }
      paths.push_back({{"r", r}, {"segment_index", s + 1}, {"points", line}});
    }
  }
  return {{{"paths", paths}}, {}, csv};
}

Output dispatch(const RunConfig& cfg, const MapHandle& map, const Exec& exec) {
  const std::string& c = cfg.command;
  if (c == "eval") return cmd_eval(cfg, map);
  if (c == "jet") return cmd_jet(cfg, map);
  if (c == "preimage") return cmd_preimage(cfg, map);
  if (c == "index") return cmd_index(cfg, map);
  if (c == "branch-scan") return cmd_branch_scan(cfg, map, exec);
  if (c == "continuity") return cmd_continuity(cfg, map);
  if (c == "openness") return cmd_openness(cfg, map, exec);
  if (c == "histogram") return cmd_histogram(cfg, map, exec);
  if (c == "distortion") return cmd_distortion(cfg, map);
  if (c == "growth") return cmd_growth(cfg, map, exec);
  if (c == "poles") return cmd_poles(cfg, map, exec);
  if (c == "oracle-check") return cmd_oracle_check(cfg, map, exec);
  if (c == "figure-data") return cmd_figure_data(cfg);
  throw MapError(ErrorCode::Usage, "unknown command '" + c + "'");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw MapError(ErrorCode::Usage, "--out: cannot write '" + path + "'");
  f << text;
}

}  // namespace

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const std::optional<MapHandle> map = make_map(cfg.map, cfg.map_config());
    if (!map) throw MapError(ErrorCode::Usage, "--map: unknown map '" + cfg.map + "'");
    const Output result = dispatch(cfg, *map, Exec{cfg.workers});

    ReportEnvelope env;
    env.command = cfg.command;
    env.config = config_echo(cfg);
    env.timestamp = cfg.timestamp;
    env.payload = result.payload;
    env.verdicts = result.verdicts;
    const std::string text = json(env).dump(2) + "\n";

    if (cfg.format == "csv") {
      if (cfg.out.empty()) {
        out << result.csv;
      } else {
        write_file(cfg.out, result.csv);
        out << text;
      }
    } else {
      if (!cfg.out.empty()) write_file(cfg.out, text);
      out << text;
    }
    if (!env.all_passed()) {
      json failed = json::array();
      for (const Verdict& v : env.verdicts) {
        if (!v.passed) failed.push_back(v);
      }
      err << json{{"error", "threshold-failed"}, {"failed", failed}, {"exit_code", 2}}.dump() << '\n';
      return 2;
    }
    return 0;
  } catch (const MapError& e) {
    const int code = e.code() == ErrorCode::Usage ? 1 : 3;
    json j{{"error", std::string(to_string(e.code()))}, {"message", e.what()}, {"exit_code", code}};
    if (e.stage()) j["stage"] = *e.stage();
    err << j.dump() << '\n';
    return code;
  } catch (const std::exception& e) {
    err << json{{"error", "internal-error"}, {"message", e.what()}, {"exit_code", 3}}.dump() << '\n';
    return 3;
  }
}

}  // namespace bcover
