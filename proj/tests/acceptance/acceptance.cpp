// Acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "bcover/error.hpp"
#include "bcover/planar_map.hpp"
#include "bcover/probes.hpp"
#include "bcover/report.hpp"
#include "bcover/spatial_map.hpp"

using namespace bcover;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
  json report;  // compared byte for byte across worker counts
  double seconds = 0.0;
};

const MapConfig kReg{};
const MapConfig kLit{1.0, Profile::Literal};

// ---------------------------------------------------------------- 1

Outcome planar_branch(const Exec& exec) {
  const BranchScanReport scan = branch_scan(MapHandle::paper_f_planar(kReg), Box::planar(0.5, 1.5, -0.5, 0.5), 1e-3,
                                            1e-4, {ReferenceSet::Kind::Point, {1.0, 0.0}}, exec);
  const IndexReport apex = local_index(MapHandle::paper_f_planar(kReg), PlanarPoint{1.0, 0.0}, 1e-4);
  const bool ok = !scan.hits.empty() && scan.tube_max <= 2e-3 && apex.winding == 2;
  char buf[160];
  std::snprintf(buf, sizeof buf, "hits=%zu max dist to apex=%.3g (<= 2e-3), apex index=%d", scan.hits.size(),
                scan.tube_max, apex.winding);
  return {ok, buf, {{"scan", scan}, {"apex", apex}}};
}

// ---------------------------------------------------------------- 2

BranchScanReport spatial_scan(const Exec& exec) {
  // probe radius 3 steps
  return branch_scan(MapHandle::paper_f(kReg), Box::cube(-1.5, 1.5), 2e-2, 6e-2,
                     {ReferenceSet::Kind::UnitCircleXY, {}}, exec);
}

Outcome spatial_branch(const Exec& exec) {
  const BranchScanReport scan = spatial_scan(exec);
  int missed = 0;
  for (int k = 0; k < 360; ++k) {
    const double a = 2.0 * std::numbers::pi * k / 360.0;
    const SpatialPoint c{std::cos(a), std::sin(a), 0.0};
    bool found = false;
    for (const BranchHit& h : scan.hits) {
      if (distance(c, {h.point[0], h.point[1], h.point[2]}) <= 4e-2) {
        found = true;
        break;
      }
    }
    missed += !found;
  }
  const bool ok = !scan.hits.empty() && scan.tube_max <= 4e-2 && missed == 0;
  char buf[200];
  std::snprintf(buf, sizeof buf, "hits=%zu tube max=%.3g (<= 4e-2), circle points without a hit=%d/360",
                scan.hits.size(), scan.tube_max, missed);
  return {ok, buf, {{"scan", scan}, {"missed", missed}}};
}

// ---------------------------------------------------------------- 3

const std::vector<double> kRadii{2, 4, 8, 16, 32, 64, 128, 256};

Outcome distortion_growth(const Exec& exec) {
  const GrowthFit fit = growth_fit(kReg, kRadii, 2000, kDefaultBoundaryMargin, 0, exec);
  const double ratio = distortion_at({3.0, 0.0, 0.0}, kReg).paper_ratio;
  const double rel = std::abs(ratio - 81.0) / 81.0;
  const bool ok = fit.slope_paper >= 3.5 && fit.slope_paper <= 4.3 && fit.slope_outer >= 3.5 &&
                  fit.slope_outer <= 4.3 && rel <= 1e-9;
  char buf[200];
  std::snprintf(buf, sizeof buf, "slope_paper=%.4f slope_outer=%.4f (in [3.5,4.3]), paper_ratio(3,0,0)=%.12g",
                fit.slope_paper, fit.slope_outer, ratio);
  return {ok, buf, {{"fit", fit}, {"ratio_at_3", ratio}}};
}

// ---------------------------------------------------------------- 4

Outcome degree_structure(const Exec& exec) {
  const MapHandle f = MapHandle::paper_f_planar(kReg);
  const Box targets = Box::planar(0.05, 8.0, -6.0, 6.0);
  const PreimageHistogram hist = preimage_histogram(f, targets, 10000, 0, exec);
  const auto two = hist.counts.find(2);
  const double fraction = two == hist.counts.end() ? 0.0 : static_cast<double>(two->second) / hist.targets;
  const std::size_t at_branch = preimage_planar({1.0, 0.0}, kReg).size();
  const std::size_t near_branch = preimage_planar({1.0 + 1e-6, 1e-6}, kReg).size();
  const OracleComparison cmp =
      compare_solver_with_oracle(f, targets, Box::planar(0.01, 21.0, -7.5, 7.5), 200, 1e-2, 1e-1, 0, exec);
  const bool ok = fraction >= 0.99 && at_branch == 1 && near_branch == 2 && cmp.count_mismatches == 0 &&
                  cmp.location_mismatches == 0 && hist.errors == 0;
  char buf[240];
  std::snprintf(buf, sizeof buf,
                "count 2 for %.2f%% of 1e4 targets, count at (1,0)=%zu, oracle: %lld count and %lld location "
                "mismatches over %lld targets",
                100.0 * fraction, at_branch, static_cast<long long>(cmp.count_mismatches),
                static_cast<long long>(cmp.location_mismatches), static_cast<long long>(cmp.targets));
  return {ok, buf, {{"histogram", hist}, {"at_branch", at_branch}, {"oracle", cmp}}};
}

// ---------------------------------------------------------------- 5

Outcome junctions_and_sense(const Exec&) {
  std::mt19937_64 rng(5);
  auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto logu = [&](double lo, double hi) { return std::exp(uni(std::log(lo), std::log(hi))); };

  struct Junction {
    double fraction;
    RegionTag below, above;
  };
  static const Junction junctions[] = {
      {-1.0, RegionTag::Outside, RegionTag::S1}, {-0.6, RegionTag::S1, RegionTag::S2},
      {-0.2, RegionTag::S2, RegionTag::S3},      {0.2, RegionTag::S3, RegionTag::S4},
      {0.6, RegionTag::S4, RegionTag::S5},       {1.0, RegionTag::S5, RegionTag::Outside},
  };
  double worst_junction = 0.0;  // in units of 1e-12 (1 + |value|)
  for (int i = 0; i < 1000; ++i) {
    const double x = 1.0 + logu(1e-4, 1e4);
    const Junction& j = junctions[i % 6];
    const PlanarPoint p{x, j.fraction * kReg.slope * (x - 1.0)};
    const PlanarPoint a = eval_band(j.below, p, kReg);
    const PlanarPoint b = eval_band(j.above, p, kReg);
    worst_junction = std::max(worst_junction, distance(a, b) / (1e-12 * (1.0 + norm(a))));
  }

  static const double cuts[] = {-1.0, -0.6, -0.2, 0.2, 0.6, 1.0};
  auto smooth_point = [&](double rlo, double rhi, double gap) {
    const double r = logu(rlo, rhi);
    const int band = static_cast<int>(uni(0.0, 5.0));
    return PlanarPoint{1.0 + r, uni(cuts[band] + gap, cuts[band + 1] - gap) * kReg.slope * r};
  };
  std::int64_t nonpositive = 0, smooth = 0;
  for (int i = 0; i < 100000; ++i) {
    const PlanarPoint q = smooth_point(1e-4, 1e4, 1e-9);
    const Jet2 j = jet_planar(q, kReg);
    if (!j.smooth) continue;
    ++smooth;
    const double a = uni(0.0, 2.0 * std::numbers::pi);
    const Jet3 s = jet_spatial({q.x * std::cos(a), q.x * std::sin(a), q.y}, kReg);
    if (!(j.jacobian.det() > 0.0) || !(s.jacobian.det() > 0.0)) ++nonpositive;
  }

  double worst_fd = 0.0;
  const double h = 1e-6;
  for (int i = 0; i < 1000; ++i) {
    PlanarPoint q = smooth_point(1e-2, 1e2, 1e-3);
    if (i % 5 == 0) q = {uni(1e-2, 10.0), uni(-10.0, 10.0)};
    if (distance_to_nonsmooth(q, kReg) < 1e-4 * (1.0 + norm(q))) continue;
    const Jet2 j = jet_planar(q, kReg);
    double scale = 1.0, err = 0.0;
    for (double v : j.jacobian.a) scale = std::max(scale, std::abs(v));
    const PlanarPoint ex = (1.0 / (2 * h)) * (eval_planar({q.x + h, q.y}, kReg) - eval_planar({q.x - h, q.y}, kReg));
    const PlanarPoint ey = (1.0 / (2 * h)) * (eval_planar({q.x, q.y + h}, kReg) - eval_planar({q.x, q.y - h}, kReg));
    const double fd[4] = {ex.x, ey.x, ex.y, ey.y};
    for (int k = 0; k < 4; ++k) err = std::max(err, std::abs(fd[k] - j.jacobian.a[k]));
    worst_fd = std::max(worst_fd, err / scale);

    const double a = uni(0.0, 2.0 * std::numbers::pi);
    const SpatialPoint p{q.x * std::cos(a), q.x * std::sin(a), q.y};
    const Jet3 s = jet_spatial(p, kReg);
    double s_scale = 1.0, s_err = 0.0;
    for (double v : s.jacobian.a) s_scale = std::max(s_scale, std::abs(v));
    const SpatialPoint e[3] = {{h, 0, 0}, {0, h, 0}, {0, 0, h}};
    for (int c = 0; c < 3; ++c) {
      const SpatialPoint d = (1.0 / (2 * h)) * (eval_spatial(p + e[c], kReg) - eval_spatial(p - e[c], kReg));
      s_err = std::max({s_err, std::abs(d.x - s.jacobian(0, c)), std::abs(d.y - s.jacobian(1, c)),
                        std::abs(d.z - s.jacobian(2, c))});
    }
    worst_fd = std::max(worst_fd, s_err / s_scale);
  }

  const bool ok = worst_junction <= 1.0 && nonpositive == 0 && smooth >= 99000 && worst_fd <= 1e-5;
  char buf[240];
  std::snprintf(buf, sizeof buf,
                "junction gap <= %.3g x 1e-12(1+|v|), det<=0 at %lld of %lld smooth points, worst jet vs central "
                "difference %.3g (<= 1e-5)",
                worst_junction, static_cast<long long>(nonpositive), static_cast<long long>(smooth), worst_fd);
  return {ok, buf, {{"junction", worst_junction}, {"nonpositive", nonpositive}, {"fd", worst_fd}}};
}

// ---------------------------------------------------------------- 6

Outcome variant_diagnostic(const Exec&) {
  const auto lit = continuity_modulus(MapHandle::paper_f_planar(kLit), {1.0, 0.0}, {1e-2});
  const auto reg = continuity_modulus(MapHandle::paper_f_planar(kReg), {1.0, 0.0}, {1e-1, 1e-2, 1e-3, 1e-4});
  bool ok = lit.at(0).modulus >= 199.0;
  double worst = 0.0;
  for (const ContinuityEntry& e : reg) {
    ok = ok && e.modulus <= 10.0 * e.delta;
    worst = std::max(worst, e.modulus / e.delta);
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "literal modulus at 1e-2 = %.4g (>= 199), regularized max modulus/delta = %.3g (<= 10)",
                lit.at(0).modulus, worst);
  return {ok, buf, {{"literal", lit}, {"regularized", reg}}};
}

// ---------------------------------------------------------------- 7

Outcome shells(const Exec& exec, const BranchScanReport& paper_scan, const GrowthFit& paper_fit) {
  bool every_shell = true;
  json per_shell = json::array();
  for (double r = 1.0; r <= 64.0; r *= 2.0) {
    // scan the slab R <= z <= 2R around the axis
    const BranchScanReport s = branch_scan(MapHandle::winding3(), Box::spatial(-r / 4, r / 4, -r / 4, r / 4, r, 2 * r),
                                           r / 8, r / 16, {ReferenceSet::Kind::ZAxis, {}}, exec);
    int in_shell = 0;
    for (const BranchHit& h : s.hits) {
      const double n = std::sqrt(h.point[0] * h.point[0] + h.point[1] * h.point[1] + h.point[2] * h.point[2]);
      in_shell += (n >= r && n < 2 * r && h.winding == 2);
    }
    every_shell = every_shell && in_shell > 0;
    per_shell.push_back({{"R", r}, {"hits", in_shell}});
  }
  double max_norm = 0.0;
  for (const BranchHit& h : paper_scan.hits) {
    max_norm = std::max(max_norm, std::sqrt(h.point[0] * h.point[0] + h.point[1] * h.point[1] + h.point[2] * h.point[2]));
  }
  const bool slope_four = std::abs(paper_fit.slope_paper - 4.0) <= 0.3 && std::abs(paper_fit.slope_outer - 4.0) <= 0.3;
  const bool ok = every_shell && !paper_scan.hits.empty() && max_norm <= 1.1 && slope_four;
  char buf[220];
  std::snprintf(buf, sizeof buf,
                "winding map branch in every shell R=1..64: %s; paperF hits max |x|=%.4f (<= 1.1); paperF slope %.3f",
                every_shell ? "yes" : "no", max_norm, paper_fit.slope_paper);
  return {ok, buf, {{"shells", per_shell}, {"max_norm", max_norm}}};
}

// ---------------------------------------------------------------- 8

Outcome remark_poles(const Exec& exec) {
  const MapHandle remark = MapHandle::remark();
  bool bound = true;
  json norms = json::array();
  for (double t : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const double n = norm(remark_map({t, 0.0, 0.0}));
    bound = bound && n >= 1.0 / (4.0 * t);
    norms.push_back(n);
  }
  const PoleComponentsReport poles = pole_components(remark, 100.0, Box::cube(-0.5, 0.5), 0.01, {{0, 0, 0}}, {}, exec);
  const bool one = poles.components.size() == 1 && poles.components[0].pole == 0;
  int branch = 0;
  for (int k = 0; k < 16; ++k) {
    const double a = 2.0 * std::numbers::pi * k / 16.0;
    branch += local_index(remark, SpatialPoint{std::cos(a), 0.0, std::sin(a)}, 1e-3).winding == 2;
  }
  const bool ok = bound && one && branch == 16;
  char buf[200];
  std::snprintf(buf, sizeof buf, "pole bound %s, components above 100: %zu (contains 0: %s), index 2 at %d/16 circle points",
                bound ? "holds" : "fails", poles.components.size(), one ? "yes" : "no", branch);
  return {ok, buf, {{"norms", norms}, {"poles", poles}, {"branch", branch}}};
}

// ---------------------------------------------------------------- driver

template <class Fn>
Outcome timed(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o = fn();
  o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return o;
}

std::vector<Outcome> run_all(const Exec& exec) {
  std::vector<Outcome> out;
  out.push_back(timed([&] { return planar_branch(exec); }));
  out.push_back(timed([&] { return spatial_branch(exec); }));
  out.push_back(timed([&] { return distortion_growth(exec); }));
  out.push_back(timed([&] { return degree_structure(exec); }));
  out.push_back(timed([&] { return junctions_and_sense(exec); }));
  out.push_back(timed([&] { return variant_diagnostic(exec); }));
  const BranchScanReport scan = out[1].report["scan"].get<BranchScanReport>();
  const GrowthFit fit = out[2].report["fit"].get<GrowthFit>();
  out.push_back(timed([&] { return shells(exec, scan, fit); }));
  out.push_back(timed([&] { return remark_poles(exec); }));
  return out;
}

const char* kNames[] = {
    "branch locus (planar)",    "branch locus (spatial)",      "distortion growth",
    "degree structure",         "junctions and sense",         "variant diagnostic",
    "branch shells vs bounded", "pole and branch of the remark map", "determinism",
};

const double kBudgets[] = {120, 300, 60, 300, 60, 60, 120, 120};

}  // namespace

int main() {
  int failures = 0;
  std::vector<Outcome> base;
  try {
    base = run_all(Exec{});
  } catch (const MapError& e) {
    std::printf("FAIL acceptance aborted: %s\n", e.what());
    return 1;
  }
  for (std::size_t i = 0; i < base.size(); ++i) {
    const bool in_time = base[i].seconds <= kBudgets[i];
    const bool ok = base[i].passed && in_time;
    failures += !ok;
    std::printf("%s criterion %zu, %s: %s [%.1fs]\n", ok ? "PASS" : "FAIL", i + 1, kNames[i], base[i].detail.c_str(),
                base[i].seconds);
    std::fflush(stdout);
  }

  const std::vector<Outcome> one = run_all(Exec{1});
  const std::vector<Outcome> eight = run_all(Exec{8});
  int differing = 0;
  std::string which;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const std::string a = one[i].report.dump();
    if (a != eight[i].report.dump() || a != base[i].report.dump()) {
      ++differing;
      which += " " + std::to_string(i + 1);
    }
  }
  failures += differing != 0;
  std::printf("%s criterion 9, %s: reports of criteria 1-8 identical at 1 and 8 workers%s\n",
              differing == 0 ? "PASS" : "FAIL", kNames[8], differing == 0 ? "" : (", differ:" + which).c_str());
  return failures == 0 ? 0 : 1;
}
