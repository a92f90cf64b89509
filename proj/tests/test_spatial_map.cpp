#include <Eigen/Dense>
#include <numbers>

#include "doctest.h"

#include "bcover/error.hpp"
#include "bcover/probes.hpp"
#include "bcover/spatial_map.hpp"
#include "support.hpp"

using namespace bcover;
using doctest::Approx;

namespace {

const MapConfig kReg{};

Eigen::Matrix3d fd_jacobian(SpatialPoint p, const MapConfig& cfg, double h) {
  Eigen::Matrix3d m;
  const SpatialPoint e[3] = {{h, 0, 0}, {0, h, 0}, {0, 0, h}};
  for (int c = 0; c < 3; ++c) {
    const SpatialPoint d = (1.0 / (2 * h)) * (eval_spatial(p + e[c], cfg) - eval_spatial(p - e[c], cfg));
    m(0, c) = d.x;
    m(1, c) = d.y;
    m(2, c) = d.z;
  }
  return m;
}

Eigen::Matrix3d to_eigen(const Mat3& m) {
  Eigen::Matrix3d e;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) e(r, c) = m(r, c);
  return e;
}

double sigma_max(const Eigen::Matrix3d& m) {
  return Eigen::JacobiSVD<Eigen::Matrix3d>(m).singularValues()(0);
}

SpatialPoint random_smooth(testing::Gen& gen, const MapConfig& cfg, double rlo, double rhi) {
  const PlanarPoint q = gen.cone_point(cfg, rlo, rhi, 1e-3);
  return gen.rotate(q, gen.uniform(0.0, 2.0 * std::numbers::pi));
}

}  // namespace

TEST_CASE("eval_spatial examples") {
  const SpatialPoint a = eval_spatial({3.0, 0.0, 0.0}, kReg);
  CHECK(a.x == Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(a.y == 0.0);
  CHECK(a.z == 0.0);
  CHECK(eval_spatial({0.0, 0.0, 5.0}, kReg) == SpatialPoint{0.0, 0.0, 5.0});
  const SpatialPoint b = eval_spatial({0.0, 3.0, 0.0}, kReg);
  CHECK(b.x == 0.0);
  CHECK(b.y == Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(b.z == 0.0);
}

TEST_CASE("eval_spatial agrees with the planar oracle on every half-plane") {
  testing::Gen gen(31);
  for (const MapConfig& cfg : {kReg, MapConfig{1.0, Profile::Literal}}) {
    for (int i = 0; i < 20000; ++i) {
      const SpatialPoint p{gen.uniform(-10, 10), gen.uniform(-10, 10), gen.uniform(-10, 10)};
      const SpatialPoint a = eval_spatial(p, cfg);
      const SpatialPoint b = testing::spatial_oracle(p, cfg);
      REQUIRE(distance(a, b) <= 1e-12 * (1.0 + norm(b)));
    }
  }
}

TEST_CASE("angle preservation, axis identity and rotational equivariance") {
  testing::Gen gen(32);
  for (int i = 0; i < 100000; ++i) {
    const SpatialPoint p{gen.uniform(-20, 20), gen.uniform(-20, 20), gen.uniform(-20, 20)};
    const SpatialPoint v = eval_spatial(p, kReg);
    const double da = std::remainder(std::atan2(v.y, v.x) - std::atan2(p.y, p.x), 2.0 * std::numbers::pi);
    REQUIRE(std::abs(da) <= 1e-12);
  }
  for (int i = 0; i < 1000; ++i) {
    const SpatialPoint axis{0.0, 0.0, gen.uniform(-1e3, 1e3)};
    CHECK(eval_spatial(axis, kReg) == axis);
  }
  for (int i = 0; i < 10000; ++i) {
    const SpatialPoint p{gen.uniform(-5, 5), gen.uniform(-5, 5), gen.uniform(-5, 5)};
    const double th = gen.uniform(0.0, 2.0 * std::numbers::pi);
    const double c = std::cos(th), s = std::sin(th);
    auto rot = [&](SpatialPoint x) { return SpatialPoint{c * x.x - s * x.y, s * x.x + c * x.y, x.z}; };
    const SpatialPoint lhs = eval_spatial(rot(p), kReg);
    const SpatialPoint rhs = rot(eval_spatial(p, kReg));
    REQUIRE(distance(lhs, rhs) <= 1e-12 * (1.0 + norm(rhs)));
  }
}

TEST_CASE("jet_spatial examples") {
  const Jet3 j = jet_spatial({3.0, 0.0, 0.0}, kReg);
  CHECK(j.angular_factor == Approx(1.0 / 9.0));
  CHECK(j.jacobian.det() == Approx(5.0 / 81.0));
  const Jet3 id = jet_spatial({0.5, 0.0, 7.0}, kReg);
  CHECK(id.planar_part.a == Mat2::identity().a);
  CHECK(id.angular_factor == 1.0);
  CHECK_THROWS_AS(jet_spatial({0.0, 0.0, 1.0}, kReg), MapError);
}

TEST_CASE("spatial jets match central differences and the SVD oracle") {
  testing::Gen gen(33);
  int checked = 0;
  while (checked < 1000) {
    const SpatialPoint p = random_smooth(gen, kReg, 1e-2, 1e2);
    const Jet3 j = jet_spatial(p, kReg);
    if (!j.smooth) continue;
    const Eigen::Matrix3d fd = fd_jacobian(p, kReg, 1e-6);
    const Eigen::Matrix3d an = to_eigen(j.jacobian);
    CHECK((fd - an).cwiseAbs().maxCoeff() <= 1e-5 * std::max(1.0, an.cwiseAbs().maxCoeff()));
    const DistortionSample d = distortion_at(p, kReg);
    CHECK(d.op_norm == Approx(sigma_max(an)).epsilon(1e-9));
    CHECK(d.jac_det == Approx(an.determinant()).epsilon(1e-9));
    CHECK(d.jac_det > 0.0);
    ++checked;
  }
}

TEST_CASE("spatial determinant is positive at smooth points") {
  testing::Gen gen(34);
  for (int i = 0; i < 100000; ++i) {
    const SpatialPoint p = random_smooth(gen, kReg, 1e-4, 1e4);
    const Jet3 j = jet_spatial(p, kReg);
    if (!j.smooth) continue;
    REQUIRE(j.planar_part.det() * j.angular_factor > 0.0);
  }
}

TEST_CASE("distortion examples") {
  const DistortionSample a = distortion_at({3.0, 0.0, 0.0}, kReg);
  CHECK(a.op_norm == Approx(5.0));
  CHECK(a.jac_det == Approx(5.0 / 81.0));
  CHECK(std::abs(a.paper_ratio - 81.0) <= 1e-9 * 81.0);
  CHECK(std::abs(a.outer_ratio - 2025.0) <= 1e-9 * 2025.0);

  const DistortionSample b = distortion_at({0.3, 0.0, 9.0}, kReg);
  CHECK(b.op_norm == 1.0);
  CHECK(b.jac_det == 1.0);
  CHECK(b.paper_ratio == 1.0);
  CHECK(b.outer_ratio == 1.0);

  // an S1 point: planar part [[1,0],[4,5]] and angular factor 1
  const DistortionSample c = distortion_at({2.0, 0.0, -0.9}, kReg);
  Eigen::Matrix2d m;
  m << 1, 0, 4, 5;
  CHECK(c.jac_det == Approx(5.0));
  CHECK(c.op_norm == Approx(Eigen::JacobiSVD<Eigen::Matrix2d>(m).singularValues()(0)).epsilon(1e-12));

  // (2, 0, 0.5) lies in S4: det 5 (1 + r - g) / (2 r) times u / rho
  const DistortionSample d = distortion_at({2.0, 0.0, 0.5}, kReg);
  CHECK(d.jac_det == Approx(3.75 * (1.625 / 2.0)).epsilon(1e-12));

  CHECK_THROWS_AS(distortion_at({2.0, 0.0, 0.6}, kReg), MapError);
  CHECK_THROWS_AS(distortion_at({0.0, 0.0, 0.6}, kReg), MapError);
}

TEST_CASE("pointwise distortion stays under the fitted bound") {
  const std::vector<double> radii{2, 4, 8, 16, 32, 64, 128, 256};
  const GrowthFit fit = growth_fit(kReg, radii, 2000);
  const double c = std::exp(fit.intercept);
  testing::Gen gen(35);
  int checked = 0;
  for (int i = 0; i < 100000; ++i) {
    const double radius = gen.log_uniform(2.0, 256.0);
    const double z = gen.uniform(-1.0, 1.0);
    const double phi = gen.uniform(0.0, 2.0 * std::numbers::pi);
    const double s = std::sqrt(1.0 - z * z);
    const SpatialPoint p{radius * s * std::cos(phi), radius * s * std::sin(phi), radius * z};
    if (p.x == 0.0 && p.y == 0.0) continue;
    const auto h = to_halfplane(p);
    if (distance_to_nonsmooth(h.q, kReg) <= kDefaultBoundaryMargin * (1.0 + radius)) continue;
    const double ratio = distortion_at(p, kReg).paper_ratio;
    const double r4 = std::pow(norm(p), 4.0);
    REQUIRE(ratio <= 1.05 * c * r4);
    ++checked;
  }
  CHECK(checked > 99000);
}

TEST_CASE("preimage_spatial examples") {
  const SpatialPreimageSet a = preimage_spatial({1.0 / 3.0, 0.0, 0.0}, kReg);
  REQUIRE(a.size() == 2);
  bool self = false, far = false;
  for (const SpatialPoint& p : a.points) {
    self = self || distance(p, {1.0 / 3.0, 0.0, 0.0}) < 1e-12;
    far = far || distance(p, {3.0, 0.0, 0.0}) < 1e-12;
  }
  CHECK(self);
  CHECK(far);

  const SpatialPreimageSet b = preimage_spatial({0.0, 0.0, 5.0}, kReg);
  REQUIRE(b.size() == 1);
  CHECK(b.points[0] == SpatialPoint{0.0, 0.0, 5.0});

  const SpatialPreimageSet c = preimage_spatial({3.0, 0.0, 0.0}, kReg);
  REQUIRE(c.size() == 2);
  bool lo = false, hi = false;
  for (const SpatialPoint& p : c.points) {
    lo = lo || distance(p, {3.0, 0.0, -1.6}) < 1e-12;
    hi = hi || distance(p, {3.0, 0.0, 1.6}) < 1e-12;
  }
  CHECK(lo);
  CHECK(hi);
}

TEST_CASE("spatial preimages map back onto the target") {
  testing::Gen gen(36);
  for (int i = 0; i < 5000; ++i) {
    const SpatialPoint q{gen.uniform(-6, 6), gen.uniform(-6, 6), gen.uniform(-6, 6)};
    const SpatialPreimageSet s = preimage_spatial(q, kReg);
    CHECK(s.size() >= 1);
    for (const SpatialPoint& p : s.points) CHECK(distance(eval_spatial(p, kReg), q) <= 1e-10 * (1.0 + norm(q)));
  }
}
