#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string_view>
#include <utility>

namespace bcover {

struct PlanarPoint {
  double x = 0.0;  // distance from the rotation axis
  double y = 0.0;  // height

  friend bool operator==(const PlanarPoint&, const PlanarPoint&) = default;
};

struct SpatialPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const SpatialPoint&, const SpatialPoint&) = default;
};

inline PlanarPoint operator+(PlanarPoint a, PlanarPoint b) { return {a.x + b.x, a.y + b.y}; }
inline PlanarPoint operator-(PlanarPoint a, PlanarPoint b) { return {a.x - b.x, a.y - b.y}; }
inline PlanarPoint operator*(double s, PlanarPoint a) { return {s * a.x, s * a.y}; }
inline double norm(PlanarPoint a) { return std::hypot(a.x, a.y); }
inline double distance(PlanarPoint a, PlanarPoint b) { return norm(a - b); }

inline SpatialPoint operator+(SpatialPoint a, SpatialPoint b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline SpatialPoint operator-(SpatialPoint a, SpatialPoint b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline SpatialPoint operator*(double s, SpatialPoint a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(SpatialPoint a, SpatialPoint b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm_squared(SpatialPoint a) { return dot(a, a); }
inline double norm(SpatialPoint a) { return std::sqrt(norm_squared(a)); }
inline double distance(SpatialPoint a, SpatialPoint b) { return norm(a - b); }
inline SpatialPoint cross(SpatialPoint a, SpatialPoint b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// Row-major 2x2 matrix.
struct Mat2 {
  std::array<double, 4> a{1.0, 0.0, 0.0, 1.0};

  static Mat2 identity() { return {}; }
  double operator()(int row, int col) const { return a[2 * row + col]; }
  double& operator()(int row, int col) { return a[2 * row + col]; }
  double det() const { return a[0] * a[3] - a[1] * a[2]; }
  // Singular values in descending order, closed form.
  std::pair<double, double> singular_values() const;
};

// Row-major 3x3 matrix.
struct Mat3 {
  std::array<double, 9> a{1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0};

  static Mat3 identity() { return {}; }
  double operator()(int row, int col) const { return a[3 * row + col]; }
  double& operator()(int row, int col) { return a[3 * row + col]; }
  double det() const;
};

enum class Profile { Literal, Regularized };

std::string_view to_string(Profile profile);
std::optional<Profile> parse_profile(std::string_view name);

// Selects which version of the construction is evaluated. The five bands of
// each stratum are cut at fixed fractions 3/5 and 1/5 of the halfwidth.
struct MapConfig {
  double slope = 1.0;  // halfwidth of the cone per unit distance from the apex
  Profile profile = Profile::Regularized;

  static constexpr double kOuterJunction = 3.0 / 5.0;
  static constexpr double kInnerJunction = 1.0 / 5.0;

  // Throws InvalidArgument unless slope is positive and finite.
  void validate() const;
};

enum class RegionTag { Outside, S1, S2, S3, S4, S5 };

std::string_view to_string(RegionTag tag);

struct Stratum {
  double r = 0.0;          // x - 1
  double halfwidth = 0.0;  // slope * r
  double t = 0.0;          // height along the stratum
};

struct Region {
  RegionTag tag = RegionTag::Outside;
  std::optional<Stratum> stratum;
};

// Bands are half-open: S1 [-W,-3W/5), S2 [-3W/5,-W/5), S3 [-W/5,W/5],
// S4 (W/5,3W/5], S5 (3W/5,W). Everything with x <= 1 or |y| >= slope (x-1)
// is Outside, including x <= 0.
Region classify_region(PlanarPoint p, const MapConfig& cfg);

// Abscissa of the far edge of the image rectangle of stratum r.
double profile_eval(double r, const MapConfig& cfg);
double profile_derivative(double r, const MapConfig& cfg);
double profile_inverse(double u, const MapConfig& cfg);
// Open interval of values taken by the profile on (0, inf).
std::pair<double, double> profile_range(const MapConfig& cfg);

struct HalfPlaneCoords {
  double angle = 0.0;  // in [0, 2pi)
  PlanarPoint q;
};

HalfPlaneCoords to_halfplane(SpatialPoint p);
SpatialPoint from_halfplane(double angle, PlanarPoint q);

// Euclidean distance from p to the union of the six boundary rays leaving
// the apex (1,0): the cone boundary and the four band junctions.
double distance_to_nonsmooth(PlanarPoint p, const MapConfig& cfg);

}  // namespace bcover
