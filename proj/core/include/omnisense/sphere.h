/* Copyright 2026 The OmniSense Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef OMNISENSE_SPHERE_H_
#define OMNISENSE_SPHERE_H_

#include <array>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

namespace omnisense {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHalfPi = 0.5 * std::numbers::pi;
inline constexpr double kSphereArea = 4.0 * std::numbers::pi;

constexpr double deg2rad(double deg) { return deg * (kPi / 180.0); }
constexpr double rad2deg(double rad) { return rad * (180.0 / kPi); }

// Wraps a longitude into [-pi, pi).
double wrap_lon(double lon);

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

struct Mat3 {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  Vec3 operator*(const Vec3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
            m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }
  Mat3 operator*(const Mat3& o) const;
  Mat3 transposed() const;
};

// A direction on the unit sphere. lon in [-pi, pi), lat in [-pi/2, pi/2].
struct SphericalCoord {
  double lon = 0.0;
  double lat = 0.0;

  friend bool operator==(const SphericalCoord&, const SphericalCoord&) = default;
};

Vec3 to_unit(SphericalCoord c);
SphericalCoord from_unit(const Vec3& v);
double angular_distance(SphericalCoord a, SphericalCoord b);

// Frame in which `center` sits at (lon, lat) = (0, 0): rotate by -lon about
// the polar axis, then by -lat about the resulting east axis. In local
// coordinates the center is +x, east is +y and north is +z.
class RotatedFrame {
 public:
  explicit RotatedFrame(SphericalCoord center);

  SphericalCoord center() const { return center_; }
  const Mat3& local_from_world() const { return local_from_world_; }
  const Mat3& world_from_local() const { return world_from_local_; }

  Vec3 to_local(const Vec3& world) const { return local_from_world_ * world; }
  Vec3 to_world(const Vec3& local) const { return world_from_local_ * local; }
  SphericalCoord to_local(SphericalCoord world) const;
  SphericalCoord to_world(SphericalCoord local) const;

 private:
  SphericalCoord center_;
  Mat3 local_from_world_;
  Mat3 world_from_local_;
};

// Spherical bounding box (theta, phi, d_theta, d_phi): the lat-lon rectangle
// |lon'| <= fov_h/2, |lat'| <= fov_v/2 in the frame rotated to the box
// center. Construction throws DomainError for non-finite values, latitudes
// outside [-pi/2, pi/2], or extents outside (0, 2pi] x (0, pi]. Longitude is
// normalized into [-pi, pi).
class SphericalBox {
 public:
  SphericalBox(double lon, double lat, double fov_h, double fov_v);
  static SphericalBox from_degrees(double lon, double lat, double fov_h,
                                   double fov_v);

  double lon() const { return lon_; }
  double lat() const { return lat_; }
  double fov_h() const { return fov_h_; }
  double fov_v() const { return fov_v_; }
  SphericalCoord center() const { return {lon_, lat_}; }
  RotatedFrame frame() const { return RotatedFrame(center()); }

  friend bool operator==(const SphericalBox&, const SphericalBox&) = default;

 private:
  double lon_;
  double lat_;
  double fov_h_;
  double fov_v_;
};

// One detection (or ground-truth object) on the sphere.
struct DetectedObject {
  SphericalBox box;
  int category = 0;
  double confidence = 1.0;
  std::int64_t frame_index = 0;

  friend bool operator==(const DetectedObject&, const DetectedObject&) = default;
};

// Throws DomainError unless 0 <= category < n_categories and confidence is in
// [0, 1].
void validate(const DetectedObject& obj, int n_categories);

// Solid angle in steradians: 2 * fov_h * sin(fov_v / 2).
double sph_area(const SphericalBox& box);

// Normalized object area (NOA): sph_area / 4pi.
double normalized_area(const SphericalBox& box);

bool contains(const SphericalBox& box, SphericalCoord p);

// Angular radius of the smallest cap around the box center that contains the
// box.
double circumradius(const SphericalBox& box);

// Spherical IoU. The intersection is integrated with a cos(lat)-weighted
// midpoint rule on a 512 x 256 lon-lat grid laid over the smaller box in its
// own frame; the argument order is canonicalized so the result is exactly
// symmetric.
double sph_iou(const SphericalBox& a, const SphericalBox& b);

inline constexpr int kIouLonCells = 512;
inline constexpr int kIouLatCells = 256;

// Extreme local longitude/latitude reached by a box when viewed in `frame`.
// Exact: edge arcs are searched in closed form for their critical points.
struct AngularExtent {
  double lon_min = 0.0;
  double lon_max = 0.0;
  double lat_min = 0.0;
  double lat_max = 0.0;
};
AngularExtent extent_in_frame(const SphericalBox& box, const RotatedFrame& frame);

// True if every point of `inner` lies inside `outer` (up to `tol` radians).
bool encloses(const SphericalBox& outer, const SphericalBox& inner,
              double tol = 1e-9);

struct MergedFov {
  double fov_h = 0.0;
  double fov_v = 0.0;
  SphericalCoord center;
};

// Smallest box (in the rotated-frame sense above) enclosing all `boxes`.
// The seed longitude interval is the minimal-width arc covering every box,
// so sets straddling the +-pi seam merge correctly. Throws DomainError on
// empty input.
MergedFov merged_fov(std::span<const SphericalBox> boxes);
MergedFov merged_fov(std::span<const DetectedObject> objects);

}  // namespace omnisense

#endif  // OMNISENSE_SPHERE_H_
