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

#ifndef OMNISENSE_PROJECTION_H_
#define OMNISENSE_PROJECTION_H_

#include <array>
#include <optional>
#include <string_view>

#include "omnisense/sphere.h"

namespace omnisense {

// Tangent-plane (gnomonic) or pixel coordinates, depending on context.
struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;
};

// Equirectangular image of `width` x `height` pixels. Pixel centers sit at
// half-integers and v = 0 is the north edge.
struct ErpImage {
  int width = 0;
  int height = 0;
};

// Throws RangeError unless 0 <= u < W and 0 <= v < H.
SphericalCoord erp_to_sph(double u, double v, int width, int height);
PlanarPoint sph_to_erp(SphericalCoord c, int width, int height);

// Standard gnomonic projection onto the plane tangent at `center`; x points
// east and y north. Throws DomainError when `p` is 90 degrees or more away
// from `center`.
PlanarPoint gnomonic_project(SphericalCoord center, SphericalCoord p);
SphericalCoord gnomonic_unproject(SphericalCoord center, PlanarPoint q);

// Square perspective image (PI) of `side` x `side` pixels covering a
// fov x fov field of view around `center`. Pixel coordinates are continuous:
// (0, 0) is the top-left image corner and pixel (i, j) has its center at
// (i + 0.5, j + 0.5).
class PerspectiveGrid {
 public:
  // Throws DomainError unless 0 < fov < pi and side > 0.
  PerspectiveGrid(SphericalCoord center, double fov, int side);

  SphericalCoord center() const { return center_; }
  double fov() const { return fov_; }
  int side() const { return side_; }
  // Half-width of the image on the tangent plane, tan(fov / 2).
  double half_extent() const { return half_extent_; }

  PlanarPoint pixel_to_plane(PlanarPoint pixel) const;
  PlanarPoint plane_to_pixel(PlanarPoint plane) const;

  SphericalCoord to_sphere(PlanarPoint pixel) const;
  SphericalCoord pixel_center(int i, int j) const {
    return to_sphere({i + 0.5, j + 0.5});
  }
  // Pixel position of `c`, or nullopt when it falls outside the image.
  std::optional<PlanarPoint> to_pixel(SphericalCoord c) const;
  bool contains(SphericalCoord c) const { return to_pixel(c).has_value(); }

  // Solid angle covered by the image, 4 atan(a^2 / sqrt(1 + 2 a^2)) with
  // a = tan(fov / 2).
  double solid_angle() const;

 private:
  SphericalCoord center_;
  double fov_;
  int side_;
  double half_extent_;
};

struct CubeFace {
  std::string_view name;
  SphericalCoord center;
  double fov = kHalfPi;
};

// The six 90 x 90 degree faces of a cube map: lon {0, 90, 180, -90} on the
// equator plus both poles.
std::array<CubeFace, 6> cubemap_faces();

// Axis-aligned pixel rectangle [u0, u1] x [v0, v1].
struct PixelRect {
  double u0 = 0.0;
  double v0 = 0.0;
  double u1 = 0.0;
  double v1 = 0.0;
};

// Back-projects a rectangular detection to a spherical box. The box center is
// the back-projected rectangle center; the extents are the angles between
// opposite edge midpoints, measured in the center's rotated frame. Throws
// DomainError for a zero-area rectangle and RangeError when the rectangle
// leaves the image.
SphericalBox rect_bb_to_sphbb(const PixelRect& rect, const PerspectiveGrid& grid);
SphericalBox rect_bb_to_sphbb(const PixelRect& rect, const ErpImage& image);

}  // namespace omnisense

#endif  // OMNISENSE_PROJECTION_H_
