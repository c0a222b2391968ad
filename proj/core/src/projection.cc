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

#include "omnisense/projection.h"

#include <algorithm>
#include <cmath>

#include "omnisense/error.h"

namespace omnisense {
namespace {

template <typename ToSphere>
SphericalBox back_project(const PixelRect& rect, ToSphere&& to_sphere) {
  if (!(rect.u1 > rect.u0) || !(rect.v1 > rect.v0)) {
    throw DomainError("rect_bb_to_sphbb: degenerate rectangle");
  }
  const double uc = 0.5 * (rect.u0 + rect.u1);
  const double vc = 0.5 * (rect.v0 + rect.v1);
  const SphericalCoord center = to_sphere(PlanarPoint{uc, vc});
  const RotatedFrame frame(center);
  const SphericalCoord left = frame.to_local(to_sphere(PlanarPoint{rect.u0, vc}));
  const SphericalCoord right = frame.to_local(to_sphere(PlanarPoint{rect.u1, vc}));
  const SphericalCoord top = frame.to_local(to_sphere(PlanarPoint{uc, rect.v0}));
  const SphericalCoord bottom = frame.to_local(to_sphere(PlanarPoint{uc, rect.v1}));
  double fov_h = right.lon - left.lon;
  if (fov_h <= 0.0) fov_h += kTwoPi;
  const double fov_v = top.lat - bottom.lat;
  return SphericalBox(center.lon, center.lat, fov_h, fov_v);
}

}  // namespace

SphericalCoord erp_to_sph(double u, double v, int width, int height) {
  if (width <= 0 || height <= 0) throw RangeError("erp_to_sph: empty image");
  if (!(u >= 0.0 && u < width) || !(v >= 0.0 && v < height)) {
    throw RangeError("erp_to_sph: pixel outside image");
  }
  return {wrap_lon((u + 0.5) / width * kTwoPi - kPi),
          kHalfPi - (v + 0.5) / height * kPi};
}

PlanarPoint sph_to_erp(SphericalCoord c, int width, int height) {
  if (width <= 0 || height <= 0) throw RangeError("sph_to_erp: empty image");
  return {(wrap_lon(c.lon) + kPi) / kTwoPi * width - 0.5,
          (kHalfPi - c.lat) / kPi * height - 0.5};
}

PlanarPoint gnomonic_project(SphericalCoord center, SphericalCoord p) {
  const double sp0 = std::sin(center.lat), cp0 = std::cos(center.lat);
  const double sp = std::sin(p.lat), cp = std::cos(p.lat);
  const double dl = p.lon - center.lon;
  const double cos_c = sp0 * sp + cp0 * cp * std::cos(dl);
  if (cos_c <= 1e-12) {
    throw DomainError("gnomonic_project: point is 90 degrees or more from center");
  }
  return {cp * std::sin(dl) / cos_c, (cp0 * sp - sp0 * cp * std::cos(dl)) / cos_c};
}

SphericalCoord gnomonic_unproject(SphericalCoord center, PlanarPoint q) {
  const double rho = std::hypot(q.x, q.y);
  if (rho == 0.0) return {wrap_lon(center.lon), center.lat};
  const double c = std::atan(rho);
  const double sc = std::sin(c), cc = std::cos(c);
  const double sp0 = std::sin(center.lat), cp0 = std::cos(center.lat);
  const double lat = std::asin(std::clamp(cc * sp0 + q.y * sc * cp0 / rho, -1.0, 1.0));
  const double lon =
      center.lon + std::atan2(q.x * sc, rho * cp0 * cc - q.y * sp0 * sc);
  return {wrap_lon(lon), lat};
}

PerspectiveGrid::PerspectiveGrid(SphericalCoord center, double fov, int side)
    : center_(center), fov_(fov), side_(side) {
  if (!(fov > 0.0) || !(fov < kPi)) {
    throw DomainError("PerspectiveGrid: fov must be in (0, pi)");
  }
  if (side <= 0) throw DomainError("PerspectiveGrid: side must be positive");
  half_extent_ = std::tan(0.5 * fov);
}

PlanarPoint PerspectiveGrid::pixel_to_plane(PlanarPoint pixel) const {
  return {(2.0 * pixel.x / side_ - 1.0) * half_extent_,
          (1.0 - 2.0 * pixel.y / side_) * half_extent_};
}

PlanarPoint PerspectiveGrid::plane_to_pixel(PlanarPoint plane) const {
  return {(plane.x / half_extent_ + 1.0) * 0.5 * side_,
          (1.0 - plane.y / half_extent_) * 0.5 * side_};
}

SphericalCoord PerspectiveGrid::to_sphere(PlanarPoint pixel) const {
  return gnomonic_unproject(center_, pixel_to_plane(pixel));
}

std::optional<PlanarPoint> PerspectiveGrid::to_pixel(SphericalCoord c) const {
  // Points on or behind the tangent plane are never inside a sub-hemisphere
  // image. Same test as gnomonic_project so the two agree at 90 degrees.
  const double cos_c = std::sin(center_.lat) * std::sin(c.lat) +
                       std::cos(center_.lat) * std::cos(c.lat) * std::cos(c.lon - center_.lon);
  if (cos_c <= 1e-12) return std::nullopt;
  const PlanarPoint q = gnomonic_project(center_, c);
  if (std::abs(q.x) > half_extent_ || std::abs(q.y) > half_extent_) {
    return std::nullopt;
  }
  return plane_to_pixel(q);
}

double PerspectiveGrid::solid_angle() const {
  const double a2 = half_extent_ * half_extent_;
  return 4.0 * std::atan(a2 / std::sqrt(1.0 + 2.0 * a2));
}

std::array<CubeFace, 6> cubemap_faces() {
  return {{
      {"front", {0.0, 0.0}, kHalfPi},
      {"right", {kHalfPi, 0.0}, kHalfPi},
      {"back", {-kPi, 0.0}, kHalfPi},
      {"left", {-kHalfPi, 0.0}, kHalfPi},
      {"top", {0.0, kHalfPi}, kHalfPi},
      {"bottom", {0.0, -kHalfPi}, kHalfPi},
  }};
}

SphericalBox rect_bb_to_sphbb(const PixelRect& rect, const PerspectiveGrid& grid) {
  const double s = grid.side();
  if (rect.u0 < 0.0 || rect.v0 < 0.0 || rect.u1 > s || rect.v1 > s) {
    throw RangeError("rect_bb_to_sphbb: rectangle outside perspective image");
  }
  return back_project(rect, [&](PlanarPoint p) { return grid.to_sphere(p); });
}

SphericalBox rect_bb_to_sphbb(const PixelRect& rect, const ErpImage& image) {
  if (rect.u0 < 0.0 || rect.v0 < 0.0 || rect.u1 > image.width ||
      rect.v1 > image.height) {
    throw RangeError("rect_bb_to_sphbb: rectangle outside ERP image");
  }
  // Edge coordinates are image-plane positions, so map them without the
  // half-pixel center offset.
  return back_project(rect, [&](PlanarPoint p) {
    return SphericalCoord{wrap_lon(p.x / image.width * kTwoPi - kPi),
                          kHalfPi - p.y / image.height * kPi};
  });
}

}  // namespace omnisense
