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

#include "omnisense/sphere.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include "omnisense/error.h"

namespace omnisense {
namespace {

constexpr double kLatSlack = 1e-12;
constexpr double kContainSlack = 1e-12;

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

// Box edge as a circle arc: p(t) = c + u cos t + v sin t, t in [t0, t1].
struct Arc {
  Vec3 c, u, v;
  double t0, t1;
};

Vec3 eval(const Arc& a, double t) {
  const double ct = std::cos(t);
  const double st = std::sin(t);
  return {a.c.x + a.u.x * ct + a.v.x * st, a.c.y + a.u.y * ct + a.v.y * st,
          a.c.z + a.u.z * ct + a.v.z * st};
}

// The four edges of a box in its own local frame.
std::array<Arc, 4> local_edges(const SphericalBox& box) {
  const double w = 0.5 * box.fov_h();
  const double h = 0.5 * box.fov_v();
  const double ch = std::cos(h), sh = std::sin(h);
  const double cw = std::cos(w), sw = std::sin(w);
  return {{
      // top and bottom: constant local latitude (small circles)
      Arc{{0, 0, sh}, {ch, 0, 0}, {0, ch, 0}, -w, w},
      Arc{{0, 0, -sh}, {ch, 0, 0}, {0, ch, 0}, -w, w},
      // east and west: constant local longitude (meridian arcs)
      Arc{{0, 0, 0}, {cw, sw, 0}, {0, 0, 1}, -h, h},
      Arc{{0, 0, 0}, {cw, -sw, 0}, {0, 0, 1}, -h, h},
  }};
}

void push_if_in_range(double t, double t0, double t1, std::vector<double>& out) {
  for (int k = -2; k <= 2; ++k) {
    const double tk = t + k * kTwoPi;
    if (tk >= t0 && tk <= t1) out.push_back(tk);
  }
}

void accumulate_arc(const Arc& arc, AngularExtent& ext) {
  std::vector<double> ts{arc.t0, arc.t1};
  // d/dt of z(t) vanishes at atan2(v.z, u.z) + k*pi.
  if (std::hypot(arc.u.z, arc.v.z) > 1e-15) {
    const double t = std::atan2(arc.v.z, arc.u.z);
    push_if_in_range(t, arc.t0, arc.t1, ts);
    push_if_in_range(t + kPi, arc.t0, arc.t1, ts);
  }
  // d/dt of atan2(y(t), x(t)) vanishes where P cos t + Q sin t + R = 0.
  const double p = arc.c.x * arc.v.y - arc.c.y * arc.v.x;
  const double q = arc.c.y * arc.u.x - arc.c.x * arc.u.y;
  const double r = arc.u.x * arc.v.y - arc.u.y * arc.v.x;
  const double rho = std::hypot(p, q);
  if (rho > 1e-15) {
    const double ratio = -r / rho;
    if (std::abs(ratio) <= 1.0) {
      const double base = std::atan2(q, p);
      const double off = std::acos(ratio);
      push_if_in_range(base + off, arc.t0, arc.t1, ts);
      push_if_in_range(base - off, arc.t0, arc.t1, ts);
    }
  }
  for (double t : ts) {
    const Vec3 pt = eval(arc, t);
    const double lon = std::atan2(pt.y, pt.x);
    const double lat = std::asin(clamp_unit(pt.z));
    ext.lon_min = std::min(ext.lon_min, lon);
    ext.lon_max = std::max(ext.lon_max, lon);
    ext.lat_min = std::min(ext.lat_min, lat);
    ext.lat_max = std::max(ext.lat_max, lat);
  }
}

Arc transform(const Mat3& m, const Arc& a) {
  return {m * a.c, m * a.u, m * a.v, a.t0, a.t1};
}

AngularExtent empty_extent() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {inf, -inf, inf, -inf};
}

void merge_into(AngularExtent& acc, const AngularExtent& e) {
  acc.lon_min = std::min(acc.lon_min, e.lon_min);
  acc.lon_max = std::max(acc.lon_max, e.lon_max);
  acc.lat_min = std::min(acc.lat_min, e.lat_min);
  acc.lat_max = std::max(acc.lat_max, e.lat_max);
}

// Non-negative angular offset from `from` to `to`, in [0, 2pi).
double forward_offset(double from, double to) {
  double d = std::fmod(to - from, kTwoPi);
  if (d < 0) d += kTwoPi;
  if (d >= kTwoPi) d = 0.0;
  return d;
}

struct LonInterval {
  double start;
  double width;
};

// Minimal-width arc covering every interval. Its start is always one of the
// interval starts; ties go to the smaller start longitude.
LonInterval minimal_cover(const std::vector<LonInterval>& intervals) {
  LonInterval best{-kPi, kTwoPi};
  bool found = false;
  for (const auto& cand : intervals) {
    const double s = wrap_lon(cand.start);
    double width = 0.0;
    for (const auto& iv : intervals) {
      width = std::max(width, forward_offset(s, wrap_lon(iv.start)) + iv.width);
    }
    if (width >= kTwoPi) continue;
    if (!found || width < best.width || (width == best.width && s < best.start)) {
      best = {s, width};
      found = true;
    }
  }
  return best;
}

}  // namespace

double wrap_lon(double lon) {
  double r = std::fmod(lon + kPi, kTwoPi);
  if (r < 0) r += kTwoPi;
  r -= kPi;
  if (r >= kPi) r = -kPi;
  return r;
}

Mat3 Mat3::operator*(const Mat3& o) const {
  Mat3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      out.m[i * 3 + j] = m[i * 3] * o.m[j] + m[i * 3 + 1] * o.m[3 + j] +
                         m[i * 3 + 2] * o.m[6 + j];
    }
  }
  return out;
}

Mat3 Mat3::transposed() const {
  return {{m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]}};
}

Vec3 to_unit(SphericalCoord c) {
  const double cl = std::cos(c.lat);
  return {cl * std::cos(c.lon), cl * std::sin(c.lon), std::sin(c.lat)};
}

SphericalCoord from_unit(const Vec3& v) {
  const double n = std::sqrt(dot(v, v));
  return {wrap_lon(std::atan2(v.y, v.x)), std::asin(clamp_unit(v.z / n))};
}

double angular_distance(SphericalCoord a, SphericalCoord b) {
  // Haversine form; stable for small separations.
  const double dlat = b.lat - a.lat;
  const double dlon = b.lon - a.lon;
  const double s = std::sin(0.5 * dlat) * std::sin(0.5 * dlat) +
                   std::cos(a.lat) * std::cos(b.lat) * std::sin(0.5 * dlon) *
                       std::sin(0.5 * dlon);
  return 2.0 * std::asin(std::sqrt(std::clamp(s, 0.0, 1.0)));
}

RotatedFrame::RotatedFrame(SphericalCoord center) : center_(center) {
  const double ct = std::cos(center.lon), st = std::sin(center.lon);
  const double cp = std::cos(center.lat), sp = std::sin(center.lat);
  const Mat3 rz{{ct, st, 0, -st, ct, 0, 0, 0, 1}};
  const Mat3 ry{{cp, 0, sp, 0, 1, 0, -sp, 0, cp}};
  local_from_world_ = ry * rz;
  world_from_local_ = local_from_world_.transposed();
}

SphericalCoord RotatedFrame::to_local(SphericalCoord world) const {
  return from_unit(to_local(to_unit(world)));
}

SphericalCoord RotatedFrame::to_world(SphericalCoord local) const {
  return from_unit(to_world(to_unit(local)));
}

SphericalBox::SphericalBox(double lon, double lat, double fov_h, double fov_v) {
  if (!std::isfinite(lon) || !std::isfinite(lat) || !std::isfinite(fov_h) ||
      !std::isfinite(fov_v)) {
    throw DomainError("SphericalBox: non-finite field");
  }
  if (lat < -kHalfPi - kLatSlack || lat > kHalfPi + kLatSlack) {
    std::ostringstream os;
    os << "SphericalBox: latitude " << lat << " outside [-pi/2, pi/2]";
    throw DomainError(os.str());
  }
  if (!(fov_h > 0.0) || fov_h > kTwoPi + kLatSlack) {
    throw DomainError("SphericalBox: fov_h must be in (0, 2pi]");
  }
  if (!(fov_v > 0.0) || fov_v > kPi + kLatSlack) {
    throw DomainError("SphericalBox: fov_v must be in (0, pi]");
  }
  lon_ = wrap_lon(lon);
  lat_ = std::clamp(lat, -kHalfPi, kHalfPi);
  fov_h_ = std::min(fov_h, kTwoPi);
  fov_v_ = std::min(fov_v, kPi);
}

SphericalBox SphericalBox::from_degrees(double lon, double lat, double fov_h,
                                        double fov_v) {
  return SphericalBox(deg2rad(lon), deg2rad(lat), deg2rad(fov_h), deg2rad(fov_v));
}

void validate(const DetectedObject& obj, int n_categories) {
  if (obj.category < 0 || obj.category >= n_categories) {
    throw DomainError("DetectedObject: category " + std::to_string(obj.category) +
                      " outside [0, " + std::to_string(n_categories) + ")");
  }
  if (!(obj.confidence >= 0.0 && obj.confidence <= 1.0)) {
    throw DomainError("DetectedObject: confidence outside [0, 1]");
  }
  if (obj.frame_index < 0) {
    throw DomainError("DetectedObject: negative frame index");
  }
}

double sph_area(const SphericalBox& box) {
  return 2.0 * box.fov_h() * std::sin(0.5 * box.fov_v());
}

double normalized_area(const SphericalBox& box) { return sph_area(box) / kSphereArea; }

bool contains(const SphericalBox& box, SphericalCoord p) {
  const SphericalCoord local = box.frame().to_local(p);
  return std::abs(local.lon) <= 0.5 * box.fov_h() + kContainSlack &&
         std::abs(local.lat) <= 0.5 * box.fov_v() + kContainSlack;
}

double circumradius(const SphericalBox& box) {
  const double w = 0.5 * box.fov_h();
  const double h = 0.5 * box.fov_v();
  if (w <= kHalfPi) return std::acos(clamp_unit(std::cos(w) * std::cos(h)));
  return std::acos(clamp_unit(std::cos(w)));
}

double sph_iou(const SphericalBox& a, const SphericalBox& b) {
  if (a == b) return 1.0;
  const double area_a = sph_area(a);
  const double area_b = sph_area(b);
  if (angular_distance(a.center(), b.center()) > circumradius(a) + circumradius(b)) {
    return 0.0;
  }

  // Integrate over the smaller box; break ties on the field tuple so that
  // (a, b) and (b, a) run the identical computation.
  auto key = [](const SphericalBox& x) {
    return std::make_tuple(sph_area(x), x.lon(), x.lat(), x.fov_h(), x.fov_v());
  };
  const bool a_is_domain = key(a) <= key(b);
  const SphericalBox& dom = a_is_domain ? a : b;
  const SphericalBox& other = a_is_domain ? b : a;

  const Mat3 m = other.frame().local_from_world() * dom.frame().world_from_local();
  const double w = 0.5 * dom.fov_h();
  const double h = 0.5 * dom.fov_v();
  const double ow = 0.5 * other.fov_h();
  const double oh = 0.5 * other.fov_v();
  const bool lon_unbounded = ow >= kPi;
  const bool lat_unbounded = oh >= kHalfPi;
  const double cos_ow = std::cos(ow);
  const double sin_oh = std::sin(oh);

  std::array<double, kIouLonCells> clon{}, slon{};
  for (int i = 0; i < kIouLonCells; ++i) {
    const double lon = -w + (i + 0.5) * (2.0 * w / kIouLonCells);
    clon[i] = std::cos(lon);
    slon[i] = std::sin(lon);
  }

  double inside = 0.0;
  double total = 0.0;
  for (int k = 0; k < kIouLatCells; ++k) {
    const double lat = -h + (k + 0.5) * (2.0 * h / kIouLatCells);
    const double cl = std::cos(lat);
    const double sl = std::sin(lat);
    int hits = 0;
    for (int i = 0; i < kIouLonCells; ++i) {
      const Vec3 p = m * Vec3{cl * clon[i], cl * slon[i], sl};
      if (!lat_unbounded && std::abs(p.z) > sin_oh) continue;
      if (!lon_unbounded) {
        const double rho = std::hypot(p.x, p.y);
        if (rho > 0.0 && p.x < rho * cos_ow) continue;
      }
      ++hits;
    }
    inside += cl * hits;
    total += cl * kIouLonCells;
  }
  const double inter = sph_area(dom) * (inside / total);
  const double uni = area_a + area_b - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

AngularExtent extent_in_frame(const SphericalBox& box, const RotatedFrame& frame) {
  const Mat3 m = frame.local_from_world() * box.frame().world_from_local();
  AngularExtent ext = empty_extent();
  for (const Arc& edge : local_edges(box)) accumulate_arc(transform(m, edge), ext);
  return ext;
}

bool encloses(const SphericalBox& outer, const SphericalBox& inner, double tol) {
  const AngularExtent e = extent_in_frame(inner, outer.frame());
  const double w = 0.5 * outer.fov_h() + tol;
  const double h = 0.5 * outer.fov_v() + tol;
  return e.lon_min >= -w && e.lon_max <= w && e.lat_min >= -h && e.lat_max <= h;
}

MergedFov merged_fov(std::span<const SphericalBox> boxes) {
  if (boxes.empty()) throw DomainError("merged_fov: empty object set");

  // Seed center: minimal world longitude arc and world latitude span.
  std::vector<LonInterval> lons;
  lons.reserve(boxes.size());
  double lat_lo = kHalfPi, lat_hi = -kHalfPi;
  for (const auto& b : boxes) {
    const AngularExtent e = extent_in_frame(b, RotatedFrame({b.lon(), 0.0}));
    lat_lo = std::min(lat_lo, e.lat_min);
    lat_hi = std::max(lat_hi, e.lat_max);
    if (std::abs(b.lat()) + 0.5 * b.fov_v() >= kHalfPi - 1e-12 ||
        b.fov_h() >= kTwoPi) {
      lons.push_back({-kPi, kTwoPi});
    } else {
      lons.push_back({b.lon() + e.lon_min, e.lon_max - e.lon_min});
    }
  }
  const LonInterval cover = minimal_cover(lons);
  SphericalCoord center{wrap_lon(cover.start + 0.5 * cover.width),
                        0.5 * (lat_lo + lat_hi)};

  // Re-center in the rotated frame until the local extents are balanced.
  for (int iter = 0; iter < 32; ++iter) {
    const RotatedFrame frame(center);
    AngularExtent acc = empty_extent();
    for (const auto& b : boxes) merge_into(acc, extent_in_frame(b, frame));
    const double mid_lon = 0.5 * (acc.lon_min + acc.lon_max);
    const double mid_lat = 0.5 * (acc.lat_min + acc.lat_max);
    if (std::abs(mid_lon) < 1e-14 && std::abs(mid_lat) < 1e-14) break;
    center = frame.to_world(SphericalCoord{mid_lon, mid_lat});
  }

  const RotatedFrame frame(center);
  AngularExtent acc = empty_extent();
  for (const auto& b : boxes) merge_into(acc, extent_in_frame(b, frame));
  MergedFov out;
  out.center = center;
  out.fov_h = 2.0 * std::max(std::abs(acc.lon_min), std::abs(acc.lon_max));
  out.fov_v = 2.0 * std::max(std::abs(acc.lat_min), std::abs(acc.lat_max));
  return out;
}

MergedFov merged_fov(std::span<const DetectedObject> objects) {
  std::vector<SphericalBox> boxes;
  boxes.reserve(objects.size());
  for (const auto& o : objects) boxes.push_back(o.box);
  return merged_fov(boxes);
}

}  // namespace omnisense
