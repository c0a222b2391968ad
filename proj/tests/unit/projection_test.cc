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

#include <cmath>

#include <gtest/gtest.h>
#include "omnisense/error.h"
#include "omnisense/random.h"

namespace omnisense {
namespace {

TEST(ErpTest, CenterPixel) {
  const SphericalCoord c = erp_to_sph(1920, 960, 3840, 1920);
  EXPECT_NEAR(c.lon, kPi / 3840, 1e-12);
  EXPECT_NEAR(c.lat, -kPi / (2 * 1920), 1e-12);
}

TEST(ErpTest, CornerPixel) {
  const SphericalCoord c = erp_to_sph(0, 0, 3840, 1920);
  EXPECT_NEAR(c.lon, -kPi + kPi / 3840, 1e-12);
  EXPECT_NEAR(c.lat, kHalfPi - kPi / (2 * 1920), 1e-12);
}

TEST(ErpTest, OutOfRangeThrows) {
  EXPECT_THROW(erp_to_sph(3840, 0, 3840, 1920), RangeError);
  EXPECT_THROW(erp_to_sph(-1, 0, 3840, 1920), RangeError);
  EXPECT_THROW(erp_to_sph(0, 1920, 3840, 1920), RangeError);
}

TEST(ErpTest, RoundTrip) {
  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform(0, 3840), v = rng.uniform(0, 1920);
    const PlanarPoint p = sph_to_erp(erp_to_sph(u, v, 3840, 1920), 3840, 1920);
    EXPECT_NEAR(p.x, u, 1e-9);
    EXPECT_NEAR(p.y, v, 1e-9);
  }
}

TEST(GnomonicTest, CenterMapsToOrigin) {
  const PlanarPoint p = gnomonic_project({0.3, 0.2}, {0.3, 0.2});
  EXPECT_NEAR(p.x, 0.0, 1e-15);
  EXPECT_NEAR(p.y, 0.0, 1e-15);
}

TEST(GnomonicTest, TenDegreesEast) {
  const PlanarPoint p = gnomonic_project({0, 0}, {deg2rad(10), 0});
  EXPECT_NEAR(p.x, 0.17632698, 1e-8);
  EXPECT_NEAR(p.y, 0.0, 1e-15);
}

TEST(GnomonicTest, HemisphereBoundaryThrows) {
  EXPECT_THROW(gnomonic_project({0, 0}, {kHalfPi, 0}), DomainError);
  EXPECT_THROW(gnomonic_project({0, 0}, {-kPi, 0}), DomainError);
}

TEST(GnomonicTest, RoundTripThousandPoints) {
  Rng rng(21);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const SphericalCoord c{rng.uniform(-kPi, kPi), rng.uniform(-1.4, 1.4)};
    RotatedFrame f(c);
    // Points within 80 degrees of the center.
    const SphericalCoord local{rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)};
    const SphericalCoord p = f.to_world(local);
    if (angular_distance(c, p) > deg2rad(80)) continue;
    const SphericalCoord back = gnomonic_unproject(c, gnomonic_project(c, p));
    worst = std::max(worst, angular_distance(p, back));
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(PerspectiveGridTest, RejectsBadArguments) {
  EXPECT_THROW(PerspectiveGrid({0, 0}, kPi, 512), DomainError);
  EXPECT_THROW(PerspectiveGrid({0, 0}, 0.0, 512), DomainError);
  EXPECT_THROW(PerspectiveGrid({0, 0}, 1.0, 0), DomainError);
}

TEST(PerspectiveGridTest, CenterPixel) {
  PerspectiveGrid g({0.4, -0.3}, deg2rad(60), 512);
  const SphericalCoord c = g.to_sphere({256, 256});
  EXPECT_LT(angular_distance(c, {0.4, -0.3}), 1e-12);
  EXPECT_LT(angular_distance(g.pixel_center(255, 255), {0.4, -0.3}),
            deg2rad(60) / 512);
}

TEST(PerspectiveGridTest, CornerAngle) {
  PerspectiveGrid g({0, 0}, deg2rad(60), 512);
  const SphericalCoord corner = g.to_sphere({0, 0});
  EXPECT_NEAR(rad2deg(angular_distance(corner, {0, 0})), 39.2315, 1e-3);
}

TEST(PerspectiveGridTest, PixelRoundTrip) {
  PerspectiveGrid g({1.0, 0.5}, deg2rad(75), 640);
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const PlanarPoint px{rng.uniform(0, 640), rng.uniform(0, 640)};
    const auto back = g.to_pixel(g.to_sphere(px));
    ASSERT_TRUE(back.has_value());
    EXPECT_NEAR(back->x, px.x, 1e-7);
    EXPECT_NEAR(back->y, px.y, 1e-7);
  }
  EXPECT_FALSE(g.contains({1.0 + kPi, -0.5}));
}

TEST(PerspectiveGridTest, SolidAngleMatchesMonteCarlo) {
  PerspectiveGrid g({0.2, 0.3}, deg2rad(60), 512);
  Rng rng(31);
  const int n = 400'000;
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    const SphericalCoord p{rng.uniform(-kPi, kPi), std::asin(rng.uniform(-1, 1))};
    hits += g.contains(p) ? 1 : 0;
  }
  EXPECT_NEAR(kSphereArea * hits / n / g.solid_angle(), 1.0, 0.01);
}

TEST(CubemapTest, SixNinetyDegreeFaces) {
  const auto faces = cubemap_faces();
  ASSERT_EQ(faces.size(), 6u);
  for (const auto& f : faces) EXPECT_DOUBLE_EQ(f.fov, kHalfPi);
}

TEST(CubemapTest, CoversSphere) {
  const auto faces = cubemap_faces();
  std::vector<PerspectiveGrid> grids;
  for (const auto& f : faces) grids.emplace_back(f.center, f.fov, 512);
  Rng rng(77);
  for (int i = 0; i < 100'000; ++i) {
    const SphericalCoord p{rng.uniform(-kPi, kPi), std::asin(rng.uniform(-1, 1))};
    bool any = false;
    for (const auto& g : grids) any = any || g.contains(p);
    ASSERT_TRUE(any) << p.lon << " " << p.lat;
  }
}

TEST(RectToSphBBTest, FullFace) {
  PerspectiveGrid g({kHalfPi, 0}, kHalfPi, 512);
  const SphericalBox b = rect_bb_to_sphbb({0, 0, 512, 512}, g);
  EXPECT_NEAR(b.lon(), kHalfPi, 1e-9);
  EXPECT_NEAR(b.lat(), 0.0, 1e-9);
  EXPECT_NEAR(b.fov_h(), kHalfPi, 1e-9);
  EXPECT_NEAR(b.fov_v(), kHalfPi, 1e-9);
}

TEST(RectToSphBBTest, HalfExtentSquare) {
  PerspectiveGrid g({0, 0}, deg2rad(60), 512);
  const SphericalBox b = rect_bb_to_sphbb({128, 128, 384, 384}, g);
  EXPECT_NEAR(rad2deg(b.fov_h()), 32.2042, 1e-3);
  EXPECT_NEAR(rad2deg(b.fov_v()), 32.2042, 1e-3);
}

TEST(RectToSphBBTest, InsideRectStaysInView) {
  PerspectiveGrid g({-2.0, 0.6}, kHalfPi, 512);
  const SphericalBox b = rect_bb_to_sphbb({40, 300, 120, 420}, g);
  EXPECT_TRUE(g.contains(b.center()));
}

TEST(RectToSphBBTest, Errors) {
  PerspectiveGrid g({0, 0}, deg2rad(60), 512);
  EXPECT_THROW(rect_bb_to_sphbb({10, 10, 10, 50}, g), DomainError);
  EXPECT_THROW(rect_bb_to_sphbb({-5, 10, 20, 50}, g), RangeError);
}

TEST(RectToSphBBTest, ErpRect) {
  ErpImage img{3840, 1920};
  const SphericalBox b = rect_bb_to_sphbb({1900, 940, 1940, 980}, img);
  EXPECT_NEAR(b.lon(), 0.0, 1e-9);
  EXPECT_NEAR(b.lat(), 0.0, 1e-9);
  EXPECT_NEAR(b.fov_h(), 40 * kTwoPi / 3840, 1e-9);
  EXPECT_NEAR(b.fov_v(), 40 * kPi / 1920, 1e-9);
}

}  // namespace
}  // namespace omnisense
