#include "epimotion/matching.hpp"

#include "epimotion/synth.hpp"

#include <doctest.h>

using namespace epimotion;

TEST_CASE("identical images match with zero displacement") {
  SyntheticScene scene = scenePreset("basic", 41);
  scene.noiseSigma = 0.0;
  const RenderedScene rendered = renderScene(scene);
  const Image& img = rendered.images.images[0];
  const auto matches = detectAndMatch(img, img);
  REQUIRE(matches.size() >= 100);
  int zero = 0;
  for (const auto& m : matches)
    if ((m.ref - m.sup).norm() < 1e-9) ++zero;
  CHECK(static_cast<double>(zero) >= 0.95 * static_cast<double>(matches.size()));
}

TEST_CASE("homography pair: putative matches land on the prediction") {
  SyntheticScene scene = scenePreset("basic", 43);
  scene.noiseSigma = 0.0;
  // pure-translation pair; the baseline is chosen so the background shifts
  // by a whole number of pixels (128), keeping the oracle free of resampling
  const double baseline = 128.0 * 12.0 / 850.0;
  Camera cam0 = lookAtCamera(850.0, 640, 480, Vec3d(-baseline / 2, 0, 12.0),
                             Vec3d(-baseline / 2, 0, 0));
  Camera cam1 = cam0;
  cam1.C = Vec3d(baseline / 2, 0, 12.0);
  scene.cameras = {cam0, cam1};
  // park the sprite outside the field of view: every match follows the
  // background homography
  const QuadPose offscreen{Vec3d(50.0, 50.0, 2.0), Vec3d(1.45, 0, 0), Vec3d(0, 1.45, 0)};
  scene.spritePoses = {offscreen, offscreen};
  const RenderedScene rendered = renderScene(scene);
  const Mat3d H = scene.backgroundHomography(0, 1);
  const auto matches =
      detectAndMatch(rendered.images.images[0], rendered.images.images[1]);
  REQUIRE(matches.size() >= 100);
  int close = 0;
  for (const auto& m : matches) {
    const Vec3d mapped = H * m.ref.homogeneous();
    if (std::abs(mapped[2]) < 1e-12) continue;
    if ((mapped.head<2>() / mapped[2] - m.sup).norm() < 1.0) ++close;
  }
  CHECK(static_cast<double>(close) >= 0.7 * static_cast<double>(matches.size()));
}

TEST_CASE("textureless images yield no matches") {
  Image flat;
  flat.id = "flat";
  flat.width = 128;
  flat.height = 96;
  flat.rgb.assign(128 * 96 * 3, 77);
  const auto matches = detectAndMatch(flat, flat);
  CHECK(matches.size() <= 2);
}

TEST_CASE("corner detection respects the cap and stays in bounds") {
  SyntheticScene scene = scenePreset("basic", 47);
  const RenderedScene rendered = renderScene(scene);
  MatchingParams params;
  params.maxCorners = 300;
  const CornerList corners = detectCorners(rendered.images.images[0], params);
  CHECK(corners.points.size() <= 300);
  CHECK(corners.points.size() >= 200);
  for (const auto& p : corners.points) {
    CHECK(p[0] > 5.0);
    CHECK(p[0] < 635.0);
    CHECK(p[1] > 5.0);
    CHECK(p[1] < 475.0);
  }
}
