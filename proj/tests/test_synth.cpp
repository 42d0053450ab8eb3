#include "epimotion/synth.hpp"

#include "epimotion/epipolar.hpp"

#include <doctest.h>

using namespace epimotion;

TEST_CASE("rendering is deterministic under a fixed seed") {
  const SyntheticScene scene = scenePreset("basic", 99);
  const RenderedScene a = renderScene(scene);
  const RenderedScene b = renderScene(scene);
  REQUIRE(a.images.images.size() == b.images.images.size());
  for (std::size_t i = 0; i < a.images.images.size(); ++i) {
    CHECK(a.images.images[i].rgb == b.images.images[i].rgb);
    CHECK(a.masks[i].labels == b.masks[i].labels);
  }
}

TEST_CASE("presets have full plane coverage behind every pixel") {
  for (const char* name : {"basic", "epipolar-motion", "static-control", "periodic"}) {
    const SyntheticScene scene = scenePreset(name, 7);
    for (std::size_t i = 0; i < scene.cameras.size(); ++i) {
      CHECK(scene.planeVisibleFraction(static_cast<int>(i)) >= 0.6);
      // all four image corners must hit the plane quad
      const Mat3d inv = scene.backgroundHomographyToImage(static_cast<int>(i)).inverse();
      const double W = scene.width, H = scene.height;
      for (const Vec2d& c : {Vec2d(0, 0), Vec2d(W, 0), Vec2d(W, H), Vec2d(0, H)}) {
        const Vec3d t = inv * c.homogeneous();
        REQUIRE(std::abs(t[2]) > 1e-12);
        const double u = t[0] / t[2], v = t[1] / t[2];
        CHECK(u >= -1e-6);
        CHECK(u <= 1.0 + 1e-6);
        CHECK(v >= -1e-6);
        CHECK(v <= 1.0 + 1e-6);
      }
    }
  }
}

TEST_CASE("moving presets label the sprite footprint, static control stays empty") {
  const RenderedScene moving = renderScene(scenePreset("basic", 11));
  double area = 0.0;
  for (const auto& mask : moving.masks) {
    const double frac = static_cast<double>(mask.count(MaskLabel::Dynamic)) /
                        static_cast<double>(mask.labels.size());
    CHECK(frac > 0.03);
    CHECK(frac < 0.07);
    area += frac;
  }
  CHECK(area > 0.0);

  const RenderedScene still = renderScene(scenePreset("static-control", 11));
  for (const auto& mask : still.masks) CHECK(mask.count(MaskLabel::Dynamic) == 0);
}

TEST_CASE("analytic fundamental matrices satisfy the epipolar invariants") {
  const SyntheticScene scene = scenePreset("basic", 13);
  const int n = static_cast<int>(scene.cameras.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Mat3d F = scene.groundTruthFundamental(i, j);
      CHECK(F.norm() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(std::abs(F.determinant()) < 1e-9);
      const Vec3d eRef = epipoleOf<double>(F, ImageSide::Reference);
      CHECK((F * eRef).norm() < 1e-9);
    }
  }
}

TEST_CASE("static correspondences satisfy x'^T F x to 1e-6 after normalization") {
  const SyntheticScene scene = scenePreset("basic", 17);
  const Mat3d F = scene.groundTruthFundamental(0, 1);
  const auto corr = scene.staticCorrespondences(0, 1, 200);
  REQUIRE(corr.size() >= 150);
  for (const auto& c : corr) {
    const Vec3d line = epipolarLine<double>(F, c.ref);
    CHECK(std::abs(line.dot(c.sup.homogeneous())) < 1e-6);
  }
}

TEST_CASE("background homography transfers plane points between views") {
  const SyntheticScene scene = scenePreset("basic", 19);
  const Mat3d H = scene.backgroundHomography(0, 2);
  const auto corr = scene.staticCorrespondences(0, 2, 100, /*includeOffPlane=*/false);
  REQUIRE(corr.size() >= 60);
  for (const auto& c : corr) {
    const Vec3d mapped = H * c.ref.homogeneous();
    REQUIRE(std::abs(mapped[2]) > 1e-12);
    CHECK((mapped.head<2>() / mapped[2] - c.sup).norm() < 1e-6);
  }
}

TEST_CASE("epipolar-motion preset geometry") {
  const SyntheticScene scene = scenePreset("epipolar-motion", 23);
  REQUIRE(scene.cameras.size() == 4);

  SUBCASE("views 0 and 1 form a pure-translation pair with epipoles at infinity") {
    const Mat3d F01 = scene.groundTruthFundamental(0, 1);
    const Vec3d e = epipoleOf<double>(F01, ImageSide::Reference);
    CHECK(std::abs(e[2]) < 1e-9);
  }

  SUBCASE("sprite motion hides along pair (0,1) and violates pair (0,2)") {
    const Mat3d F01 = scene.groundTruthFundamental(0, 1);
    const Mat3d F02 = scene.groundTruthFundamental(0, 2);
    const auto c01 = scene.spriteCorrespondences(0, 1, 64);
    const auto c02 = scene.spriteCorrespondences(0, 2, 64);
    REQUIRE(c01.size() >= 32);
    REQUIRE(c02.size() >= 32);
    for (const auto& c : c01) {
      const Vec3d line = epipolarLine<double>(F01, c.ref);
      CHECK(std::abs(line.dot(c.sup.homogeneous())) < 1.0);
    }
    int violating = 0;
    for (const auto& c : c02) {
      const Vec3d line = epipolarLine<double>(F02, c.ref);
      if (std::abs(line.dot(c.sup.homogeneous())) > 5.0) ++violating;
    }
    CHECK(violating == static_cast<int>(c02.size()));
  }
}

TEST_CASE("scene validation rejects cameras that do not view the plane") {
  SyntheticScene scene = scenePreset("basic", 29);
  // point one camera away from the plane
  scene.cameras[2] = lookAtCamera(850.0, scene.width, scene.height, Vec3d(0, 0, 12),
                                  Vec3d(0, 0, 24));
  try {
    (void)renderScene(scene);
    FAIL("expected scene-invalid");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SceneInvalid);
  }
}
