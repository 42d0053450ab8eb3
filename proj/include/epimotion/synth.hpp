#ifndef EPIMOTION_SYNTH_HPP
#define EPIMOTION_SYNTH_HPP

#include "epimotion/epipolar.hpp"
#include "epimotion/image.hpp"
#include "epimotion/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace epimotion {

struct Camera {
  Mat3d K;
  Mat3d R;  // world -> camera rotation
  Vec3d C;  // center in world coordinates

  /// Projects a world point; returns false when behind the camera.
  bool project(const Vec3d& P, Vec2d& out) const;
};

Camera lookAtCamera(double focal, int width, int height, const Vec3d& center, const Vec3d& target);

/// 3-D parallelogram: origin + u*U + v*V for (u, v) in [0,1]^2.
struct QuadPose {
  Vec3d origin;
  Vec3d U;
  Vec3d V;

  Vec3d point(double u, double v) const { return origin + u * U + v * V; }
};

enum class BackgroundStyle { Isotropic, HorizontalStripes, PeriodicChecker };

/// Scene with a textured background plane, one textured sprite quad with a
/// per-shot pose, and pinhole cameras with exact analytic geometry.
struct SyntheticScene {
  int width = 640;
  int height = 480;
  std::vector<Camera> cameras;
  QuadPose plane;
  BackgroundStyle bgStyle = BackgroundStyle::Isotropic;
  std::vector<QuadPose> spritePoses;  // one per camera; index i is the pose at shot i
  double noiseSigma = 0.0;            // additive Gaussian, gray levels
  std::uint64_t seed = 0;
  std::string name = "synthetic";

  bool spriteMoves() const;

  /// Texture -> image homography of the background plane for camera i.
  Mat3d backgroundHomographyToImage(int i) const;
  /// Background-mediated homography mapping image i points to image j points.
  Mat3d backgroundHomography(int i, int j) const;
  /// Ground-truth F of the ordered pair (i -> j): x_j^T F x_i = 0.
  Mat3d groundTruthFundamental(int i, int j) const;

  /// Fraction of a background-plane sample grid visible in camera i.
  double planeVisibleFraction(int i) const;

  /// Exact static correspondences between views i and j. Points are sampled
  /// both on the background plane and in an off-plane slab so the set is not
  /// coplanar; only pairs visible in both images are returned.
  std::vector<Correspondence> staticCorrespondences(int i, int j, int count,
                                                    bool includeOffPlane = true) const;

  /// Correspondences of sprite texture points between shots i and j; the
  /// sprite moves with its per-shot pose, so these violate the epipolar
  /// constraint whenever the displacement leaves the epipolar plane.
  std::vector<Correspondence> spriteCorrespondences(int i, int j, int count) const;
};

struct RenderedScene {
  ImageSet images;
  std::vector<GroundTruthMask> masks;  // aligned with images
};

/// Renders all shots. Masks label sprite footprints as dynamic only when the
/// sprite pose actually changes across shots. Throws SceneInvalid when a
/// camera sees less than 60% of the background plane.
RenderedScene renderScene(const SyntheticScene& scene);

/// Presets: "basic" (5 views, generic sprite motion), "epipolar-motion"
/// (views 0/1 form a pure-translation pair and the sprite moves parallel to
/// their baseline), "static-control" (4 views, sprite fixed, noise sigma 2),
/// "periodic" (periodic background). The focal length scales with the image
/// size so the framing is resolution-independent.
SyntheticScene scenePreset(const std::string& name, std::uint64_t seed, int width = 640,
                           int height = 480);

}  // namespace epimotion

#endif
