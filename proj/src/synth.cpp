#include "epimotion/synth.hpp"

#include "epimotion/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace epimotion {
namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) { return splitmix(a ^ splitmix(b)); }

double lattice(std::uint64_t key, std::int64_t ix, std::int64_t iy) {
  const std::uint64_t h = mix(key, mix(static_cast<std::uint64_t>(ix) * 0x9E3779B1ull,
                                       static_cast<std::uint64_t>(iy) + 0x7F4A7C15ull));
  return static_cast<double>(h >> 11) * (1.0 / 9007199254740992.0);
}

double smooth(double t) { return t * t * (3.0 - 2.0 * t); }

double valueNoise(std::uint64_t key, double u, double v, double cell) {
  const double x = u / cell, y = v / cell;
  const double fx = std::floor(x), fy = std::floor(y);
  const auto ix = static_cast<std::int64_t>(fx);
  const auto iy = static_cast<std::int64_t>(fy);
  const double tx = smooth(x - fx), ty = smooth(y - fy);
  const double v00 = lattice(key, ix, iy), v10 = lattice(key, ix + 1, iy);
  const double v01 = lattice(key, ix, iy + 1), v11 = lattice(key, ix + 1, iy + 1);
  return (v00 * (1 - tx) + v10 * tx) * (1 - ty) + (v01 * (1 - tx) + v11 * tx) * ty;
}

Eigen::Vector3d clamp255(const Eigen::Vector3d& c) {
  return c.cwiseMax(0.0).cwiseMin(255.0);
}

// Background color at plane-local world coordinates (units of the plane span).
Eigen::Vector3d backgroundColor(BackgroundStyle style, std::uint64_t seed, double wu, double wv) {
  switch (style) {
    case BackgroundStyle::Isotropic: {
      const double n = 0.45 * valueNoise(mix(seed, 11), wu, wv, 1.6) +
                       0.35 * valueNoise(mix(seed, 12), wu, wv, 0.45) +
                       0.20 * valueNoise(mix(seed, 13), wu, wv, 0.12);
      // hue and saturation texture at two scales so color localizes too
      const double hueMix = 0.25 * valueNoise(mix(seed, 14), wu, wv, 2.5) +
                            0.20 * valueNoise(mix(seed, 15), wu, wv, 0.5);
      const bool cell = (static_cast<std::int64_t>(std::floor(wu / 0.8)) +
                         static_cast<std::int64_t>(std::floor(wv / 0.8))) & 1;
      const Eigen::Vector3d base0(70, 105, 165), base1(95, 150, 95);
      Eigen::Vector3d base = cell ? base1 + hueMix * (base0 - base1)
                                  : base0 + hueMix * (base1 - base0);
      const double desat = 0.35 * valueNoise(mix(seed, 16), wu, wv, 0.35);
      const Eigen::Vector3d gray = Eigen::Vector3d::Constant(base.mean());
      base += desat * (gray - base);
      return clamp255(base * (0.45 + 1.1 * n));
    }
    case BackgroundStyle::HorizontalStripes: {
      const double t = 0.5 + 0.5 * std::sin(2.0 * M_PI * wv / 0.25);
      const double n = valueNoise(mix(seed, 21), wu, wv, 0.2);
      Eigen::Vector3d c(50 + 40 * t, 90 + 45 * t, 160 + 75 * t);
      c += Eigen::Vector3d::Constant(16.0 * (n - 0.5));
      return clamp255(c);
    }
    case BackgroundStyle::PeriodicChecker: {
      const bool cell = (static_cast<std::int64_t>(std::floor(wu / 0.45)) +
                         static_cast<std::int64_t>(std::floor(wv / 0.45))) & 1;
      const double n = valueNoise(mix(seed, 31), wu, wv, 0.1);
      const Eigen::Vector3d base = cell ? Eigen::Vector3d(180, 170, 150)
                                        : Eigen::Vector3d(75, 110, 170);
      return clamp255(base + Eigen::Vector3d::Constant(10.0 * (n - 0.5)));
    }
  }
  return Eigen::Vector3d(128, 128, 128);
}

// Sprite texture: red-family vertical stripes with a darker border ring, so
// its hue/saturation and gradient orientation both differ from the backgrounds.
Eigen::Vector3d spriteColor(std::uint64_t seed, double u, double v) {
  if (std::min(std::min(u, 1.0 - u), std::min(v, 1.0 - v)) < 0.06)
    return Eigen::Vector3d(120, 25, 20);
  const double t = 0.5 + 0.5 * std::sin(2.0 * M_PI * u / 0.125);
  const double n = valueNoise(mix(seed, 41), u, v, 0.3);
  Eigen::Vector3d c(200 + 45 * t, 55 + 50 * t, 35 + 25 * t);
  c += Eigen::Vector3d::Constant(12.0 * (n - 0.5));
  return clamp255(c);
}

Mat3d quadHomographyToImage(const Camera& cam, const QuadPose& quad) {
  Mat3d M;
  M.col(0) = quad.U;
  M.col(1) = quad.V;
  M.col(2) = quad.origin - cam.C;
  return cam.K * cam.R * M;
}

}  // namespace

bool Camera::project(const Vec3d& P, Vec2d& out) const {
  const Vec3d p = K * (R * (P - C));
  if (p[2] <= 1e-12) return false;
  out = p.head<2>() / p[2];
  return true;
}

Camera lookAtCamera(double focal, int width, int height, const Vec3d& center, const Vec3d& target) {
  Camera cam;
  cam.K << focal, 0, width * 0.5, 0, focal, height * 0.5, 0, 0, 1;
  cam.C = center;
  const Vec3d z = (target - center).normalized();
  Vec3d up(0, 1, 0);
  if (std::abs(up.dot(z)) > 0.99) up = Vec3d(1, 0, 0);
  const Vec3d x = up.cross(z).normalized();
  const Vec3d y = z.cross(x);
  cam.R.row(0) = x.transpose();
  cam.R.row(1) = y.transpose();
  cam.R.row(2) = z.transpose();
  return cam;
}

bool SyntheticScene::spriteMoves() const {
  for (std::size_t i = 1; i < spritePoses.size(); ++i) {
    if ((spritePoses[i].origin - spritePoses[0].origin).norm() > 1e-12 ||
        (spritePoses[i].U - spritePoses[0].U).norm() > 1e-12 ||
        (spritePoses[i].V - spritePoses[0].V).norm() > 1e-12)
      return true;
  }
  return false;
}

Mat3d SyntheticScene::backgroundHomographyToImage(int i) const {
  return quadHomographyToImage(cameras[i], plane);
}

Mat3d SyntheticScene::backgroundHomography(int i, int j) const {
  return backgroundHomographyToImage(j) * backgroundHomographyToImage(i).inverse();
}

Mat3d SyntheticScene::groundTruthFundamental(int i, int j) const {
  const Camera& a = cameras[i];
  const Camera& b = cameras[j];
  return fundamentalFromCameras<double>(a.K, a.R, a.C, b.K, b.R, b.C);
}

double SyntheticScene::planeVisibleFraction(int i) const {
  const int grid = 48;
  int inside = 0;
  for (int gy = 0; gy < grid; ++gy) {
    for (int gx = 0; gx < grid; ++gx) {
      const double u = (gx + 0.5) / grid;
      const double v = (gy + 0.5) / grid;
      Vec2d p;
      if (cameras[i].project(plane.point(u, v), p) && p[0] >= 0 && p[0] < width && p[1] >= 0 &&
          p[1] < height)
        ++inside;
    }
  }
  return static_cast<double>(inside) / (grid * grid);
}

std::vector<Correspondence> SyntheticScene::staticCorrespondences(int i, int j, int count,
                                                                  bool includeOffPlane) const {
  std::vector<Correspondence> out;
  std::mt19937_64 rng(mix(seed, 0xC0FFEEull + 131 * i + j));
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  int attempts = 0;
  while (static_cast<int>(out.size()) < count && attempts < count * 50) {
    ++attempts;
    Vec3d P;
    if (includeOffPlane && (attempts % 2 == 0)) {
      P = Vec3d(-4.0 + 8.0 * uni(rng), -3.0 + 6.0 * uni(rng), 0.4 + 3.0 * uni(rng));
    } else {
      P = plane.point(uni(rng), uni(rng));
    }
    Vec2d a, b;
    if (!cameras[i].project(P, a) || !cameras[j].project(P, b)) continue;
    if (a[0] < 1 || a[0] >= width - 1 || a[1] < 1 || a[1] >= height - 1) continue;
    if (b[0] < 1 || b[0] >= width - 1 || b[1] < 1 || b[1] >= height - 1) continue;
    out.push_back({a, b, 1.0});
  }
  return out;
}

std::vector<Correspondence> SyntheticScene::spriteCorrespondences(int i, int j, int count) const {
  std::vector<Correspondence> out;
  const int grid = std::max(2, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count)))));
  for (int gy = 0; gy < grid && static_cast<int>(out.size()) < count; ++gy) {
    for (int gx = 0; gx < grid && static_cast<int>(out.size()) < count; ++gx) {
      const double u = (gx + 0.5) / grid;
      const double v = (gy + 0.5) / grid;
      Vec2d a, b;
      if (!cameras[i].project(spritePoses[i].point(u, v), a)) continue;
      if (!cameras[j].project(spritePoses[j].point(u, v), b)) continue;
      if (a[0] < 0 || a[0] >= width || a[1] < 0 || a[1] >= height) continue;
      if (b[0] < 0 || b[0] >= width || b[1] < 0 || b[1] >= height) continue;
      out.push_back({a, b, 1.0});
    }
  }
  return out;
}

RenderedScene renderScene(const SyntheticScene& scene) {
  if (scene.cameras.size() < 2)
    throw Error(ErrorCode::SceneInvalid, "scene needs at least 2 cameras");
  if (scene.spritePoses.size() != scene.cameras.size())
    throw Error(ErrorCode::SceneInvalid, "scene needs one sprite pose per camera");
  for (std::size_t i = 0; i < scene.cameras.size(); ++i) {
    const double frac = scene.planeVisibleFraction(static_cast<int>(i));
    if (frac < 0.6)
      throw Error(ErrorCode::SceneInvalid,
                  "camera " + std::to_string(i) + " sees only " + std::to_string(frac) +
                      " of the background plane");
  }

  const bool dynamic = scene.spriteMoves();
  RenderedScene out;
  out.images.name = scene.name;
  out.images.images.resize(scene.cameras.size());
  out.masks.resize(scene.cameras.size());

  for (std::size_t ci = 0; ci < scene.cameras.size(); ++ci) {
    Image& img = out.images.images[ci];
    img.id = "view" + std::string(ci < 10 ? "0" : "") + std::to_string(ci);
    img.width = scene.width;
    img.height = scene.height;
    img.rgb.assign(static_cast<std::size_t>(scene.width) * scene.height * 3, 0);
    GroundTruthMask& mask = out.masks[ci];
    mask.width = scene.width;
    mask.height = scene.height;
    mask.labels.assign(static_cast<std::size_t>(scene.width) * scene.height, MaskLabel::Static);

    const Mat3d bgInv = scene.backgroundHomographyToImage(static_cast<int>(ci)).inverse();
    const Mat3d sprInv = quadHomographyToImage(scene.cameras[ci], scene.spritePoses[ci]).inverse();
    const double planeU = scene.plane.U.norm();
    const double planeV = scene.plane.V.norm();

    parallelFor(static_cast<std::size_t>(scene.height), 4, [&](std::size_t row) {
      const int y = static_cast<int>(row);
      std::mt19937_64 rowRng(mix(scene.seed, 0xA0151ull + 977 * ci + y));
      std::normal_distribution<double> gauss(0.0, scene.noiseSigma);
      for (int x = 0; x < scene.width; ++x) {
        const Vec3d q(x + 0.5, y + 0.5, 1.0);
        Eigen::Vector3d color(100, 100, 100);
        bool onSprite = false;
        const Vec3d ts = sprInv * q;
        if (std::abs(ts[2]) > 1e-15) {
          const double su = ts[0] / ts[2];
          const double sv = ts[1] / ts[2];
          if (su >= 0.0 && su <= 1.0 && sv >= 0.0 && sv <= 1.0) {
            onSprite = true;
            color = spriteColor(scene.seed, su, sv);
          }
        }
        if (!onSprite) {
          const Vec3d tb = bgInv * q;
          if (std::abs(tb[2]) > 1e-15) {
            const double bu = tb[0] / tb[2];
            const double bv = tb[1] / tb[2];
            if (bu >= 0.0 && bu <= 1.0 && bv >= 0.0 && bv <= 1.0)
              color = backgroundColor(scene.bgStyle, scene.seed, bu * planeU, bv * planeV);
          }
        }
        if (scene.noiseSigma > 0.0) {
          color[0] += gauss(rowRng);
          color[1] += gauss(rowRng);
          color[2] += gauss(rowRng);
          color = clamp255(color);
        }
        std::uint8_t* px = img.at(x, y);
        px[0] = static_cast<std::uint8_t>(std::lround(color[0]));
        px[1] = static_cast<std::uint8_t>(std::lround(color[1]));
        px[2] = static_cast<std::uint8_t>(std::lround(color[2]));
        if (onSprite && dynamic)
          mask.labels[static_cast<std::size_t>(y) * scene.width + x] = MaskLabel::Dynamic;
      }
    });
  }
  return out;
}

SyntheticScene scenePreset(const std::string& name, std::uint64_t seed, int width, int height) {
  SyntheticScene scene;
  scene.seed = seed;
  scene.name = name;
  scene.width = width;
  scene.height = height;
  scene.plane = {Vec3d(-5.6, -4.175, 0), Vec3d(11.2, 0, 0), Vec3d(0, 8.35, 0)};

  const double f = 850.0 * width / 640.0;
  const auto lookAt = [&](const Vec3d& c, const Vec3d& t) {
    return lookAtCamera(f, scene.width, scene.height, c, t);
  };
  const auto sprite = [](double cx, double cy, double size = 1.45, double z = 2.0) {
    return QuadPose{Vec3d(cx - size / 2, cy - size / 2, z), Vec3d(size, 0, 0), Vec3d(0, size, 0)};
  };

  if (name == "basic" || name == "periodic") {
    scene.bgStyle = name == "periodic" ? BackgroundStyle::PeriodicChecker
                                       : BackgroundStyle::Isotropic;
    scene.noiseSigma = 1.0;
    const Vec3d centers[5] = {{-1.0, -0.5, 12.0}, {1.05, -0.35, 11.6}, {-0.45, 0.8, 12.3},
                              {0.9, 0.75, 11.9},  {0.0, -0.95, 12.45}};
    const double dx[5] = {0.0, 1.6, -1.2, 0.6, -1.7};
    const double dy[5] = {0.0, 0.5, 1.3, -1.5, -0.8};
    for (int i = 0; i < 5; ++i) {
      scene.cameras.push_back(lookAt(centers[i], Vec3d(0, 0, 0)));
      scene.spritePoses.push_back(sprite(dx[i] * 0.65, dy[i] * 0.65));
    }
  } else if (name == "static-control") {
    scene.noiseSigma = 2.0;
    const Vec3d centers[4] = {{-1.0, -0.5, 12.0}, {1.05, -0.35, 11.6}, {-0.45, 0.8, 12.3},
                              {0.6, 0.7, 12.2}};
    for (int i = 0; i < 4; ++i) {
      scene.cameras.push_back(lookAt(centers[i], Vec3d(0, 0, 0)));
      scene.spritePoses.push_back(sprite(0.3, -0.2));
    }
  } else if (name == "epipolar-motion") {
    scene.bgStyle = BackgroundStyle::HorizontalStripes;
    scene.noiseSigma = 1.0;
    // Views 0 and 1: identical orientation, pure x-translation, so their
    // epipoles sit at infinity along x and the sprite motion below stays on
    // their shared epipolar lines.
    Camera cam0 = lookAt(Vec3d(-0.9, 0, 12.0), Vec3d(-0.9, 0, 0));
    Camera cam1 = cam0;
    cam1.C = Vec3d(0.9, 0, 12.0);
    scene.cameras.push_back(cam0);
    scene.cameras.push_back(cam1);
    scene.cameras.push_back(lookAt(Vec3d(0.0, 1.75, 11.6), Vec3d(0, 0, 0)));
    scene.cameras.push_back(lookAt(Vec3d(0.35, -1.65, 12.3), Vec3d(0, 0, 0)));
    const double dx[4] = {-0.9, 0.1, 1.1, -1.7};
    for (int i = 0; i < 4; ++i) scene.spritePoses.push_back(sprite(dx[i], 0.15));
  } else {
    throw Error(ErrorCode::InvalidConfig, "unknown scene preset: " + name);
  }
  return scene;
}

}  // namespace epimotion
