#include "epimotion/pencil.hpp"

#include <algorithm>
#include <cmath>

namespace epimotion {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

Vec3d EpipolarPencil::lineAt(double param) const {
  if (atInfinity) {
    // n . q = param
    return Vec3d(normal[0], normal[1], -param);
  }
  const double c = std::cos(param), s = std::sin(param);
  // Line through the epipole with direction (c, s); normal is (-s, c).
  return Vec3d(-s, c, s * origin[0] - c * origin[1]);
}

Vec2d EpipolarPencil::rayDir(double param) const {
  if (atInfinity) return axis;
  return Vec2d(std::cos(param), std::sin(param));
}

EpipolarPencil buildPencil(int width, int height, const Vec3d& epipole, double targetHeight) {
  EpipolarPencil pencil;
  const Vec3d e = epipole.normalized();
  pencil.exclusionRadius = 2.0 * targetHeight;

  const double w = static_cast<double>(width);
  const double h = static_cast<double>(height);
  const Vec2d center(w / 2.0, h / 2.0);
  const Vec2d corners[4] = {{0, 0}, {w, 0}, {w, h}, {0, h}};

  double span = 0.0;
  if (std::abs(e[2]) < 1e-9) {
    pencil.atInfinity = true;
    pencil.axis = e.head<2>().normalized();
    pencil.normal = Vec2d(-pencil.axis[1], pencil.axis[0]);
    double sMin = std::numeric_limits<double>::infinity();
    double sMax = -sMin;
    for (const Vec2d& c : corners) {
      const double s = pencil.normal.dot(c);
      sMin = std::min(sMin, s);
      sMax = std::max(sMax, s);
    }
    pencil.sectorLo = sMin;
    pencil.sectorHi = sMax;
    span = sMax - sMin;
    const int m = std::max(1, static_cast<int>(std::lround(span / targetHeight)));
    pencil.gap = span / m;
  } else {
    pencil.origin = e.head<2>() / e[2];
    const bool inside = pencil.origin[0] >= 0.0 && pencil.origin[0] <= w &&
                        pencil.origin[1] >= 0.0 && pencil.origin[1] <= h;
    const double centerDist = (pencil.origin - center).norm();
    if (inside) {
      pencil.fullCircle = true;
      pencil.sectorLo = 0.0;
      pencil.sectorHi = kTwoPi;
      span = kTwoPi;
    } else {
      const double thetaC = std::atan2(center[1] - pencil.origin[1], center[0] - pencil.origin[0]);
      double lo = 0.0, hi = 0.0;
      for (const Vec2d& c : corners) {
        const double a = std::atan2(c[1] - pencil.origin[1], c[0] - pencil.origin[0]);
        const double d = wrapAnglePi(a - thetaC);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
      }
      pencil.sectorLo = thetaC + lo;
      pencil.sectorHi = thetaC + hi;
      span = hi - lo;
    }
    // Calibrate the gap so adjacent lines sit targetHeight px apart at the
    // image-center distance. For a central epipole that distance degenerates;
    // fall back to a quarter diagonal.
    const double calib = std::max(centerDist, inside ? 0.25 * std::hypot(w, h) : centerDist);
    const double nominal = targetHeight / std::max(calib, 1e-6);
    const int m = std::max(1, static_cast<int>(std::lround(span / nominal)));
    pencil.gap = span / m;
  }

  for (int f = 0; f < 3; ++f) {
    const double off = pencil.familyOffset(f);
    int count;
    if (pencil.fullCircle) {
      count = static_cast<int>(std::lround(span / pencil.gap));
    } else {
      count = static_cast<int>(std::ceil((span - off) / pencil.gap - 1e-9));
      count = std::max(count, 0);
    }
    pencil.stripCount[f] = count;
    for (int i = 0; i < count; ++i) {
      double p = pencil.stripParam(f, i);
      if (!pencil.atInfinity) p = wrapAngle2Pi(p);
      pencil.entries.push_back({p, f});
    }
  }
  std::sort(pencil.entries.begin(), pencil.entries.end(),
            [](const EpipolarPencil::Entry& a, const EpipolarPencil::Entry& b) {
              if (a.param != b.param) return a.param < b.param;
              return a.family < b.family;
            });
  return pencil;
}

}  // namespace epimotion
