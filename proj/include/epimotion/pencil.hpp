#ifndef EPIMOTION_PENCIL_HPP
#define EPIMOTION_PENCIL_HPP

#include "epimotion/types.hpp"

#include <array>
#include <vector>

namespace epimotion {

/// Discretized pencil of epipolar lines in one image.
///
/// Finite epipole: members are rays from the epipole, parametrized by angle;
/// the covered sector is the set of ray angles that hit the image (the full
/// circle when the epipole lies inside it). Epipole at infinity: members are
/// parallel lines, parametrized by signed offset along the common normal.
///
/// Three interleaved families tile the sector: family 0 starts at the sector
/// edge, families 1 and 2 are shifted by 1/3 and 2/3 of the base gap.
struct EpipolarPencil {
  bool atInfinity = false;
  Vec2d origin = Vec2d::Zero();  // finite epipole position
  Vec2d axis = Vec2d::UnitX();   // infinite: unit direction of all lines
  Vec2d normal = Vec2d::UnitY(); // infinite: unit normal (offset axis)

  double gap = 0.0;        // base family spacing (radians or px)
  double sectorLo = 0.0;   // raw param range; fullCircle => [0, 2*pi)
  double sectorHi = 0.0;
  bool fullCircle = false;
  double exclusionRadius = 0.0;  // finite epipole only
  std::array<int, 3> stripCount = {0, 0, 0};

  struct Entry {
    double param;  // wrapped to [0, 2*pi) for finite pencils
    int family;    // 0, 1, 2 -> angle shifts 0, 1/3, 2/3 of the gap
  };
  std::vector<Entry> entries;  // sorted by param

  double familyOffset(int family) const { return family * gap / 3.0; }
  /// Lower bounding param of strip (family, idx), unwrapped.
  double stripParam(int family, int idx) const {
    return sectorLo + familyOffset(family) + idx * gap;
  }
  /// Homogeneous line at a raw param, unit line-normal.
  Vec3d lineAt(double param) const;
  /// Unit direction along the pencil member at `param` (finite: the ray).
  Vec2d rayDir(double param) const;
};

/// Builds the pencil for an image of the given size. targetHeight calibrates
/// the base gap: for a finite epipole the inter-line spacing measured at the
/// image-center distance, for an infinite one the literal line spacing.
/// When the epipole falls inside the image, an exclusion disk of radius
/// 2 * targetHeight is recorded; pixels inside it stay uncovered.
EpipolarPencil buildPencil(int width, int height, const Vec3d& epipole, double targetHeight);

}  // namespace epimotion

#endif
