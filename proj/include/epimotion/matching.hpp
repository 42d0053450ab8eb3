#ifndef EPIMOTION_MATCHING_HPP
#define EPIMOTION_MATCHING_HPP

#include "epimotion/epipolar.hpp"
#include "epimotion/image.hpp"

#include <vector>

namespace epimotion {

struct MatchingParams {
  int maxCorners = 2000;
  double harrisK = 0.04;
  int nmsRadius = 4;
  double responseFloor = 1e-4;  // relative to the strongest response
  int patchRadius = 5;          // 11x11 NCC patches
  double nccRatio = 0.8;        // distance ratio test on (1 - ncc)
  double nccFloor = 0.5;        // minimum acceptable correlation
};

struct CornerList {
  std::vector<Vec2d> points;  // sub-pixel positions
  GridF luma;                 // kept for NCC patch extraction
};

/// Harris corners with non-maximal suppression and sub-pixel refinement,
/// strongest first, capped at maxCorners.
CornerList detectCorners(const Image& img, const MatchingParams& params = {});

/// Putative matches between two corner sets: normalized cross-correlation on
/// luma patches with a ratio test. An empty result is valid.
std::vector<Correspondence> matchCorners(const CornerList& a, const CornerList& b,
                                         const MatchingParams& params = {});

std::vector<Correspondence> detectAndMatch(const Image& a, const Image& b,
                                           const MatchingParams& params = {});

}  // namespace epimotion

#endif
