#ifndef EPIMOTION_RANSAC_HPP
#define EPIMOTION_RANSAC_HPP

#include "epimotion/epipolar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace epimotion {

struct RansacParams {
  double sampsonThreshold = 1.5;  // px
  int maxIterations = 2000;
  double confidence = 0.99;
  int minInliers = 30;
  double minInlierRatio = 0.2;
};

/// Robustly estimated two-view geometry of an ordered (reference, support)
/// pair. F maps reference points to support lines: x_sup^T F x_ref = 0.
struct PairGeometry {
  Mat3d F;
  Vec3d epipoleRef;
  Vec3d epipoleSup;
  std::vector<Correspondence> inliers;
  double inlierRatio = 0.0;
  double meanSampsonError = 0.0;
  bool fromFile = false;

  PairGeometry transposed() const;
};

enum class RansacFailure { None, TooFewMatches, NoConsensus, Degenerate };

struct RansacResult {
  std::optional<PairGeometry> geometry;
  RansacFailure failure = RansacFailure::None;
  int iterations = 0;

  std::string failureText() const;
};

/// Normalized eight-point inside RANSAC with a Sampson-distance inlier test,
/// re-estimated on the consensus set. The acceptance rule (minInliers and
/// minInlierRatio) stands in for a hard per-pair success criterion; rejected
/// pairs are reported, not thrown.
RansacResult estimateFundamentalRansac(const std::vector<Correspondence>& matches,
                                       std::uint64_t seed, const RansacParams& params = {});

/// Builds a PairGeometry around an externally supplied fundamental matrix
/// (rank-2 enforced, unit norm); used for ground-truth ingestion.
PairGeometry pairGeometryFromF(const Mat3d& F, bool fromFile = true);

}  // namespace epimotion

#endif
