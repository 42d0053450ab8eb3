#ifndef EPIMOTION_EVAL_HPP
#define EPIMOTION_EVAL_HPP

#include "epimotion/aggregate.hpp"
#include "epimotion/image.hpp"

#include <string>
#include <vector>

namespace epimotion {

/// Intersection-over-union of the predicted dynamic mask against the
/// ground-truth dynamic region, ignoring don't-care pixels. Both-empty sets
/// count as perfect agreement (1).
double jaccard(const std::vector<std::uint8_t>& mask, int width, int height,
               const GroundTruthMask& gt);

struct ThresholdResult {
  double threshold = 0.0;
  double jaccard = 0.0;
};

inline constexpr double kThresholdStep = 0.01;  // grid {0.00, 0.01, ..., 1.00}

/// Grid search maximizing Jaccard for one image; ties resolve to the
/// smallest threshold.
ThresholdResult bestThresholdPerImage(const DynamicProbabilityMap& map, const GroundTruthMask& gt);

struct SetThresholdResult {
  double threshold = 0.0;
  double meanJaccard = 0.0;
  double stdJaccard = 0.0;
  std::vector<double> perImage;  // Jaccard of each image at the set threshold
};

/// One common threshold maximizing the mean Jaccard over the set, same grid
/// and tie-break as the per-image protocol.
SetThresholdResult bestThresholdPerSet(const std::vector<const DynamicProbabilityMap*>& maps,
                                       const std::vector<const GroundTruthMask*>& gts);

struct ImageEval {
  std::string id;
  ThresholdResult perImage;
  double jaccardAtSetThreshold = 0.0;
  int supportSize = 0;
};

struct EvalReport {
  std::vector<ImageEval> images;
  double perImageMean = 0.0;
  double perImageStd = 0.0;
  SetThresholdResult perSet;
};

EvalReport evaluateSet(const std::vector<const DynamicProbabilityMap*>& maps,
                       const std::vector<const GroundTruthMask*>& gts,
                       const std::vector<std::string>& ids);

}  // namespace epimotion

#endif
