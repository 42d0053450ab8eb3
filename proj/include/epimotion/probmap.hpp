#ifndef EPIMOTION_PROBMAP_HPP
#define EPIMOTION_PROBMAP_HPP

#include "epimotion/descriptors.hpp"
#include "epimotion/patches.hpp"

#include <array>
#include <string>
#include <vector>

namespace epimotion {

/// Raw nearest-neighbor confidences of one (reference, support) pair,
/// aligned with the pair's PatchSet. Index 0 = HOG, 1 = HS histogram.
/// Patches with no candidates (out of the field of view) hold 0.
struct ConfidenceTable {
  std::vector<std::array<float, 2>> raw;
};

/// Best-candidate similarity of one reference patch under one descriptor;
/// 0 when the candidate set is empty.
double patchConfidence(const Image& refImage, const EpipolarPatch& r, const Image& supImage,
                       const CandidateSet& cands, DescriptorKind kind,
                       const PatchParams& pp = {}, const DescriptorParams& dp = {});

/// Global per-descriptor range over every pair of the run; maps raw
/// confidence onto [0, 1], with a degenerate range pinned to 0.5.
struct NormalizationStats {
  std::array<double, 2> lo = {std::numeric_limits<double>::infinity(),
                              std::numeric_limits<double>::infinity()};
  std::array<double, 2> hi = {-std::numeric_limits<double>::infinity(),
                              -std::numeric_limits<double>::infinity()};

  void include(const ConfidenceTable& table);
  void includeValue(int kind, double value);
  void merge(const NormalizationStats& other);
  double normalized(int kind, double raw) const;
};

/// Per-pixel probability that the pixel is static and non-occluded given one
/// support image. Uncovered pixels carry the neutral 0.5 with a cleared flag.
struct MatchingProbabilityMap {
  std::string refId;
  std::string supId;
  GridF p;
  GridU8 covered;
};

/// Largest distance from a patch center to its own corners (the farthest
/// covered pixel cannot exceed it); feeds the run-level sigma rule.
double maxCenterDistance(const PatchSet& ps);

/// Weighted per-pixel expectation over covering patches and descriptors.
/// Weights w_r = exp(-d^2 / 2 sigma^2) and the per-descriptor weights are
/// jointly normalized to unit sum at each pixel.
MatchingProbabilityMap assembleMatchingMap(const PatchSet& ps, const ConfidenceTable& table,
                                           const NormalizationStats& stats,
                                           const DescriptorParams& dp, double sigma,
                                           const std::string& supId, int threads = 1);

}  // namespace epimotion

#endif
