#ifndef EPIMOTION_DESCRIPTORS_HPP
#define EPIMOTION_DESCRIPTORS_HPP

#include "epimotion/patches.hpp"

#include <Eigen/Core>

namespace epimotion {

enum class DescriptorKind { Hog, HsHist };

struct DescriptorParams {
  int hogCellSize = 8;       // 2x2 cells on a 16x16 grid
  int hogBins = 9;           // unsigned orientation bins over [0, 180)
  int hsBins = 10;           // per channel
  double weightHog = 2.0;
  double weightHs = 1.0;
};

struct DescriptorVector {
  DescriptorKind kind;
  Eigen::VectorXf values;

  bool isZero() const { return values.size() == 0 || values.maxCoeff() <= 0.0f; }
};

/// Histogram of oriented gradients on the luma of a warped patch: 2x2 cells,
/// 9 unsigned bins, one block, L2-normalized with epsilon 1e-6. A constant
/// patch yields the zero vector.
DescriptorVector hog(const WarpedPatch& patch, const DescriptorParams& params = {});

/// Joint 10x10 histogram of hue and saturation, normalized to unit mass.
/// Flagged out-of-image samples are excluded; all-flagged gives a zero
/// histogram.
DescriptorVector hsHistogram(const WarpedPatch& patch, const DescriptorParams& params = {});

/// Cosine similarity for HOG, histogram intersection-over-union for HS.
/// Zero vectors match nothing (similarity 0). Throws on kind mismatch.
double similarity(const DescriptorVector& a, const DescriptorVector& b);

}  // namespace epimotion

#endif
