#include "epimotion/eval.hpp"

#include <cmath>

namespace epimotion {
namespace {

double stddev(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

// Jaccard for every grid threshold at once: one pass over the pixels,
// bucketing ground-truth positives/negatives by quantized probability.
struct GridJaccard {
  static constexpr int kSteps = 101;
  // counts of pixels with pDynamic in bucket b
  std::array<std::int64_t, kSteps + 1> posAt{};  // gt dynamic
  std::array<std::int64_t, kSteps + 1> negAt{};  // gt static
  std::int64_t gtDynamic = 0;

  void accumulate(const DynamicProbabilityMap& map, const GroundTruthMask& gt) {
    if (map.pDynamic.cols() != gt.width || map.pDynamic.rows() != gt.height)
      throw Error(ErrorCode::DimensionMismatch, "map and ground truth differ in size");
    for (Eigen::Index i = 0; i < map.pDynamic.size(); ++i) {
      const MaskLabel label = gt.labels[static_cast<std::size_t>(i)];
      if (label == MaskLabel::DontCare) continue;
      // bucket(p) = largest grid index k with k*step <= p, adjusted so the
      // suffix test (bucket >= k) agrees bit-for-bit with p >= k*step.
      const double p = map.pDynamic.data()[i];
      int b = static_cast<int>(std::floor(p / kThresholdStep));
      b = std::min(std::max(b, 0), kSteps - 1);
      while (b + 1 <= kSteps - 1 && (b + 1) * kThresholdStep <= p) ++b;
      while (b > 0 && b * kThresholdStep > p) --b;
      if (label == MaskLabel::Dynamic) {
        ++posAt[b];
        ++gtDynamic;
      } else {
        ++negAt[b];
      }
    }
  }

  // Jaccard at every grid index k (threshold = k * step): the predicted set
  // at index k is exactly the buckets >= k, so suffix sums give tp and fp.
  std::array<double, kSteps> curve() const {
    std::array<double, kSteps> out{};
    std::vector<std::int64_t> tpSuffix(kSteps + 2, 0), fpSuffix(kSteps + 2, 0);
    for (int b = kSteps; b >= 0; --b) {
      tpSuffix[b] = tpSuffix[b + 1] + posAt[b];
      fpSuffix[b] = fpSuffix[b + 1] + negAt[b];
    }
    for (int k = 0; k < kSteps; ++k) {
      const std::int64_t unionCount = gtDynamic + fpSuffix[k];
      out[k] = unionCount == 0 ? 1.0
                               : static_cast<double>(tpSuffix[k]) / static_cast<double>(unionCount);
    }
    return out;
  }
};

}  // namespace

double jaccard(const std::vector<std::uint8_t>& mask, int width, int height,
               const GroundTruthMask& gt) {
  if (width != gt.width || height != gt.height ||
      mask.size() != static_cast<std::size_t>(width) * height)
    throw Error(ErrorCode::DimensionMismatch, "mask and ground truth differ in size");
  std::int64_t inter = 0, uni = 0;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (gt.labels[i] == MaskLabel::DontCare) continue;
    const bool pred = mask[i] != 0;
    const bool dyn = gt.labels[i] == MaskLabel::Dynamic;
    if (pred && dyn) ++inter;
    if (pred || dyn) ++uni;
  }
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

ThresholdResult bestThresholdPerImage(const DynamicProbabilityMap& map,
                                      const GroundTruthMask& gt) {
  GridJaccard grid;
  grid.accumulate(map, gt);
  const auto curve = grid.curve();
  ThresholdResult best{0.0, curve[0]};
  for (int k = 1; k < GridJaccard::kSteps; ++k) {
    if (curve[k] > best.jaccard) {
      best.jaccard = curve[k];
      best.threshold = k * kThresholdStep;
    }
  }
  return best;
}

SetThresholdResult bestThresholdPerSet(const std::vector<const DynamicProbabilityMap*>& maps,
                                       const std::vector<const GroundTruthMask*>& gts) {
  if (maps.empty() || maps.size() != gts.size())
    throw Error(ErrorCode::InvalidConfig, "per-set protocol needs aligned maps and masks");
  std::vector<std::array<double, GridJaccard::kSteps>> curves(maps.size());
  for (std::size_t i = 0; i < maps.size(); ++i) {
    GridJaccard grid;
    grid.accumulate(*maps[i], *gts[i]);
    curves[i] = grid.curve();
  }
  int bestK = 0;
  double bestMean = -1.0;
  for (int k = 0; k < GridJaccard::kSteps; ++k) {
    double mean = 0.0;
    for (const auto& c : curves) mean += c[k];
    mean /= static_cast<double>(curves.size());
    if (mean > bestMean + 1e-15) {
      bestMean = mean;
      bestK = k;
    }
  }
  SetThresholdResult out;
  out.threshold = bestK * kThresholdStep;
  out.perImage.resize(maps.size());
  for (std::size_t i = 0; i < maps.size(); ++i) out.perImage[i] = curves[i][bestK];
  out.meanJaccard = bestMean;
  out.stdJaccard = stddev(out.perImage, bestMean);
  return out;
}

EvalReport evaluateSet(const std::vector<const DynamicProbabilityMap*>& maps,
                       const std::vector<const GroundTruthMask*>& gts,
                       const std::vector<std::string>& ids) {
  EvalReport report;
  report.perSet = bestThresholdPerSet(maps, gts);
  std::vector<double> perImageJ;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    ImageEval ev;
    ev.id = ids[i];
    ev.perImage = bestThresholdPerImage(*maps[i], *gts[i]);
    ev.jaccardAtSetThreshold = report.perSet.perImage[i];
    report.images.push_back(ev);
    perImageJ.push_back(ev.perImage.jaccard);
  }
  double mean = 0.0;
  for (double j : perImageJ) mean += j;
  mean /= static_cast<double>(perImageJ.size());
  report.perImageMean = mean;
  report.perImageStd = stddev(perImageJ, mean);
  return report;
}

}  // namespace epimotion
