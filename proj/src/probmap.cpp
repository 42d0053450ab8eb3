#include "epimotion/probmap.hpp"

#include "epimotion/parallel.hpp"

#include <cmath>

namespace epimotion {

double patchConfidence(const Image& refImage, const EpipolarPatch& r, const Image& supImage,
                       const CandidateSet& cands, DescriptorKind kind, const PatchParams& pp,
                       const DescriptorParams& dp) {
  if (cands.candidates.empty()) return 0.0;
  const int n = pp.canonicalSize;
  const WarpedPatch refWarp = warpPatch(refImage, r.corners, n, n);
  const DescriptorVector refDesc =
      kind == DescriptorKind::Hog ? hog(refWarp, dp) : hsHistogram(refWarp, dp);
  double best = 0.0;
  for (const auto& cand : cands.candidates) {
    WarpedPatch w;
    try {
      w = warpPatch(supImage, cand.corners, n, n);
    } catch (const Error&) {
      continue;  // degenerate sliver candidate
    }
    const DescriptorVector d = kind == DescriptorKind::Hog ? hog(w, dp) : hsHistogram(w, dp);
    best = std::max(best, similarity(refDesc, d));
  }
  return best;
}

void NormalizationStats::includeValue(int kind, double value) {
  lo[kind] = std::min(lo[kind], value);
  hi[kind] = std::max(hi[kind], value);
}

void NormalizationStats::include(const ConfidenceTable& table) {
  for (const auto& row : table.raw) {
    includeValue(0, row[0]);
    includeValue(1, row[1]);
  }
}

void NormalizationStats::merge(const NormalizationStats& other) {
  for (int k = 0; k < 2; ++k) {
    lo[k] = std::min(lo[k], other.lo[k]);
    hi[k] = std::max(hi[k], other.hi[k]);
  }
}

double NormalizationStats::normalized(int kind, double raw) const {
  const double span = hi[kind] - lo[kind];
  if (!(span > 0.0)) return 0.5;
  return std::clamp((raw - lo[kind]) / span, 0.0, 1.0);
}

double maxCenterDistance(const PatchSet& ps) {
  double best = 0.0;
  for (const auto& p : ps.patches) {
    for (const auto& c : p.corners) best = std::max(best, (c - p.center).norm());
  }
  return best;
}

MatchingProbabilityMap assembleMatchingMap(const PatchSet& ps, const ConfidenceTable& table,
                                           const NormalizationStats& stats,
                                           const DescriptorParams& dp, double sigma,
                                           const std::string& supId, int threads) {
  MatchingProbabilityMap map;
  map.refId = ps.ownerId;
  map.supId = supId;
  map.p.resize(ps.height, ps.width);
  map.covered.resize(ps.height, ps.width);

  // The joint (descriptor, patch) weight normalization factorizes: descriptor
  // weights collapse into one combined confidence per patch.
  const double wSum = dp.weightHog + dp.weightHs;
  std::vector<float> combined(ps.patches.size());
  for (std::size_t i = 0; i < ps.patches.size(); ++i) {
    const double ch = stats.normalized(0, table.raw[i][0]);
    const double cs = stats.normalized(1, table.raw[i][1]);
    combined[i] = static_cast<float>((dp.weightHog * ch + dp.weightHs * cs) / wSum);
  }

  const double invTwoSigma2 = 1.0 / (2.0 * sigma * sigma);
  parallelFor(static_cast<std::size_t>(ps.height), threads, [&](std::size_t row) {
    const int y = static_cast<int>(row);
    std::array<int, PatchSet::kMaxCover> ids;
    for (int x = 0; x < ps.width; ++x) {
      const double px = x + 0.5;
      const double py = y + 0.5;
      const int n = ps.coveringPatches(px, py, ids);
      if (n == 0) {
        map.p(y, x) = 0.5f;
        map.covered(y, x) = 0;
        continue;
      }
      double num = 0.0, den = 0.0;
      for (int k = 0; k < n; ++k) {
        const EpipolarPatch& patch = ps.patches[ids[k]];
        const double dx = px - patch.center[0];
        const double dy = py - patch.center[1];
        const double wr = std::exp(-(dx * dx + dy * dy) * invTwoSigma2);
        num += wr * combined[ids[k]];
        den += wr;
      }
      map.p(y, x) = static_cast<float>(num / den);
      map.covered(y, x) = 1;
    }
  });
  return map;
}

}  // namespace epimotion
