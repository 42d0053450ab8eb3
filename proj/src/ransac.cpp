#include "epimotion/ransac.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace epimotion {

PairGeometry PairGeometry::transposed() const {
  PairGeometry out;
  out.F = normalizedF<double>(Mat3d(F.transpose()));
  out.epipoleRef = epipoleSup;
  out.epipoleSup = epipoleRef;
  out.inliers.reserve(inliers.size());
  for (const auto& c : inliers) out.inliers.push_back({c.sup, c.ref, c.score});
  out.inlierRatio = inlierRatio;
  out.meanSampsonError = meanSampsonError;
  out.fromFile = fromFile;
  return out;
}

std::string RansacResult::failureText() const {
  switch (failure) {
    case RansacFailure::None: return "ok";
    case RansacFailure::TooFewMatches: return "too-few-matches";
    case RansacFailure::NoConsensus: return "no-consensus";
    case RansacFailure::Degenerate: return "degenerate";
  }
  return "unknown";
}

namespace {

std::vector<int> inlierIndices(const Mat3d& F, const std::vector<Correspondence>& matches,
                               double threshold) {
  std::vector<int> idx;
  for (std::size_t i = 0; i < matches.size(); ++i) {
    if (sampsonDistance<double>(F, matches[i].ref, matches[i].sup) <= threshold)
      idx.push_back(static_cast<int>(i));
  }
  return idx;
}

}  // namespace

RansacResult estimateFundamentalRansac(const std::vector<Correspondence>& matches,
                                       std::uint64_t seed, const RansacParams& params) {
  RansacResult result;
  const int n = static_cast<int>(matches.size());
  if (n < 8) {
    result.failure = RansacFailure::TooFewMatches;
    return result;
  }

  std::mt19937_64 rng(seed);
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);

  std::vector<int> bestInliers;
  int maxIter = params.maxIterations;
  int it = 0;
  for (; it < maxIter; ++it) {
    // Fisher-Yates prefix sample of 8 distinct indices.
    std::vector<int> sample(8);
    for (int k = 0; k < 8; ++k) {
      std::uniform_int_distribution<int> pick(k, n - 1);
      const int j = pick(rng);
      std::swap(pool[k], pool[j]);
      sample[k] = pool[k];
    }
    Mat3d F;
    if (!eightPoint<double>(matches, sample, F)) continue;
    std::vector<int> inl = inlierIndices(F, matches, params.sampsonThreshold);
    if (inl.size() > bestInliers.size()) {
      bestInliers = std::move(inl);
      const double w = static_cast<double>(bestInliers.size()) / n;
      const double denom = std::log(std::max(1e-12, 1.0 - std::pow(w, 8)));
      if (denom < 0) {
        const double needed = std::ceil(std::log(1.0 - params.confidence) / denom);
        const int adaptive = needed >= static_cast<double>(params.maxIterations)
                                 ? params.maxIterations
                                 : static_cast<int>(needed);
        maxIter = std::clamp(adaptive, it + 1, params.maxIterations);
      }
    }
  }
  result.iterations = it;
  if (static_cast<int>(bestInliers.size()) < 8) {
    result.failure = RansacFailure::NoConsensus;
    return result;
  }

  // Two least-squares refits on the consensus set, re-filtering in between.
  Mat3d F;
  if (!eightPoint<double>(matches, bestInliers, F)) {
    result.failure = RansacFailure::Degenerate;
    return result;
  }
  for (int pass = 0; pass < 2; ++pass) {
    std::vector<int> inl = inlierIndices(F, matches, params.sampsonThreshold);
    if (static_cast<int>(inl.size()) < 8) break;
    Mat3d refined;
    if (!eightPoint<double>(matches, inl, refined)) break;
    F = refined;
  }
  std::vector<int> finalInliers = inlierIndices(F, matches, params.sampsonThreshold);
  const double ratio = static_cast<double>(finalInliers.size()) / n;
  if (static_cast<int>(finalInliers.size()) < params.minInliers || ratio < params.minInlierRatio) {
    result.failure = RansacFailure::NoConsensus;
    return result;
  }

  PairGeometry geom;
  geom.F = F;
  geom.epipoleRef = epipoleOf<double>(F, ImageSide::Reference);
  geom.epipoleSup = epipoleOf<double>(F, ImageSide::Support);
  geom.inlierRatio = ratio;
  double errSum = 0.0;
  geom.inliers.reserve(finalInliers.size());
  for (int i : finalInliers) {
    geom.inliers.push_back(matches[i]);
    errSum += sampsonDistance<double>(F, matches[i].ref, matches[i].sup);
  }
  geom.meanSampsonError = errSum / static_cast<double>(finalInliers.size());
  result.geometry = std::move(geom);
  return result;
}

PairGeometry pairGeometryFromF(const Mat3d& F, bool fromFile) {
  PairGeometry geom;
  geom.F = enforceRank2<double>(F);
  geom.epipoleRef = epipoleOf<double>(geom.F, ImageSide::Reference);
  geom.epipoleSup = epipoleOf<double>(geom.F, ImageSide::Support);
  geom.inlierRatio = 1.0;
  geom.meanSampsonError = 0.0;
  geom.fromFile = fromFile;
  return geom;
}

}  // namespace epimotion
