#include "epimotion/descriptors.hpp"

#include <cmath>

namespace epimotion {

DescriptorVector hog(const WarpedPatch& patch, const DescriptorParams& params) {
  const int h = patch.h, w = patch.w;
  GridF luma(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      luma(y, x) = 0.299f * patch.r(y, x) + 0.587f * patch.g(y, x) + 0.114f * patch.b(y, x);

  const int cellsX = std::max(1, w / params.hogCellSize);
  const int cellsY = std::max(1, h / params.hogCellSize);
  const int bins = params.hogBins;
  Eigen::VectorXf v = Eigen::VectorXf::Zero(cellsX * cellsY * bins);

  const float binWidth = 180.0f / bins;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const float gx = luma(y, std::min(x + 1, w - 1)) - luma(y, std::max(x - 1, 0));
      const float gy = luma(std::min(y + 1, h - 1), x) - luma(std::max(y - 1, 0), x);
      const float mag = std::hypot(gx, gy);
      if (mag <= 0.0f) continue;
      float ang = std::atan2(gy, gx) * 180.0f / static_cast<float>(M_PI);
      if (ang < 0.0f) ang += 180.0f;
      if (ang >= 180.0f) ang -= 180.0f;
      // linear vote between the two nearest bin centers (centers at i*binWidth)
      const float pos = ang / binWidth;
      const int b0 = static_cast<int>(std::floor(pos)) % bins;
      const float frac = pos - std::floor(pos);
      const int cell = std::min(y / params.hogCellSize, cellsY - 1) * cellsX +
                       std::min(x / params.hogCellSize, cellsX - 1);
      v[cell * bins + b0] += mag * (1.0f - frac);
      v[cell * bins + (b0 + 1) % bins] += mag * frac;
    }
  }
  const float norm = std::sqrt(v.squaredNorm() + 1e-6f * 1e-6f);
  if (v.maxCoeff() > 0.0f) v /= norm;
  return {DescriptorKind::Hog, std::move(v)};
}

DescriptorVector hsHistogram(const WarpedPatch& patch, const DescriptorParams& params) {
  const int bins = params.hsBins;
  Eigen::VectorXf v = Eigen::VectorXf::Zero(bins * bins);
  int counted = 0;
  for (int y = 0; y < patch.h; ++y) {
    for (int x = 0; x < patch.w; ++x) {
      if (!patch.valid(y, x)) continue;
      float hh, ss, vv;
      rgbToHsv(patch.r(y, x) / 255.0f, patch.g(y, x) / 255.0f, patch.b(y, x) / 255.0f, hh, ss, vv);
      const int hb = std::min(static_cast<int>(hh * bins), bins - 1);
      const int sb = std::min(static_cast<int>(ss * bins), bins - 1);
      v[hb * bins + sb] += 1.0f;
      ++counted;
    }
  }
  if (counted > 0) v /= static_cast<float>(counted);
  return {DescriptorKind::HsHist, std::move(v)};
}

double similarity(const DescriptorVector& a, const DescriptorVector& b) {
  if (a.kind != b.kind)
    throw Error(ErrorCode::DescriptorKindMismatch, "similarity of different descriptor kinds");
  if (a.values.size() != b.values.size())
    throw Error(ErrorCode::DescriptorKindMismatch, "descriptor length mismatch");
  if (a.isZero() || b.isZero()) return 0.0;
  if (a.kind == DescriptorKind::Hog) {
    const double na = a.values.norm();
    const double nb = b.values.norm();
    if (na <= 0.0 || nb <= 0.0) return 0.0;
    const double cosv = a.values.dot(b.values) / (na * nb);
    return std::clamp(cosv, 0.0, 1.0);
  }
  const double interSum = a.values.cwiseMin(b.values).sum();
  const double unionSum = a.values.cwiseMax(b.values).sum();
  if (unionSum <= 0.0) return 0.0;
  return std::clamp(interSum / unionSum, 0.0, 1.0);
}

}  // namespace epimotion
