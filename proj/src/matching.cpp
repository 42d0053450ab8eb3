#include "epimotion/matching.hpp"

#include <algorithm>
#include <cmath>

namespace epimotion {
namespace {

// Separable binomial 5-tap blur, edge-clamped.
GridF blur5(const GridF& in) {
  const int h = static_cast<int>(in.rows());
  const int w = static_cast<int>(in.cols());
  static const float k[5] = {1.f / 16, 4.f / 16, 6.f / 16, 4.f / 16, 1.f / 16};
  GridF tmp(h, w), out(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      float acc = 0.f;
      for (int i = -2; i <= 2; ++i) acc += k[i + 2] * in(y, std::clamp(x + i, 0, w - 1));
      tmp(y, x) = acc;
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      float acc = 0.f;
      for (int i = -2; i <= 2; ++i) acc += k[i + 2] * tmp(std::clamp(y + i, 0, h - 1), x);
      out(y, x) = acc;
    }
  }
  return out;
}

struct ScoredCorner {
  float response;
  int x, y;
};

float nccScore(const GridF& a, const Vec2d& pa, const GridF& b, const Vec2d& pb, int radius) {
  const int ax = static_cast<int>(std::lround(pa[0] - 0.5));
  const int ay = static_cast<int>(std::lround(pa[1] - 0.5));
  const int bx = static_cast<int>(std::lround(pb[0] - 0.5));
  const int by = static_cast<int>(std::lround(pb[1] - 0.5));
  double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
  const int n = (2 * radius + 1) * (2 * radius + 1);
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      const double va = a(ay + dy, ax + dx);
      const double vb = b(by + dy, bx + dx);
      sa += va;
      sb += vb;
      saa += va * va;
      sbb += vb * vb;
      sab += va * vb;
    }
  }
  const double cov = sab - sa * sb / n;
  const double varA = saa - sa * sa / n;
  const double varB = sbb - sb * sb / n;
  if (varA <= 1e-9 || varB <= 1e-9) return -1.f;
  return static_cast<float>(cov / std::sqrt(varA * varB));
}

}  // namespace

CornerList detectCorners(const Image& img, const MatchingParams& params) {
  CornerList out;
  out.luma = img.luma();
  const GridF& L = out.luma;
  const int h = img.height, w = img.width;
  if (h < 8 || w < 8) return out;

  GridF ix(h, w), iy(h, w);
  ix.setZero();
  iy.setZero();
  for (int y = 1; y + 1 < h; ++y) {
    for (int x = 1; x + 1 < w; ++x) {
      ix(y, x) = 0.5f * (L(y, x + 1) - L(y, x - 1));
      iy(y, x) = 0.5f * (L(y + 1, x) - L(y - 1, x));
    }
  }
  const GridF ixx = blur5(GridF(ix * ix));
  const GridF iyy = blur5(GridF(iy * iy));
  const GridF ixy = blur5(GridF(ix * iy));

  GridF resp(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const float det = ixx(y, x) * iyy(y, x) - ixy(y, x) * ixy(y, x);
      const float tr = ixx(y, x) + iyy(y, x);
      resp(y, x) = det - static_cast<float>(params.harrisK) * tr * tr;
    }
  }

  const int margin = std::max(params.patchRadius + 1, params.nmsRadius);
  float maxResp = 0.f;
  for (int y = margin; y < h - margin; ++y)
    for (int x = margin; x < w - margin; ++x) maxResp = std::max(maxResp, resp(y, x));
  if (maxResp <= 0.f) return out;
  const float floor = static_cast<float>(params.responseFloor) * maxResp;

  std::vector<ScoredCorner> corners;
  const int r = params.nmsRadius;
  for (int y = margin; y < h - margin; ++y) {
    for (int x = margin; x < w - margin; ++x) {
      const float v = resp(y, x);
      if (v < floor) continue;
      bool isMax = true;
      for (int dy = -r; dy <= r && isMax; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const float o = resp(y + dy, x + dx);
          // strict on earlier raster positions to break plateau ties
          if (o > v || (o == v && (dy < 0 || (dy == 0 && dx < 0)))) {
            isMax = false;
            break;
          }
        }
      if (isMax) corners.push_back({v, x, y});
    }
  }
  std::sort(corners.begin(), corners.end(), [](const ScoredCorner& a, const ScoredCorner& b) {
    if (a.response != b.response) return a.response > b.response;
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
  });
  if (static_cast<int>(corners.size()) > params.maxCorners) corners.resize(params.maxCorners);

  out.points.reserve(corners.size());
  for (const auto& c : corners) {
    // quadratic sub-pixel refinement of the response peak
    double ox = 0, oy = 0;
    const double dxm = resp(c.y, c.x - 1), dxp = resp(c.y, c.x + 1);
    const double dym = resp(c.y - 1, c.x), dyp = resp(c.y + 1, c.x);
    const double dxx = dxm + dxp - 2.0 * c.response;
    const double dyy = dym + dyp - 2.0 * c.response;
    if (dxx < -1e-12) ox = std::clamp(0.5 * (dxm - dxp) / dxx * -1.0, -0.5, 0.5);
    if (dyy < -1e-12) oy = std::clamp(0.5 * (dym - dyp) / dyy * -1.0, -0.5, 0.5);
    out.points.emplace_back(c.x + 0.5 + ox, c.y + 0.5 + oy);
  }
  return out;
}

std::vector<Correspondence> matchCorners(const CornerList& a, const CornerList& b,
                                         const MatchingParams& params) {
  std::vector<Correspondence> matches;
  if (a.points.empty() || b.points.empty()) return matches;
  const int radius = params.patchRadius;

  // best/second per a-corner, plus reverse bests for the mutual check
  std::vector<float> bBest(b.points.size(), -2.f);
  std::vector<std::size_t> bBestA(b.points.size(), 0);
  struct Fwd {
    float best = -2.f, second = -2.f;
    std::size_t j = 0;
  };
  std::vector<Fwd> fwd(a.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    for (std::size_t j = 0; j < b.points.size(); ++j) {
      const float s = nccScore(a.luma, a.points[i], b.luma, b.points[j], radius);
      if (s > fwd[i].best) {
        fwd[i].second = fwd[i].best;
        fwd[i].best = s;
        fwd[i].j = j;
      } else if (s > fwd[i].second) {
        fwd[i].second = s;
      }
      if (s > bBest[j]) {
        bBest[j] = s;
        bBestA[j] = i;
      }
    }
  }
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    const float best = fwd[i].best;
    if (best < params.nccFloor) continue;
    const double dBest = 1.0 - best;
    const double dSecond = 1.0 - fwd[i].second;
    if (fwd[i].second > -1.5f && dBest >= params.nccRatio * dSecond) continue;
    if (bBestA[fwd[i].j] != i) continue;  // not mutual best
    matches.push_back({a.points[i], b.points[fwd[i].j], std::max(0.0, static_cast<double>(best))});
  }
  return matches;
}

std::vector<Correspondence> detectAndMatch(const Image& a, const Image& b,
                                           const MatchingParams& params) {
  return matchCorners(detectCorners(a, params), detectCorners(b, params), params);
}

}  // namespace epimotion
