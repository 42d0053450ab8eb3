#include "epimotion/image.hpp"

#include <algorithm>
#include <cmath>

namespace epimotion {

GridF Image::luma() const {
  GridF out(height, width);
  const std::uint8_t* p = rgb.data();
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x, p += 3) {
      out(y, x) = 0.299f * p[0] + 0.587f * p[1] + 0.114f * p[2];
    }
  }
  return out;
}

Eigen::Vector3f Image::sampleBilinear(double x, double y) const {
  const double fx = x - 0.5;
  const double fy = y - 0.5;
  int x0 = static_cast<int>(std::floor(fx));
  int y0 = static_cast<int>(std::floor(fy));
  const float ax = static_cast<float>(fx - x0);
  const float ay = static_cast<float>(fy - y0);
  const auto cx = [this](int v) { return std::clamp(v, 0, width - 1); };
  const auto cy = [this](int v) { return std::clamp(v, 0, height - 1); };
  const std::uint8_t* p00 = at(cx(x0), cy(y0));
  const std::uint8_t* p10 = at(cx(x0 + 1), cy(y0));
  const std::uint8_t* p01 = at(cx(x0), cy(y0 + 1));
  const std::uint8_t* p11 = at(cx(x0 + 1), cy(y0 + 1));
  Eigen::Vector3f out;
  for (int c = 0; c < 3; ++c) {
    const float top = (1.0f - ax) * p00[c] + ax * p10[c];
    const float bot = (1.0f - ax) * p01[c] + ax * p11[c];
    out[c] = (1.0f - ay) * top + ay * bot;
  }
  return out;
}

int ImageSet::indexOf(const std::string& id) const {
  for (std::size_t i = 0; i < images.size(); ++i)
    if (images[i].id == id) return static_cast<int>(i);
  return -1;
}

std::size_t GroundTruthMask::count(MaskLabel l) const {
  return static_cast<std::size_t>(std::count_if(labels.begin(), labels.end(),
                                                [l](MaskLabel v) { return v == l; }));
}

void rgbToHsv(float r, float g, float b, float& h, float& s, float& v) {
  const float mx = std::max({r, g, b});
  const float mn = std::min({r, g, b});
  const float d = mx - mn;
  v = mx;
  s = mx > 0.0f ? d / mx : 0.0f;
  if (d <= 0.0f) {
    h = 0.0f;
    return;
  }
  float hh;
  if (mx == r)
    hh = (g - b) / d;
  else if (mx == g)
    hh = 2.0f + (b - r) / d;
  else
    hh = 4.0f + (r - g) / d;
  hh /= 6.0f;
  if (hh < 0.0f) hh += 1.0f;
  if (hh >= 1.0f) hh -= 1.0f;
  h = hh;
}

}  // namespace epimotion
