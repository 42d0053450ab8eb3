#ifndef EPIMOTION_IMAGE_HPP
#define EPIMOTION_IMAGE_HPP

#include "epimotion/types.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace epimotion {

/// 8-bit RGB image, row-major, interleaved channels.
struct Image {
  std::string id;
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // size = width * height * 3

  bool inBounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
  const std::uint8_t* at(int x, int y) const { return rgb.data() + 3 * (static_cast<std::size_t>(y) * width + x); }
  std::uint8_t* at(int x, int y) { return rgb.data() + 3 * (static_cast<std::size_t>(y) * width + x); }

  /// Rec.601 luma as a float grid, values in [0, 255].
  GridF luma() const;

  /// Bilinear RGB sample at a continuous point (pixel centers at x+0.5).
  /// Out-of-image samples clamp to the nearest edge pixel.
  Eigen::Vector3f sampleBilinear(double x, double y) const;
};

struct ImageSet {
  std::string name;
  std::vector<Image> images;

  int indexOf(const std::string& id) const;
};

enum class MaskLabel : std::uint8_t { Static = 0, Dynamic = 1, DontCare = 2 };

struct GroundTruthMask {
  int width = 0;
  int height = 0;
  std::vector<MaskLabel> labels;  // size = width * height

  MaskLabel at(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
  std::size_t count(MaskLabel l) const;
};

/// H in [0,1) (red at 0), S and V in [0,1].
void rgbToHsv(float r, float g, float b, float& h, float& s, float& v);

}  // namespace epimotion

#endif
