#ifndef EPIMOTION_IMAGE_IO_HPP
#define EPIMOTION_IMAGE_IO_HPP

#include "epimotion/image.hpp"

#include <filesystem>

namespace epimotion {

/// Decodes a PNG or JPEG file into 8-bit RGB. The image id is the file stem.
Image readImage(const std::filesystem::path& path);

void writePngRgb8(const std::filesystem::path& path, const Image& img);
void writePngGray8(const std::filesystem::path& path, int width, int height,
                   const std::vector<std::uint8_t>& gray);
void writePngGray16(const std::filesystem::path& path, int width, int height,
                    const std::vector<std::uint16_t>& gray);

/// Reads a single-channel 8-bit PNG; errors if the file has more channels.
void readPngGray8(const std::filesystem::path& path, int& width, int& height,
                  std::vector<std::uint8_t>& gray);

/// Loads all decodable images (PNG/JPEG) directly inside `directory`,
/// ordered by filename. Subdirectories are ignored.
ImageSet loadImageSet(const std::filesystem::path& directory);

/// Decodes a trinary mask (0 = static, 255 = dynamic, 128 = don't care)
/// and checks it against the image dimensions.
GroundTruthMask loadGroundTruth(const std::filesystem::path& maskPath, const Image& image);

void writeGroundTruth(const std::filesystem::path& path, const GroundTruthMask& mask);

}  // namespace epimotion

#endif
