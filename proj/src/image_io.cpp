#include "epimotion/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <memory>

#include <jpeglib.h>

namespace fs = std::filesystem;

namespace epimotion {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr openFile(const fs::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return f;
}

bool hasPngSignature(std::FILE* f) {
  unsigned char sig[8];
  const bool ok = std::fread(sig, 1, 8, f) == 8 && png_sig_cmp(sig, 0, 8) == 0;
  std::rewind(f);
  return ok;
}

Image readPngRgb(const fs::path& path) {
  FilePtr f = openFile(path, "rb");
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(ErrorCode::ImageDecode, "libpng init failed for " + path.string());
  }
  std::vector<png_bytep> rows;
  Image img;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(ErrorCode::ImageDecode, "undecodable PNG: " + path.string());
  }
  png_init_io(png, f.get());
  png_read_info(png, info);

  png_set_expand(png);  // palette/gray/low-bit -> 8-bit
  if (png_get_bit_depth(png, info) == 16) png_set_strip_16(png);
  png_set_strip_alpha(png);
  if (png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY ||
      png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY_ALPHA)
    png_set_gray_to_rgb(png);
  png_read_update_info(png, info);

  img.width = static_cast<int>(png_get_image_width(png, info));
  img.height = static_cast<int>(png_get_image_height(png, info));
  img.rgb.assign(static_cast<std::size_t>(img.width) * img.height * 3, 0);
  rows.resize(img.height);
  for (int y = 0; y < img.height; ++y) rows[y] = img.rgb.data() + static_cast<std::size_t>(y) * img.width * 3;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

struct JpegErrorMgr {
  jpeg_error_mgr base;
  jmp_buf jmp;
};

void jpegErrorExit(j_common_ptr cinfo) {
  auto* mgr = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
  longjmp(mgr->jmp, 1);
}

Image readJpegRgb(const fs::path& path) {
  FilePtr f = openFile(path, "rb");
  jpeg_decompress_struct cinfo;
  JpegErrorMgr err;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpegErrorExit;
  if (setjmp(err.jmp)) {
    jpeg_destroy_decompress(&cinfo);
    throw Error(ErrorCode::ImageDecode, "undecodable JPEG: " + path.string());
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, f.get());
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  Image img;
  img.width = static_cast<int>(cinfo.output_width);
  img.height = static_cast<int>(cinfo.output_height);
  img.rgb.assign(static_cast<std::size_t>(img.width) * img.height * 3, 0);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = img.rgb.data() + static_cast<std::size_t>(cinfo.output_scanline) * img.width * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return img;
}

void writePng(const fs::path& path, int width, int height, int colorType, int bitDepth,
              const std::vector<png_bytep>& rows) {
  FilePtr f = openFile(path, "wb");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorCode::Io, "libpng init failed for " + path.string());
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorCode::Io, "PNG write failed: " + path.string());
  }
  png_init_io(png, f.get());
  png_set_IHDR(png, info, width, height, bitDepth, colorType, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  if (bitDepth == 16) png_set_swap(png);  // rows are host little-endian uint16
  for (png_bytep row : rows) png_write_row(png, row);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

bool decodableExtension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

}  // namespace

Image readImage(const fs::path& path) {
  {
    FilePtr f = openFile(path, "rb");
    if (!hasPngSignature(f.get())) {
      f.reset();
      Image img = readJpegRgb(path);
      img.id = path.stem().string();
      return img;
    }
  }
  Image img = readPngRgb(path);
  img.id = path.stem().string();
  return img;
}

void writePngRgb8(const fs::path& path, const Image& img) {
  std::vector<png_bytep> rows(img.height);
  for (int y = 0; y < img.height; ++y)
    rows[y] = const_cast<png_bytep>(img.rgb.data() + static_cast<std::size_t>(y) * img.width * 3);
  writePng(path, img.width, img.height, PNG_COLOR_TYPE_RGB, 8, rows);
}

void writePngGray8(const fs::path& path, int width, int height, const std::vector<std::uint8_t>& gray) {
  if (static_cast<std::size_t>(width) * height != gray.size())
    throw Error(ErrorCode::DimensionMismatch, "gray buffer size mismatch for " + path.string());
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y)
    rows[y] = const_cast<png_bytep>(gray.data() + static_cast<std::size_t>(y) * width);
  writePng(path, width, height, PNG_COLOR_TYPE_GRAY, 8, rows);
}

void writePngGray16(const fs::path& path, int width, int height, const std::vector<std::uint16_t>& gray) {
  if (static_cast<std::size_t>(width) * height != gray.size())
    throw Error(ErrorCode::DimensionMismatch, "gray16 buffer size mismatch for " + path.string());
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y)
    rows[y] = const_cast<png_bytep>(
        reinterpret_cast<const png_byte*>(gray.data() + static_cast<std::size_t>(y) * width));
  writePng(path, width, height, PNG_COLOR_TYPE_GRAY, 16, rows);
}

void readPngGray8(const fs::path& path, int& width, int& height, std::vector<std::uint8_t>& gray) {
  FilePtr f = openFile(path, "rb");
  if (!hasPngSignature(f.get()))
    throw Error(ErrorCode::ImageDecode, "not a PNG: " + path.string());
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(ErrorCode::ImageDecode, "libpng init failed for " + path.string());
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(ErrorCode::ImageDecode, "undecodable PNG: " + path.string());
  }
  png_init_io(png, f.get());
  png_read_info(png, info);
  png_set_expand(png);
  if (png_get_bit_depth(png, info) == 16) png_set_strip_16(png);
  png_set_strip_alpha(png);
  png_read_update_info(png, info);
  if (png_get_channels(png, info) != 1) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(ErrorCode::ImageDecode, "mask must be single-channel: " + path.string());
  }
  width = static_cast<int>(png_get_image_width(png, info));
  height = static_cast<int>(png_get_image_height(png, info));
  gray.assign(static_cast<std::size_t>(width) * height, 0);
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y) rows[y] = gray.data() + static_cast<std::size_t>(y) * width;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
}

ImageSet loadImageSet(const fs::path& directory) {
  if (!fs::is_directory(directory))
    throw Error(ErrorCode::Io, "not a directory: " + directory.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_regular_file() && decodableExtension(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  if (files.size() < 2)
    throw Error(ErrorCode::SetTooSmall,
                "image set needs at least 2 images, found " + std::to_string(files.size()) +
                    " in " + directory.string());
  ImageSet set;
  set.name = directory.filename().string();
  for (const auto& p : files) set.images.push_back(readImage(p));
  return set;
}

GroundTruthMask loadGroundTruth(const fs::path& maskPath, const Image& image) {
  int w = 0, h = 0;
  std::vector<std::uint8_t> gray;
  readPngGray8(maskPath, w, h, gray);
  if (w != image.width || h != image.height)
    throw Error(ErrorCode::DimensionMismatch,
                "mask " + maskPath.string() + " is " + std::to_string(w) + "x" + std::to_string(h) +
                    " but image " + image.id + " is " + std::to_string(image.width) + "x" +
                    std::to_string(image.height));
  GroundTruthMask mask;
  mask.width = w;
  mask.height = h;
  mask.labels.resize(gray.size());
  for (std::size_t i = 0; i < gray.size(); ++i) {
    switch (gray[i]) {
      case 0: mask.labels[i] = MaskLabel::Static; break;
      case 255: mask.labels[i] = MaskLabel::Dynamic; break;
      case 128: mask.labels[i] = MaskLabel::DontCare; break;
      default:
        throw Error(ErrorCode::UnknownMaskCode,
                    "unknown mask code " + std::to_string(gray[i]) + " in " + maskPath.string());
    }
  }
  return mask;
}

void writeGroundTruth(const fs::path& path, const GroundTruthMask& mask) {
  std::vector<std::uint8_t> gray(mask.labels.size());
  for (std::size_t i = 0; i < gray.size(); ++i) {
    switch (mask.labels[i]) {
      case MaskLabel::Static: gray[i] = 0; break;
      case MaskLabel::Dynamic: gray[i] = 255; break;
      case MaskLabel::DontCare: gray[i] = 128; break;
    }
  }
  writePngGray8(path, mask.width, mask.height, gray);
}

}  // namespace epimotion
