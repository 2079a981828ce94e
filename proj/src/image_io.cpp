#include "condmorph/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "condmorph/error.hpp"

namespace condmorph {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kFormat, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kFormat, "cannot write '" + path + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCode::kFormat, "failed writing '" + path + "'");
}

// Next whitespace-separated header token, skipping '#' comments.
std::string next_token(const std::string& bytes, std::size_t& pos) {
  for (;;) {
    while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
    if (pos < bytes.size() && bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      continue;
    }
    break;
  }
  const std::size_t start = pos;
  while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
  return bytes.substr(start, pos - start);
}

int header_int(const std::string& bytes, std::size_t& pos, const char* what) {
  const std::string tok = next_token(bytes, pos);
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 9) {
    fail(ErrorCode::kFormat, std::string("bad PPM ") + what + " '" + tok + "'");
  }
  return std::stoi(tok);
}

bool has_png_extension(const std::string& path) {
  auto ext = std::filesystem::path(path).extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext == ".png";
}

struct PngReadGuard {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngReadGuard() { png_destroy_read_struct(&png, info ? &info : nullptr, nullptr); }
};

struct PngWriteGuard {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngWriteGuard() { png_destroy_write_struct(&png, info ? &info : nullptr); }
};

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};

}  // namespace

ColorImage decode_ppm(const std::string& bytes) {
  std::size_t pos = 0;
  if (next_token(bytes, pos) != "P6") fail(ErrorCode::kFormat, "not a binary PPM (P6) file");
  const int width = header_int(bytes, pos, "width");
  const int height = header_int(bytes, pos, "height");
  const int maxval = header_int(bytes, pos, "maxval");
  if (width <= 0 || height <= 0) fail(ErrorCode::kFormat, "PPM has an empty raster");
  if (maxval != 255) {
    fail(ErrorCode::kFormat, "unsupported PPM bit depth (maxval " + std::to_string(maxval) +
                                 "); only 8-bit is supported");
  }
  ++pos;  // single whitespace byte after maxval
  const std::size_t need = static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3;
  if (bytes.size() < pos + need) {
    fail(ErrorCode::kFormat, "PPM raster truncated at byte " + std::to_string(bytes.size()));
  }
  const auto* raster = reinterpret_cast<const std::uint8_t*>(bytes.data() + pos);
  return ColorImage::from_rgb8(width, height, std::span(raster, need));
}

std::string encode_ppm(const ColorImage& image) {
  if (image.empty()) fail(ErrorCode::kDimension, "cannot write an empty image");
  const auto rgb = image.to_rgb8();
  std::string out = "P6\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) +
                    "\n255\n";
  out.append(reinterpret_cast<const char*>(rgb.data()), rgb.size());
  return out;
}

ColorImage read_ppm(const std::string& path) { return decode_ppm(read_file(path)); }

void write_ppm(const std::string& path, const ColorImage& image) {
  write_file(path, encode_ppm(image));
}

ColorImage read_png(const std::string& path) {
  std::unique_ptr<std::FILE, FileCloser> file(std::fopen(path.c_str(), "rb"));
  if (!file) fail(ErrorCode::kFormat, "cannot open '" + path + "'");
  png_byte sig[8];
  if (std::fread(sig, 1, 8, file.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
    fail(ErrorCode::kFormat, "'" + path + "' is not a PNG file");
  }
  PngReadGuard g;
  g.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!g.png) fail(ErrorCode::kFormat, "libpng initialization failed");
  g.info = png_create_info_struct(g.png);
  if (!g.info) fail(ErrorCode::kFormat, "libpng initialization failed");

  png_uint_32 width = 0, height = 0;
  int bit_depth = 0, color_type = 0;
  std::vector<std::uint8_t> rgb;
  bool depth_error = false;
  if (setjmp(png_jmpbuf(g.png))) fail(ErrorCode::kFormat, "corrupt PNG '" + path + "'");
  png_init_io(g.png, file.get());
  png_set_sig_bytes(g.png, 8);
  png_read_info(g.png, g.info);
  png_get_IHDR(g.png, g.info, &width, &height, &bit_depth, &color_type, nullptr, nullptr, nullptr);
  if (bit_depth > 8) {
    depth_error = true;
  } else {
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(g.png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(g.png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
      png_set_gray_to_rgb(g.png);
    }
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(g.png);
    if (png_get_valid(g.png, g.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(g.png), png_set_strip_alpha(g.png);
    png_read_update_info(g.png, g.info);
    const std::size_t row_bytes = png_get_rowbytes(g.png, g.info);
    if (row_bytes != static_cast<std::size_t>(width) * 3) {
      depth_error = true;
    } else {
      rgb.resize(row_bytes * height);
      std::vector<png_bytep> rows(height);
      for (png_uint_32 y = 0; y < height; ++y) rows[y] = rgb.data() + y * row_bytes;
      png_read_image(g.png, rows.data());
      png_read_end(g.png, nullptr);
    }
  }
  if (depth_error) {
    fail(ErrorCode::kFormat, "unsupported PNG bit depth " + std::to_string(bit_depth) +
                                 " in '" + path + "'; only 8-bit is supported");
  }
  return ColorImage::from_rgb8(static_cast<int>(width), static_cast<int>(height), rgb);
}

void write_png(const std::string& path, const ColorImage& image) {
  if (image.empty()) fail(ErrorCode::kDimension, "cannot write an empty image");
  const auto rgb = image.to_rgb8();
  std::unique_ptr<std::FILE, FileCloser> file(std::fopen(path.c_str(), "wb"));
  if (!file) fail(ErrorCode::kFormat, "cannot write '" + path + "'");
  PngWriteGuard g;
  g.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!g.png) fail(ErrorCode::kFormat, "libpng initialization failed");
  g.info = png_create_info_struct(g.png);
  if (!g.info) fail(ErrorCode::kFormat, "libpng initialization failed");
  if (setjmp(png_jmpbuf(g.png))) fail(ErrorCode::kFormat, "failed writing PNG '" + path + "'");
  png_init_io(g.png, file.get());
  png_set_IHDR(g.png, g.info, static_cast<png_uint_32>(image.width()),
               static_cast<png_uint_32>(image.height()), 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(g.png, g.info);
  const std::size_t row_bytes = static_cast<std::size_t>(image.width()) * 3;
  for (int y = 0; y < image.height(); ++y) {
    png_write_row(g.png, const_cast<png_bytep>(rgb.data() + static_cast<std::size_t>(y) * row_bytes));
  }
  png_write_end(g.png, nullptr);
}

ColorImage read_image(const std::string& path) {
  return has_png_extension(path) ? read_png(path) : read_ppm(path);
}

void write_image(const std::string& path, const ColorImage& image) {
  if (has_png_extension(path)) {
    write_png(path, image);
  } else {
    write_ppm(path, image);
  }
}

std::size_t cifar_record_count(const std::string& path) {
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec) fail(ErrorCode::kFormat, "cannot open CIFAR batch '" + path + "'");
  if (size % kCifarRecordBytes != 0) {
    const auto offset = size - size % kCifarRecordBytes;
    fail(ErrorCode::kFormat, "CIFAR batch '" + path + "' is truncated: partial record at byte offset " +
                                 std::to_string(offset) + " (file size " + std::to_string(size) +
                                 ", record size " + std::to_string(kCifarRecordBytes) + ")");
  }
  return static_cast<std::size_t>(size / kCifarRecordBytes);
}

std::vector<ColorImage> load_cifar_batch(const std::string& path, std::size_t first,
                                         std::size_t count) {
  const std::size_t records = cifar_record_count(path);
  if (count == 0) return {};
  if (first > records || count > records - first) {
    fail(ErrorCode::kFormat, "CIFAR batch '" + path + "' has " + std::to_string(records) +
                                 " records; requested records end at byte offset " +
                                 std::to_string((first + count) * kCifarRecordBytes));
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kFormat, "cannot open CIFAR batch '" + path + "'");
  in.seekg(static_cast<std::streamoff>(first * kCifarRecordBytes));

  constexpr std::size_t plane = kCifarImageSide * kCifarImageSide;
  std::vector<ColorImage> images;
  images.reserve(count);
  std::vector<char> record(kCifarRecordBytes);
  std::vector<std::uint8_t> rgb(plane * 3);
  for (std::size_t r = 0; r < count; ++r) {
    if (!in.read(record.data(), static_cast<std::streamsize>(record.size()))) {
      fail(ErrorCode::kFormat, "short read at byte offset " +
                                   std::to_string((first + r) * kCifarRecordBytes));
    }
    for (std::size_t p = 0; p < plane; ++p) {
      for (std::size_t c = 0; c < 3; ++c) {
        rgb[p * 3 + c] = static_cast<std::uint8_t>(record[1 + c * plane + p]);
      }
    }
    images.push_back(ColorImage::from_rgb8(kCifarImageSide, kCifarImageSide, rgb));
  }
  return images;
}

}  // namespace condmorph
