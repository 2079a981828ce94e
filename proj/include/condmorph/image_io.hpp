#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "condmorph/color.hpp"

namespace condmorph {

// 8-bit RGB only. Channels are scaled by 1/255 on read and rounded back on write.
ColorImage read_ppm(const std::string& path);
void write_ppm(const std::string& path, const ColorImage& image);
ColorImage decode_ppm(const std::string& bytes);
std::string encode_ppm(const ColorImage& image);

ColorImage read_png(const std::string& path);
void write_png(const std::string& path, const ColorImage& image);

/// Dispatches on the extension: .png, otherwise PPM.
ColorImage read_image(const std::string& path);
void write_image(const std::string& path, const ColorImage& image);

inline constexpr std::size_t kCifarImageSide = 32;
inline constexpr std::size_t kCifarRecordBytes = 1 + 3 * kCifarImageSide * kCifarImageSide;

/// Records [first, first + count) of a CIFAR-10 binary batch (label byte
/// followed by channel-planar R, G, B planes). Labels are dropped.
std::vector<ColorImage> load_cifar_batch(const std::string& path, std::size_t first,
                                         std::size_t count);

/// Number of records in a CIFAR-10 binary batch file.
std::size_t cifar_record_count(const std::string& path);

}  // namespace condmorph
