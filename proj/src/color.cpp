#include "condmorph/color.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "condmorph/error.hpp"

namespace condmorph {
namespace {

void check_range(std::span<const double> values) {
  for (double c : values) {
    // Written so that NaN fails too.
    if (!(c >= 0.0 && c <= 1.0)) {
      fail(ErrorCode::kDomain, "channel value " + std::to_string(c) + " outside [0,1]");
    }
  }
}

void check_channels(std::span<const double> channels) {
  if (channels.empty()) fail(ErrorCode::kDimension, "color must have at least one channel");
  check_range(channels);
}

std::vector<std::size_t> lexicographic_pixel_order(const ColorImage& image) {
  std::vector<std::size_t> order(image.pixel_count());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return compare_channels(image.pixel(a), image.pixel(b)) < 0;
  });
  return order;
}

}  // namespace

ColorValue::ColorValue(std::vector<double> channels) : channels_(std::move(channels)) {
  check_channels(channels_);
}

ColorValue::ColorValue(std::initializer_list<double> channels)
    : ColorValue(std::vector<double>(channels)) {}

ColorValue::ColorValue(std::span<const double> channels)
    : ColorValue(std::vector<double>(channels.begin(), channels.end())) {}

ColorValue ColorValue::from_rgb8(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  return ColorValue({r / 255.0, g / 255.0, b / 255.0});
}

std::strong_ordering compare_channels(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] < b[i]) return std::strong_ordering::less;
    if (a[i] > b[i]) return std::strong_ordering::greater;
  }
  return a.size() <=> b.size();
}

ColorImage::ColorImage(int width, int height, int channels, std::vector<double> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  if (width < 0 || height < 0) fail(ErrorCode::kDimension, "negative image size");
  if (channels < 1) fail(ErrorCode::kDimension, "image needs at least one channel");
  if (data_.size() != pixel_count() * static_cast<std::size_t>(channels)) {
    fail(ErrorCode::kDimension, "pixel buffer has " + std::to_string(data_.size()) +
                                    " values, expected " +
                                    std::to_string(pixel_count() * static_cast<std::size_t>(channels)));
  }
  check_range(data_);
}

ColorImage ColorImage::filled(int width, int height, const ColorValue& color) {
  std::vector<double> data;
  const std::size_t count = static_cast<std::size_t>(std::max(width, 0)) *
                            static_cast<std::size_t>(std::max(height, 0));
  data.reserve(count * color.size());
  for (std::size_t i = 0; i < count; ++i) {
    data.insert(data.end(), color.channels().begin(), color.channels().end());
  }
  return ColorImage(width, height, static_cast<int>(color.size()), std::move(data));
}

ColorImage ColorImage::from_colors(int width, int height, const std::vector<ColorValue>& pixels) {
  if (pixels.empty()) fail(ErrorCode::kDimension, "no pixels given");
  if (pixels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    fail(ErrorCode::kDimension, "pixel count does not match width*height");
  }
  const std::size_t d = pixels.front().size();
  std::vector<double> data;
  data.reserve(pixels.size() * d);
  for (const auto& p : pixels) {
    if (p.size() != d) fail(ErrorCode::kDimension, "pixels differ in channel count");
    data.insert(data.end(), p.channels().begin(), p.channels().end());
  }
  return ColorImage(width, height, static_cast<int>(d), std::move(data));
}

ColorImage ColorImage::from_rgb8(int width, int height, std::span<const std::uint8_t> rgb) {
  if (rgb.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3) {
    fail(ErrorCode::kDimension, "rgb buffer size does not match width*height*3");
  }
  std::vector<double> data(rgb.size());
  std::transform(rgb.begin(), rgb.end(), data.begin(), [](std::uint8_t v) { return v / 255.0; });
  return ColorImage(width, height, 3, std::move(data));
}

std::vector<std::uint8_t> ColorImage::to_rgb8() const {
  if (channels_ != 3) fail(ErrorCode::kDimension, "8-bit export needs 3 channels");
  std::vector<std::uint8_t> out(data_.size());
  std::transform(data_.begin(), data_.end(), out.begin(), [](double v) {
    return static_cast<std::uint8_t>(std::lround(v * 255.0));
  });
  return out;
}

std::vector<ColorValue> unique_colors(const ColorImage& image) {
  std::vector<ColorValue> out;
  std::span<const double> previous;
  for (std::size_t idx : lexicographic_pixel_order(image)) {
    auto px = image.pixel(idx);
    if (out.empty() || compare_channels(previous, px) != 0) out.emplace_back(px);
    previous = px;
  }
  return out;
}

bool colors_subset_of(const ColorImage& output, const ColorImage& input) {
  if (output.channels() != input.channels()) return false;
  const auto palette = unique_colors(input);
  for (std::size_t i = 0; i < output.pixel_count(); ++i) {
    auto px = output.pixel(i);
    auto it = std::lower_bound(palette.begin(), palette.end(), px,
                               [](const ColorValue& c, std::span<const double> v) {
                                 return compare_channels(c.channels(), v) < 0;
                               });
    if (it == palette.end() || compare_channels(it->channels(), px) != 0) return false;
  }
  return true;
}

}  // namespace condmorph
