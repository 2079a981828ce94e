#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace condmorph {

/// A d-channel color with every channel in [0,1].
class ColorValue {
 public:
  ColorValue() = default;
  explicit ColorValue(std::vector<double> channels);
  ColorValue(std::initializer_list<double> channels);
  explicit ColorValue(std::span<const double> channels);

  /// 8-bit RGB, divided by 255.
  static ColorValue from_rgb8(std::uint8_t r, std::uint8_t g, std::uint8_t b);

  std::size_t size() const noexcept { return channels_.size(); }
  double operator[](std::size_t i) const { return channels_[i]; }
  std::span<const double> channels() const noexcept { return channels_; }

  // Lexicographic on raw channel values, channel 0 first.
  friend bool operator==(const ColorValue&, const ColorValue&) = default;
  friend std::partial_ordering operator<=>(const ColorValue&, const ColorValue&) = default;

 private:
  std::vector<double> channels_;
};

/// Lexicographic channel comparison used as the LUT tie-break.
std::strong_ordering compare_channels(std::span<const double> a, std::span<const double> b);

/// Row-major grid of d-channel pixels. The domain is the full rectangle.
class ColorImage {
 public:
  ColorImage() = default;
  ColorImage(int width, int height, int channels, std::vector<double> data);

  static ColorImage filled(int width, int height, const ColorValue& color);
  static ColorImage from_colors(int width, int height, const std::vector<ColorValue>& pixels);
  static ColorImage from_rgb8(int width, int height, std::span<const std::uint8_t> rgb);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }
  bool empty() const noexcept { return pixel_count() == 0; }

  std::span<const double> pixel(std::size_t index) const {
    return {data_.data() + index * static_cast<std::size_t>(channels_),
            static_cast<std::size_t>(channels_)};
  }
  std::span<const double> pixel(int row, int col) const {
    return pixel(static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
                 static_cast<std::size_t>(col));
  }
  ColorValue color(std::size_t index) const { return ColorValue(pixel(index)); }

  const std::vector<double>& data() const noexcept { return data_; }

  /// Channels scaled by 255 and rounded; requires 3 channels.
  std::vector<std::uint8_t> to_rgb8() const;

  friend bool operator==(const ColorImage&, const ColorImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<double> data_;
};

/// Distinct colors of an image in lexicographic channel order.
std::vector<ColorValue> unique_colors(const ColorImage& image);

/// True when every pixel color of `output` occurs somewhere in `input`.
bool colors_subset_of(const ColorImage& output, const ColorImage& input);

}  // namespace condmorph
