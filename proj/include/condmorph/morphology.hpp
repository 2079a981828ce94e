#pragma once

#include <string>
#include <vector>

#include "condmorph/color.hpp"
#include "condmorph/ordering.hpp"

namespace condmorph {

struct Offset {
  int dy = 0;
  int dx = 0;
  friend auto operator<=>(const Offset&, const Offset&) = default;
};

/// Flat structuring element: a finite, non-empty set of grid offsets.
class StructuringElement {
 public:
  /// Deduplicates; throws on an empty set.
  explicit StructuringElement(std::vector<Offset> offsets);

  /// side x side square centered at the origin; side must be odd.
  static StructuringElement square(int side);
  /// {(dy,dx) : dy^2 + dx^2 <= radius^2}.
  static StructuringElement disk(int radius);
  /// Plus shape with `arm` pixels on each side of the origin.
  static StructuringElement cross(int arm);
  /// Parses "square:N", "disk:R" or "cross:A".
  static StructuringElement parse(const std::string& text);

  const std::vector<Offset>& offsets() const noexcept { return offsets_; }
  std::size_t size() const noexcept { return offsets_.size(); }
  bool contains_origin() const;
  StructuringElement reflected() const;

 private:
  std::vector<Offset> offsets_;
};

enum class MorphOp { kErode, kDilate, kOpen, kClose };

MorphOp parse_morph_op(const std::string& name);
std::string to_string(MorphOp op);

// Rank-image operators. Samples falling outside the grid are skipped; a pixel
// with no in-grid sample is a configuration error.
RankImage erode_ranks(const RankImage& ranks, const StructuringElement& se);
RankImage dilate_ranks(const RankImage& ranks, const StructuringElement& se);
RankImage open_ranks(const RankImage& ranks, const StructuringElement& se);
RankImage close_ranks(const RankImage& ranks, const StructuringElement& se);
RankImage apply_ranks(MorphOp op, const RankImage& ranks, const StructuringElement& se);

// Vector operators: one LUT from `image` under h, applied to the rank image and
// decoded. Outputs only contain colors of the input.
ColorImage erode(const ColorImage& image, const ReducedMapping& h, const StructuringElement& se);
ColorImage dilate(const ColorImage& image, const ReducedMapping& h, const StructuringElement& se);
ColorImage open(const ColorImage& image, const ReducedMapping& h, const StructuringElement& se);
ColorImage close(const ColorImage& image, const ReducedMapping& h, const StructuringElement& se);
ColorImage apply(MorphOp op, const ColorImage& image, const ReducedMapping& h,
                 const StructuringElement& se);

}  // namespace condmorph
