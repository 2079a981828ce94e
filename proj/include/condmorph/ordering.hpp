#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "condmorph/color.hpp"

namespace condmorph {

/// Scalar score h: value -> real. Induces the pre-order x <=_h y iff h(x) <= h(y).
class ReducedMapping {
 public:
  virtual ~ReducedMapping() = default;
  virtual double score(std::span<const double> x) const = 0;
  virtual std::string name() const = 0;

  double operator()(const ColorValue& x) const { return score(x.channels()); }
};

using MappingPtr = std::shared_ptr<const ReducedMapping>;
using MappingFamily = std::vector<MappingPtr>;

/// The three lexicographic RGB orderings, written as 255-ary positional scores.
enum class LexOrder { kRGB, kGBR, kBRG };

std::string to_string(LexOrder order);

/// 255r + g + b/255 (RGB), r/255 + 255g + b (GBR), r + g/255 + 255b (BRG).
double eval_lex_mapping(LexOrder order, std::span<const double> x);
inline double eval_lex_mapping(LexOrder order, const ColorValue& x) {
  return eval_lex_mapping(order, x.channels());
}

class LexMapping final : public ReducedMapping {
 public:
  explicit LexMapping(LexOrder order) : order_(order) {}
  double score(std::span<const double> x) const override { return eval_lex_mapping(order_, x); }
  std::string name() const override { return to_string(order_); }
  LexOrder order() const noexcept { return order_; }

 private:
  LexOrder order_;
};

/// Weighted channel sum w . x.
class LinearMapping final : public ReducedMapping {
 public:
  explicit LinearMapping(std::vector<double> weights);
  double score(std::span<const double> x) const override;
  std::string name() const override;
  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  std::vector<double> weights_;
};

/// Scores defined only on a finite value list (e.g. Borda scores). Any other
/// value raises a lookup error.
class TableMapping final : public ReducedMapping {
 public:
  TableMapping(std::string name, std::vector<ColorValue> values, std::vector<double> scores);
  double score(std::span<const double> x) const override;
  std::string name() const override { return name_; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::string name_;
  std::vector<ColorValue> values_;  // lexicographically sorted
  std::vector<double> scores_;
};

MappingPtr make_lex_mapping(LexOrder order);

/// {lex-RGB, lex-GBR, lex-BRG}.
MappingFamily lexicographic_family();

/// Compare h(x) with h(y). `equal` is a pre-order tie, not value equality.
std::weak_ordering induced_compare(const ReducedMapping& h, const ColorValue& x, const ColorValue& y);

struct LutEntry {
  ColorValue color;
  double score = 0.0;
};

/// Bijection between the distinct colors of an image and ranks 0..u-1,
/// ascending by (score, channels).
class RankLut {
 public:
  RankLut() = default;

  /// Validates that entries are distinct, share a channel count, have finite
  /// scores and are sorted by (score, channels).
  static RankLut from_entries(std::vector<LutEntry> entries);

  const std::vector<LutEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  int channels() const noexcept {
    return entries_.empty() ? 0 : static_cast<int>(entries_.front().color.size());
  }

  std::optional<std::uint32_t> find(std::span<const double> color) const;
  std::uint32_t rank_of(std::span<const double> color) const;
  const ColorValue& color_at(std::uint32_t rank) const;

  /// `rank,r,g,b,score` rows (c0..cN for non-RGB), rank ascending.
  std::string to_csv() const;
  static RankLut from_csv(const std::string& text);

 private:
  explicit RankLut(std::vector<LutEntry> entries);

  std::vector<LutEntry> entries_;
  std::vector<std::uint32_t> by_color_;  // ranks sorted by channel values
};

RankLut build_rank_lut(const ReducedMapping& h, const ColorImage& image);
RankLut build_rank_lut(const ReducedMapping& h, std::span<const ColorValue> values);

/// Scalar image of LUT ranks.
struct RankImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint32_t> ranks;

  std::uint32_t at(int row, int col) const {
    return ranks[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                 static_cast<std::size_t>(col)];
  }
  friend bool operator==(const RankImage&, const RankImage&) = default;
};

RankImage rank_encode(const ColorImage& image, const RankLut& lut);
ColorImage rank_decode(const RankImage& ranks, const RankLut& lut);

/// Colors sorted ascending under h with the LUT tie-break.
std::vector<ColorValue> sort_by_mapping(const ReducedMapping& h, std::vector<ColorValue> colors);

}  // namespace condmorph
