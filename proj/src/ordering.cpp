#include "condmorph/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "condmorph/error.hpp"

namespace condmorph {
namespace {

bool entry_less(const LutEntry& a, const LutEntry& b) {
  if (a.score != b.score) return a.score < b.score;
  return compare_channels(a.color.channels(), b.color.channels()) < 0;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_string(LexOrder order) {
  switch (order) {
    case LexOrder::kRGB: return "lex-rgb";
    case LexOrder::kGBR: return "lex-gbr";
    case LexOrder::kBRG: return "lex-brg";
  }
  return "lex";
}

double eval_lex_mapping(LexOrder order, std::span<const double> x) {
  if (x.size() != 3) {
    fail(ErrorCode::kDimension,
         "lexicographic mapping needs 3 channels, got " + std::to_string(x.size()));
  }
  const double r = x[0], g = x[1], b = x[2];
  switch (order) {
    case LexOrder::kRGB: return 255.0 * r + g + b / 255.0;
    case LexOrder::kGBR: return r / 255.0 + 255.0 * g + b;
    case LexOrder::kBRG: return r + g / 255.0 + 255.0 * b;
  }
  return 0.0;
}

LinearMapping::LinearMapping(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) fail(ErrorCode::kConfig, "linear mapping needs weights");
  for (double w : weights_) {
    if (!std::isfinite(w)) fail(ErrorCode::kConfig, "linear mapping weight is not finite");
  }
}

double LinearMapping::score(std::span<const double> x) const {
  if (x.size() != weights_.size()) {
    fail(ErrorCode::kDimension, "linear mapping has " + std::to_string(weights_.size()) +
                                    " weights, value has " + std::to_string(x.size()) +
                                    " channels");
  }
  return std::inner_product(weights_.begin(), weights_.end(), x.begin(), 0.0);
}

std::string LinearMapping::name() const {
  std::string out = "custom:";
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (i) out += ',';
    out += format_double(weights_[i]);
  }
  return out;
}

TableMapping::TableMapping(std::string name, std::vector<ColorValue> values,
                           std::vector<double> scores)
    : name_(std::move(name)) {
  if (values.size() != scores.size()) {
    fail(ErrorCode::kDimension, "table mapping needs one score per value");
  }
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return compare_channels(values[a].channels(), values[b].channels()) < 0;
  });
  values_.reserve(values.size());
  scores_.reserve(values.size());
  for (std::size_t idx : order) {
    if (!values_.empty() && values_.back() == values[idx]) {
      fail(ErrorCode::kConfig, "table mapping values must be distinct");
    }
    values_.push_back(std::move(values[idx]));
    scores_.push_back(scores[idx]);
  }
}

double TableMapping::score(std::span<const double> x) const {
  auto it = std::lower_bound(values_.begin(), values_.end(), x,
                             [](const ColorValue& c, std::span<const double> v) {
                               return compare_channels(c.channels(), v) < 0;
                             });
  if (it == values_.end() || compare_channels(it->channels(), x) != 0) {
    fail(ErrorCode::kLookup, "value not covered by " + name_ + " scores");
  }
  return scores_[static_cast<std::size_t>(it - values_.begin())];
}

MappingPtr make_lex_mapping(LexOrder order) { return std::make_shared<LexMapping>(order); }

MappingFamily lexicographic_family() {
  return {make_lex_mapping(LexOrder::kRGB), make_lex_mapping(LexOrder::kGBR),
          make_lex_mapping(LexOrder::kBRG)};
}

std::weak_ordering induced_compare(const ReducedMapping& h, const ColorValue& x,
                                   const ColorValue& y) {
  if (x.size() != y.size()) fail(ErrorCode::kDimension, "compared values differ in dimension");
  const double hx = h(x);
  const double hy = h(y);
  if (std::isnan(hx) || std::isnan(hy)) fail(ErrorCode::kNumeric, h.name() + " produced NaN");
  if (hx < hy) return std::weak_ordering::less;
  if (hx > hy) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

RankLut::RankLut(std::vector<LutEntry> entries) : entries_(std::move(entries)) {
  by_color_.resize(entries_.size());
  std::iota(by_color_.begin(), by_color_.end(), std::uint32_t{0});
  std::sort(by_color_.begin(), by_color_.end(), [&](std::uint32_t a, std::uint32_t b) {
    return compare_channels(entries_[a].color.channels(), entries_[b].color.channels()) < 0;
  });
}

RankLut RankLut::from_entries(std::vector<LutEntry> entries) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (std::isnan(entries[i].score)) fail(ErrorCode::kNumeric, "LUT score is NaN");
    if (entries[i].color.size() != entries.front().color.size()) {
      fail(ErrorCode::kDimension, "LUT colors differ in channel count");
    }
    if (i > 0 && !entry_less(entries[i - 1], entries[i])) {
      fail(ErrorCode::kFormat, "LUT entries not strictly ascending at rank " + std::to_string(i));
    }
  }
  RankLut lut(std::move(entries));
  for (std::size_t i = 1; i < lut.by_color_.size(); ++i) {
    if (lut.entries_[lut.by_color_[i - 1]].color == lut.entries_[lut.by_color_[i]].color) {
      fail(ErrorCode::kFormat, "LUT lists a color twice");
    }
  }
  return lut;
}

std::optional<std::uint32_t> RankLut::find(std::span<const double> color) const {
  auto it = std::lower_bound(by_color_.begin(), by_color_.end(), color,
                             [&](std::uint32_t rank, std::span<const double> v) {
                               return compare_channels(entries_[rank].color.channels(), v) < 0;
                             });
  if (it == by_color_.end() || compare_channels(entries_[*it].color.channels(), color) != 0) {
    return std::nullopt;
  }
  return *it;
}

std::uint32_t RankLut::rank_of(std::span<const double> color) const {
  auto rank = find(color);
  if (!rank) fail(ErrorCode::kLookup, "color not present in LUT");
  return *rank;
}

const ColorValue& RankLut::color_at(std::uint32_t rank) const {
  if (rank >= entries_.size()) {
    fail(ErrorCode::kLookup,
         "rank " + std::to_string(rank) + " outside LUT of size " + std::to_string(entries_.size()));
  }
  return entries_[rank].color;
}

std::string RankLut::to_csv() const {
  std::string out = "rank";
  const int d = channels();
  if (d == 3) {
    out += ",r,g,b";
  } else {
    for (int c = 0; c < d; ++c) out += ",c" + std::to_string(c);
  }
  out += ",score\n";
  for (std::size_t rank = 0; rank < entries_.size(); ++rank) {
    out += std::to_string(rank);
    for (double v : entries_[rank].color.channels()) out += "," + format_double(v);
    out += "," + format_double(entries_[rank].score) + "\n";
  }
  return out;
}

RankLut RankLut::from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("rank,", 0) != 0) {
    fail(ErrorCode::kFormat, "LUT CSV must start with a rank,...,score header");
  }
  const auto columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
  if (columns < 3) fail(ErrorCode::kFormat, "LUT CSV header has too few columns");
  std::vector<LutEntry> entries;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> fields;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) {
      try {
        std::size_t used = 0;
        fields.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        fail(ErrorCode::kFormat, "bad LUT CSV value on line " + std::to_string(line_no));
      }
    }
    if (fields.size() != columns) {
      fail(ErrorCode::kFormat, "wrong column count on LUT CSV line " + std::to_string(line_no));
    }
    if (fields.front() != static_cast<double>(entries.size())) {
      fail(ErrorCode::kFormat, "LUT CSV ranks must be 0..u-1 in order (line " +
                                   std::to_string(line_no) + ")");
    }
    entries.push_back({ColorValue(std::vector<double>(fields.begin() + 1, fields.end() - 1)),
                       fields.back()});
  }
  return from_entries(std::move(entries));
}

RankLut build_rank_lut(const ReducedMapping& h, std::span<const ColorValue> values) {
  std::vector<LutEntry> entries;
  entries.reserve(values.size());
  for (const auto& v : values) {
    const double s = h(v);
    if (std::isnan(s)) fail(ErrorCode::kNumeric, h.name() + " produced a NaN score");
    entries.push_back({v, s});
  }
  std::sort(entries.begin(), entries.end(), entry_less);
  // Duplicates are adjacent after sorting by (score, channels).
  entries.erase(std::unique(entries.begin(), entries.end(),
                            [](const LutEntry& a, const LutEntry& b) { return a.color == b.color; }),
                entries.end());
  return RankLut::from_entries(std::move(entries));
}

RankLut build_rank_lut(const ReducedMapping& h, const ColorImage& image) {
  if (image.empty()) fail(ErrorCode::kDimension, "cannot build a LUT for an empty image");
  const auto colors = unique_colors(image);
  return build_rank_lut(h, colors);
}

RankImage rank_encode(const ColorImage& image, const RankLut& lut) {
  if (!image.empty() && image.channels() != lut.channels()) {
    fail(ErrorCode::kDimension, "image and LUT differ in channel count");
  }
  RankImage out{image.width(), image.height(), std::vector<std::uint32_t>(image.pixel_count())};
  for (std::size_t i = 0; i < image.pixel_count(); ++i) out.ranks[i] = lut.rank_of(image.pixel(i));
  return out;
}

ColorImage rank_decode(const RankImage& ranks, const RankLut& lut) {
  const int d = lut.channels();
  if (ranks.ranks.size() !=
      static_cast<std::size_t>(ranks.width) * static_cast<std::size_t>(ranks.height)) {
    fail(ErrorCode::kDimension, "rank image buffer does not match its size");
  }
  if (d == 0) fail(ErrorCode::kLookup, "cannot decode with an empty LUT");
  std::vector<double> data;
  data.reserve(ranks.ranks.size() * static_cast<std::size_t>(d));
  for (std::uint32_t r : ranks.ranks) {
    const auto& c = lut.color_at(r);
    data.insert(data.end(), c.channels().begin(), c.channels().end());
  }
  return ColorImage(ranks.width, ranks.height, d, std::move(data));
}

std::vector<ColorValue> sort_by_mapping(const ReducedMapping& h, std::vector<ColorValue> colors) {
  const auto lut = build_rank_lut(h, colors);
  std::vector<ColorValue> out;
  out.reserve(lut.size());
  for (const auto& e : lut.entries()) out.push_back(e.color);
  return out;
}

}  // namespace condmorph
