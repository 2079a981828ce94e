#include "condmorph/morphology.hpp"

#include <algorithm>
#include <charconv>

#include "condmorph/error.hpp"

namespace condmorph {
namespace {

int parse_int(const std::string& text, const std::string& what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    fail(ErrorCode::kConfig, "bad " + what + " '" + text + "'");
  }
  return value;
}

// sign = +1 samples p + s (erosion), sign = -1 samples p - s (dilation).
template <typename Better>
RankImage extremum_filter(const RankImage& in, const StructuringElement& se, int sign,
                          Better better) {
  RankImage out{in.width, in.height, std::vector<std::uint32_t>(in.ranks.size())};
  for (int y = 0; y < in.height; ++y) {
    for (int x = 0; x < in.width; ++x) {
      bool found = false;
      std::uint32_t best = 0;
      for (const auto& s : se.offsets()) {
        const int sy = y + sign * s.dy;
        const int sx = x + sign * s.dx;
        if (sy < 0 || sy >= in.height || sx < 0 || sx >= in.width) continue;
        const std::uint32_t v = in.at(sy, sx);
        if (!found || better(v, best)) best = v;
        found = true;
      }
      if (!found) {
        fail(ErrorCode::kConfig, "structuring element samples nothing at pixel (" +
                                     std::to_string(y) + "," + std::to_string(x) + ")");
      }
      out.ranks[static_cast<std::size_t>(y) * static_cast<std::size_t>(in.width) +
                static_cast<std::size_t>(x)] = best;
    }
  }
  return out;
}

}  // namespace

StructuringElement::StructuringElement(std::vector<Offset> offsets) : offsets_(std::move(offsets)) {
  std::sort(offsets_.begin(), offsets_.end());
  offsets_.erase(std::unique(offsets_.begin(), offsets_.end()), offsets_.end());
  if (offsets_.empty()) fail(ErrorCode::kConfig, "structuring element must be non-empty");
}

StructuringElement StructuringElement::square(int side) {
  if (side < 1 || side % 2 == 0) {
    fail(ErrorCode::kConfig, "square side must be a positive odd integer, got " +
                                 std::to_string(side));
  }
  const int h = side / 2;
  std::vector<Offset> offsets;
  for (int dy = -h; dy <= h; ++dy) {
    for (int dx = -h; dx <= h; ++dx) offsets.push_back({dy, dx});
  }
  return StructuringElement(std::move(offsets));
}

StructuringElement StructuringElement::disk(int radius) {
  if (radius < 0) fail(ErrorCode::kConfig, "disk radius must be >= 0");
  std::vector<Offset> offsets;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      if (dy * dy + dx * dx <= radius * radius) offsets.push_back({dy, dx});
    }
  }
  return StructuringElement(std::move(offsets));
}

StructuringElement StructuringElement::cross(int arm) {
  if (arm < 0) fail(ErrorCode::kConfig, "cross arm must be >= 0");
  std::vector<Offset> offsets{{0, 0}};
  for (int k = 1; k <= arm; ++k) {
    offsets.push_back({-k, 0});
    offsets.push_back({k, 0});
    offsets.push_back({0, -k});
    offsets.push_back({0, k});
  }
  return StructuringElement(std::move(offsets));
}

StructuringElement StructuringElement::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    fail(ErrorCode::kConfig, "structuring element '" + text + "' must look like square:N or disk:R");
  }
  const std::string shape = text.substr(0, colon);
  const int size = parse_int(text.substr(colon + 1), "structuring element size");
  if (shape == "square") return square(size);
  if (shape == "disk") return disk(size);
  if (shape == "cross") return cross(size);
  fail(ErrorCode::kConfig, "unknown structuring element shape '" + shape + "'");
}

bool StructuringElement::contains_origin() const {
  return std::binary_search(offsets_.begin(), offsets_.end(), Offset{0, 0});
}

StructuringElement StructuringElement::reflected() const {
  std::vector<Offset> out;
  out.reserve(offsets_.size());
  for (const auto& o : offsets_) out.push_back({-o.dy, -o.dx});
  return StructuringElement(std::move(out));
}

MorphOp parse_morph_op(const std::string& name) {
  if (name == "erode") return MorphOp::kErode;
  if (name == "dilate") return MorphOp::kDilate;
  if (name == "open") return MorphOp::kOpen;
  if (name == "close") return MorphOp::kClose;
  fail(ErrorCode::kConfig, "unknown morphological operator '" + name + "'");
}

std::string to_string(MorphOp op) {
  switch (op) {
    case MorphOp::kErode: return "erode";
    case MorphOp::kDilate: return "dilate";
    case MorphOp::kOpen: return "open";
    case MorphOp::kClose: return "close";
  }
  return "?";
}

RankImage erode_ranks(const RankImage& ranks, const StructuringElement& se) {
  return extremum_filter(ranks, se, +1, [](std::uint32_t a, std::uint32_t b) { return a < b; });
}

RankImage dilate_ranks(const RankImage& ranks, const StructuringElement& se) {
  return extremum_filter(ranks, se, -1, [](std::uint32_t a, std::uint32_t b) { return a > b; });
}

RankImage open_ranks(const RankImage& ranks, const StructuringElement& se) {
  return dilate_ranks(erode_ranks(ranks, se), se);
}

RankImage close_ranks(const RankImage& ranks, const StructuringElement& se) {
  return erode_ranks(dilate_ranks(ranks, se), se);
}

RankImage apply_ranks(MorphOp op, const RankImage& ranks, const StructuringElement& se) {
  switch (op) {
    case MorphOp::kErode: return erode_ranks(ranks, se);
    case MorphOp::kDilate: return dilate_ranks(ranks, se);
    case MorphOp::kOpen: return open_ranks(ranks, se);
    case MorphOp::kClose: return close_ranks(ranks, se);
  }
  fail(ErrorCode::kConfig, "unknown morphological operator");
}

ColorImage apply(MorphOp op, const ColorImage& image, const ReducedMapping& h,
                 const StructuringElement& se) {
  const RankLut lut = build_rank_lut(h, image);
  return rank_decode(apply_ranks(op, rank_encode(image, lut), se), lut);
}

ColorImage erode(const ColorImage& image, const ReducedMapping& h, const StructuringElement& se) {
  return apply(MorphOp::kErode, image, h, se);
}

ColorImage dilate(const ColorImage& image, const ReducedMapping& h, const StructuringElement& se) {
  return apply(MorphOp::kDilate, image, h, se);
}

ColorImage open(const ColorImage& image, const ReducedMapping& h, const StructuringElement& se) {
  return apply(MorphOp::kOpen, image, h, se);
}

ColorImage close(const ColorImage& image, const ReducedMapping& h, const StructuringElement& se) {
  return apply(MorphOp::kClose, image, h, se);
}

}  // namespace condmorph
