#include <gtest/gtest.h>

#include <random>

#include "condmorph/morphology.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace condmorph;

namespace {

const ColorValue kBlack{0, 0, 0};
const ColorValue kWhite{1, 1, 1};

bool rank_leq(const RankImage& a, const RankImage& b) {
  for (std::size_t i = 0; i < a.ranks.size(); ++i) {
    if (a.ranks[i] > b.ranks[i]) return false;
  }
  return true;
}

}  // namespace

TEST(StructuringElement, Shapes) {
  const auto sq = StructuringElement::square(3);
  EXPECT_EQ(sq.size(), 9u);
  EXPECT_TRUE(sq.contains_origin());
  const auto disk = StructuringElement::disk(2);
  EXPECT_EQ(disk.size(), 13u);
  for (const auto& o : disk.offsets()) EXPECT_LE(o.dy * o.dy + o.dx * o.dx, 4);
  EXPECT_EQ(StructuringElement::cross(1).size(), 5u);
  EXPECT_EQ(StructuringElement::parse("square:5").size(), 25u);
  EXPECT_EQ(StructuringElement::parse("disk:10").size(), StructuringElement::disk(10).size());
  EXPECT_ERROR_CODE(StructuringElement::square(4), ErrorCode::kConfig);
  EXPECT_ERROR_CODE(StructuringElement::parse("hexagon:3"), ErrorCode::kConfig);
  EXPECT_ERROR_CODE(StructuringElement::parse("square"), ErrorCode::kConfig);
  EXPECT_ERROR_CODE(StructuringElement(std::vector<Offset>{}), ErrorCode::kConfig);
}

TEST(Morphology, ConstantImageIsFixed) {
  const auto img = ColorImage::filled(5, 4, ColorValue{0.1, 0.7, 0.3});
  const auto h = make_lex_mapping(LexOrder::kRGB);
  const auto se = StructuringElement::square(3);
  for (MorphOp op : {MorphOp::kErode, MorphOp::kDilate, MorphOp::kOpen, MorphOp::kClose}) {
    EXPECT_EQ(apply(op, img, *h, se), img);
  }
}

TEST(Morphology, BlackWhiteBlackStrip) {
  const auto img = ColorImage::from_colors(3, 1, {kBlack, kWhite, kBlack});
  const auto h = make_lex_mapping(LexOrder::kRGB);
  const StructuringElement horizontal({{0, -1}, {0, 0}, {0, 1}});
  EXPECT_EQ(dilate(img, *h, horizontal), ColorImage::filled(3, 1, kWhite));
  EXPECT_EQ(erode(img, *h, horizontal), ColorImage::filled(3, 1, kBlack));
}

TEST(Morphology, EmptySamplingSetIsConfigError) {
  const auto img = ColorImage::filled(2, 2, kWhite);
  const StructuringElement far({{5, 5}});
  EXPECT_ERROR_CODE(erode(img, *make_lex_mapping(LexOrder::kRGB), far), ErrorCode::kConfig);
}

TEST(Morphology, AsymmetricElementFollowsReflectionConvention) {
  // erosion reads p+s, dilation reads p-s
  const auto img = ColorImage::from_colors(3, 1, {kBlack, kWhite, ColorValue{0.5, 0.5, 0.5}});
  const auto h = make_lex_mapping(LexOrder::kRGB);
  const StructuringElement right({{0, 0}, {0, 1}});
  EXPECT_EQ(erode(img, *h, right), oracle::erode(img, *h, right));
  EXPECT_EQ(dilate(img, *h, right), oracle::dilate(img, *h, right));
  EXPECT_EQ(dilate(img, *h, right).color(1), kWhite);  // max(I(1), I(0))
  EXPECT_EQ(dilate(img, *h, right).color(2), kWhite);  // max(I(2), I(1))
}

TEST(Morphology, MatchesDirectEvaluation) {
  std::mt19937_64 rng(1234);
  const std::vector<StructuringElement> ses = {StructuringElement::square(3), StructuringElement::disk(2),
                                               StructuringElement::cross(2)};
  for (int t = 0; t < 40; ++t) {
    const auto img = oracle::random_image(rng, 12, 6);
    for (const auto& h : lexicographic_family()) {
      for (const auto& se : ses) {
        const auto e = oracle::erode(img, *h, se);
        const auto d = oracle::dilate(img, *h, se);
        ASSERT_EQ(erode(img, *h, se), e);
        ASSERT_EQ(dilate(img, *h, se), d);
        ASSERT_EQ(open(img, *h, se), oracle::dilate(e, *h, se));
        ASSERT_EQ(close(img, *h, se), oracle::erode(d, *h, se));
      }
    }
  }
}

TEST(Morphology, LawsOnRankImages) {
  std::mt19937_64 rng(99);
  const auto se = StructuringElement::square(3);
  for (int t = 0; t < 40; ++t) {
    const auto img = oracle::random_image(rng, 10, 8);
    const auto h = make_lex_mapping(LexOrder::kBRG);
    const auto lut = build_rank_lut(*h, img);
    const auto r = rank_encode(img, lut);
    const auto e = erode_ranks(r, se), d = dilate_ranks(r, se);
    const auto o = open_ranks(r, se), c = close_ranks(r, se);
    EXPECT_TRUE(rank_leq(e, r));
    EXPECT_TRUE(rank_leq(r, d));
    EXPECT_TRUE(rank_leq(o, r));
    EXPECT_TRUE(rank_leq(r, c));
    EXPECT_EQ(open_ranks(o, se), o);
    EXPECT_EQ(close_ranks(c, se), c);
    for (MorphOp op : {MorphOp::kErode, MorphOp::kDilate, MorphOp::kOpen, MorphOp::kClose}) {
      EXPECT_TRUE(colors_subset_of(apply(op, img, *h, se), img));
    }
    // increasing: r' <= r pointwise implies op(r') <= op(r)
    RankImage lower = r;
    for (auto& v : lower.ranks) v = v > 0 && (rng() & 1U) ? v - 1 : v;
    EXPECT_TRUE(rank_leq(erode_ranks(lower, se), e));
    EXPECT_TRUE(rank_leq(dilate_ranks(lower, se), d));
    EXPECT_TRUE(rank_leq(open_ranks(lower, se), o));
    EXPECT_TRUE(rank_leq(close_ranks(lower, se), c));
  }
}

TEST(Morphology, OperatorNames) {
  EXPECT_EQ(parse_morph_op("open"), MorphOp::kOpen);
  EXPECT_EQ(to_string(MorphOp::kClose), "close");
  EXPECT_ERROR_CODE(parse_morph_op("gradient"), ErrorCode::kConfig);
}
