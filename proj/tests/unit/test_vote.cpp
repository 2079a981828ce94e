#include <gtest/gtest.h>

#include <random>

#include "condmorph/vote.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace condmorph;

namespace {

// 3 voters x1<x2<x3, 2 voters x3<x1<x2 (0-based indices)
std::vector<TotalOrderMatrix> golden_profile() {
  std::vector<TotalOrderMatrix> orders;
  for (int k = 0; k < 3; ++k) orders.push_back(TotalOrderMatrix::from_permutation(Permutation{0, 1, 2}));
  for (int k = 0; k < 2; ++k) orders.push_back(TotalOrderMatrix::from_permutation(Permutation{2, 0, 1}));
  return orders;
}

}  // namespace

TEST(TotalOrder, Validation) {
  EXPECT_TRUE(validate_total_order_matrix(TotalOrderMatrix::from_permutation(Permutation{2, 0, 1})));
  // r[1][2] = r[2][1] = 1
  TotalOrderMatrix both(3, {1, 1, 1, 0, 1, 1, 0, 1, 1});
  const auto v = validate_total_order_matrix(both);
  EXPECT_FALSE(v.valid);
  EXPECT_FALSE(v.violation.empty());
  // cyclic 0<=1, 1<=2, 2<=0
  TotalOrderMatrix cyclic(3, {1, 1, 0, 0, 1, 1, 1, 0, 1});
  EXPECT_FALSE(validate_total_order_matrix(cyclic).valid);
  EXPECT_ERROR_CODE(cyclic.permutation(), ErrorCode::kInvalidOrder);
  TotalOrderMatrix no_diag(2, {0, 1, 0, 1});
  EXPECT_FALSE(validate_total_order_matrix(no_diag).valid);
}

TEST(TotalOrder, RandomPermutationsAreValid) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    const auto p = oracle::random_permutation(rng, 6);
    const auto r = TotalOrderMatrix::from_permutation(p);
    EXPECT_TRUE(validate_total_order_matrix(r).valid);
    EXPECT_EQ(r.permutation(), p);
  }
}

TEST(Margins, GoldenProfile) {
  const auto delta = margin_matrix_from_orders(golden_profile());
  EXPECT_EQ(delta(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(delta(0, 2), 0.2);
  EXPECT_DOUBLE_EQ(delta(1, 2), 0.2);
  EXPECT_EQ(delta(1, 0), -1.0);
  EXPECT_EQ(delta(2, 2), 0.0);
}

TEST(Margins, UnanimityAndTie) {
  const Permutation order{1, 2, 0};
  std::vector<TotalOrderMatrix> same(4, TotalOrderMatrix::from_permutation(order));
  const auto delta = margin_matrix_from_orders(same);
  EXPECT_EQ(delta(1, 2), 1.0);
  EXPECT_EQ(delta(2, 0), 1.0);
  EXPECT_EQ(delta(0, 1), -1.0);

  const std::vector<TotalOrderMatrix> opposite{TotalOrderMatrix::from_permutation(Permutation{0, 1}),
                                               TotalOrderMatrix::from_permutation(Permutation{1, 0})};
  const auto tie = margin_matrix_from_orders(opposite);
  EXPECT_EQ(tie(0, 1), 0.0);
  EXPECT_EQ(tie(1, 0), 0.0);
}

TEST(Margins, EntriesAreMultiplesOfOneOverM) {
  std::mt19937_64 rng(2);
  std::vector<TotalOrderMatrix> orders;
  for (int k = 0; k < 7; ++k) orders.push_back(TotalOrderMatrix::from_permutation(oracle::random_permutation(rng, 5)));
  const auto delta = margin_matrix_from_orders(orders);
  for (double v : delta.values()) {
    const double scaled = v * 7.0;
    EXPECT_NEAR(scaled, std::round(scaled), 1e-12);
  }
}

TEST(Margins, DimensionMismatch) {
  const std::vector<TotalOrderMatrix> mixed{TotalOrderMatrix::from_permutation(Permutation{0, 1}),
                                            TotalOrderMatrix::from_permutation(Permutation{0, 1, 2})};
  EXPECT_ERROR_CODE(margin_matrix_from_orders(mixed), ErrorCode::kDimension);
}

TEST(Margins, FromMappingsAgreesWithSortedOrders) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> byte(0, 255);
  for (int t = 0; t < 30; ++t) {
    std::vector<ColorValue> values;
    while (values.size() < 5) {
      auto c = ColorValue::from_rgb8(static_cast<std::uint8_t>(byte(rng)), static_cast<std::uint8_t>(byte(rng)),
                                     static_cast<std::uint8_t>(byte(rng)));
      if (std::find(values.begin(), values.end(), c) == values.end()) values.push_back(c);
    }
    const auto family = lexicographic_family();
    std::vector<TotalOrderMatrix> orders;
    for (const auto& h : family) {
      Permutation p(values.size());
      std::iota(p.begin(), p.end(), std::size_t{0});
      std::sort(p.begin(), p.end(), [&](std::size_t a, std::size_t b) { return (*h)(values[a]) < (*h)(values[b]); });
      orders.push_back(TotalOrderMatrix::from_permutation(p));
    }
    EXPECT_EQ(margin_matrix_from_mappings(family, values).values(), margin_matrix_from_orders(orders).values());
  }
}

TEST(Margins, BlackBeatsEveryColorUnderLexFamily) {
  const std::vector<ColorValue> values{{0, 0, 0}, ColorValue::from_rgb8(3, 200, 17)};
  const auto delta = margin_matrix_from_mappings(lexicographic_family(), values);
  EXPECT_EQ(delta(0, 1), 1.0);
}

TEST(Kemeny, TwoCandidateSigns) {
  const MarginMatrix delta(2, {0, 1, -1, 0});
  EXPECT_EQ(kemeny_objective(delta, TotalOrderMatrix::from_permutation(Permutation{0, 1})), -1.0);
  EXPECT_EQ(kemeny_objective(delta, TotalOrderMatrix::from_permutation(Permutation{1, 0})), 1.0);
  const MarginMatrix zero(3, std::vector<double>(9, 0.0));
  EXPECT_EQ(kemeny_objective(zero, Permutation{2, 0, 1}), 0.0);
}

TEST(Kemeny, InvalidOrderRejected) {
  const MarginMatrix delta(2, {0, 1, -1, 0});
  EXPECT_ERROR_CODE(kemeny_objective(delta, TotalOrderMatrix(2, {1, 1, 1, 1})), ErrorCode::kInvalidOrder);
}

TEST(Kemeny, GoldenProfileExact) {
  const auto delta = margin_matrix_from_orders(golden_profile());
  const auto best = exact_condorcet_order(delta);
  EXPECT_EQ(best.permutation, (Permutation{0, 1, 2}));
  EXPECT_LT(kemeny_objective(delta, Permutation{0, 1, 2}), kemeny_objective(delta, Permutation{0, 2, 1}));
  for (const auto& [perm, value] : oracle::all_orders(delta)) EXPECT_LE(best.objective, value + 1e-12);
}

TEST(Kemeny, CondorcetCycle) {
  std::vector<TotalOrderMatrix> orders{TotalOrderMatrix::from_permutation(Permutation{0, 1, 2}),
                                       TotalOrderMatrix::from_permutation(Permutation{1, 2, 0}),
                                       TotalOrderMatrix::from_permutation(Permutation{2, 0, 1})};
  const auto delta = margin_matrix_from_orders(orders);
  const auto best = exact_condorcet_order(delta);
  const double rot0 = oracle::kemeny(delta, {0, 1, 2});
  EXPECT_DOUBLE_EQ(rot0, oracle::kemeny(delta, {1, 2, 0}));
  EXPECT_DOUBLE_EQ(rot0, oracle::kemeny(delta, {2, 0, 1}));
  EXPECT_DOUBLE_EQ(best.objective, rot0);
  EXPECT_EQ(best.permutation, (Permutation{0, 1, 2}));  // smallest among the optimal rotations
}

TEST(Kemeny, ExactMatchesEnumerationOnRandomProfiles) {
  std::mt19937_64 rng(4242);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + rng() % 6;
    const std::size_t m = 1 + rng() % 9;
    std::vector<TotalOrderMatrix> orders;
    for (std::size_t k = 0; k < m; ++k) orders.push_back(TotalOrderMatrix::from_permutation(oracle::random_permutation(rng, n)));
    const auto delta = margin_matrix_from_orders(orders);
    const auto best = exact_condorcet_order(delta);
    const auto all = oracle::all_orders(delta);
    double min_value = all.front().second;
    for (const auto& e : all) min_value = std::min(min_value, e.second);
    EXPECT_NEAR(best.objective, min_value, 1e-12);
    EXPECT_NEAR(oracle::kemeny(delta, best.permutation), min_value, 1e-12);
    // first optimal permutation in lexicographic order
    for (const auto& [perm, value] : all) {
      if (value <= min_value + 1e-9) {
        EXPECT_EQ(best.permutation, perm);
        break;
      }
    }
    EXPECT_EQ(best.order, TotalOrderMatrix::from_permutation(best.permutation));
  }
}

TEST(Kemeny, UnanimityAndCondorcetWinner) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng() % 6;
    const auto p = oracle::random_permutation(rng, n);
    std::vector<TotalOrderMatrix> orders(3, TotalOrderMatrix::from_permutation(p));
    EXPECT_EQ(exact_condorcet_order(margin_matrix_from_orders(orders)).permutation, p);
  }
  // candidate 2 beats everyone pairwise, so it must be the maximum
  std::vector<TotalOrderMatrix> orders{TotalOrderMatrix::from_permutation(Permutation{0, 1, 3, 2}),
                                       TotalOrderMatrix::from_permutation(Permutation{3, 0, 1, 2}),
                                       TotalOrderMatrix::from_permutation(Permutation{1, 2, 0, 3})};
  const auto delta = margin_matrix_from_orders(orders);
  for (std::size_t i = 0; i < 4; ++i) {
    if (i != 2) ASSERT_GT(delta(i, 2), 0.0);
  }
  EXPECT_EQ(exact_condorcet_order(delta).permutation.back(), 2u);
}

TEST(Kemeny, CapEnforced) {
  const MarginMatrix delta(10, std::vector<double>(100, 0.0));
  EXPECT_ERROR_CODE(exact_condorcet_order(delta), ErrorCode::kSize);
  const MarginMatrix small(4, std::vector<double>(16, 0.0));
  EXPECT_ERROR_CODE(exact_condorcet_order(small, 3), ErrorCode::kSize);
}

TEST(Borda, GoldenProfile) {
  const auto scores = borda_scores(golden_profile());
  ASSERT_EQ(scores.size(), 3u);
  // exact rationals: 2/10, 7/10, 6/10
  EXPECT_EQ(scores[0] * 10.0, 2.0);
  EXPECT_EQ(scores[1] * 10.0, 7.0);
  EXPECT_EQ(scores[2] * 10.0, 6.0);
  EXPECT_EQ(order_from_scores(scores), (Permutation{0, 2, 1}));
}

TEST(Borda, UnanimityAndErrors) {
  std::vector<TotalOrderMatrix> one{TotalOrderMatrix::from_permutation(Permutation{0, 1, 2})};
  EXPECT_EQ(borda_scores(one), (std::vector<double>{0.0, 0.5, 1.0}));
  std::vector<TotalOrderMatrix> single{TotalOrderMatrix::from_permutation(Permutation{0})};
  EXPECT_ERROR_CODE(borda_scores(single), ErrorCode::kConfig);
}

TEST(Borda, MatchesPositionCountingOracle) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng() % 7;
    const std::size_t m = 1 + rng() % 6;
    std::vector<std::vector<std::size_t>> voters;
    std::vector<TotalOrderMatrix> orders;
    for (std::size_t k = 0; k < m; ++k) {
      voters.push_back(oracle::random_permutation(rng, n));
      orders.push_back(TotalOrderMatrix::from_permutation(voters.back()));
    }
    const auto expected = oracle::borda(voters, n);
    const auto got = borda_scores(orders);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(got[i], expected[i], 1e-12);
      EXPECT_GE(got[i], 0.0);
      EXPECT_LE(got[i], 1.0);
    }
  }
}

TEST(Borda, FromMappingsMatchesDoubleSum) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> level(0, 4);
  for (int t = 0; t < 30; ++t) {
    std::vector<ColorValue> values;
    while (values.size() < 6) {
      ColorValue c{level(rng) / 4.0, level(rng) / 4.0, level(rng) / 4.0};
      if (std::find(values.begin(), values.end(), c) == values.end()) values.push_back(c);
    }
    // a tie-heavy family so the indicator on ties matters
    const MappingFamily family{make_lex_mapping(LexOrder::kRGB), std::make_shared<LinearMapping>(std::vector<double>{1, 1, 1}),
                               std::make_shared<LinearMapping>(std::vector<double>{0, 1, 0})};
    const auto got = borda_scores_from_mappings(family, values);
    const double n = static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      double sum = 0.0;
      for (const auto& h : family) {
        for (std::size_t j = 0; j < values.size(); ++j) {
          if (j != i && (*h)(values[j]) <= (*h)(values[i])) sum += 1.0;
        }
      }
      EXPECT_NEAR(got[i], sum / (3.0 * (n - 1.0)), 1e-12);
    }
    const auto table = borda_mapping(family, values);
    for (std::size_t i = 0; i < values.size(); ++i) EXPECT_EQ((*table)(values[i]), got[i]);
  }
}

TEST(Borda, TwoValuesFollowMajority) {
  const std::vector<ColorValue> values{{1, 0, 0}, {0, 0, 1}};
  // lex-rgb: blue < red; lex-gbr: red < blue; lex-brg: red < blue -> red is lower by majority
  const auto order = order_from_scores(borda_scores_from_mappings(lexicographic_family(), values));
  EXPECT_EQ(order, (Permutation{0, 1}));
}

TEST(Profile, ParseAndErrors) {
  const auto p = parse_vote_profile("# comment\n0,1,2\n\n2, 0, 1\n");
  EXPECT_EQ(p.candidates, 3u);
  ASSERT_EQ(p.voters.size(), 2u);
  EXPECT_EQ(p.voters[1], (Permutation{2, 0, 1}));
  EXPECT_ERROR_CODE(parse_vote_profile("0,1,1\n"), ErrorCode::kInvalidOrder);
  EXPECT_ERROR_CODE(parse_vote_profile("0,1\n0,1,2\n"), ErrorCode::kDimension);
  EXPECT_ERROR_CODE(parse_vote_profile("a,b\n"), ErrorCode::kFormat);
  EXPECT_ERROR_CODE(parse_vote_profile("# nothing\n"), ErrorCode::kFormat);
  EXPECT_ERROR_CODE(read_vote_profile("/nonexistent/profile.txt"), ErrorCode::kFormat);
}
