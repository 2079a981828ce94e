#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "condmorph/condmorph.h"
#include "test_util.hpp"

namespace fs = std::filesystem;

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  cm_string_free(s);
  return out;
}

}  // namespace

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(cm_version(), "0.1.0");
  EXPECT_STREQ(cm_status_name(CM_OK), "ok");
  EXPECT_STRNE(cm_status_name(CM_ERR_FORMAT), cm_status_name(CM_ERR_CONFIG));
}

TEST(CApi, NullArgumentsAreRejected) {
  cm_image* img = nullptr;
  EXPECT_EQ(cm_image_read(nullptr, &img), CM_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(cm_image_read("x.ppm", nullptr), CM_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(cm_ordering_new(nullptr, nullptr), CM_ERR_INVALID_ARGUMENT);
  cm_image_free(nullptr);
  cm_ordering_free(nullptr);
  cm_string_free(nullptr);
}

TEST(CApi, ErrorsCarryStatusAndMessage) {
  cm_image* img = nullptr;
  EXPECT_EQ(cm_image_read("/nonexistent/file.ppm", &img), CM_ERR_FORMAT);
  EXPECT_EQ(img, nullptr);
  EXPECT_GT(std::strlen(cm_last_error()), 0u);
  cm_ordering* ord = nullptr;
  EXPECT_EQ(cm_ordering_new("nope", &ord), CM_ERR_CONFIG);
  EXPECT_NE(std::string(cm_last_error()).find("nope"), std::string::npos);
}

TEST(CApi, MorphologyPipeline) {
  const std::vector<uint8_t> rgb{0, 0, 0, 255, 255, 255, 0, 0, 0};
  cm_image* img = nullptr;
  ASSERT_EQ(cm_image_from_rgb8(3, 1, rgb.data(), &img), CM_OK);
  cm_ordering* ord = nullptr;
  ASSERT_EQ(cm_ordering_new("lex-rgb", &ord), CM_OK);
  cm_image* out = nullptr;
  ASSERT_EQ(cm_morph(img, ord, "dilate", "square:3", &out), CM_OK);
  std::vector<uint8_t> got(9);
  ASSERT_EQ(cm_image_to_rgb8(out, got.data(), got.size()), CM_OK);
  EXPECT_EQ(got, std::vector<uint8_t>(9, 255));
  EXPECT_EQ(cm_image_to_rgb8(out, got.data(), 2), CM_ERR_SIZE);
  EXPECT_EQ(cm_morph(img, ord, "smear", "square:3", &out), CM_ERR_CONFIG);

  double phi = -1;
  int quantized = -1;
  ASSERT_EQ(cm_irregularity(img, img, &phi, &quantized), CM_OK);
  EXPECT_EQ(phi, 0.0);
  EXPECT_EQ(quantized, 0);

  char* csv = nullptr;
  ASSERT_EQ(cm_rank_lut_csv(ord, img, &csv), CM_OK);
  EXPECT_EQ(take(csv).rfind("rank,r,g,b,score", 0), 0u);
  cm_image_free(out);
  cm_image_free(img);
  cm_ordering_free(ord);
}

TEST(CApi, RankColorsIncludingBorda) {
  const double colors[] = {1, 0, 0, 0, 1, 0, 0, 0, 1};
  double sorted[9];
  cm_ordering* brg = nullptr;
  ASSERT_EQ(cm_ordering_new("lex-brg", &brg), CM_OK);
  ASSERT_EQ(cm_rank_colors(brg, colors, 3, 3, sorted), CM_OK);
  EXPECT_EQ(std::vector<double>(sorted, sorted + 9), (std::vector<double>{0, 1, 0, 1, 0, 0, 0, 0, 1}));
  cm_ordering_free(brg);

  const char* voters[] = {"lex-rgb", "lex-gbr", "lex-brg"};
  cm_ordering* borda = nullptr;
  ASSERT_EQ(cm_ordering_new_borda(voters, 3, &borda), CM_OK);
  char* name = nullptr;
  ASSERT_EQ(cm_ordering_name(borda, &name), CM_OK);
  EXPECT_EQ(take(name), "borda(lex-rgb,lex-gbr,lex-brg)");
  ASSERT_EQ(cm_rank_colors(borda, colors, 3, 3, sorted), CM_OK);
  EXPECT_EQ(std::vector<double>(sorted, sorted + 9), (std::vector<double>{0, 0, 1, 0, 1, 0, 1, 0, 0}));
  const double dup[] = {1, 0, 0, 1, 0, 0};
  EXPECT_EQ(cm_rank_colors(borda, dup, 2, 3, sorted), CM_ERR_DOMAIN);
  cm_ordering_free(borda);
}

TEST(CApi, VotingOnProfile) {
  cm_profile* p = nullptr;
  ASSERT_EQ(cm_profile_parse("0,1,2\n0,1,2\n0,1,2\n2,0,1\n2,0,1\n", &p), CM_OK);
  EXPECT_EQ(cm_profile_candidates(p), 3u);
  EXPECT_EQ(cm_profile_voters(p), 5u);
  double scores[3];
  size_t order[3];
  ASSERT_EQ(cm_vote_borda(p, scores, order), CM_OK);
  EXPECT_NEAR(scores[0], 0.2, 1e-12);
  EXPECT_NEAR(scores[1], 0.7, 1e-12);
  EXPECT_NEAR(scores[2], 0.6, 1e-12);
  EXPECT_EQ(std::vector<size_t>(order, order + 3), (std::vector<size_t>{0, 2, 1}));
  double objective = 0;
  ASSERT_EQ(cm_vote_kemeny_exact(p, order, &objective), CM_OK);
  EXPECT_EQ(std::vector<size_t>(order, order + 3), (std::vector<size_t>{0, 1, 2}));
  EXPECT_NEAR(objective, -1.4, 1e-12);
  double margins[9];
  ASSERT_EQ(cm_vote_margins(p, margins), CM_OK);
  EXPECT_NEAR(margins[1], 1.0, 1e-12);  // everyone ranks 0 below 1
  cm_profile_free(p);

  EXPECT_EQ(cm_profile_parse("0,1\n0,0\n", &p), CM_ERR_INVALID_ORDER);
  EXPECT_EQ(cm_profile_parse("0,1\n0,1,2\n", &p), CM_ERR_DIMENSION);
}

TEST(CApi, TrainSaveLoadScore) {
  cm_image_list* list = nullptr;
  ASSERT_EQ(cm_cifar_load(testutil::cifar_fixture().c_str(), 0, 2, &list), CM_OK);
  EXPECT_EQ(cm_image_list_size(list), 2u);
  cm_soft_config cfg;
  cm_soft_config_default(&cfg);
  cfg.epochs = 2;
  cfg.batch_size = 64;
  int calls = 0;
  cm_model* model = nullptr;
  ASSERT_EQ(cm_train(
                list, nullptr, nullptr, 0, &cfg,
                [](int, double train_loss, double val_loss, void* user) {
                  ++*static_cast<int*>(user);
                  EXPECT_TRUE(std::isfinite(train_loss));
                  EXPECT_TRUE(std::isnan(val_loss));
                },
                &calls, &model),
            CM_OK);
  EXPECT_EQ(calls, 2);
  char* csv = nullptr;
  ASSERT_EQ(cm_model_loss_csv(model, &csv), CM_OK);
  EXPECT_EQ(take(csv).rfind("epoch,train_loss,val_loss\n1,", 0), 0u);

  const auto path = (fs::temp_directory_path() / "condmorph_capi_model.json").string();
  ASSERT_EQ(cm_model_save(model, path.c_str()), CM_OK);
  cm_model* loaded = nullptr;
  ASSERT_EQ(cm_model_load(path.c_str(), &loaded), CM_OK);
  const double color[] = {0.2, 0.5, 0.9};
  double a = 0, b = 0;
  ASSERT_EQ(cm_model_score(model, color, &a), CM_OK);
  ASSERT_EQ(cm_model_score(loaded, color, &b), CM_OK);
  EXPECT_EQ(a, b);

  cm_ordering* learned = nullptr;
  ASSERT_EQ(cm_ordering_new(("learned:" + path).c_str(), &learned), CM_OK);
  cm_ordering_free(learned);
  fs::remove(path);
  cm_model_free(loaded);
  cm_model_free(model);
  cm_image_list_free(list);
}

TEST(CApi, ExperimentConfigRendering) {
  const char* overrides[] = {"training.epochs=3", "evaluation.alpha=0.05"};
  char* toml = nullptr;
  ASSERT_EQ(cm_experiment_config(nullptr, overrides, 2, &toml), CM_OK);
  const auto text = take(toml);
  EXPECT_NE(text.find("epochs = 3"), std::string::npos);
  EXPECT_NE(text.find("alpha = 0.05"), std::string::npos);
  const char* bad[] = {"evaluation.alpha=2"};
  EXPECT_EQ(cm_experiment_config(nullptr, bad, 1, &toml), CM_ERR_CONFIG);
}
