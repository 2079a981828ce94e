#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "condmorph/evaluation.hpp"
#include "condmorph/experiment.hpp"
#include "condmorph/image_io.hpp"
#include "test_util.hpp"

using namespace condmorph;
namespace fs = std::filesystem;

namespace {

const ColorValue kRed{1, 0, 0};
const ColorValue kGreen{0, 1, 0};
const ColorValue kBlue{0, 0, 1};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("condmorph_exp_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

ExperimentConfig small_run(const fs::path& out) {
  ExperimentConfig cfg;
  cfg.dataset = testutil::cifar_fixture();
  cfg.train = {0, 4};
  cfg.validation = {10, 10};
  cfg.soft.epochs = 2;
  cfg.soft.batch_size = 128;
  cfg.showcase_count = 1;
  cfg.eval_count = 10;
  cfg.output_dir = out.string();
  cfg.seed = 3;
  return cfg;
}

}  // namespace

TEST(Config, DefaultsValidate) {
  ExperimentConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(cfg.alpha, 0.01);
  EXPECT_EQ(cfg.voters.size(), 3u);
}

TEST(Config, ParseSectionsAndRoundTrip) {
  const auto cfg = parse_experiment_config(R"(
[data]
path = "batch.bin"
train_first = 0
train_count = 50
val_first = 50
val_count = 20

[ordering]
voters = ["lex-rgb", "lex-brg"]

[training]
tau = 0.5
epochs = 3
learning_rate = 1e-2
seed = 9

[morphology]
se = "disk:2"
op = "close"

[evaluation]
eval_count = 12
alpha = 0.05

[output]
dir = "out"
showcase_count = 2
)");
  EXPECT_EQ(cfg.dataset, "batch.bin");
  EXPECT_EQ(cfg.train.count, 50u);
  EXPECT_EQ(cfg.validation.first, 50u);
  EXPECT_EQ(cfg.voters, (std::vector<std::string>{"lex-rgb", "lex-brg"}));
  EXPECT_EQ(cfg.soft.tau, 0.5);
  EXPECT_EQ(cfg.soft.epochs, 3);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.operation, MorphOp::kClose);
  EXPECT_EQ(cfg.eval_count, 12u);
  EXPECT_EQ(cfg.soft.batch_size, SoftConfig{}.batch_size);

  const auto again = parse_experiment_config(experiment_config_to_toml(cfg));
  EXPECT_EQ(experiment_config_to_toml(again), experiment_config_to_toml(cfg));
}

TEST(Config, RejectsBadInput) {
  EXPECT_ERROR_CODE(parse_experiment_config("[data]\nbogus = 1\n"), ErrorCode::kConfig);
  EXPECT_ERROR_CODE(parse_experiment_config("[training]\ntau = \"big\"\n"), ErrorCode::kConfig);
  EXPECT_ERROR_CODE(parse_experiment_config("[data\n"), ErrorCode::kConfig);
  // these parse but fail validation
  for (const char* text : {"[data]\ntrain_first=0\ntrain_count=10\nval_first=5\n", "[evaluation]\neval_count = 5\n",
                           "[evaluation]\nalpha = 1.0\n", "[ordering]\nvoters = []\n", "[morphology]\nse = \"blob\"\n",
                           "[output]\nshowcase_count = 101\n"}) {
    const auto cfg = parse_experiment_config(text);
    EXPECT_ERROR_CODE(cfg.validate(), ErrorCode::kConfig) << text;
  }
  EXPECT_ERROR_CODE(load_experiment_config("/nonexistent/config.toml"), ErrorCode::kConfig);
}

TEST(Config, Overrides) {
  const auto cfg = apply_overrides(ExperimentConfig{}, {"training.epochs=7", "morphology.op=close",
                                                        "ordering.voters=lex-rgb,lex-gbr", "data.path=/x/y.bin"});
  EXPECT_EQ(cfg.soft.epochs, 7);
  EXPECT_EQ(cfg.operation, MorphOp::kClose);
  EXPECT_EQ(cfg.voters, (std::vector<std::string>{"lex-rgb", "lex-gbr"}));
  EXPECT_EQ(cfg.dataset, "/x/y.bin");
  EXPECT_ERROR_CODE(apply_overrides(ExperimentConfig{}, {"epochs"}), ErrorCode::kConfig);
  EXPECT_ERROR_CODE(apply_overrides(ExperimentConfig{}, {"training.nope=1"}), ErrorCode::kConfig);
}

TEST(Mappings, ByName) {
  EXPECT_EQ(mapping_by_name("lex-rgb")->name(), "lex-rgb");
  EXPECT_NEAR((*mapping_by_name("custom:1,2,3"))(ColorValue{1, 1, 1}), 6.0, 1e-12);
  EXPECT_ERROR_CODE(mapping_by_name("borda"), ErrorCode::kConfig);
  EXPECT_ERROR_CODE(mapping_by_name("zigzag"), ErrorCode::kConfig);
  EXPECT_ERROR_CODE(mapping_by_name("custom:1,x"), ErrorCode::kConfig);
  EXPECT_ERROR_CODE(mapping_family({}), ErrorCode::kConfig);
}

TEST(RankColors, PrimaryColorsUnderEachMethod) {
  const std::vector<ColorValue> rgb{kRed, kGreen, kBlue};
  EXPECT_EQ(rank_colors("lex-rgb", rgb), (std::vector<ColorValue>{kBlue, kGreen, kRed}));
  EXPECT_EQ(rank_colors("lex-gbr", rgb), (std::vector<ColorValue>{kRed, kBlue, kGreen}));
  EXPECT_EQ(rank_colors("lex-brg", rgb), (std::vector<ColorValue>{kGreen, kRed, kBlue}));
  // each color is least under exactly one voter: a full Borda tie, broken lexicographically
  EXPECT_EQ(rank_colors("borda", rgb), (std::vector<ColorValue>{kBlue, kGreen, kRed}));
  EXPECT_ERROR_CODE(rank_colors("lex-rgb", {kRed, kRed}), ErrorCode::kDomain);
}

TEST(RankColors, PaletteAndRamp) {
  const auto& palette = probe_palette();
  ASSERT_EQ(palette.size(), 16u);
  std::vector<ColorValue> colors;
  for (const auto& [name, c] : palette) colors.push_back(c);
  for (const auto& method : experiment_methods()) {
    if (method == "learned") continue;
    const auto ranked = rank_colors(method, colors);
    EXPECT_EQ(ranked.front(), (ColorValue{0, 0, 0})) << method;
    EXPECT_EQ(ranked.back(), (ColorValue{1, 1, 1})) << method;
  }
  const auto strip = ramp_strip(colors);
  EXPECT_EQ(strip.width(), 16);
  EXPECT_EQ(strip.height(), 1);
  EXPECT_ERROR_CODE(ramp_strip(std::vector<ColorValue>{}), ErrorCode::kDimension);
}

TEST(Experiment, SmallRunWritesArtifacts) {
  TempDir tmp;
  const auto out = tmp.path / "run";
  std::vector<std::string> messages;
  int epochs = 0;
  const auto summary = run_experiment(small_run(out), {[&](const TrainProgress&) { ++epochs; },
                                                       [&](const std::string& m) { messages.push_back(m); }});
  EXPECT_EQ(epochs, 2);
  EXPECT_FALSE(messages.empty());
  for (const char* name : {"config.toml", "model.json", "loss.csv", "irregularity.csv", "wilcoxon.csv",
                           "hasse.dot", "quantiles.csv", "ramps.csv"}) {
    EXPECT_TRUE(fs::exists(out / name)) << name;
  }
  EXPECT_FALSE(fs::exists(tmp.path / "run.staging"));
  for (const auto& m : experiment_methods()) {
    EXPECT_TRUE(fs::exists(out / "ramps" / (m + ".ppm"))) << m;
    for (const char* op : {"open", "close"}) {
      const auto shown = out / "showcase" / ("img00010_" + m + "_" + op + ".ppm");
      ASSERT_TRUE(fs::exists(shown)) << shown;
      EXPECT_TRUE(colors_subset_of(read_ppm(shown.string()), read_ppm((out / "showcase/img00010_original.ppm").string())));
    }
  }
  const auto table = IrregularityTable::from_csv(slurp(out / "irregularity.csv"));
  EXPECT_EQ(table.rows.size(), 10u * experiment_methods().size());
  for (const auto& r : table.rows) {
    EXPECT_GE(r.phi, 0.0);
    EXPECT_LE(r.phi, 1.0);
  }
  EXPECT_EQ(summary.median_phi.size(), experiment_methods().size());
  EXPECT_EQ(slurp(out / "hasse.dot"), summary.hasse_dot);
  const auto recorded = load_experiment_config((out / "config.toml").string());
  EXPECT_EQ(recorded.seed, 3u);

  // reproducible under the same seed
  const auto out2 = tmp.path / "run2";
  auto cfg2 = small_run(out2);
  run_experiment(cfg2);
  for (const char* name : {"loss.csv", "model.json", "irregularity.csv", "wilcoxon.csv", "ramps.csv"}) {
    EXPECT_EQ(slurp(out / name), slurp(out2 / name)) << name;
  }

  // refuses to overwrite
  EXPECT_ERROR_CODE(run_experiment(small_run(out)), ErrorCode::kConfig);
}

TEST(Experiment, FailureLeavesNothingBehind) {
  TempDir tmp;
  auto cfg = small_run(tmp.path / "bad");
  cfg.validation = {190, 20};  // past the end of the 200-record fixture
  EXPECT_ERROR_CODE(run_experiment(cfg), ErrorCode::kConfig);
  EXPECT_FALSE(fs::exists(tmp.path / "bad"));
  EXPECT_FALSE(fs::exists(tmp.path / "bad.staging"));

  cfg = small_run(tmp.path / "bad2");
  cfg.voters = {"lex-rgb", "no-such-mapping"};
  EXPECT_ERROR_CODE(run_experiment(cfg), ErrorCode::kConfig);
  EXPECT_FALSE(fs::exists(tmp.path / "bad2.staging"));
}
