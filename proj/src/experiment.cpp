#include "condmorph/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "condmorph/error.hpp"
#include "condmorph/evaluation.hpp"
#include "condmorph/image_io.hpp"
#include "condmorph/morphology.hpp"
#include "condmorph/vote.hpp"

namespace fs = std::filesystem;

namespace condmorph {
namespace {

std::vector<double> parse_weights(const std::string& text) {
  std::vector<double> w;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) fail(ErrorCode::kConfig, "bad weight '" + item + "'");
    w.push_back(v);
  }
  if (w.empty()) fail(ErrorCode::kConfig, "custom mapping needs weights");
  return w;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kFormat, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) fail(ErrorCode::kFormat, "failed writing '" + path.string() + "'");
}

std::string image_label(std::size_t record) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "img%05zu", record);
  return buf;
}

// Per-image mapping for a comparison method. Borda is image-specific.
MappingPtr method_mapping(const std::string& method, const MappingFamily& voters,
                          const MappingPtr& learned, const ColorImage& image) {
  if (method == "learned") return learned;
  if (method == "borda") {
    const auto values = unique_colors(image);
    return mapping_for_values("borda", voters, values);
  }
  return mapping_by_name(method);
}

ColorImage checked_apply(MorphOp op, const ColorImage& image, const ReducedMapping& h,
                         const StructuringElement& se) {
  ColorImage out = apply(op, image, h, se);
  if (!colors_subset_of(out, image)) {
    throw std::logic_error(to_string(op) + " under " + h.name() + " produced a false color");
  }
  return out;
}

// Runs fn(i) for i in [0, n) on a few threads; results land at their index.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, Fn fn) {
  std::vector<T> out(n);
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += workers) out[i] = fn(i);
    }));
  }
  for (auto& j : jobs) j.get();  // rethrows the first failure
  return out;
}

class StagingDir {
 public:
  explicit StagingDir(fs::path target) : target_(std::move(target)) {
    path_ = target_;
    path_ += ".staging";
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~StagingDir() {
    if (!committed_) {
      std::error_code ec;
      fs::remove_all(path_, ec);
    }
  }
  const fs::path& path() const { return path_; }
  void commit() {
    std::error_code ec;
    fs::remove(target_, ec);  // only succeeds for an empty directory
    fs::rename(path_, target_);
    committed_ = true;
  }

 private:
  fs::path target_;
  fs::path path_;
  bool committed_ = false;
};

}  // namespace

MappingPtr mapping_by_name(const std::string& name) {
  if (name == "lex-rgb") return make_lex_mapping(LexOrder::kRGB);
  if (name == "lex-gbr") return make_lex_mapping(LexOrder::kGBR);
  if (name == "lex-brg") return make_lex_mapping(LexOrder::kBRG);
  if (name.starts_with("custom:")) {
    return std::make_shared<LinearMapping>(parse_weights(name.substr(7)));
  }
  if (name.starts_with("learned:")) {
    return std::make_shared<LearnedMapping>(load_model(name.substr(8)).params);
  }
  if (name == "borda") fail(ErrorCode::kConfig, "borda needs a value set and a voting family");
  fail(ErrorCode::kConfig, "unknown ordering method '" + name + "'");
}

MappingFamily mapping_family(const std::vector<std::string>& names) {
  if (names.empty()) fail(ErrorCode::kConfig, "the voting family is empty");
  MappingFamily family;
  for (const auto& n : names) family.push_back(mapping_by_name(n));
  return family;
}

MappingPtr mapping_for_values(const std::string& name, const MappingFamily& voters,
                              std::span<const ColorValue> values) {
  if (name == "borda") return borda_mapping(voters, values);
  return mapping_by_name(name);
}

namespace {

void require_distinct(std::vector<ColorValue> colors) {
  std::sort(colors.begin(), colors.end());
  if (std::adjacent_find(colors.begin(), colors.end()) != colors.end()) {
    fail(ErrorCode::kDomain, "colors to rank must be distinct");
  }
}

}  // namespace

std::vector<ColorValue> rank_colors(const ReducedMapping& h, std::vector<ColorValue> colors) {
  require_distinct(colors);
  return sort_by_mapping(h, std::move(colors));
}

std::vector<ColorValue> rank_colors(const std::string& method, std::vector<ColorValue> colors,
                                    const MappingFamily& voters) {
  require_distinct(colors);
  const auto h = mapping_for_values(method, voters, colors);
  return rank_colors(*h, std::move(colors));
}

const std::vector<std::pair<std::string, ColorValue>>& probe_palette() {
  static const std::vector<std::pair<std::string, ColorValue>> palette = [] {
    const struct {
      const char* name;
      std::uint8_t r, g, b;
    } basic[] = {
        {"black", 0, 0, 0},       {"maroon", 128, 0, 0},   {"green", 0, 128, 0},
        {"olive", 128, 128, 0},   {"navy", 0, 0, 128},     {"purple", 128, 0, 128},
        {"teal", 0, 128, 128},    {"silver", 192, 192, 192}, {"gray", 128, 128, 128},
        {"red", 255, 0, 0},       {"lime", 0, 255, 0},     {"yellow", 255, 255, 0},
        {"blue", 0, 0, 255},      {"fuchsia", 255, 0, 255}, {"aqua", 0, 255, 255},
        {"white", 255, 255, 255},
    };
    std::vector<std::pair<std::string, ColorValue>> out;
    for (const auto& c : basic) out.emplace_back(c.name, ColorValue::from_rgb8(c.r, c.g, c.b));
    return out;
  }();
  return palette;
}

ColorImage ramp_strip(std::span<const ColorValue> colors) {
  if (colors.empty()) fail(ErrorCode::kDimension, "ramp needs at least one color");
  return ColorImage::from_colors(static_cast<int>(colors.size()), 1,
                                 std::vector<ColorValue>(colors.begin(), colors.end()));
}

const std::vector<std::string>& experiment_methods() {
  static const std::vector<std::string> methods = {"lex-rgb", "lex-gbr", "lex-brg", "borda",
                                                   "learned"};
  return methods;
}

ExperimentSummary run_experiment(const ExperimentConfig& cfg, const ExperimentHooks& hooks) {
  cfg.validate();
  auto say = [&](const std::string& msg) {
    if (hooks.on_message) hooks.on_message(msg);
  };

  const fs::path target(cfg.output_dir);
  if (fs::exists(target) && !(fs::is_directory(target) && fs::is_empty(target))) {
    fail(ErrorCode::kConfig, "output directory '" + cfg.output_dir + "' already exists and is not empty");
  }
  if (cfg.dataset.empty()) fail(ErrorCode::kConfig, "no dataset path configured");
  const std::size_t records = cifar_record_count(cfg.dataset);
  if (cfg.train.end() > records || cfg.validation.end() > records) {
    fail(ErrorCode::kConfig, "configured ranges exceed the " + std::to_string(records) +
                                 " records of '" + cfg.dataset + "'");
  }
  const auto se = StructuringElement::parse(cfg.structuring_element);
  const auto voters = mapping_family(cfg.voters);
  SoftConfig soft = cfg.soft;
  soft.seed = cfg.seed;

  const auto train_images = load_cifar_batch(cfg.dataset, cfg.train.first, cfg.train.count);
  const auto val_images = load_cifar_batch(cfg.dataset, cfg.validation.first, cfg.validation.count);

  StagingDir stage(target);
  const fs::path& dir = stage.path();
  ExperimentSummary summary;
  summary.output_dir = target.string();
  summary.methods = experiment_methods();

  ExperimentConfig recorded = cfg;
  recorded.soft.seed = cfg.seed;
  write_text(dir / "config.toml", experiment_config_to_toml(recorded));

  say("training on " + std::to_string(train_images.size()) + " images");
  summary.training = train(train_images, val_images, voters, soft, hooks.on_epoch);
  save_model((dir / "model.json").string(), ModelFile{summary.training.params, soft, cfg.voters});
  write_text(dir / "loss.csv", loss_curve_csv(summary.training));
  const MappingPtr learned = std::make_shared<LearnedMapping>(summary.training.params);

  say("rendering " + std::to_string(cfg.showcase_count) + " showcase images");
  fs::create_directories(dir / "showcase");
  for (std::size_t k = 0; k < cfg.showcase_count; ++k) {
    const auto& image = val_images[k];
    const std::string label = image_label(cfg.validation.first + k);
    write_ppm((dir / "showcase" / (label + "_original.ppm")).string(), image);
    for (const auto& method : summary.methods) {
      const auto h = method_mapping(method, voters, learned, image);
      for (MorphOp op : {MorphOp::kOpen, MorphOp::kClose}) {
        const auto out = checked_apply(op, image, *h, se);
        write_ppm((dir / "showcase" / (label + "_" + method + "_" + to_string(op) + ".ppm")).string(),
                  out);
      }
    }
  }

  say("ranking the probe palette");
  fs::create_directories(dir / "ramps");
  {
    std::vector<ColorValue> colors;
    for (const auto& [name, c] : probe_palette()) colors.push_back(c);
    std::string csv = "method,position,color,r,g,b\n";
    for (const auto& method : summary.methods) {
      const auto h = method == "learned" ? learned : mapping_for_values(method, voters, colors);
      const auto ranked = rank_colors(*h, colors);
      write_ppm((dir / "ramps" / (method + ".ppm")).string(), ramp_strip(ranked));
      for (std::size_t pos = 0; pos < ranked.size(); ++pos) {
        const auto it = std::find_if(probe_palette().begin(), probe_palette().end(),
                                     [&](const auto& p) { return p.second == ranked[pos]; });
        const auto rgb = ramp_strip(std::span(&ranked[pos], 1)).to_rgb8();
        csv += method + "," + std::to_string(pos) + "," + it->first + "," + std::to_string(rgb[0]) +
               "," + std::to_string(rgb[1]) + "," + std::to_string(rgb[2]) + "\n";
      }
    }
    write_text(dir / "ramps.csv", csv);
  }

  if (cfg.eval_count > 0) {
    say("scoring irregularity on " + std::to_string(cfg.eval_count) + " images");
    const IrregularityOptions opts{cfg.color_cap, cfg.quantization_levels};
    struct ImageScores {
      std::vector<double> phi;
      bool quantized = false;
    };
    const auto scored = parallel_map<ImageScores>(cfg.eval_count, [&](std::size_t k) {
      ImageScores s;
      const auto& image = val_images[k];
      for (const auto& method : summary.methods) {
        const auto h = method_mapping(method, voters, learned, image);
        const auto out = checked_apply(cfg.operation, image, *h, se);
        const auto r = global_irregularity(image, out, opts);
        s.phi.push_back(r.phi);
        s.quantized = s.quantized || r.quantized;
      }
      return s;
    });
    IrregularityTable table;
    for (std::size_t k = 0; k < scored.size(); ++k) {
      summary.quantized = summary.quantized || scored[k].quantized;
      for (std::size_t m = 0; m < summary.methods.size(); ++m) {
        table.rows.push_back({image_label(cfg.validation.first + k), summary.methods[m], scored[k].phi[m]});
      }
    }
    write_text(dir / "irregularity.csv", table.to_csv());
    const auto cmp = compare_methods(table, cfg.alpha);
    write_text(dir / "wilcoxon.csv", cmp.tests_csv);
    write_text(dir / "hasse.dot", cmp.hasse_dot);
    write_text(dir / "quantiles.csv", cmp.quantiles_csv);
    summary.hasse_dot = cmp.hasse_dot;
    for (const auto& m : summary.methods) summary.median_phi.push_back(summarize(table.values(m)).median);
  }

  stage.commit();
  say("artifacts written to " + summary.output_dir);
  return summary;
}

}  // namespace condmorph
