#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "condmorph/morphology.hpp"
#include "condmorph/soft.hpp"

namespace condmorph {

/// Half-open record range [first, first + count) of a CIFAR batch file.
struct ImageRange {
  std::size_t first = 0;
  std::size_t count = 0;

  std::size_t end() const noexcept { return first + count; }
  bool overlaps(const ImageRange& other) const noexcept {
    return count > 0 && other.count > 0 && first < other.end() && other.first < end();
  }
};

struct ExperimentConfig {
  std::string dataset;  // CIFAR-10 binary batch, e.g. data_batch_1.bin
  ImageRange train{0, 100};
  ImageRange validation{100, 100};
  std::vector<std::string> voters{"lex-rgb", "lex-gbr", "lex-brg"};
  SoftConfig soft;
  std::string structuring_element = "square:3";
  MorphOp operation = MorphOp::kOpen;  // operator scored by the irregularity table
  std::string output_dir = "condmorph-out";
  std::uint64_t seed = 0;
  std::size_t showcase_count = 4;  // leading validation images rendered per method
  std::size_t eval_count = 100;    // leading validation images scored for irregularity
  double alpha = 0.01;
  std::size_t color_cap = 4096;
  int quantization_levels = 16;

  /// Local invariants only (dataset size is checked when it is opened).
  void validate() const;
};

/// TOML text, sections [data], [ordering], [training], [morphology],
/// [evaluation], [output]. Missing keys keep their defaults; unknown keys and
/// ill-typed values are config errors.
ExperimentConfig parse_experiment_config(const std::string& text,
                                         const ExperimentConfig& base = {});
ExperimentConfig load_experiment_config(const std::string& path);

/// Applies "section.key=value" overrides on top of `cfg`. Values use TOML
/// syntax; a bare word that is not valid TOML is taken as a string.
ExperimentConfig apply_overrides(const ExperimentConfig& cfg,
                                 const std::vector<std::string>& overrides);

/// Round-trippable TOML rendering.
std::string experiment_config_to_toml(const ExperimentConfig& cfg);

}  // namespace condmorph
