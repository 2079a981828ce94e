#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "condmorph/color.hpp"
#include "condmorph/config.hpp"
#include "condmorph/mlp.hpp"
#include "condmorph/ordering.hpp"

namespace condmorph {

/// Closed-form mappings by name: lex-rgb, lex-gbr, lex-brg, custom:w0,w1,w2,
/// or learned:PATH (a saved model file).
MappingPtr mapping_by_name(const std::string& name);

MappingFamily mapping_family(const std::vector<std::string>& names);

/// Like mapping_by_name, plus "borda": Borda scores of `values` under `voters`.
MappingPtr mapping_for_values(const std::string& name, const MappingFamily& voters,
                              std::span<const ColorValue> values);

/// Distinct colors sorted ascending under h (LUT tie-break).
std::vector<ColorValue> rank_colors(const ReducedMapping& h, std::vector<ColorValue> colors);
std::vector<ColorValue> rank_colors(const std::string& method, std::vector<ColorValue> colors,
                                    const MappingFamily& voters = lexicographic_family());

/// The 16 basic named colors used as ramp probes.
const std::vector<std::pair<std::string, ColorValue>>& probe_palette();

/// 1 x k strip, left to right.
ColorImage ramp_strip(std::span<const ColorValue> colors);

/// Methods compared by the experiment, in output order.
const std::vector<std::string>& experiment_methods();

struct ExperimentHooks {
  ProgressCallback on_epoch;
  std::function<void(const std::string&)> on_message;
};

struct ExperimentSummary {
  std::string output_dir;
  TrainResult training;
  std::vector<std::string> methods;
  std::vector<double> median_phi;  // parallel to methods; empty when nothing was scored
  std::string hasse_dot;
  bool quantized = false;  // some irregularity value needed color quantization
};

/// Trains the learned mapping on the training range and writes into
/// cfg.output_dir (which must not exist or be empty):
///   config.toml, model.json, loss.csv,
///   showcase/<image>_<method>_{open,close}.ppm (+ _original.ppm),
///   irregularity.csv, wilcoxon.csv, hasse.dot, quantiles.csv,
///   ramps/<method>.ppm, ramps.csv.
/// Work happens in a sibling staging directory that is renamed on success
/// and removed on failure.
ExperimentSummary run_experiment(const ExperimentConfig& cfg, const ExperimentHooks& hooks = {});

}  // namespace condmorph
