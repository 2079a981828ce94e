#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "condmorph/color.hpp"
#include "condmorph/ordering.hpp"
#include "condmorph/soft.hpp"

namespace condmorph {

/// Weights of the 3-64-1 score regressor: ReLU hidden layer, linear output
/// without bias. Stored flat as [W1 (64x3 row-major) | b1 (64) | W2 (64)].
struct MlpParams {
  static constexpr std::size_t kInputs = 3;
  static constexpr std::size_t kHidden = 64;
  static constexpr std::size_t kW1Size = kHidden * kInputs;
  static constexpr std::size_t kSize = kW1Size + 2 * kHidden;

  std::array<double, kSize> values{};

  std::span<double> w1() { return std::span(values).subspan(0, kW1Size); }
  std::span<double> b1() { return std::span(values).subspan(kW1Size, kHidden); }
  std::span<double> w2() { return std::span(values).subspan(kW1Size + kHidden, kHidden); }
  std::span<const double> w1() const { return std::span(values).subspan(0, kW1Size); }
  std::span<const double> b1() const { return std::span(values).subspan(kW1Size, kHidden); }
  std::span<const double> w2() const { return std::span(values).subspan(kW1Size + kHidden, kHidden); }

  /// Uniform(-l, l) with l = sqrt(6 / (fan_in + fan_out)) per layer, zero bias.
  static MlpParams glorot_uniform(std::uint64_t seed);

  bool all_finite() const;
  friend bool operator==(const MlpParams&, const MlpParams&) = default;
};

/// W2 . relu(W1 x + b1).
double mlp_forward(const MlpParams& params, std::span<const double> x);
inline double mlp_forward(const MlpParams& params, const ColorValue& x) {
  return mlp_forward(params, x.channels());
}

class LearnedMapping final : public ReducedMapping {
 public:
  explicit LearnedMapping(MlpParams params) : params_(std::move(params)) {}
  double score(std::span<const double> x) const override { return mlp_forward(params_, x); }
  std::string name() const override { return "learned"; }
  const MlpParams& params() const noexcept { return params_; }

 private:
  MlpParams params_;
};

/// Sum over all ordered pairs (i,j) of the batch of
/// delta_ij * soft_step(h(x_j) - h(x_i), tau), delta_ij taken from `mappings`.
double batch_soft_loss(const MlpParams& params, std::span<const ColorValue> batch,
                       const MappingFamily& mappings, double tau);

/// Analytic gradient of batch_soft_loss (ReLU subgradient 0 at 0).
MlpParams loss_gradient(const MlpParams& params, std::span<const ColorValue> batch,
                        const MappingFamily& mappings, double tau);

struct TrainProgress {
  int epoch = 0;  // 1-based
  double train_loss = 0.0;
  double val_loss = 0.0;  // NaN without validation data
};

using ProgressCallback = std::function<void(const TrainProgress&)>;

struct TrainResult {
  MlpParams params;
  std::vector<double> train_loss;  // mean per-pair loss, one entry per epoch
  std::vector<double> val_loss;    // empty when no validation images
};

/// Pools every pixel of `train_set` (with multiplicity), shuffles each epoch,
/// and takes one Adam step per batch on the mean per-pair soft loss.
/// Validation loss uses the unshuffled validation pool in batch_size chunks.
TrainResult train(const std::vector<ColorImage>& train_set, const std::vector<ColorImage>& val_set,
                  const MappingFamily& mappings, const SoftConfig& cfg,
                  const ProgressCallback& progress = {});

/// `epoch,train_loss,val_loss`; val column empty when absent.
std::string loss_curve_csv(const TrainResult& result);

struct ModelFile {
  MlpParams params;
  SoftConfig config;
  std::vector<std::string> mappings;  // names of the voting family
};

std::string model_to_json(const ModelFile& model);
ModelFile model_from_json(const std::string& text);
void save_model(const std::string& path, const ModelFile& model);
ModelFile load_model(const std::string& path);

}  // namespace condmorph
