#include "condmorph/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

#include "condmorph/error.hpp"

namespace condmorph {
namespace {

using nlohmann::json;

constexpr const char* kModelFormat = "condmorph-mlp";
constexpr int kModelVersion = 1;

// Colors and their voter scores, laid out per element.
struct BatchData {
  std::size_t size = 0;
  std::size_t mappings = 0;
  std::vector<double> x;       // size * 3
  std::vector<double> scores;  // size * mappings
};

BatchData make_batch(std::span<const ColorValue> batch, const MappingFamily& mappings) {
  if (mappings.empty()) fail(ErrorCode::kConfig, "need at least one voting mapping");
  BatchData data;
  data.size = batch.size();
  data.mappings = mappings.size();
  data.x.reserve(batch.size() * MlpParams::kInputs);
  data.scores.reserve(batch.size() * mappings.size());
  for (const auto& c : batch) {
    if (c.size() != MlpParams::kInputs) {
      fail(ErrorCode::kDimension, "network input needs 3 channels, got " + std::to_string(c.size()));
    }
    data.x.insert(data.x.end(), c.channels().begin(), c.channels().end());
    for (const auto& h : mappings) data.scores.push_back((*h)(c));
  }
  return data;
}

int vote_sum(const double* a, const double* b, std::size_t m) {
  int v = 0;
  for (std::size_t k = 0; k < m; ++k) v += (a[k] < b[k]) - (b[k] < a[k]);
  return v;
}

// Raw pairwise loss over the batch. Each unordered pair {i,j} contributes
// delta_ij * (soft_step(d) - soft_step(-d)) = -delta_ij * tanh(d / 2tau), d = s_j - s_i.
// When `grad` is non-null, grad_scale * dLoss/dparams is added to it.
double loss_kernel(const MlpParams& params, const BatchData& batch, double tau, MlpParams* grad,
                   double grad_scale) {
  constexpr std::size_t H = MlpParams::kHidden;
  const std::size_t n = batch.size;
  const std::size_t m = batch.mappings;
  const auto w1 = params.w1();
  const auto b1 = params.b1();
  const auto w2 = params.w2();

  std::vector<double> hidden(n * H);
  std::vector<double> s(n);
  for (std::size_t b = 0; b < n; ++b) {
    const double* x = &batch.x[b * 3];
    double out = 0.0;
    for (std::size_t k = 0; k < H; ++k) {
      const double z = w1[k * 3] * x[0] + w1[k * 3 + 1] * x[1] + w1[k * 3 + 2] * x[2] + b1[k];
      const double a = z > 0.0 ? z : 0.0;
      hidden[b * H + k] = z;
      out += w2[k] * a;
    }
    s[b] = out;
  }

  const double inv_m = 1.0 / static_cast<double>(m);
  const double half_inv_tau = 0.5 / tau;
  double loss = 0.0;
  std::vector<double> ds(grad ? n : 0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* vi = &batch.scores[i * m];
    for (std::size_t j = i + 1; j < n; ++j) {
      const int votes = vote_sum(vi, &batch.scores[j * m], m);
      if (votes == 0) continue;
      const double delta = votes * inv_m;
      const double t = std::tanh((s[j] - s[i]) * half_inv_tau);
      loss -= delta * t;
      if (grad) {
        const double g = -delta * (1.0 - t * t) * half_inv_tau;
        ds[j] += g;
        ds[i] -= g;
      }
    }
  }

  if (grad) {
    auto gw1 = grad->w1();
    auto gb1 = grad->b1();
    auto gw2 = grad->w2();
    for (std::size_t b = 0; b < n; ++b) {
      const double gs = ds[b] * grad_scale;
      if (gs == 0.0) continue;
      const double* x = &batch.x[b * 3];
      for (std::size_t k = 0; k < H; ++k) {
        const double z = hidden[b * H + k];
        if (z <= 0.0) continue;
        gw2[k] += gs * z;
        const double dz = gs * w2[k];
        gb1[k] += dz;
        gw1[k * 3] += dz * x[0];
        gw1[k * 3 + 1] += dz * x[1];
        gw1[k * 3 + 2] += dz * x[2];
      }
    }
  }
  return loss;
}

double ordered_pairs(std::size_t n) {
  return static_cast<double>(n) * static_cast<double>(n - 1);
}

struct Pool {
  std::size_t size = 0;
  std::size_t mappings = 0;
  std::vector<double> x;
  std::vector<double> scores;
};

Pool make_pool(const std::vector<ColorImage>& images, const MappingFamily& mappings) {
  Pool pool;
  pool.mappings = mappings.size();
  for (const auto& img : images) {
    if (img.channels() != 3) fail(ErrorCode::kDimension, "training images must be RGB");
    pool.size += img.pixel_count();
  }
  pool.x.reserve(pool.size * 3);
  pool.scores.reserve(pool.size * pool.mappings);
  for (const auto& img : images) {
    for (std::size_t p = 0; p < img.pixel_count(); ++p) {
      auto px = img.pixel(p);
      pool.x.insert(pool.x.end(), px.begin(), px.end());
      for (const auto& h : mappings) pool.scores.push_back(h->score(px));
    }
  }
  return pool;
}

void gather(const Pool& pool, std::span<const std::size_t> indices, BatchData& out) {
  out.size = indices.size();
  out.mappings = pool.mappings;
  out.x.resize(indices.size() * 3);
  out.scores.resize(indices.size() * pool.mappings);
  for (std::size_t b = 0; b < indices.size(); ++b) {
    const std::size_t idx = indices[b];
    std::copy_n(&pool.x[idx * 3], 3, &out.x[b * 3]);
    std::copy_n(&pool.scores[idx * pool.mappings], pool.mappings, &out.scores[b * pool.mappings]);
  }
}

// Mean per-pair loss over consecutive batch_size chunks of the unshuffled pool.
double pool_loss(const MlpParams& params, const Pool& pool, const SoftConfig& cfg) {
  std::vector<std::size_t> order(pool.size);
  std::iota(order.begin(), order.end(), std::size_t{0});
  BatchData batch;
  double total = 0.0;
  double pairs = 0.0;
  for (std::size_t start = 0; start < pool.size; start += cfg.batch_size) {
    const std::size_t count = std::min(cfg.batch_size, pool.size - start);
    if (count < 2) continue;
    gather(pool, std::span(order).subspan(start, count), batch);
    total += loss_kernel(params, batch, cfg.tau, nullptr, 0.0);
    pairs += ordered_pairs(count);
  }
  return pairs > 0.0 ? total / pairs : std::numeric_limits<double>::quiet_NaN();
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> read_array(const json& node, const std::string& name, std::size_t rows,
                               std::size_t cols) {
  if (!node.contains(name)) fail(ErrorCode::kFormat, "model is missing weights '" + name + "'");
  const auto& w = node.at(name);
  const auto shape = w.at("shape").get<std::vector<std::size_t>>();
  if (shape != std::vector<std::size_t>{rows, cols}) {
    fail(ErrorCode::kFormat, "weights '" + name + "' have the wrong shape");
  }
  auto data = w.at("data").get<std::vector<double>>();
  if (data.size() != rows * cols) fail(ErrorCode::kFormat, "weights '" + name + "' have the wrong size");
  return data;
}

}  // namespace

MlpParams MlpParams::glorot_uniform(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MlpParams p;
  const double limit1 = std::sqrt(6.0 / static_cast<double>(kInputs + kHidden));
  const double limit2 = std::sqrt(6.0 / static_cast<double>(kHidden + 1));
  std::uniform_real_distribution<double> u1(-limit1, limit1);
  std::uniform_real_distribution<double> u2(-limit2, limit2);
  for (double& w : p.w1()) w = u1(rng);
  for (double& w : p.w2()) w = u2(rng);
  return p;
}

bool MlpParams::all_finite() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

double mlp_forward(const MlpParams& params, std::span<const double> x) {
  if (x.size() != MlpParams::kInputs) {
    fail(ErrorCode::kDimension, "network input needs 3 channels, got " + std::to_string(x.size()));
  }
  const auto w1 = params.w1();
  const auto b1 = params.b1();
  const auto w2 = params.w2();
  double out = 0.0;
  for (std::size_t k = 0; k < MlpParams::kHidden; ++k) {
    const double z = w1[k * 3] * x[0] + w1[k * 3 + 1] * x[1] + w1[k * 3 + 2] * x[2] + b1[k];
    if (z > 0.0) out += w2[k] * z;
  }
  return out;
}

double batch_soft_loss(const MlpParams& params, std::span<const ColorValue> batch,
                       const MappingFamily& mappings, double tau) {
  if (!(tau > 0.0)) fail(ErrorCode::kConfig, "tau must be > 0");
  if (batch.size() < 2) fail(ErrorCode::kConfig, "a batch needs at least two values");
  return loss_kernel(params, make_batch(batch, mappings), tau, nullptr, 0.0);
}

MlpParams loss_gradient(const MlpParams& params, std::span<const ColorValue> batch,
                        const MappingFamily& mappings, double tau) {
  if (!(tau > 0.0)) fail(ErrorCode::kConfig, "tau must be > 0");
  if (batch.size() < 2) fail(ErrorCode::kConfig, "a batch needs at least two values");
  MlpParams grad;
  loss_kernel(params, make_batch(batch, mappings), tau, &grad, 1.0);
  return grad;
}

TrainResult train(const std::vector<ColorImage>& train_set, const std::vector<ColorImage>& val_set,
                  const MappingFamily& mappings, const SoftConfig& cfg,
                  const ProgressCallback& progress) {
  cfg.validate();
  if (train_set.empty()) fail(ErrorCode::kConfig, "training set is empty");
  if (mappings.empty()) fail(ErrorCode::kConfig, "need at least one voting mapping");
  const Pool pool = make_pool(train_set, mappings);
  const Pool val_pool = make_pool(val_set, mappings);
  if (pool.size < 2) fail(ErrorCode::kConfig, "training pool needs at least two colors");

  std::mt19937_64 rng(cfg.seed);
  TrainResult result;
  result.params = MlpParams::glorot_uniform(rng());
  AdamOptimizer adam(MlpParams::kSize, cfg);

  std::vector<std::size_t> order(pool.size);
  std::iota(order.begin(), order.end(), std::size_t{0});
  BatchData batch;
  MlpParams grad;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double total = 0.0;
    double pairs = 0.0;
    std::size_t batch_index = 0;
    for (std::size_t start = 0; start < pool.size; start += cfg.batch_size, ++batch_index) {
      const std::size_t count = std::min(cfg.batch_size, pool.size - start);
      if (count < 2) continue;
      gather(pool, std::span(order).subspan(start, count), batch);
      grad.values.fill(0.0);
      const double n_pairs = ordered_pairs(count);
      const double loss = loss_kernel(result.params, batch, cfg.tau, &grad, 1.0 / n_pairs);
      if (!std::isfinite(loss) || !grad.all_finite()) {
        fail(ErrorCode::kNumeric, "non-finite loss at epoch " + std::to_string(epoch) + ", batch " +
                                      std::to_string(batch_index));
      }
      total += loss;
      pairs += n_pairs;
      adam.step(result.params.values, grad.values);
    }
    result.train_loss.push_back(total / pairs);
    double val = std::numeric_limits<double>::quiet_NaN();
    if (val_pool.size >= 2) {
      val = pool_loss(result.params, val_pool, cfg);
      if (!std::isfinite(val)) {
        fail(ErrorCode::kNumeric, "non-finite validation loss at epoch " + std::to_string(epoch));
      }
      result.val_loss.push_back(val);
    }
    if (progress) progress({epoch, result.train_loss.back(), val});
  }
  if (!result.params.all_finite()) fail(ErrorCode::kNumeric, "trained weights are not finite");
  return result;
}

std::string loss_curve_csv(const TrainResult& result) {
  std::string out = "epoch,train_loss,val_loss\n";
  for (std::size_t e = 0; e < result.train_loss.size(); ++e) {
    out += std::to_string(e + 1) + "," + format_double(result.train_loss[e]) + ",";
    if (e < result.val_loss.size()) out += format_double(result.val_loss[e]);
    out += "\n";
  }
  return out;
}

std::string model_to_json(const ModelFile& model) {
  const auto w1 = model.params.w1();
  const auto b1 = model.params.b1();
  const auto w2 = model.params.w2();
  json j;
  j["format"] = kModelFormat;
  j["version"] = kModelVersion;
  j["architecture"] = {{"inputs", MlpParams::kInputs},
                       {"hidden", MlpParams::kHidden},
                       {"outputs", 1},
                       {"hidden_activation", "relu"},
                       {"output_activation", "identity"},
                       {"output_bias", false}};
  j["weights"] = {
      {"W1", {{"shape", {MlpParams::kHidden, MlpParams::kInputs}},
              {"data", std::vector<double>(w1.begin(), w1.end())}}},
      {"b1", {{"shape", {MlpParams::kHidden, 1}}, {"data", std::vector<double>(b1.begin(), b1.end())}}},
      {"W2", {{"shape", {1, MlpParams::kHidden}}, {"data", std::vector<double>(w2.begin(), w2.end())}}},
  };
  const auto& c = model.config;
  j["config"] = {{"tau", c.tau},
                 {"epochs", c.epochs},
                 {"batch_size", c.batch_size},
                 {"learning_rate", c.learning_rate},
                 {"beta1", c.beta1},
                 {"beta2", c.beta2},
                 {"epsilon", c.epsilon}};
  j["seed"] = c.seed;
  j["mappings"] = model.mappings;
  return j.dump(2) + "\n";
}

ModelFile model_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (j.value("format", std::string()) != kModelFormat) {
      fail(ErrorCode::kFormat, "not a condmorph model file");
    }
    if (j.at("version").get<int>() != kModelVersion) {
      fail(ErrorCode::kFormat, "unsupported model version " + j.at("version").dump());
    }
    const auto& arch = j.at("architecture");
    if (arch.at("inputs").get<std::size_t>() != MlpParams::kInputs ||
        arch.at("hidden").get<std::size_t>() != MlpParams::kHidden ||
        arch.at("outputs").get<int>() != 1 || arch.at("output_bias").get<bool>()) {
      fail(ErrorCode::kFormat, "model architecture is not 3-64-1 without output bias");
    }
    ModelFile model;
    const auto& w = j.at("weights");
    const auto w1 = read_array(w, "W1", MlpParams::kHidden, MlpParams::kInputs);
    const auto b1 = read_array(w, "b1", MlpParams::kHidden, 1);
    const auto w2 = read_array(w, "W2", 1, MlpParams::kHidden);
    std::copy(w1.begin(), w1.end(), model.params.w1().begin());
    std::copy(b1.begin(), b1.end(), model.params.b1().begin());
    std::copy(w2.begin(), w2.end(), model.params.w2().begin());
    if (!model.params.all_finite()) fail(ErrorCode::kFormat, "model weights are not finite");
    const auto& c = j.at("config");
    model.config.tau = c.at("tau").get<double>();
    model.config.epochs = c.at("epochs").get<int>();
    model.config.batch_size = c.at("batch_size").get<std::size_t>();
    model.config.learning_rate = c.at("learning_rate").get<double>();
    model.config.beta1 = c.at("beta1").get<double>();
    model.config.beta2 = c.at("beta2").get<double>();
    model.config.epsilon = c.at("epsilon").get<double>();
    model.config.seed = j.at("seed").get<std::uint64_t>();
    model.mappings = j.value("mappings", std::vector<std::string>{});
    return model;
  } catch (const json::exception& e) {
    fail(ErrorCode::kFormat, std::string("malformed model JSON: ") + e.what());
  }
}

void save_model(const std::string& path, const ModelFile& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kFormat, "cannot write model '" + path + "'");
  out << model_to_json(model);
  if (!out) fail(ErrorCode::kFormat, "failed writing model '" + path + "'");
}

ModelFile load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kFormat, "cannot open model '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace condmorph
