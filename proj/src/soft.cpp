#include "condmorph/soft.hpp"

#include <cmath>
#include <string>

#include "condmorph/error.hpp"

namespace condmorph {

void SoftConfig::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) fail(ErrorCode::kConfig, "tau must be > 0");
  if (epochs < 0) fail(ErrorCode::kConfig, "epochs must be >= 0");
  if (batch_size < 2) fail(ErrorCode::kConfig, "batch size must be >= 2");
  if (!(learning_rate > 0.0)) fail(ErrorCode::kConfig, "learning rate must be > 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    fail(ErrorCode::kConfig, "moment decays must lie in [0,1)");
  }
  if (!(epsilon > 0.0)) fail(ErrorCode::kConfig, "epsilon must be > 0");
}

double soft_step(double x, double tau) {
  const double z = x / tau;
  if (z >= 0.0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

double soft_step_derivative(double x, double tau) {
  const double s = soft_step(x, tau);
  return -s * (1.0 - s) / tau;
}

AdamOptimizer::AdamOptimizer(std::size_t size, const SoftConfig& config)
    : lr_(config.learning_rate),
      beta1_(config.beta1),
      beta2_(config.beta2),
      epsilon_(config.epsilon),
      m_(size, 0.0),
      v_(size, 0.0) {}

void AdamOptimizer::step(std::span<double> params, std::span<const double> gradient) {
  if (params.size() != m_.size() || gradient.size() != m_.size()) {
    fail(ErrorCode::kDimension, "optimizer state and parameter sizes differ");
  }
  ++t_;
  beta1_power_ *= beta1_;
  beta2_power_ *= beta2_;
  const double alpha = lr_ * std::sqrt(1.0 - beta2_power_) / (1.0 - beta1_power_);
  for (std::size_t i = 0; i < params.size(); ++i) {
    m_[i] += (gradient[i] - m_[i]) * (1.0 - beta1_);
    v_[i] += (gradient[i] * gradient[i] - v_[i]) * (1.0 - beta2_);
    params[i] -= alpha * m_[i] / (std::sqrt(v_[i]) + epsilon_);
  }
}

double soft_condorcet_loss(const MarginMatrix& delta, std::span<const double> scores, double tau) {
  const std::size_t n = delta.size();
  if (scores.size() != n) fail(ErrorCode::kDimension, "one score per candidate required");
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) loss += delta(i, j) * soft_step(scores[j] - scores[i], tau);
    }
  }
  return loss;
}

std::vector<double> soft_condorcet_gradient(const MarginMatrix& delta,
                                            std::span<const double> scores, double tau) {
  const std::size_t n = delta.size();
  if (scores.size() != n) fail(ErrorCode::kDimension, "one score per candidate required");
  std::vector<double> grad(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || delta(i, j) == 0.0) continue;
      const double g = delta(i, j) * soft_step_derivative(scores[j] - scores[i], tau);
      grad[j] += g;
      grad[i] -= g;
    }
  }
  return grad;
}

ScoResult sco_scores(const MarginMatrix& delta, const SoftConfig& cfg) {
  cfg.validate();
  const std::size_t n = delta.size();
  if (n < 2) fail(ErrorCode::kConfig, "soft Condorcet optimization needs at least two candidates");
  ScoResult out;
  out.scores.assign(n, 0.0);
  AdamOptimizer adam(n, cfg);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const double loss = soft_condorcet_loss(delta, out.scores, cfg.tau);
    if (!std::isfinite(loss)) {
      fail(ErrorCode::kNumeric, "soft Condorcet loss diverged at epoch " + std::to_string(epoch + 1));
    }
    out.loss_curve.push_back(loss);
    const auto grad = soft_condorcet_gradient(delta, out.scores, cfg.tau);
    adam.step(out.scores, grad);
  }
  out.loss = soft_condorcet_loss(delta, out.scores, cfg.tau);
  if (!std::isfinite(out.loss)) {
    fail(ErrorCode::kNumeric, "soft Condorcet loss diverged at epoch " + std::to_string(cfg.epochs));
  }
  out.order = order_from_scores(out.scores);
  return out;
}

}  // namespace condmorph
