#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "condmorph/vote.hpp"

namespace condmorph {

/// Relaxation and optimizer settings. Optimizer defaults are the usual Adam
/// constants (step 1e-3, decays 0.9/0.999, epsilon 1e-7).
struct SoftConfig {
  double tau = 1.0;
  int epochs = 100;
  std::size_t batch_size = 1024;
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-7;
  std::uint64_t seed = 0;

  /// Throws kConfig on tau <= 0, batch_size < 2, epochs < 0 or bad Adam constants.
  void validate() const;
};

/// 1 / (1 + exp(x / tau)): a decreasing smooth step, ~[x <= 0] for small tau.
double soft_step(double x, double tau);

/// d soft_step / dx = -soft_step(x) (1 - soft_step(x)) / tau.
double soft_step_derivative(double x, double tau);

/// Adam state over a flat parameter vector.
class AdamOptimizer {
 public:
  AdamOptimizer(std::size_t size, const SoftConfig& config);
  void step(std::span<double> params, std::span<const double> gradient);
  long long iterations() const noexcept { return t_; }

 private:
  double lr_, beta1_, beta2_, epsilon_;
  std::vector<double> m_, v_;
  long long t_ = 0;
  double beta1_power_ = 1.0;
  double beta2_power_ = 1.0;
};

/// L(s) = sum_ij delta_ij * soft_step(s_j - s_i, tau).
double soft_condorcet_loss(const MarginMatrix& delta, std::span<const double> scores, double tau);
std::vector<double> soft_condorcet_gradient(const MarginMatrix& delta, std::span<const double> scores,
                                            double tau);

struct ScoResult {
  std::vector<double> scores;
  Permutation order;  // ascending score, ties by index
  double loss = 0.0;
  std::vector<double> loss_curve;  // loss before each step
};

/// Full-gradient Adam on the soft loss for cfg.epochs steps, starting from
/// all-zero scores. Throws kNumeric (with the epoch) on a non-finite loss.
ScoResult sco_scores(const MarginMatrix& delta, const SoftConfig& cfg);

}  // namespace condmorph
