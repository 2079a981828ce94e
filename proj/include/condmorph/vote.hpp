#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "condmorph/color.hpp"
#include "condmorph/ordering.hpp"

namespace condmorph {

/// Candidate indices listed least to greatest.
using Permutation = std::vector<std::size_t>;

/// 0/1 relation matrix r[i][j] = [x_i <= x_j]. Entries are only checked for
/// being 0 or 1; use validate_total_order_matrix() for the order axioms.
class TotalOrderMatrix {
 public:
  TotalOrderMatrix(std::size_t n, std::vector<std::uint8_t> entries);

  static TotalOrderMatrix from_permutation(std::span<const std::size_t> least_to_greatest);

  std::size_t size() const noexcept { return n_; }
  std::uint8_t operator()(std::size_t i, std::size_t j) const { return r_[i * n_ + j]; }
  const std::vector<std::uint8_t>& entries() const noexcept { return r_; }

  /// Least-to-greatest listing; throws kInvalidOrder if this is not a total order.
  Permutation permutation() const;

  friend bool operator==(const TotalOrderMatrix&, const TotalOrderMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<std::uint8_t> r_;
};

struct OrderValidation {
  bool valid = true;
  std::string violation;  // first violated constraint, empty when valid
  explicit operator bool() const noexcept { return valid; }
};

/// Reflexive diagonal, r_ij + r_ji = 1 and r_ij + r_jk - r_ik <= 1 for distinct i,j,k.
OrderValidation validate_total_order_matrix(const TotalOrderMatrix& r);

/// Antisymmetric average vote margins; delta(i,j) > 0 when most voters rank x_i <= x_j.
class MarginMatrix {
 public:
  /// Checks antisymmetry (within 1e-12), zero diagonal and |delta| <= 1.
  MarginMatrix(std::size_t n, std::vector<double> values);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return delta_[i * n_ + j]; }
  const std::vector<double>& values() const noexcept { return delta_; }

 private:
  std::size_t n_;
  std::vector<double> delta_;
};

MarginMatrix margin_matrix_from_orders(std::span<const TotalOrderMatrix> orders);

/// Margins from the orders each mapping induces on `values`; ties contribute 0.
MarginMatrix margin_matrix_from_mappings(const MappingFamily& mappings,
                                         std::span<const ColorValue> values);

/// Total margin placed against the majority: sum_ij delta_ij * r_ji.
/// Lower is better; validates `r`.
double kemeny_objective(const MarginMatrix& delta, const TotalOrderMatrix& r);

/// Same objective for the order given as a permutation.
double kemeny_objective(const MarginMatrix& delta, std::span<const std::size_t> least_to_greatest);

struct ExactConsensus {
  Permutation permutation;
  TotalOrderMatrix order;
  double objective = 0.0;
};

inline constexpr std::size_t kDefaultExactCap = 9;

/// Exhaustive search over all n! orders. Among optimal orders the
/// lexicographically smallest permutation is returned.
ExactConsensus exact_condorcet_order(const MarginMatrix& delta,
                                     std::size_t max_candidates = kDefaultExactCap);

/// B(x_i) = 1/(m(n-1)) sum_k sum_{j != i} [x_j <=_k x_i].
std::vector<double> borda_scores(std::span<const TotalOrderMatrix> orders);

/// Borda scores of `values` under the orders the mappings induce (ties count
/// as <= in both directions).
std::vector<double> borda_scores_from_mappings(const MappingFamily& mappings,
                                               std::span<const ColorValue> values);

/// Borda scores packaged as a reduced mapping defined on `values` only.
std::shared_ptr<const TableMapping> borda_mapping(const MappingFamily& mappings,
                                                  std::span<const ColorValue> values);

/// Ascending by score, ties by candidate index.
Permutation order_from_scores(std::span<const double> scores);

/// Voters as least-to-greatest listings over candidates 0..n-1.
struct VoteProfile {
  std::size_t candidates = 0;
  std::vector<Permutation> voters;

  std::vector<TotalOrderMatrix> orders() const;
};

/// One voter per line, comma-separated 0-based indices, least to greatest.
/// Blank lines and lines starting with '#' are skipped.
VoteProfile parse_vote_profile(const std::string& text);
VoteProfile read_vote_profile(const std::string& path);

}  // namespace condmorph
