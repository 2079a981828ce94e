#include "condmorph/vote.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "condmorph/error.hpp"

namespace condmorph {
namespace {

void check_permutation(std::span<const std::size_t> perm, std::size_t n) {
  if (perm.size() != n) {
    fail(ErrorCode::kInvalidOrder,
         "order lists " + std::to_string(perm.size()) + " candidates, expected " + std::to_string(n));
  }
  std::vector<bool> seen(n, false);
  for (std::size_t c : perm) {
    if (c >= n || seen[c]) {
      fail(ErrorCode::kInvalidOrder, "order is not a permutation of 0.." + std::to_string(n - 1));
    }
    seen[c] = true;
  }
}

std::string pair_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

// Exhaustive DFS in lexicographic permutation order with incremental cost.
struct PermutationSearch {
  const MarginMatrix& delta;
  std::size_t n;
  double tolerance;
  Permutation current;
  std::vector<bool> used;
  Permutation best;
  double best_cost = 0.0;
  bool have_best = false;

  void run(std::size_t depth, double cost) {
    if (depth == n) {
      if (!have_best || cost < best_cost - tolerance) {
        best = current;
        best_cost = cost;
        have_best = true;
      }
      return;
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c]) continue;
      // Placing c above every already placed candidate p adds delta(c, p).
      double added = 0.0;
      for (std::size_t a = 0; a < depth; ++a) added += delta(c, current[a]);
      used[c] = true;
      current[depth] = c;
      run(depth + 1, cost + added);
      used[c] = false;
    }
  }
};

}  // namespace

TotalOrderMatrix::TotalOrderMatrix(std::size_t n, std::vector<std::uint8_t> entries)
    : n_(n), r_(std::move(entries)) {
  if (r_.size() != n_ * n_) fail(ErrorCode::kDimension, "relation matrix must be n x n");
  for (auto v : r_) {
    if (v > 1) fail(ErrorCode::kDomain, "relation matrix entries must be 0 or 1");
  }
}

TotalOrderMatrix TotalOrderMatrix::from_permutation(std::span<const std::size_t> least_to_greatest) {
  const std::size_t n = least_to_greatest.size();
  check_permutation(least_to_greatest, n);
  std::vector<std::size_t> position(n);
  for (std::size_t p = 0; p < n; ++p) position[least_to_greatest[p]] = p;
  std::vector<std::uint8_t> r(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) r[i * n + j] = position[i] <= position[j] ? 1 : 0;
  }
  return TotalOrderMatrix(n, std::move(r));
}

Permutation TotalOrderMatrix::permutation() const {
  if (auto check = validate_total_order_matrix(*this); !check) {
    fail(ErrorCode::kInvalidOrder, check.violation);
  }
  // In a total order, the number of j with r[j][i] = 1 is (position of i) + 1.
  Permutation out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    std::size_t below = 0;
    for (std::size_t j = 0; j < n_; ++j) below += (*this)(j, i);
    out[below - 1] = i;
  }
  return out;
}

OrderValidation validate_total_order_matrix(const TotalOrderMatrix& r) {
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (r(i, i) != 1) return {false, "reflexivity violated: r" + pair_name(i, i) + " = 0"};
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (r(i, j) + r(j, i) != 1) {
        return {false, "antisymmetry/connectedness violated: r" + pair_name(i, j) + " + r" +
                           pair_name(j, i) + " = " + std::to_string(r(i, j) + r(j, i))};
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (r(i, j) + r(j, k) - r(i, k) > 1) {
          return {false, "transitivity violated for (" + std::to_string(i) + "," +
                             std::to_string(j) + "," + std::to_string(k) + ")"};
        }
      }
    }
  }
  return {};
}

MarginMatrix::MarginMatrix(std::size_t n, std::vector<double> values)
    : n_(n), delta_(std::move(values)) {
  if (delta_.size() != n_ * n_) fail(ErrorCode::kDimension, "margin matrix must be n x n");
  for (std::size_t i = 0; i < n_; ++i) {
    if (delta_[i * n_ + i] != 0.0) fail(ErrorCode::kDomain, "margin matrix diagonal must be 0");
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double a = delta_[i * n_ + j];
      const double b = delta_[j * n_ + i];
      if (!std::isfinite(a) || !std::isfinite(b) || std::abs(a) > 1.0 + 1e-12 ||
          std::abs(a + b) > 1e-12) {
        fail(ErrorCode::kDomain, "margin matrix is not antisymmetric in [-1,1] at " + pair_name(i, j));
      }
    }
  }
}

MarginMatrix margin_matrix_from_orders(std::span<const TotalOrderMatrix> orders) {
  if (orders.empty()) fail(ErrorCode::kConfig, "need at least one voter");
  const std::size_t n = orders.front().size();
  std::vector<int> votes(n * n, 0);
  for (const auto& r : orders) {
    if (r.size() != n) fail(ErrorCode::kDimension, "voter orders differ in candidate count");
    if (auto check = validate_total_order_matrix(r); !check) {
      fail(ErrorCode::kInvalidOrder, check.violation);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) votes[i * n + j] += r(i, j) - r(j, i);
    }
  }
  const double m = static_cast<double>(orders.size());
  std::vector<double> delta(n * n);
  for (std::size_t k = 0; k < n * n; ++k) delta[k] = votes[k] / m;
  return MarginMatrix(n, std::move(delta));
}

MarginMatrix margin_matrix_from_mappings(const MappingFamily& mappings,
                                         std::span<const ColorValue> values) {
  if (mappings.empty()) fail(ErrorCode::kConfig, "need at least one mapping");
  const std::size_t n = values.size();
  std::vector<int> votes(n * n, 0);
  std::vector<double> scores(n);
  for (const auto& h : mappings) {
    for (std::size_t i = 0; i < n; ++i) scores[i] = (*h)(values[i]);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        votes[i * n + j] += (scores[i] <= scores[j]) - (scores[j] <= scores[i]);
      }
    }
  }
  const double m = static_cast<double>(mappings.size());
  std::vector<double> delta(n * n);
  for (std::size_t k = 0; k < n * n; ++k) delta[k] = votes[k] / m;
  return MarginMatrix(n, std::move(delta));
}

double kemeny_objective(const MarginMatrix& delta, const TotalOrderMatrix& r) {
  if (delta.size() != r.size()) fail(ErrorCode::kDimension, "margin and order sizes differ");
  if (auto check = validate_total_order_matrix(r); !check) {
    fail(ErrorCode::kInvalidOrder, check.violation);
  }
  double total = 0.0;
  for (std::size_t i = 0; i < delta.size(); ++i) {
    for (std::size_t j = 0; j < delta.size(); ++j) {
      if (i != j) total += delta(i, j) * r(j, i);
    }
  }
  return total;
}

double kemeny_objective(const MarginMatrix& delta, std::span<const std::size_t> least_to_greatest) {
  check_permutation(least_to_greatest, delta.size());
  double total = 0.0;
  for (std::size_t b = 0; b < least_to_greatest.size(); ++b) {
    for (std::size_t a = 0; a < b; ++a) total += delta(least_to_greatest[b], least_to_greatest[a]);
  }
  return total;
}

ExactConsensus exact_condorcet_order(const MarginMatrix& delta, std::size_t max_candidates) {
  const std::size_t n = delta.size();
  if (n > max_candidates) {
    fail(ErrorCode::kSize, std::to_string(n) + " candidates exceed the exact-solver cap of " +
                               std::to_string(max_candidates) +
                               "; use the soft Condorcet optimizer instead");
  }
  double scale = 1.0;
  for (double v : delta.values()) scale += std::abs(v);
  PermutationSearch search{delta, n, 1e-12 * scale, Permutation(n), std::vector<bool>(n, false),
                           {}, 0.0, false};
  search.run(0, 0.0);
  ExactConsensus out{search.best, TotalOrderMatrix::from_permutation(search.best), search.best_cost};
  return out;
}

std::vector<double> borda_scores(std::span<const TotalOrderMatrix> orders) {
  if (orders.empty()) fail(ErrorCode::kConfig, "need at least one voter");
  const std::size_t n = orders.front().size();
  if (n < 2) fail(ErrorCode::kConfig, "Borda scores need at least two candidates");
  std::vector<int> wins(n, 0);
  for (const auto& r : orders) {
    if (r.size() != n) fail(ErrorCode::kDimension, "voter orders differ in candidate count");
    if (auto check = validate_total_order_matrix(r); !check) {
      fail(ErrorCode::kInvalidOrder, check.violation);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) wins[i] += r(j, i);
      }
    }
  }
  const double denom = static_cast<double>(orders.size()) * static_cast<double>(n - 1);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = wins[i] / denom;
  return out;
}

std::vector<double> borda_scores_from_mappings(const MappingFamily& mappings,
                                               std::span<const ColorValue> values) {
  if (mappings.empty()) fail(ErrorCode::kConfig, "need at least one mapping");
  const std::size_t n = values.size();
  if (n < 2) fail(ErrorCode::kConfig, "Borda scores need at least two candidates");
  std::vector<long long> wins(n, 0);
  std::vector<double> scores(n);
  std::vector<double> sorted(n);
  for (const auto& h : mappings) {
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = (*h)(values[i]);
      if (std::isnan(scores[i])) fail(ErrorCode::kNumeric, h->name() + " produced NaN");
    }
    sorted = scores;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n; ++i) {
      // Values with score <= scores[i], minus the value itself.
      const auto not_above = std::upper_bound(sorted.begin(), sorted.end(), scores[i]) - sorted.begin();
      wins[i] += not_above - 1;
    }
  }
  const double denom = static_cast<double>(mappings.size()) * static_cast<double>(n - 1);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<double>(wins[i]) / denom;
  return out;
}

std::shared_ptr<const TableMapping> borda_mapping(const MappingFamily& mappings,
                                                  std::span<const ColorValue> values) {
  auto scores = borda_scores_from_mappings(mappings, values);
  return std::make_shared<TableMapping>("borda",
                                        std::vector<ColorValue>(values.begin(), values.end()),
                                        std::move(scores));
}

Permutation order_from_scores(std::span<const double> scores) {
  Permutation out(scores.size());
  std::iota(out.begin(), out.end(), std::size_t{0});
  std::stable_sort(out.begin(), out.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  return out;
}

std::vector<TotalOrderMatrix> VoteProfile::orders() const {
  std::vector<TotalOrderMatrix> out;
  out.reserve(voters.size());
  for (const auto& v : voters) out.push_back(TotalOrderMatrix::from_permutation(v));
  return out;
}

VoteProfile parse_vote_profile(const std::string& text) {
  VoteProfile profile;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    Permutation voter;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t\r");
      const auto e = cell.find_last_not_of(" \t\r");
      const std::string token = b == std::string::npos ? "" : cell.substr(b, e - b + 1);
      if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
        fail(ErrorCode::kFormat, "bad candidate index '" + token + "' on profile line " +
                                     std::to_string(line_no));
      }
      voter.push_back(static_cast<std::size_t>(std::stoull(token)));
    }
    if (profile.voters.empty()) profile.candidates = voter.size();
    if (voter.size() != profile.candidates) {
      fail(ErrorCode::kDimension, "profile line " + std::to_string(line_no) + " ranks " +
                                      std::to_string(voter.size()) + " candidates, expected " +
                                      std::to_string(profile.candidates));
    }
    try {
      check_permutation(voter, profile.candidates);
    } catch (const Error& e) {
      fail(e.code(), "profile line " + std::to_string(line_no) + ": " + e.what());
    }
    profile.voters.push_back(std::move(voter));
  }
  if (profile.voters.empty()) fail(ErrorCode::kFormat, "profile has no voters");
  return profile;
}

VoteProfile read_vote_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kFormat, "cannot open profile '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_vote_profile(buf.str());
}

}  // namespace condmorph
