#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "condmorph/color.hpp"

namespace condmorph {

/// Multiset of colors: distinct colors (lexicographic) with multiplicities.
struct ColorHistogram {
  std::vector<ColorValue> colors;
  std::vector<std::int64_t> counts;

  std::int64_t total() const;
};

ColorHistogram color_histogram(const ColorImage& image);

/// Exact minimum cost of moving histogram `from` onto `to` under the L1
/// ground metric. Totals must match.
double transport_cost_l1(const ColorHistogram& from, const ColorHistogram& to);

/// Maps every channel to the center of one of `levels` uniform bins.
ColorImage quantize_uniform(const ColorImage& image, int levels);

struct IrregularityOptions {
  /// Histograms with more distinct colors than this are quantized first.
  std::size_t color_cap = 4096;
  /// Bins per channel used when quantizing (16^3 = 4096 bins).
  int quantization_levels = 16;
};

struct IrregularityResult {
  double phi = 0.0;              // (D - W) / D, 0 when D = 0
  double pixel_distance = 0.0;   // D = sum_p |I(p) - J(p)|_1
  double transport_cost = 0.0;   // W
  bool quantized = false;
};

/// Global irregularity index of J against I.
IrregularityResult global_irregularity(const ColorImage& I, const ColorImage& J,
                                       const IrregularityOptions& options = {});

enum class Direction { kNone, kAGreater, kBGreater };
std::string to_string(Direction d);

struct PairwiseTestResult {
  std::string method_a;
  std::string method_b;
  double statistic = 0.0;  // W+, rank sum of positive differences a - b
  double w_minus = 0.0;
  std::size_t effective_n = 0;  // pairs left after dropping zero differences
  bool exact = true;            // exact null distribution (n <= 25) or normal approximation
  double p_value = 1.0;
  Direction direction = Direction::kNone;
  bool significant = false;
};

/// Two-sided Wilcoxon signed-rank test on paired samples (n >= 10).
PairwiseTestResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                        double alpha, std::string name_a = "a",
                                        std::string name_b = "b");

/// DOT text of the transitively reduced "significantly lower" relation; an edge
/// u -> v means u has significantly lower values than v, so the best methods
/// sit at the top. Cycles are emitted unreduced with a warning.
std::string hasse_from_tests(std::span<const std::string> methods,
                             std::span<const PairwiseTestResult> results);

/// Rows of `image,method,phi`.
struct IrregularityTable {
  struct Row {
    std::string image;
    std::string method;
    double phi = 0.0;
  };
  std::vector<Row> rows;

  std::vector<std::string> methods() const;  // first-appearance order
  /// Values of `method`, ordered by first appearance of each image.
  std::vector<double> values(const std::string& method) const;

  std::string to_csv() const;
  static IrregularityTable from_csv(const std::string& text);
};

struct Summary {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

/// Quartiles by linear interpolation between order statistics.
Summary summarize(std::vector<double> values);

struct Comparison {
  std::vector<PairwiseTestResult> tests;
  std::string tests_csv;
  std::string hasse_dot;
  std::string quantiles_csv;  // method,min,q1,median,q3,max
};

/// All pairwise tests across the methods of a table.
Comparison compare_methods(const IrregularityTable& table, double alpha);

}  // namespace condmorph
