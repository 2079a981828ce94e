#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "condmorph/error.hpp"
#include "condmorph/evaluation.hpp"
#include "network_simplex/network_simplex_simple.h"

namespace condmorph {
namespace {

double l1(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) d += std::abs(a[c] - b[c]);
  return d;
}

struct Node {
  std::span<const double> color;
  std::int64_t mass;
};

// Network simplex on the dense bipartite network sources -> sinks.
double min_cost_flow(const std::vector<Node>& sources, const std::vector<Node>& sinks) {
  using Digraph = lemon::FullBipartiteDigraph;
  using Simplex = lemon::NetworkSimplexSimple<Digraph, double, double, unsigned int>;
  const std::size_t p = sources.size();
  const std::size_t q = sinks.size();
  if (p == 0 || q == 0) return 0.0;

  std::vector<double> cost(p * q);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < q; ++j) cost[i * q + j] = l1(sources[i].color, sinks[j].color);
  }
  std::vector<double> supply(p), demand(q);
  for (std::size_t i = 0; i < p; ++i) supply[i] = static_cast<double>(sources[i].mass);
  for (std::size_t j = 0; j < q; ++j) demand[j] = -static_cast<double>(sinks[j].mass);

  Digraph graph(static_cast<int>(p), static_cast<int>(q));
  Simplex solver(graph, Simplex::SimplexOptions(false), static_cast<int>(p + q),
                 static_cast<std::int64_t>(p * q), std::numeric_limits<std::uint64_t>::max());
  solver.supplyMap(supply.data(), static_cast<int>(p), demand.data(), static_cast<int>(q));
  solver.setDenseCostMatrix(cost.data(), static_cast<int>(q));
  const int status = solver.run();
  if (status != static_cast<int>(Simplex::OPTIMAL)) {
    fail(ErrorCode::kNumeric, "transport solver did not reach an optimum (status " + std::to_string(status) + ")");
  }
  return solver.totalCost();
}

}  // namespace

std::int64_t ColorHistogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

ColorHistogram color_histogram(const ColorImage& image) {
  ColorHistogram h;
  h.colors = unique_colors(image);
  h.counts.assign(h.colors.size(), 0);
  for (std::size_t p = 0; p < image.pixel_count(); ++p) {
    auto px = image.pixel(p);
    auto it = std::lower_bound(h.colors.begin(), h.colors.end(), px,
                               [](const ColorValue& c, std::span<const double> v) {
                                 return compare_channels(c.channels(), v) < 0;
                               });
    ++h.counts[static_cast<std::size_t>(it - h.colors.begin())];
  }
  return h;
}

double transport_cost_l1(const ColorHistogram& from, const ColorHistogram& to) {
  if (from.total() != to.total()) fail(ErrorCode::kDimension, "histogram totals differ");
  if (from.colors.size() != from.counts.size() || to.colors.size() != to.counts.size()) {
    fail(ErrorCode::kDimension, "histogram colors and counts differ in length");
  }
  // Mass shared by both histograms at the same color stays put: under a metric
  // ground cost some optimal plan keeps it.
  std::vector<Node> sources, sinks;
  std::size_t a = 0, b = 0;
  while (a < from.colors.size() || b < to.colors.size()) {
    std::strong_ordering cmp = std::strong_ordering::equal;
    if (a == from.colors.size()) {
      cmp = std::strong_ordering::greater;
    } else if (b == to.colors.size()) {
      cmp = std::strong_ordering::less;
    } else {
      cmp = compare_channels(from.colors[a].channels(), to.colors[b].channels());
    }
    if (cmp < 0) {
      if (from.counts[a] > 0) sources.push_back({from.colors[a].channels(), from.counts[a]});
      ++a;
    } else if (cmp > 0) {
      if (to.counts[b] > 0) sinks.push_back({to.colors[b].channels(), to.counts[b]});
      ++b;
    } else {
      const std::int64_t diff = from.counts[a] - to.counts[b];
      if (diff > 0) sources.push_back({from.colors[a].channels(), diff});
      if (diff < 0) sinks.push_back({to.colors[b].channels(), -diff});
      ++a;
      ++b;
    }
  }
  return min_cost_flow(sources, sinks);
}

ColorImage quantize_uniform(const ColorImage& image, int levels) {
  if (levels < 1) fail(ErrorCode::kConfig, "quantization needs at least one level");
  std::vector<double> data(image.data().size());
  std::transform(image.data().begin(), image.data().end(), data.begin(), [levels](double v) {
    const int bin = std::min(levels - 1, static_cast<int>(std::floor(v * levels)));
    return (bin + 0.5) / levels;
  });
  return ColorImage(image.width(), image.height(), image.channels(), std::move(data));
}

IrregularityResult global_irregularity(const ColorImage& I, const ColorImage& J,
                                       const IrregularityOptions& options) {
  if (I.width() != J.width() || I.height() != J.height() || I.channels() != J.channels()) {
    fail(ErrorCode::kDimension, "irregularity needs images of identical shape");
  }
  IrregularityResult result;
  ColorHistogram hi = color_histogram(I);
  ColorHistogram hj = color_histogram(J);
  const ColorImage* a = &I;
  const ColorImage* b = &J;
  ColorImage qa, qb;
  if (hi.colors.size() > options.color_cap || hj.colors.size() > options.color_cap) {
    qa = quantize_uniform(I, options.quantization_levels);
    qb = quantize_uniform(J, options.quantization_levels);
    a = &qa;
    b = &qb;
    hi = color_histogram(qa);
    hj = color_histogram(qb);
    result.quantized = true;
  }
  for (std::size_t p = 0; p < a->pixel_count(); ++p) {
    result.pixel_distance += l1(a->pixel(p), b->pixel(p));
  }
  if (result.pixel_distance == 0.0) return result;
  result.transport_cost = transport_cost_l1(hj, hi);
  // W <= D always. Relative gaps below 1e-12 are summation noise, not
  // displaced mass, and would otherwise leak into the rank tests.
  const double gap = result.pixel_distance - std::min(result.transport_cost, result.pixel_distance);
  result.phi = gap <= 1e-12 * result.pixel_distance ? 0.0 : std::min(gap / result.pixel_distance, 1.0);
  return result;
}

}  // namespace condmorph
