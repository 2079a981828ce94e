#include "condmorph/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "condmorph/error.hpp"

namespace condmorph {
namespace {

constexpr std::size_t kExactLimit = 25;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Ranks of |d| with ties averaged; returned doubled so they are integers.
std::vector<long long> doubled_average_ranks(const std::vector<double>& magnitudes,
                                             double& tie_term) {
  const std::size_t n = magnitudes.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return magnitudes[a] < magnitudes[b]; });
  std::vector<long long> ranks(n);
  tie_term = 0.0;
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start;
    while (end + 1 < n && magnitudes[order[end + 1]] == magnitudes[order[start]]) ++end;
    // Positions start..end (0-based) share the rank ((start+1)+(end+1))/2.
    const long long doubled = static_cast<long long>(start + end + 2);
    for (std::size_t k = start; k <= end; ++k) ranks[order[k]] = doubled;
    const double t = static_cast<double>(end - start + 1);
    tie_term += t * t * t - t;
    start = end + 1;
  }
  return ranks;
}

// Null distribution of the doubled W+ over all 2^n sign patterns.
std::vector<double> signed_rank_distribution(const std::vector<long long>& doubled_ranks) {
  const long long total = std::accumulate(doubled_ranks.begin(), doubled_ranks.end(), 0LL);
  std::vector<double> counts(static_cast<std::size_t>(total) + 1, 0.0);
  counts[0] = 1.0;
  long long reach = 0;
  for (long long r : doubled_ranks) {
    for (long long s = reach; s >= 0; --s) {
      counts[static_cast<std::size_t>(s + r)] += counts[static_cast<std::size_t>(s)];
    }
    reach += r;
  }
  return counts;
}

}  // namespace

std::string to_string(Direction d) {
  switch (d) {
    case Direction::kNone: return "none";
    case Direction::kAGreater: return "a_greater";
    case Direction::kBGreater: return "b_greater";
  }
  return "none";
}

PairwiseTestResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                        double alpha, std::string name_a, std::string name_b) {
  if (a.size() != b.size()) fail(ErrorCode::kDimension, "paired samples differ in length");
  if (a.size() < 10) fail(ErrorCode::kConfig, "signed-rank test needs at least 10 pairs");
  if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorCode::kConfig, "alpha must lie in (0,1)");

  PairwiseTestResult result;
  result.method_a = std::move(name_a);
  result.method_b = std::move(name_b);

  std::vector<double> magnitudes;
  std::vector<bool> positive;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (!std::isfinite(d)) fail(ErrorCode::kNumeric, "non-finite sample in signed-rank test");
    if (d == 0.0) continue;
    magnitudes.push_back(std::abs(d));
    positive.push_back(d > 0.0);
  }
  const std::size_t n = magnitudes.size();
  result.effective_n = n;
  if (n == 0) return result;  // p = 1, no direction

  double tie_term = 0.0;
  const auto ranks = doubled_average_ranks(magnitudes, tie_term);
  long long w_plus2 = 0, w_minus2 = 0;
  for (std::size_t i = 0; i < n; ++i) (positive[i] ? w_plus2 : w_minus2) += ranks[i];
  result.statistic = w_plus2 / 2.0;
  result.w_minus = w_minus2 / 2.0;
  if (w_plus2 > w_minus2) result.direction = Direction::kAGreater;
  if (w_plus2 < w_minus2) result.direction = Direction::kBGreater;

  if (n <= kExactLimit) {
    result.exact = true;
    const auto counts = signed_rank_distribution(ranks);
    const double patterns = std::ldexp(1.0, static_cast<int>(n));
    double lower = 0.0, upper = 0.0;
    for (std::size_t s = 0; s < counts.size(); ++s) {
      if (static_cast<long long>(s) <= w_plus2) lower += counts[s];
      if (static_cast<long long>(s) >= w_plus2) upper += counts[s];
    }
    result.p_value = std::min(1.0, 2.0 * std::min(lower, upper) / patterns);
  } else {
    result.exact = false;
    const double nn = static_cast<double>(n);
    const double mean = nn * (nn + 1.0) / 4.0;
    const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
    if (var <= 0.0) {
      result.p_value = 1.0;
    } else {
      const double z = (result.statistic - mean) / std::sqrt(var);
      result.p_value = std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0)));
    }
  }
  result.significant = result.p_value < alpha;
  return result;
}

std::string hasse_from_tests(std::span<const std::string> methods,
                             std::span<const PairwiseTestResult> results) {
  const std::size_t n = methods.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (!index.emplace(methods[i], i).second) {
      fail(ErrorCode::kConfig, "method '" + methods[i] + "' listed twice");
    }
  }
  std::vector<std::vector<bool>> lower(n, std::vector<bool>(n, false));
  std::set<std::pair<std::size_t, std::size_t>> covered;
  for (const auto& r : results) {
    auto ia = index.find(r.method_a);
    auto ib = index.find(r.method_b);
    if (ia == index.end() || ib == index.end()) {
      fail(ErrorCode::kConfig, "test mentions unknown method '" +
                                   (ia == index.end() ? r.method_a : r.method_b) + "'");
    }
    const auto key = std::minmax(ia->second, ib->second);
    if (key.first == key.second || !covered.insert(key).second) {
      fail(ErrorCode::kConfig, "duplicate or self comparison " + r.method_a + " / " + r.method_b);
    }
    if (!r.significant) continue;
    if (r.direction == Direction::kBGreater) lower[ia->second][ib->second] = true;
    if (r.direction == Direction::kAGreater) lower[ib->second][ia->second] = true;
  }
  if (covered.size() != n * (n - 1) / 2) {
    fail(ErrorCode::kConfig, "tests do not cover every pair of methods");
  }

  // Transitive closure (Floyd-Warshall on booleans).
  auto reach = lower;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[k][j]) reach[i][j] = true;
      }
    }
  }
  bool cyclic = false;
  for (std::size_t i = 0; i < n; ++i) cyclic = cyclic || reach[i][i];

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!lower[i][j]) continue;
      bool redundant = false;
      if (!cyclic) {
        for (std::size_t k = 0; k < n && !redundant; ++k) {
          redundant = k != i && k != j && reach[i][k] && reach[k][j];
        }
      }
      if (!redundant) edges.emplace_back(i, j);
    }
  }

  std::ostringstream dot;
  dot << "digraph hasse {\n";
  if (cyclic) {
    dot << "  // warning: significance relation is cyclic; edges are not reduced\n";
    dot << "  label=\"warning: cyclic significance relation\";\n";
  }
  dot << "  rankdir=TB;\n";
  dot << "  node [shape=box];\n";
  for (const auto& m : methods) dot << "  " << quote(m) << ";\n";
  for (const auto& [i, j] : edges) dot << "  " << quote(methods[i]) << " -> " << quote(methods[j]) << ";\n";
  dot << "}\n";
  return dot.str();
}

std::vector<std::string> IrregularityTable::methods() const {
  std::vector<std::string> out;
  for (const auto& r : rows) {
    if (std::find(out.begin(), out.end(), r.method) == out.end()) out.push_back(r.method);
  }
  return out;
}

std::vector<double> IrregularityTable::values(const std::string& method) const {
  std::vector<std::string> images;
  for (const auto& r : rows) {
    if (std::find(images.begin(), images.end(), r.image) == images.end()) images.push_back(r.image);
  }
  std::vector<double> out(images.size(), std::nan(""));
  for (const auto& r : rows) {
    if (r.method != method) continue;
    const auto pos = std::find(images.begin(), images.end(), r.image) - images.begin();
    out[static_cast<std::size_t>(pos)] = r.phi;
  }
  return out;
}

std::string IrregularityTable::to_csv() const {
  std::string out = "image,method,phi\n";
  for (const auto& r : rows) out += r.image + "," + r.method + "," + format_double(r.phi) + "\n";
  return out;
}

IrregularityTable IrregularityTable::from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("image,method,phi", 0) != 0) {
    fail(ErrorCode::kFormat, "irregularity CSV must start with image,method,phi");
  }
  IrregularityTable table;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos) {
      fail(ErrorCode::kFormat, "irregularity CSV line " + std::to_string(line_no) + " needs 3 fields");
    }
    Row row{line.substr(0, c1), line.substr(c1 + 1, c2 - c1 - 1), 0.0};
    try {
      std::size_t used = 0;
      const std::string value = line.substr(c2 + 1);
      row.phi = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      fail(ErrorCode::kFormat, "bad phi value on irregularity CSV line " + std::to_string(line_no));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

Summary summarize(std::vector<double> values) {
  if (values.empty()) fail(ErrorCode::kConfig, "cannot summarize an empty sample");
  std::sort(values.begin(), values.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  return {values.front(), quantile(0.25), quantile(0.5), quantile(0.75), values.back()};
}

Comparison compare_methods(const IrregularityTable& table, double alpha) {
  const auto methods = table.methods();
  if (methods.size() < 2) fail(ErrorCode::kConfig, "need at least two methods to compare");
  std::vector<std::vector<double>> samples;
  for (const auto& m : methods) {
    samples.push_back(table.values(m));
    for (double v : samples.back()) {
      if (std::isnan(v)) fail(ErrorCode::kFormat, "method '" + m + "' is missing some images");
    }
  }
  Comparison out;
  out.tests_csv = "method_a,method_b,w_plus,w_minus,n,exact,p_value,direction,significant\n";
  for (std::size_t i = 0; i < methods.size(); ++i) {
    for (std::size_t j = i + 1; j < methods.size(); ++j) {
      auto r = wilcoxon_signed_rank(samples[i], samples[j], alpha, methods[i], methods[j]);
      out.tests_csv += r.method_a + "," + r.method_b + "," + format_double(r.statistic) + "," +
                       format_double(r.w_minus) + "," + std::to_string(r.effective_n) + "," +
                       (r.exact ? "1" : "0") + "," + format_double(r.p_value) + "," +
                       to_string(r.direction) + "," + (r.significant ? "1" : "0") + "\n";
      out.tests.push_back(std::move(r));
    }
  }
  out.hasse_dot = hasse_from_tests(methods, out.tests);
  out.quantiles_csv = "method,min,q1,median,q3,max\n";
  for (std::size_t i = 0; i < methods.size(); ++i) {
    const auto s = summarize(samples[i]);
    out.quantiles_csv += methods[i] + "," + format_double(s.min) + "," + format_double(s.q1) + "," +
                         format_double(s.median) + "," + format_double(s.q3) + "," +
                         format_double(s.max) + "\n";
  }
  return out;
}

}  // namespace condmorph
