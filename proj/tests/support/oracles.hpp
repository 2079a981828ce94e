// Independent reference implementations used by the tests. Everything here is
// written straight from the definitions, deliberately slow and without the
// LUT / flow / incremental tricks of the library.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "condmorph/color.hpp"
#include "condmorph/mlp.hpp"
#include "condmorph/morphology.hpp"
#include "condmorph/ordering.hpp"
#include "condmorph/vote.hpp"

namespace oracle {

using condmorph::ColorImage;
using condmorph::ColorValue;

// x <= y under h with lexicographic tie-break, compared directly on values.
inline bool total_less(const condmorph::ReducedMapping& h, const ColorValue& x, const ColorValue& y) {
  const double a = h(x), b = h(y);
  if (a != b) return a < b;
  return std::lexicographical_compare(x.channels().begin(), x.channels().end(), y.channels().begin(),
                                      y.channels().end());
}

// Direct flat erosion: minimum over I(p + s) with p + s inside the grid.
inline ColorImage erode(const ColorImage& img, const condmorph::ReducedMapping& h,
                        const condmorph::StructuringElement& se) {
  std::vector<ColorValue> out;
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      bool have = false;
      ColorValue best;
      for (const auto& o : se.offsets()) {
        const int rr = r + o.dy, cc = c + o.dx;
        if (rr < 0 || cc < 0 || rr >= img.height() || cc >= img.width()) continue;
        ColorValue v(img.pixel(rr, cc));
        if (!have || total_less(h, v, best)) best = v;
        have = true;
      }
      out.push_back(best);
    }
  }
  return ColorImage::from_colors(img.width(), img.height(), out);
}

// Direct flat dilation: maximum over I(p - s).
inline ColorImage dilate(const ColorImage& img, const condmorph::ReducedMapping& h,
                         const condmorph::StructuringElement& se) {
  std::vector<ColorValue> out;
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      bool have = false;
      ColorValue best;
      for (const auto& o : se.offsets()) {
        const int rr = r - o.dy, cc = c - o.dx;
        if (rr < 0 || cc < 0 || rr >= img.height() || cc >= img.width()) continue;
        ColorValue v(img.pixel(rr, cc));
        if (!have || total_less(h, best, v)) best = v;
        have = true;
      }
      out.push_back(best);
    }
  }
  return ColorImage::from_colors(img.width(), img.height(), out);
}

// Kemeny objective from the relation matrix: sum_ij delta_ij [x_j <= x_i].
inline double kemeny(const condmorph::MarginMatrix& delta, const std::vector<std::size_t>& perm) {
  const std::size_t n = perm.size();
  std::vector<std::size_t> pos(n);
  for (std::size_t k = 0; k < n; ++k) pos[perm[k]] = k;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (pos[j] <= pos[i]) total += delta(i, j);
    }
  }
  return total;
}

// Every permutation's objective, in lexicographic permutation order.
inline std::vector<std::pair<std::vector<std::size_t>, double>> all_orders(
    const condmorph::MarginMatrix& delta) {
  std::vector<std::size_t> perm(delta.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::pair<std::vector<std::size_t>, double>> out;
  do {
    out.emplace_back(perm, kemeny(delta, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Borda by counting positions in each voter's listing.
inline std::vector<double> borda(const std::vector<std::vector<std::size_t>>& voters, std::size_t n) {
  std::vector<double> score(n, 0.0);
  for (const auto& v : voters) {
    for (std::size_t k = 0; k < v.size(); ++k) score[v[k]] += static_cast<double>(k);
  }
  for (auto& s : score) s /= static_cast<double>(voters.size() * (n - 1));
  return score;
}

// Soft loss over all ordered pairs, per the definition (no pair folding).
inline double soft_loss(const condmorph::MlpParams& params, std::span<const ColorValue> batch,
                        const condmorph::MappingFamily& mappings, double tau) {
  double loss = 0.0;
  const double m = static_cast<double>(mappings.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    for (std::size_t j = 0; j < batch.size(); ++j) {
      if (i == j) continue;
      double delta = 0.0;
      for (const auto& h : mappings) {
        delta += ((*h)(batch[i]) <= (*h)(batch[j]) ? 1.0 : 0.0) -
                 ((*h)(batch[j]) <= (*h)(batch[i]) ? 1.0 : 0.0);
      }
      delta /= m;
      const double si = condmorph::mlp_forward(params, batch[i]);
      const double sj = condmorph::mlp_forward(params, batch[j]);
      loss += delta / (1.0 + std::exp((sj - si) / tau));
    }
  }
  return loss;
}

// Minimum-cost perfect assignment (Hungarian method, O(n^3)) on a square cost matrix.
inline double assignment(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double d = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < d) {
          d = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += d;
          v[j] -= d;
        } else {
          minv[j] -= d;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  double total = 0.0;
  for (std::size_t j = 1; j <= n; ++j) total += cost[p[j] - 1][j - 1];
  return total;
}

inline double l1(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d += std::abs(a[k] - b[k]);
  return d;
}

// Pixel-level transport: cheapest bijection between the two pixel multisets.
inline double pixel_transport(const ColorImage& a, const ColorImage& b) {
  const std::size_t n = a.pixel_count();
  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) cost[i][j] = l1(a.pixel(i), b.pixel(j));
  }
  return assignment(cost);
}

// Same by enumerating every bijection (n <= 8).
inline double pixel_transport_bruteforce(const ColorImage& a, const ColorImage& b) {
  const std::size_t n = a.pixel_count();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) c += l1(a.pixel(i), b.pixel(perm[i]));
    best = std::min(best, c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline double irregularity(const ColorImage& a, const ColorImage& b) {
  double d = 0.0;
  for (std::size_t p = 0; p < a.pixel_count(); ++p) d += l1(a.pixel(p), b.pixel(p));
  if (d == 0.0) return 0.0;
  return (d - pixel_transport(a, b)) / d;
}

// Transport cost by enumerating every integer plan between the two color
// histograms (tiny palettes only). No mass is cancelled up front.
inline double histogram_transport_enumerated(const ColorImage& a, const ColorImage& b) {
  auto histogram = [](const ColorImage& img) {
    std::vector<std::pair<std::vector<double>, std::int64_t>> h;
    for (std::size_t p = 0; p < img.pixel_count(); ++p) {
      std::vector<double> c(img.pixel(p).begin(), img.pixel(p).end());
      auto it = std::find_if(h.begin(), h.end(), [&](const auto& e) { return e.first == c; });
      if (it == h.end()) {
        h.emplace_back(c, 1);
      } else {
        ++it->second;
      }
    }
    return h;
  };
  const auto ha = histogram(a), hb = histogram(b);
  const std::size_t p = ha.size(), q = hb.size();
  std::vector<double> cost(p * q);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < q; ++j) cost[i * q + j] = l1(ha[i].first, hb[j].first);
  }
  std::vector<std::int64_t> row(p), col(q);
  for (std::size_t i = 0; i < p; ++i) row[i] = ha[i].second;
  for (std::size_t j = 0; j < q; ++j) col[j] = hb[j].second;
  double best = std::numeric_limits<double>::infinity();
  // cell k = i * q + j; costs are non-negative so partial sums bound from below
  auto fill = [&](auto&& self, std::size_t k, double acc) -> void {
    if (acc >= best) return;
    if (k == p * q) {
      best = acc;
      return;
    }
    const std::size_t i = k / q, j = k % q;
    const std::int64_t hi = std::min(row[i], col[j]);
    const std::int64_t lo = j + 1 == q ? row[i] : 0;  // last cell of a row empties it
    if (lo > hi) return;
    for (std::int64_t f = lo; f <= hi; ++f) {
      row[i] -= f;
      col[j] -= f;
      self(self, k + 1, acc + static_cast<double>(f) * cost[k]);
      row[i] += f;
      col[j] += f;
    }
  };
  fill(fill, 0, 0.0);
  return best;
}

struct SignedRank {
  double w_plus = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

// Exact two-sided signed-rank p-value by enumerating all 2^n sign patterns.
inline SignedRank signed_rank_enumerated(std::span<const double> a, std::span<const double> b) {
  std::vector<double> d;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) d.push_back(a[i] - b[i]);
  }
  SignedRank out;
  out.n = d.size();
  if (d.empty()) return out;
  // midranks of |d|
  std::vector<double> rank(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    double below = 0, equal = 0;
    for (double e : d) {
      if (std::abs(e) < std::abs(d[i])) ++below;
      if (std::abs(e) == std::abs(d[i])) ++equal;
    }
    rank[i] = below + (equal + 1) / 2.0;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    total += rank[i];
    if (d[i] > 0) out.w_plus += rank[i];
  }
  const double centre = total / 2.0;
  const double observed = std::abs(out.w_plus - centre);
  std::uint64_t extreme = 0;
  const std::uint64_t patterns = std::uint64_t{1} << d.size();
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    double w = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (mask >> i & 1U) w += rank[i];
    }
    if (std::abs(w - centre) >= observed - 1e-9) ++extreme;
  }
  out.p_value = static_cast<double>(extreme) / static_cast<double>(patterns);
  return out;
}

// ---- random generators ----

inline ColorImage random_image(std::mt19937_64& rng, int max_side, int max_colors) {
  std::uniform_int_distribution<int> side(1, max_side);
  std::uniform_int_distribution<int> ncolors(1, max_colors);
  std::uniform_int_distribution<int> byte(0, 255);
  const int w = side(rng), h = side(rng);
  std::vector<ColorValue> palette;
  const int k = ncolors(rng);
  for (int i = 0; i < k; ++i) {
    palette.push_back(ColorValue::from_rgb8(static_cast<std::uint8_t>(byte(rng)),
                                            static_cast<std::uint8_t>(byte(rng)),
                                            static_cast<std::uint8_t>(byte(rng))));
  }
  std::uniform_int_distribution<std::size_t> pick(0, palette.size() - 1);
  std::vector<ColorValue> px;
  for (int i = 0; i < w * h; ++i) px.push_back(palette[pick(rng)]);
  return ColorImage::from_colors(w, h, px);
}

inline std::vector<std::size_t> random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace oracle
