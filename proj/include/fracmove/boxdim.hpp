#pragma once

// Box-dimension estimation: packing numbers (maximal disjoint-ball packings)
// and grid box counts over a geometric ladder of scales, reduced to a
// dimension by least squares on log count against log(1/delta).

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "clearance.hpp"
#include "core.hpp"

namespace fracmove {

enum class CountMethod { packing, boxes };

inline std::string_view to_string(CountMethod m) { return m == CountMethod::packing ? "packing" : "boxes"; }

inline CountMethod parse_count_method(std::string_view s) {
  if (s == "packing") return CountMethod::packing;
  if (s == "boxes") return CountMethod::boxes;
  throw InvalidArgument("unknown counting method: " + std::string(s));
}

struct ScaleCount {
  double delta;
  std::size_t count;
  CountMethod method;
};

struct EstimatorConfig {
  double delta_max = 0.25;
  double delta_min = 0.01;
  int levels = 6;
  CountMethod method = CountMethod::packing;
  // Box grid anchor; defaults to a point just below the cloud's bounding box.
  std::optional<Point> anchor;
};

struct DimensionEstimate {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_stderr = 0.0;
  bool degenerate = false;      // all counts equal; slope forced to 0
  std::vector<double> deltas;   // scales entering the regression, decreasing
  std::vector<ScaleCount> counts;  // every level of the ladder
  CountMethod method = CountMethod::packing;
  std::optional<Window> window;
};

/// Size of the greedy maximal packing: samples visited in lexicographic
/// coordinate order, kept when farther than 2*delta from every kept sample.
inline std::size_t packing_count(const PointCloud& cloud, double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("packing scale must be positive");
  if (cloud.empty()) throw InvalidArgument("packing count of an empty cloud");
  const std::size_t n = cloud.dim();
  std::vector<std::size_t> order(cloud.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto pa = cloud[a], pb = cloud[b];
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  });
  const double gap = 2.0 * delta;

  if (n > kMaxIndexedDim) {
    std::vector<std::size_t> kept;
    for (std::size_t i : order) {
      bool free = true;
      for (std::size_t k : kept)
        if (distance(cloud[i], cloud[k]) <= gap) {
          free = false;
          break;
        }
      if (free) kept.push_back(i);
    }
    return kept.size();
  }

  using Key = GridIndex::Key;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::uint64_t h = 1469598103934665603ULL;
      for (auto v : k) h = (h ^ static_cast<std::uint64_t>(v)) * 1099511628211ULL;
      return static_cast<std::size_t>(h);
    }
  };
  std::unordered_map<Key, std::vector<std::size_t>, KeyHash> kept;
  auto coord = [&](double x) { return static_cast<std::int64_t>(std::floor(x / gap)); };
  std::size_t count = 0;
  Key lo{}, hi{}, cur{};
  for (std::size_t i : order) {
    auto p = cloud[i];
    for (std::size_t k = 0; k < n; ++k) {
      lo[k] = coord(p[k] - gap);
      hi[k] = coord(p[k] + gap);
    }
    bool free = true;
    cur = lo;
    while (free) {
      if (auto it = kept.find(cur); it != kept.end())
        for (std::size_t j : it->second)
          if (distance(p, cloud[j]) <= gap) {
            free = false;
            break;
          }
      std::size_t axis = 0;
      while (axis < n && cur[axis] == hi[axis]) {
        cur[axis] = lo[axis];
        ++axis;
      }
      if (axis == n) break;
      ++cur[axis];
    }
    if (!free) continue;
    Key own{};
    for (std::size_t k = 0; k < n; ++k) own[k] = coord(p[k]);
    kept[own].push_back(i);
    ++count;
  }
  return count;
}

/// Number of distinct cells of the side-`delta` grid anchored at `anchor`
/// that contain at least one sample.
inline std::size_t box_count(const PointCloud& cloud, double delta, Coords anchor) {
  if (!(delta > 0.0)) throw InvalidArgument("box size must be positive");
  require_same_dim(cloud, anchor);
  if (cloud.empty()) return 0;
  const std::size_t n = cloud.dim();
  std::vector<std::int64_t> keys;
  keys.reserve(cloud.size() * n);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto p = cloud[i];
    for (std::size_t k = 0; k < n; ++k)
      keys.push_back(static_cast<std::int64_t>(std::floor((p[k] - anchor[k]) / delta)));
  }
  std::vector<std::size_t> rows(cloud.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  auto row_less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(keys.begin() + a * n, keys.begin() + (a + 1) * n, keys.begin() + b * n,
                                        keys.begin() + (b + 1) * n);
  };
  std::sort(rows.begin(), rows.end(), row_less);
  std::size_t distinct = 1;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (row_less(rows[i - 1], rows[i])) ++distinct;
  return distinct;
}

/// Geometric ladder from delta_max down to delta_min, `levels` entries.
inline std::vector<double> delta_ladder(double delta_max, double delta_min, int levels) {
  if (levels < 2) throw InvalidArgument("delta ladder needs at least two levels");
  if (!(delta_min > 0.0) || !(delta_max > delta_min)) throw InvalidArgument("delta ladder needs 0 < delta_min < delta_max");
  std::vector<double> out(static_cast<std::size_t>(levels));
  const double ratio = delta_min / delta_max;
  for (int k = 0; k < levels; ++k)
    out[static_cast<std::size_t>(k)] = delta_max * std::pow(ratio, static_cast<double>(k) / (levels - 1));
  out.front() = delta_max;
  out.back() = delta_min;
  return out;
}

/// Ordinary least squares of log(count) on log(1/delta). When six or more
/// levels are available the coarsest and finest are left out of the fit.
inline DimensionEstimate fit_log_log(const std::vector<ScaleCount>& counts, CountMethod method) {
  if (counts.size() < 3) throw InvalidArgument("dimension fit needs at least three scales");
  DimensionEstimate est;
  est.method = method;
  est.counts = counts;
  const std::size_t skip = counts.size() >= 6 ? 1 : 0;
  std::vector<double> xs, ys;
  for (std::size_t i = skip; i + skip < counts.size(); ++i) {
    if (counts[i].count == 0) throw InvalidArgument("dimension fit on an empty count");
    est.deltas.push_back(counts[i].delta);
    xs.push_back(-std::log(counts[i].delta));
    ys.push_back(std::log(static_cast<double>(counts[i].count)));
  }
  const double m = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / m;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (syy == 0.0) {
    est.degenerate = true;
    est.slope = 0.0;
    est.intercept = my;
    est.r_squared = 0.0;
    est.slope_stderr = 0.0;
    return est;
  }
  est.slope = sxy / sxx;
  est.intercept = my - est.slope * mx;
  const double ss_res = std::max(0.0, syy - est.slope * sxy);
  est.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  est.slope_stderr = xs.size() > 2 ? std::sqrt(ss_res / (m - 2.0) / sxx) : 0.0;
  return est;
}

/// Default box anchor: slightly below the bounding box, off the lattice
/// phase of generators that place samples on cell boundaries.
inline Point default_anchor(const PointCloud& cloud, double delta_min) {
  auto [lo, hi] = bounding_box(cloud);
  const double shift = 0.30901699437494745 * delta_min;
  for (double& v : lo) v -= shift;
  return Point(std::move(lo));
}

inline DimensionEstimate estimate_dimension(const PointCloud& cloud, const EstimatorConfig& cfg) {
  if (cloud.empty()) throw InvalidArgument("dimension estimate of an empty cloud");
  if (cfg.levels < 3) throw InvalidArgument("dimension estimate needs at least three levels");
  if (cfg.delta_min < cloud.resolution() * (1.0 - 1e-12))
    throw InvalidArgument("delta_min is below the sampling resolution of the cloud");
  const auto deltas = delta_ladder(cfg.delta_max, cfg.delta_min, cfg.levels);
  const Point anchor = cfg.anchor ? *cfg.anchor : default_anchor(cloud, cfg.delta_min);
  std::vector<ScaleCount> counts;
  for (double d : deltas) {
    const std::size_t c =
        cfg.method == CountMethod::packing ? packing_count(cloud, d) : box_count(cloud, d, anchor);
    counts.push_back({d, c, cfg.method});
  }
  return fit_log_log(counts, cfg.method);
}

/// Dimension of an unbounded set: maximum over bounded windows of the
/// estimate of the clipped sample. Empty clips are skipped.
inline DimensionEstimate estimate_dimension_unbounded(const PointCloud& cloud, const std::vector<Window>& windows,
                                                      const EstimatorConfig& cfg) {
  if (windows.empty()) throw InvalidArgument("no windows given");
  std::optional<DimensionEstimate> best;
  for (const Window& w : windows) {
    PointCloud part = clip(cloud, w);
    if (part.empty()) continue;
    DimensionEstimate est = estimate_dimension(part, cfg);
    est.window = w;
    if (!best || est.slope > best->slope) best = std::move(est);
  }
  if (!best) throw InvalidArgument("cloud does not meet any window");
  return *best;
}

/// Ladder defaults for a cloud with no better information: from a quarter of
/// the diameter down to twice the resolution, ratio near 1/2.
inline EstimatorConfig default_estimator(const PointCloud& cloud, CountMethod method = CountMethod::packing) {
  auto [lo, hi] = bounding_box(cloud);
  double extent = 0.0;
  for (std::size_t k = 0; k < cloud.dim(); ++k) extent = std::max(extent, hi[k] - lo[k]);
  EstimatorConfig cfg;
  cfg.method = method;
  cfg.delta_min = 2.0 * cloud.resolution();
  cfg.delta_max = std::max(extent / 4.0, 4.0 * cfg.delta_min);
  cfg.levels = std::max(3, static_cast<int>(std::lround(std::log2(cfg.delta_max / cfg.delta_min))) + 1);
  return cfg;
}

}  // namespace fracmove
