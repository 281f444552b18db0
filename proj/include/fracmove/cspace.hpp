#pragma once

// Configuration-space obstacle for translations: K = {y - x : x in M, y in X}.
// A translation path alpha avoids X with every point of M iff alpha avoids K.

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "boxdim.hpp"
#include "core.hpp"

namespace fracmove {

struct CSpaceObstacle {
  PointCloud points;
  // (manifold index, obstacle index) per point of `points`.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> source_pairs;
  std::string m_label;
  std::string x_label;
  std::size_t total_pairs = 0;
  std::size_t cap = 0;
  bool subsampled = false;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// All differences X[j] - M[i], pair index i*|X| + j. Above `cap` pairs one
/// pair is drawn per stratum of consecutive pair indices, the offset inside
/// each stratum seeded from `cap`.
inline CSpaceObstacle minkowski_difference(const PointCloud& manifold, const PointCloud& obstacle, std::size_t cap) {
  if (manifold.dim() != obstacle.dim()) throw DimensionMismatch(manifold.dim(), obstacle.dim());
  if (cap == 0) throw InvalidArgument("cap must be at least 1");
  if (manifold.size() > UINT32_MAX || obstacle.size() > UINT32_MAX) throw InvalidArgument("cloud too large");
  const std::size_t n = manifold.dim();
  const std::size_t nx = obstacle.size();
  CSpaceObstacle k{PointCloud(n, manifold.resolution() + obstacle.resolution(), "K"), {}, manifold.label(),
                   obstacle.label(), manifold.size() * nx, cap, false};

  std::vector<std::size_t> picks;
  if (k.total_pairs > cap) {
    k.subsampled = true;
    picks.reserve(cap);
    const double width = static_cast<double>(k.total_pairs) / static_cast<double>(cap);
    for (std::size_t s = 0; s < cap; ++s) {
      const auto lo = static_cast<std::size_t>(std::floor(static_cast<double>(s) * width));
      auto hi = static_cast<std::size_t>(std::floor(static_cast<double>(s + 1) * width));
      hi = std::min(std::max(hi, lo + 1), k.total_pairs);
      const std::uint64_t r = splitmix64(static_cast<std::uint64_t>(cap) * 0x100000001b3ULL ^ s);
      picks.push_back(lo + static_cast<std::size_t>(r % (hi - lo)));
    }
  }
  const std::size_t count = k.subsampled ? picks.size() : k.total_pairs;
  k.points.reserve(count);
  k.source_pairs.reserve(count);
  std::vector<double> d(n);
  for (std::size_t q = 0; q < count; ++q) {
    const std::size_t pair = k.subsampled ? picks[q] : q;
    const std::size_t i = pair / nx, j = pair % nx;
    auto x = manifold[i];
    auto y = obstacle[j];
    for (std::size_t c = 0; c < n; ++c) d[c] = y[c] - x[c];
    k.points.push_back(d);
    k.source_pairs.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
  }
  return k;
}

/// Sum metric on M x R^n: |x1 - x2| + |y1 - y2|.
inline double product_distance(Coords x1, Coords y1, Coords x2, Coords y2) {
  return distance(x1, x2) + distance(y1, y2);
}

/// Dimension budget for translating M past X in R^n: dim_X < n - dim_M - 1.
inline bool dimension_gate(double dim_x, double dim_m, int n) {
  const double top = static_cast<double>(n);
  if (!(dim_x >= 0.0 && dim_x <= top) || !(dim_m >= 0.0 && dim_m <= top))
    throw InvalidArgument("dimension estimates must lie in [0, n]");
  return dim_x < top - dim_m - 1.0;
}

struct GateReport {
  double dim_x = 0.0;
  double dim_x_stderr = 0.0;
  double dim_m = 0.0;
  int n = 0;
  double budget = 0.0;  // n - dim_M - 1
  bool pass = false;
  bool pass_low = false;   // at dim_x - 2 stderr
  bool pass_high = false;  // at dim_x + 2 stderr
};

inline GateReport evaluate_gate(const DimensionEstimate& x_est, double dim_m, int n) {
  const double top = static_cast<double>(n);
  auto clamped = [&](double v) { return std::clamp(v, 0.0, top); };
  GateReport g;
  g.dim_x = x_est.slope;
  g.dim_x_stderr = x_est.slope_stderr;
  g.dim_m = dim_m;
  g.n = n;
  g.budget = top - dim_m - 1.0;
  g.pass = dimension_gate(clamped(x_est.slope), clamped(dim_m), n);
  g.pass_low = dimension_gate(clamped(x_est.slope - 2.0 * x_est.slope_stderr), clamped(dim_m), n);
  g.pass_high = dimension_gate(clamped(x_est.slope + 2.0 * x_est.slope_stderr), clamped(dim_m), n);
  return g;
}

}  // namespace fracmove
