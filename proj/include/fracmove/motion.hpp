#pragma once

// Translation motions F(x, t) = x + alpha(t) of a sampled manifold and their
// verification: every time slice is an isometry, no point of the moving
// manifold comes within epsilon of the obstacle for t > 0, and the anchored
// point lands on its target.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "clearance.hpp"
#include "core.hpp"
#include "cspace.hpp"
#include "pathfind.hpp"

namespace fracmove {

struct Anchor {
  Point x0;
  Point y0;
};

struct Verification {
  bool isometry_ok = false;
  bool avoidance_ok = false;
  double min_clearance = kUnbounded;
  std::optional<double> kspace_clearance;
  bool cross_check_ok = true;
  std::optional<Point> anchored_target;
  std::optional<bool> anchor_ok;
};

struct MotionPlan {
  PointCloud manifold;
  PolyPath path;
  PointCloud obstacle;
  double epsilon = 0.0;
  Verification verification;
  std::optional<Anchor> anchor;
};

inline Point evaluate_motion(const PolyPath& path, Coords x, double t) {
  const Point a = evaluate_path(path, t);
  require_same_dim(a, x);
  std::vector<double> p(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) p[k] = x[k] + a[k];
  return Point(std::move(p));
}

inline Point evaluate_motion(const MotionPlan& plan, Coords x, double t) { return evaluate_motion(plan.path, x, t); }

/// Sorted time samples: all knots plus a uniform grid fine enough for a
/// spacing of epsilon/4 in arc length (knots are arc-length proportional).
inline std::vector<double> motion_time_samples(const PolyPath& path, double epsilon, std::size_t t_samples) {
  if (t_samples < 2) throw InvalidArgument("need at least two time samples");
  std::size_t m = t_samples;
  if (epsilon > 0.0) {
    const double need = std::ceil(4.0 * path.length() / epsilon) + 1.0;
    m = std::max(m, static_cast<std::size_t>(std::min(need, 1e7)));
  }
  std::vector<double> ts(path.knots.begin(), path.knots.end());
  for (std::size_t i = 0; i < m; ++i) ts.push_back(static_cast<double>(i) / static_cast<double>(m - 1));
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

namespace detail {

inline double ulp_at(double scale) {
  scale = std::abs(scale);
  return std::nextafter(scale, std::numeric_limits<double>::infinity()) - scale;
}

// |u - v| within `ulps` units in the last place of `scale`.
inline bool near_ulps(double u, double v, double scale, double ulps = 4.0) {
  return std::abs(u - v) <= ulps * ulp_at(scale);
}

// Manifold sample pairs: all of them up to 200 samples, else a seeded subsample of 200^2.
inline std::vector<std::pair<std::size_t, std::size_t>> isometry_pairs(std::size_t m, std::uint64_t seed) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (m <= 200) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
    return pairs;
  }
  std::mt19937_64 rng(seed);
  pairs.reserve(200 * 200);
  for (std::size_t q = 0; q < 200 * 200; ++q) pairs.emplace_back(rng() % m, rng() % m);
  return pairs;
}

}  // namespace detail

using MotionFn = std::function<Point(std::size_t index, Coords x, double t)>;

/// Checks that every time slice of `motion` preserves pairwise difference
/// vectors of the manifold samples, coordinate-wise within 4 ulps of the
/// coordinate magnitudes involved.
inline bool verify_isometry(const PointCloud& manifold, const std::vector<double>& times, const MotionFn& motion,
                            std::uint64_t seed = 0) {
  const auto pairs = detail::isometry_pairs(manifold.size(), seed);
  if (pairs.empty()) return true;
  std::vector<Point> moved;
  for (double t : times) {
    moved.clear();
    moved.reserve(manifold.size());
    for (std::size_t i = 0; i < manifold.size(); ++i) moved.push_back(motion(i, manifold[i], t));
    for (const auto& [i, j] : pairs) {
      auto x = manifold[i], y = manifold[j];
      const Point& fx = moved[i];
      const Point& fy = moved[j];
      for (std::size_t k = 0; k < x.size(); ++k) {
        const double scale = std::max({std::abs(x[k]), std::abs(y[k]), std::abs(fx[k]), std::abs(fy[k])});
        if (!detail::near_ulps(fx[k] - fy[k], x[k] - y[k], scale)) return false;
      }
    }
  }
  return true;
}

inline bool verify_isometry(const MotionPlan& plan, std::size_t t_samples, std::uint64_t seed = 0) {
  const auto times = motion_time_samples(plan.path, 0.0, t_samples);
  return verify_isometry(plan.manifold, times,
                         [&](std::size_t, Coords x, double t) { return evaluate_motion(plan.path, x, t); }, seed);
}

struct AvoidanceReport {
  bool ok = false;
  double min_clearance = kUnbounded;          // over (x, t) against X
  std::optional<double> kspace_clearance;     // over t against K
  bool cross_check_ok = true;
};

inline constexpr double kCrossCheckTol = 1e-9;

/// Minimum over t > 0 and manifold samples x of dist(x + alpha(t), X). When
/// K is given, min over t of dist(alpha(t), K) is computed too and must
/// agree: equal up to rounding for the full product, never smaller than the
/// direct value for a subsample.
inline AvoidanceReport verify_avoidance(const MotionPlan& plan, std::size_t t_samples,
                                        const CSpaceObstacle* k = nullptr) {
  AvoidanceReport rep;
  const auto times = motion_time_samples(plan.path, plan.epsilon, t_samples);
  if (plan.obstacle.empty() || plan.manifold.empty()) {
    rep.ok = true;
    return rep;
  }
  const ClearanceOracle x_oracle(plan.obstacle, std::max(plan.epsilon, plan.obstacle.resolution()));
  std::optional<ClearanceOracle> k_oracle;
  if (k) k_oracle.emplace(k->points, std::max(plan.epsilon, k->points.resolution()));
  double kmin = kUnbounded;
  std::vector<double> p(plan.manifold.dim());
  for (double t : times) {
    if (t <= 0.0) continue;
    const Point a = evaluate_path(plan.path, t);
    for (std::size_t i = 0; i < plan.manifold.size(); ++i) {
      auto x = plan.manifold[i];
      for (std::size_t c = 0; c < p.size(); ++c) p[c] = x[c] + a[c];
      rep.min_clearance = std::min(rep.min_clearance, x_oracle.clearance(p));
    }
    if (k_oracle) kmin = std::min(kmin, k_oracle->clearance(a));
  }
  if (k) {
    rep.kspace_clearance = kmin;
    const bool lower_ok = kmin >= rep.min_clearance - kCrossCheckTol;
    const bool equal_ok = k->subsampled || std::abs(kmin - rep.min_clearance) <= kCrossCheckTol;
    rep.cross_check_ok = lower_ok && equal_ok;
  }
  rep.ok = rep.min_clearance >= plan.epsilon && rep.cross_check_ok;
  return rep;
}

/// F(x0, 1) == y0 coordinate-wise within 4 ulps.
inline bool verify_anchor(const PolyPath& path, const Point& x0, const Point& y0) {
  require_same_dim(x0, y0);
  const Point f = evaluate_motion(path, x0, 1.0);
  for (std::size_t k = 0; k < x0.dim(); ++k) {
    const double scale = std::max({std::abs(x0[k]), std::abs(y0[k]), std::abs(f[k])});
    if (!detail::near_ulps(f[k], y0[k], scale)) return false;
  }
  return true;
}

inline bool verify_anchor(const MotionPlan& plan, const Point& x0, const Point& y0) {
  return verify_anchor(plan.path, x0, y0);
}

inline constexpr std::size_t kDefaultTimeSamples = 64;

/// Runs every check and stores the record in plan.verification.
inline const Verification& verify_plan(MotionPlan& plan, const CSpaceObstacle* k = nullptr,
                                       std::size_t t_samples = kDefaultTimeSamples) {
  Verification v;
  v.isometry_ok = verify_isometry(plan, t_samples);
  const AvoidanceReport av = verify_avoidance(plan, t_samples, k);
  v.avoidance_ok = av.ok;
  v.min_clearance = av.min_clearance;
  v.kspace_clearance = av.kspace_clearance;
  v.cross_check_ok = av.cross_check_ok;
  if (plan.anchor) {
    v.anchored_target = evaluate_motion(plan.path, plan.anchor->x0, 1.0);
    v.anchor_ok = verify_anchor(plan, plan.anchor->x0, plan.anchor->y0);
  }
  plan.verification = std::move(v);
  return plan.verification;
}

}  // namespace fracmove
