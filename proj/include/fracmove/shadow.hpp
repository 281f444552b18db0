#pragma once

// Straight escape lines from a source point to a target set past an
// obstacle: the cone over the target, the radial projection of the
// obstacle onto the target (its shadow), and a search for a target sample
// outside the thickened shadow.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "clearance.hpp"
#include "core.hpp"

namespace fracmove {

/// Cone with vertex `source` over the `target` samples. `safe_radius` is the
/// radius of an obstacle-free ball about the source and `reach` the largest
/// source-to-target distance.
class ConeFrame {
 public:
  ConeFrame(Point source, PointCloud target, double safe_radius, double reach)
      : source_(std::move(source)), target_(std::move(target)), safe_radius_(safe_radius), reach_(reach) {
    require_same_dim(target_, source_);
    if (target_.empty()) throw InvalidArgument("cone target is empty");
    if (!(safe_radius_ > 0.0) || !(safe_radius_ < reach_)) throw InvalidArgument("cone frame needs 0 < safe_radius < reach");
    const std::size_t n = source_.dim();
    dirs_.resize(target_.size() * n);
    lens_.resize(target_.size());
    for (std::size_t j = 0; j < target_.size(); ++j) {
      auto y = target_[j];
      const double len = distance(y, source_);
      if (len == 0.0) throw InvalidArgument("cone source lies on the target");
      lens_[j] = len;
      for (std::size_t k = 0; k < n; ++k) dirs_[j * n + k] = (y[k] - source_[k]) / len;
    }
  }

  const Point& source() const noexcept { return source_; }
  const PointCloud& target() const noexcept { return target_; }
  double safe_radius() const noexcept { return safe_radius_; }
  double reach() const noexcept { return reach_; }

  Coords direction(std::size_t j) const { return {dirs_.data() + j * source_.dim(), source_.dim()}; }
  double length(std::size_t j) const { return lens_[j]; }

 private:
  Point source_;
  PointCloud target_;
  double safe_radius_;
  double reach_;
  std::vector<double> dirs_;
  std::vector<double> lens_;
};

/// Builds the frame: safe radius is half the distance from s to the nearest
/// obstacle sample (capped below the reach), reach the farthest target.
inline ConeFrame make_cone_frame(const Point& s, const PointCloud& target, const PointCloud& obstacle) {
  require_same_dim(target, s);
  require_same_dim(obstacle, s);
  if (target.empty()) throw InvalidArgument("cone target is empty");
  double reach = 0.0;
  for (std::size_t j = 0; j < target.size(); ++j) reach = std::max(reach, distance(s, target[j]));
  if (!(reach > 0.0)) throw InvalidArgument("cone source coincides with the whole target");
  double safe = reach / 2.0;
  if (!obstacle.empty()) {
    const double d = ClearanceOracle(obstacle).clearance(s);
    if (d <= obstacle.resolution())
      throw InvalidArgument("source lies within the obstacle's sampling resolution");
    safe = std::min(d / 2.0, reach / 2.0);
  }
  return ConeFrame(s, target, safe, reach);
}

/// Angle between two unit vectors, accurate for small angles.
inline double unit_angle(Coords u, Coords v) {
  double dm = 0.0, dp = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    dm += (u[k] - v[k]) * (u[k] - v[k]);
    dp += (u[k] + v[k]) * (u[k] + v[k]);
  }
  return 2.0 * std::atan2(std::sqrt(dm), std::sqrt(dp));
}

struct ConeHit {
  double t;            // p = t*s + (1-t)*y
  std::size_t index;   // target sample y
  double angle;        // deviation of ray s->p from ray s->y
};

/// Best target sample whose ray from the source passes within `angular_tol`
/// of p, with p no farther than that sample. Ties go to the lowest index.
inline std::optional<ConeHit> cone_membership(const ConeFrame& frame, Coords p, double angular_tol) {
  require_same_dim(frame.target(), p);
  const std::size_t n = p.size();
  std::vector<double> u(n);
  const double rho = distance(p, frame.source());
  if (rho == 0.0) throw InvalidArgument("cone membership of the vertex itself");
  for (std::size_t k = 0; k < n; ++k) u[k] = (p[k] - frame.source()[k]) / rho;
  const double cos_tol = std::cos(std::min(angular_tol, 3.14159));
  std::optional<ConeHit> best;
  for (std::size_t j = 0; j < frame.target().size(); ++j) {
    if (rho > frame.length(j) * (1.0 + 1e-12)) continue;
    auto d = frame.direction(j);
    double c = 0.0;
    for (std::size_t k = 0; k < n; ++k) c += u[k] * d[k];
    if (c < cos_tol - 1e-12) continue;
    const double ang = unit_angle(u, d);
    if (ang > angular_tol) continue;
    if (!best || ang < best->angle) best = ConeHit{std::clamp(1.0 - rho / frame.length(j), 0.0, 1.0), j, ang};
  }
  return best;
}

/// Shadow of a cone point on the target: the sample whose ray best matches s->a.
inline std::size_t project_to_target_index(const ConeFrame& frame, Coords a, double angular_tol) {
  if (distance(a, frame.source()) < frame.safe_radius())
    throw InvalidArgument("point lies inside the safe ball of the cone");
  auto hit = cone_membership(frame, a, angular_tol);
  if (!hit) throw InvalidArgument("point is not in the cone");
  return hit->index;
}

inline Point project_to_target(const ConeFrame& frame, Coords a, double angular_tol) {
  return frame.target().point(project_to_target_index(frame, a, angular_tol));
}

/// Lipschitz constant of the projection outside the safe ball: reach / safe_radius.
inline double lipschitz_bound(const ConeFrame& frame) { return frame.reach() / frame.safe_radius(); }

/// Default ray tolerance: target spacing seen from the nearest target.
inline double default_angular_tol(const Point& s, const PointCloud& target) {
  double near = kUnbounded;
  for (std::size_t j = 0; j < target.size(); ++j) near = std::min(near, distance(s, target[j]));
  if (!(near > 0.0) || !std::isfinite(near)) throw InvalidArgument("cannot derive an angular tolerance");
  return target.resolution() / near;
}

enum class EscapeOutcome { escape, covered };

struct CoverWitness {
  enum class Kind { shadow, blocked };
  std::size_t target;
  std::size_t obstacle;
  Kind kind;  // shadow: inside the thickened shadow; blocked: segment clearance < eps
};

struct EscapeResult {
  EscapeOutcome outcome = EscapeOutcome::covered;
  std::optional<Segment> segment;
  std::optional<std::size_t> target_index;
  std::optional<double> clearance;
  double uncovered_fraction = 0.0;
  std::vector<CoverWitness> certificate;  // one entry per target when covered
  double safe_radius = 0.0;
  double reach = 0.0;
  double lipschitz = 0.0;
  double epsilon = 0.0;
};

/// Marks a target covered when an obstacle sample in the cone projects
/// within lipschitz_bound * epsilon of it. Among uncovered targets the one
/// with the largest exhaustively verified clearance >= epsilon wins (lowest
/// index on ties); if none verifies, the result is `covered` with a witness
/// for every target.
inline EscapeResult find_escape_line(const Point& s, const PointCloud& target, const PointCloud& obstacle,
                                     double epsilon, double angular_tol) {
  require_same_dim(target, s);
  require_same_dim(obstacle, s);
  double min_eps = target.resolution();
  if (!obstacle.empty()) min_eps = std::max(min_eps, obstacle.resolution());
  if (!(epsilon >= min_eps)) throw InvalidArgument("epsilon must be at least the sampling resolutions");
  if (!(angular_tol > 0.0)) throw InvalidArgument("angular tolerance must be positive");

  const ConeFrame frame = make_cone_frame(s, target, obstacle);
  EscapeResult res;
  res.safe_radius = frame.safe_radius();
  res.reach = frame.reach();
  res.lipschitz = lipschitz_bound(frame);
  res.epsilon = epsilon;

  const std::size_t ny = target.size();
  std::vector<std::optional<std::size_t>> witness(ny);
  if (!obstacle.empty()) {
    const double cover = res.lipschitz * epsilon;
    std::optional<GridIndex> grid;
    if (ny > kDefaultIndexThreshold && target.dim() <= kMaxIndexedDim) grid.emplace(target, cover);
    std::vector<bool> spread(ny, false);
    for (std::size_t i = 0; i < obstacle.size(); ++i) {
      auto a = obstacle[i];
      if (distance(a, s) < frame.safe_radius()) continue;
      auto hit = cone_membership(frame, a, angular_tol);
      if (!hit || spread[hit->index]) continue;
      // Obstacles are visited in index order, so the first witness is the lowest.
      spread[hit->index] = true;
      auto y = target[hit->index];
      auto mark = [&](std::size_t j) {
        if (!witness[j] && distance(target[j], y) <= cover) witness[j] = i;
      };
      if (grid)
        grid->for_each_near_segment(y, y, cover, mark);
      else
        for (std::size_t j = 0; j < ny; ++j) mark(j);
    }
  }

  std::vector<std::size_t> uncovered;
  for (std::size_t j = 0; j < ny; ++j)
    if (!witness[j]) uncovered.push_back(j);
  res.uncovered_fraction = static_cast<double>(uncovered.size()) / static_cast<double>(ny);

  std::vector<Nearest> near(ny);
  for (std::size_t j : uncovered) near[j] = nearest_to_segment(s, target[j], obstacle);
  std::stable_sort(uncovered.begin(), uncovered.end(),
                   [&](std::size_t a, std::size_t b) { return near[a].distance > near[b].distance; });
  for (std::size_t j : uncovered) {
    if (near[j].distance >= epsilon) {
      res.outcome = EscapeOutcome::escape;
      res.segment.emplace(s, target.point(j));
      res.target_index = j;
      res.clearance = near[j].distance;
      return res;
    }
  }
  res.outcome = EscapeOutcome::covered;
  for (std::size_t j = 0; j < ny; ++j) {
    if (witness[j])
      res.certificate.push_back({j, *witness[j], CoverWitness::Kind::shadow});
    else
      res.certificate.push_back({j, *near[j].index, CoverWitness::Kind::blocked});
  }
  return res;
}

}  // namespace fracmove
