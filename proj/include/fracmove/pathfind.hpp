#pragma once

// Escape paths from the origin through the complement of a configuration-space
// obstacle K: waypoints on spheres of halving radii, each joined to the next
// by a segment that keeps clearance epsilon from K, finished by a straight
// segment inside the obstacle-free ball about the origin.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "clearance.hpp"
#include "core.hpp"
#include "cspace.hpp"

namespace fracmove {

struct NoWaypointFound : Error {
  explicit NoWaypointFound(double r)
      : Error("no clear waypoint found on the sphere of radius " + std::to_string(r)), radius(r) {}
  double radius;
};

struct ObstacleAtOrigin : Error {
  explicit ObstacleAtOrigin(double d)
      : Error("obstacle too close to the origin (clearance " + std::to_string(d) + ")"), clearance(d) {}
  double clearance;
};

struct TargetBlocked : Error {
  using Error::Error;
};

/// Deterministic low-discrepancy directions on S^{n-1}: a Halton sequence
/// with a seeded Cranley-Patterson shift, pushed through Box-Muller and
/// normalised.
class SphereSequence {
 public:
  SphereSequence(std::size_t dim, std::uint64_t seed) : dim_(dim) {
    if (dim == 0) throw InvalidArgument("sphere sequence needs dimension >= 1");
    const std::size_t pairs = (dim + 1) / 2;
    if (2 * pairs > kPrimes.size()) throw InvalidArgument("sphere sequence supports at most 16 dimensions");
    shift_.resize(2 * pairs);
    for (std::size_t k = 0; k < shift_.size(); ++k)
      shift_[k] = static_cast<double>(splitmix64(seed * 0x9E3779B97F4A7C15ULL + k) >> 11) * 0x1.0p-53;
  }

  std::size_t dim() const noexcept { return dim_; }

  /// Unit vector number `i`.
  Point direction(std::size_t i) const {
    std::vector<double> g(shift_.size());
    for (std::size_t p = 0; p < shift_.size() / 2; ++p) {
      const double u1 = uniform(i + 1, 2 * p);
      const double u2 = uniform(i + 1, 2 * p + 1);
      const double r = std::sqrt(-2.0 * std::log1p(-u1));
      g[2 * p] = r * std::cos(2.0 * std::numbers::pi * u2);
      g[2 * p + 1] = r * std::sin(2.0 * std::numbers::pi * u2);
    }
    g.resize(dim_);
    const double len = norm(g);
    if (!(len > 0.0)) {
      std::vector<double> e(dim_, 0.0);
      e[0] = 1.0;
      return Point(std::move(e));
    }
    for (double& v : g) v /= len;
    return Point(std::move(g));
  }

 private:
  static constexpr std::array<unsigned, 16> kPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

  static double radical_inverse(std::size_t i, unsigned base) {
    double inv = 1.0 / base, f = inv, r = 0.0;
    while (i > 0) {
      r += f * static_cast<double>(i % base);
      i /= base;
      f *= inv;
    }
    return r;
  }

  double uniform(std::size_t i, std::size_t axis) const {
    double u = radical_inverse(i, kPrimes[axis]) + shift_[axis];
    if (u >= 1.0) u -= 1.0;
    return u;
  }

  std::size_t dim_;
  std::vector<double> shift_;
};

/// Piecewise-linear path alpha: [0,1] -> R^n with alpha(0) = origin.
/// Vertices run from the origin outward; knots are the vertex parameters.
struct PolyPath {
  std::vector<Point> vertices;
  std::vector<double> knots;
  double epsilon = 0.0;
  double terminal_radius = 0.0;

  std::size_t dim() const { return vertices.front().dim(); }
  const Point& endpoint() const { return vertices.back(); }

  double length() const {
    double len = 0.0;
    for (std::size_t i = 1; i < vertices.size(); ++i) len += distance(vertices[i - 1], vertices[i]);
    return len;
  }

  void validate() const {
    if (vertices.size() < 2 || vertices.size() != knots.size()) throw InvalidArgument("path needs matching vertices and knots");
    for (const Point& v : vertices) require_same_dim(vertices.front(), v);
    for (double c : vertices.front().coords())
      if (c != 0.0) throw InvalidArgument("path must start at the origin");
    if (knots.front() != 0.0 || knots.back() != 1.0) throw InvalidArgument("path knots must run from 0 to 1");
    for (std::size_t i = 1; i < knots.size(); ++i)
      if (!(knots[i] > knots[i - 1])) throw InvalidArgument("path knots must increase strictly");
  }
};

/// Knots proportional to arc length along the vertex chain.
inline PolyPath make_path(std::vector<Point> vertices, double epsilon, double terminal_radius) {
  PolyPath path;
  path.vertices = std::move(vertices);
  path.epsilon = epsilon;
  path.terminal_radius = terminal_radius;
  std::vector<double> cum{0.0};
  for (std::size_t i = 1; i < path.vertices.size(); ++i)
    cum.push_back(cum.back() + distance(path.vertices[i - 1], path.vertices[i]));
  const double total = cum.back();
  if (!(total > 0.0)) throw InvalidArgument("path has zero length");
  for (double& c : cum) c /= total;
  cum.back() = 1.0;
  path.knots = std::move(cum);
  path.validate();
  return path;
}

inline Point evaluate_path(const PolyPath& path, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("path parameter outside [0,1]");
  auto it = std::upper_bound(path.knots.begin(), path.knots.end(), t);
  if (it == path.knots.end()) return path.vertices.back();
  const auto hi = static_cast<std::size_t>(it - path.knots.begin());
  const std::size_t lo = hi - 1;
  if (t == path.knots[lo]) return path.vertices[lo];
  const double s = (t - path.knots[lo]) / (path.knots[hi] - path.knots[lo]);
  const Point& a = path.vertices[lo];
  const Point& b = path.vertices[hi];
  std::vector<double> p(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) p[k] = a[k] + s * (b[k] - a[k]);
  return Point(std::move(p));
}

inline constexpr std::size_t kDefaultMaxTries = 4096;

/// First candidate b (|b| = radius) of the seeded sphere sequence whose
/// segment from `prev` keeps clearance epsilon from K. Without `prev` only
/// the point b itself is checked.
inline Point find_sphere_waypoint(const ClearanceOracle& k, double radius, const std::optional<Point>& prev,
                                  double epsilon, std::uint64_t seed, std::size_t max_tries = kDefaultMaxTries) {
  if (!(radius > 0.0)) throw InvalidArgument("waypoint radius must be positive");
  const std::size_t n = k.obstacle().dim();
  if (prev) {
    require_same_dim(k.obstacle(), *prev);
    if (k.clearance(*prev) < epsilon) throw InvalidArgument("previous waypoint lies within epsilon of K");
  }
  const SphereSequence seq(n, seed);
  for (std::size_t i = 0; i < max_tries; ++i) {
    const Point u = seq.direction(i);
    std::vector<double> b(n);
    for (std::size_t c = 0; c < n; ++c) b[c] = radius * u[c];
    const bool ok = prev ? k.clear(*prev, b, epsilon) : k.clearance(b) >= epsilon;
    if (ok) return Point(std::move(b));
  }
  throw NoWaypointFound(radius);
}

inline Point find_sphere_waypoint(const CSpaceObstacle& k, double radius, const std::optional<Point>& prev,
                                  double epsilon, std::uint64_t seed, std::size_t max_tries = kDefaultMaxTries) {
  return find_sphere_waypoint(ClearanceOracle(k.points, epsilon), radius, prev, epsilon, seed, max_tries);
}

/// Path from the origin to b1. Returns the straight segment when it is
/// already clear; otherwise places waypoints on spheres of radius |b1|/2,
/// |b1|/4, ... until the radius drops to dist(0,K)/4, then goes straight
/// to the origin.
inline PolyPath build_escape_path(const ClearanceOracle& k, const Point& b1, double epsilon, std::uint64_t seed,
                                  std::size_t max_tries = kDefaultMaxTries) {
  require_same_dim(k.obstacle(), b1);
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  const Point origin = Point::origin(b1.dim());
  const double r1 = norm(b1);
  if (!(r1 > 0.0)) throw InvalidArgument("path endpoint must differ from the origin");
  const double d0 = k.clearance(origin);
  if (!(d0 > 2.0 * epsilon)) throw ObstacleAtOrigin(d0);
  if (k.clearance(b1) < epsilon) throw TargetBlocked("path endpoint lies within epsilon of K");

  if (k.clear(origin, b1, epsilon)) return make_path({origin, b1}, epsilon, r1);

  std::vector<Point> outward{b1};
  double r = r1;
  std::uint64_t level = 0;
  while (r > d0 / 4.0) {
    r /= 2.0;
    ++level;
    outward.push_back(find_sphere_waypoint(k, r, outward.back(), epsilon, splitmix64(seed ^ level), max_tries));
  }
  std::vector<Point> vertices{origin};
  vertices.insert(vertices.end(), outward.rbegin(), outward.rend());
  return make_path(std::move(vertices), epsilon, r);
}

inline PolyPath build_escape_path(const CSpaceObstacle& k, const Point& b1, double epsilon, std::uint64_t seed,
                                  std::size_t max_tries = kDefaultMaxTries) {
  return build_escape_path(ClearanceOracle(k.points, epsilon), b1, epsilon, seed, max_tries);
}

/// Escape path ending exactly at target_offset = y0 - x0, so that the
/// translation carries x0 onto y0.
inline PolyPath anchored_escape_path(const ClearanceOracle& k, const Point& target_offset, double epsilon,
                                     std::uint64_t seed, std::size_t max_tries = kDefaultMaxTries) {
  require_same_dim(k.obstacle(), target_offset);
  if (k.clearance(target_offset) < epsilon) throw TargetBlocked("anchor target lies within epsilon of K");
  return build_escape_path(k, target_offset, epsilon, seed, max_tries);
}

inline PolyPath anchored_escape_path(const CSpaceObstacle& k, const Point& target_offset, double epsilon,
                                     std::uint64_t seed, std::size_t max_tries = kDefaultMaxTries) {
  return anchored_escape_path(ClearanceOracle(k.points, epsilon), target_offset, epsilon, seed, max_tries);
}

/// Escape path confined to the ball of radius max_displacement: the endpoint
/// is a clear point on the sphere of radius max_displacement / 2.
inline PolyPath small_displacement_path(const ClearanceOracle& k, double max_displacement, double epsilon,
                                        std::uint64_t seed, std::size_t max_tries = kDefaultMaxTries) {
  if (!(max_displacement > 4.0 * epsilon)) throw InvalidArgument("max_displacement must exceed 4 * epsilon");
  const Point b1 = find_sphere_waypoint(k, max_displacement / 2.0, std::nullopt, epsilon, seed, max_tries);
  return build_escape_path(k, b1, epsilon, seed, max_tries);
}

inline PolyPath small_displacement_path(const CSpaceObstacle& k, double max_displacement, double epsilon,
                                        std::uint64_t seed, std::size_t max_tries = kDefaultMaxTries) {
  return small_displacement_path(ClearanceOracle(k.points, epsilon), max_displacement, epsilon, seed, max_tries);
}

}  // namespace fracmove
