#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "core.hpp"

namespace fracmove {

/// Obstacle samples inside this ball are ignored by a clearance query. Used
/// when a path endpoint legitimately touches the set.
struct ExclusionBall {
  Point center;
  double radius;
};

/// Minimum distance together with the (lowest) sample index attaining it.
struct Nearest {
  double distance = kUnbounded;
  std::optional<std::size_t> index;

  void offer(double d, std::size_t i) {
    if (d < distance || (d == distance && index && i < *index)) {
      distance = d;
      index = i;
    }
  }
};

namespace detail {

inline bool excluded(const std::optional<ExclusionBall>& ex, Coords p) {
  return ex && distance(ex->center, p) <= ex->radius;
}

}  // namespace detail

/// Exhaustive minimum distance from segment [a,b] to the samples of `obstacle`.
inline Nearest nearest_to_segment(Coords a, Coords b, const PointCloud& obstacle,
                                  const std::optional<ExclusionBall>& exclude = std::nullopt) {
  require_same_dim(obstacle, a);
  require_same_dim(a, b);
  Nearest best;
  for (std::size_t i = 0; i < obstacle.size(); ++i) {
    if (detail::excluded(exclude, obstacle[i])) continue;
    best.offer(segment_point_distance(a, b, obstacle[i]), i);
  }
  return best;
}

/// Exhaustive segment clearance; kUnbounded for an empty obstacle.
inline double segment_clearance(const Segment& s, const PointCloud& obstacle,
                                const std::optional<ExclusionBall>& exclude = std::nullopt) {
  return nearest_to_segment(s.a, s.b, obstacle, exclude).distance;
}

inline constexpr std::size_t kMaxIndexedDim = 8;

/// Uniform grid bucketing of a point cloud. The cloud must outlive the index.
class GridIndex {
 public:
  using Key = std::array<std::int64_t, kMaxIndexedDim>;

  GridIndex(const PointCloud& cloud, double cell) : cloud_(&cloud), cell_(cell) {
    if (!(cell > 0.0)) throw InvalidArgument("grid cell size must be positive");
    if (cloud.dim() > kMaxIndexedDim) throw InvalidArgument("grid index supports at most 8 dimensions");
    const std::size_t n = cloud.size();
    std::vector<Key> keys(n);
    for (std::size_t i = 0; i < n; ++i) keys[i] = key_of(cloud[i]);
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), std::uint32_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::uint32_t x, std::uint32_t y) { return keys[x] < keys[y]; });
    std::size_t begin = 0;
    while (begin < n) {
      std::size_t end = begin + 1;
      while (end < n && keys[order_[end]] == keys[order_[begin]]) ++end;
      cells_.emplace(keys[order_[begin]], Range{static_cast<std::uint32_t>(begin),
                                                static_cast<std::uint32_t>(end)});
      begin = end;
    }
  }

  double cell() const noexcept { return cell_; }
  const PointCloud& cloud() const noexcept { return *cloud_; }
  std::size_t occupied_cells() const noexcept { return cells_.size(); }

  Key key_of(Coords p) const {
    Key k{};
    for (std::size_t i = 0; i < p.size(); ++i) k[i] = cell_coord(p[i]);
    return k;
  }

  /// Calls visit(i) for every sample that may lie within `radius` of the
  /// segment [a,b]. The visited set is a superset of the true neighbours;
  /// a sample may be visited at most once.
  template <class Visit>
  void for_each_near_segment(Coords a, Coords b, double radius, Visit&& visit) const {
    const std::size_t n = cloud_->dim();
    require_same_dim(*cloud_, a);
    require_same_dim(a, b);
    const double len = distance(a, b);
    const auto steps = static_cast<std::size_t>(std::ceil(len / cell_));
    const double step = steps == 0 ? 0.0 : len / static_cast<double>(steps);
    const double half = radius + 0.5 * step;

    // Per-sample boxes along the segment.
    double per_box = 1.0;
    for (std::size_t i = 0; i < n; ++i) per_box *= std::floor(2.0 * half / cell_) + 2.0;
    const double total = per_box * static_cast<double>(steps + 1);

    if (total > static_cast<double>(cells_.size())) {
      // Cheaper to filter occupied cells against the whole swept box.
      Key lo{}, hi{};
      for (std::size_t i = 0; i < n; ++i) {
        lo[i] = cell_coord(std::min(a[i], b[i]) - half);
        hi[i] = cell_coord(std::max(a[i], b[i]) + half);
      }
      for (const auto& [key, range] : cells_) {
        bool inside = true;
        for (std::size_t i = 0; i < n && inside; ++i) inside = key[i] >= lo[i] && key[i] <= hi[i];
        if (inside)
          for (std::uint32_t j = range.begin; j < range.end; ++j) visit(std::size_t{order_[j]});
      }
      return;
    }

    std::unordered_set<Key, KeyHash> seen;
    std::vector<double> c(n);
    Key lo{}, hi{}, cur{};
    for (std::size_t s = 0; s <= steps; ++s) {
      const double t = steps == 0 ? 0.0 : static_cast<double>(s) / static_cast<double>(steps);
      for (std::size_t i = 0; i < n; ++i) {
        c[i] = a[i] + t * (b[i] - a[i]);
        lo[i] = cell_coord(c[i] - half);
        hi[i] = cell_coord(c[i] + half);
      }
      if (s == steps) {
        // Snap the last box to the exact endpoint.
        for (std::size_t i = 0; i < n; ++i) {
          lo[i] = std::min(lo[i], cell_coord(b[i] - half));
          hi[i] = std::max(hi[i], cell_coord(b[i] + half));
        }
      }
      cur = lo;
      while (true) {
        if (seen.insert(cur).second) {
          if (auto it = cells_.find(cur); it != cells_.end())
            for (std::uint32_t j = it->second.begin; j < it->second.end; ++j)
              visit(std::size_t{order_[j]});
        }
        std::size_t axis = 0;
        while (axis < n && cur[axis] == hi[axis]) {
          cur[axis] = lo[axis];
          ++axis;
        }
        if (axis == n) break;
        ++cur[axis];
      }
    }
  }

 private:
  struct Range {
    std::uint32_t begin;
    std::uint32_t end;
  };

  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::uint64_t h = 0x9e3779b97f4a7c15ULL;
      for (auto v : k) {
        h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      }
      return static_cast<std::size_t>(h);
    }
  };

  std::int64_t cell_coord(double x) const {
    const double q = std::floor(x / cell_);
    constexpr double lim = 4.0e18;
    return static_cast<std::int64_t>(std::clamp(q, -lim, lim));
  }

  const PointCloud* cloud_;
  double cell_;
  std::vector<std::uint32_t> order_;
  std::unordered_map<Key, Range, KeyHash> cells_;
};

inline constexpr std::size_t kDefaultIndexThreshold = 256;

/// Clearance queries against a fixed obstacle cloud. Above the size
/// threshold a GridIndex answers the query; results (distance and witness
/// index) are identical to the exhaustive scan.
class ClearanceOracle {
 public:
  explicit ClearanceOracle(const PointCloud& obstacle, double cell = 0.0,
                           std::size_t index_threshold = kDefaultIndexThreshold)
      : obstacle_(&obstacle) {
    if (obstacle.size() > index_threshold && obstacle.dim() <= kMaxIndexedDim) {
      if (!(cell > 0.0)) cell = default_cell(obstacle);
      index_.emplace(obstacle, cell);
      auto [lo, hi] = bounding_box(obstacle);
      lo_ = std::move(lo);
      hi_ = std::move(hi);
    }
  }

  const PointCloud& obstacle() const noexcept { return *obstacle_; }
  bool indexed() const noexcept { return index_.has_value(); }

  Nearest nearest(Coords a, Coords b, const std::optional<ExclusionBall>& exclude = std::nullopt) const {
    if (!index_) return nearest_to_segment(a, b, *obstacle_, exclude);
    const double far = far_bound(a, b);
    for (double r = index_->cell(); r < far; r *= 4.0) {
      Nearest best = within(a, b, r, exclude);
      if (best.distance <= r) return best;
    }
    return nearest_to_segment(a, b, *obstacle_, exclude);
  }

  Nearest nearest(Coords p) const { return nearest(p, p); }

  double clearance(Coords a, Coords b, const std::optional<ExclusionBall>& exclude = std::nullopt) const {
    return nearest(a, b, exclude).distance;
  }
  double clearance(Coords p) const { return nearest(p).distance; }

  /// True iff the segment keeps distance >= eps from every (non-excluded) sample.
  bool clear(Coords a, Coords b, double eps,
             const std::optional<ExclusionBall>& exclude = std::nullopt) const {
    if (!index_) {
      for (std::size_t i = 0; i < obstacle_->size(); ++i) {
        if (detail::excluded(exclude, (*obstacle_)[i])) continue;
        if (segment_point_distance(a, b, (*obstacle_)[i]) < eps) return false;
      }
      return true;
    }
    bool ok = true;
    index_->for_each_near_segment(a, b, eps, [&](std::size_t i) {
      if (!ok || detail::excluded(exclude, (*obstacle_)[i])) return;
      if (segment_point_distance(a, b, (*obstacle_)[i]) < eps) ok = false;
    });
    return ok;
  }

 private:
  static double default_cell(const PointCloud& c) {
    auto [lo, hi] = bounding_box(c);
    double extent = 0.0;
    for (std::size_t i = 0; i < c.dim(); ++i) extent = std::max(extent, hi[i] - lo[i]);
    const double per_axis = std::pow(static_cast<double>(c.size()), 1.0 / static_cast<double>(c.dim()));
    return std::max({c.resolution(), extent / per_axis, 1e-12});
  }

  // Any r at least this large reaches every sample from every point of [a,b].
  double far_bound(Coords a, Coords b) const {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double lo = std::min({a[i], b[i], lo_[i]});
      const double hi = std::max({a[i], b[i], hi_[i]});
      s += (hi - lo) * (hi - lo);
    }
    return std::sqrt(s);
  }

  Nearest within(Coords a, Coords b, double r, const std::optional<ExclusionBall>& exclude) const {
    Nearest best;
    index_->for_each_near_segment(a, b, r, [&](std::size_t i) {
      if (detail::excluded(exclude, (*obstacle_)[i])) return;
      best.offer(segment_point_distance(a, b, (*obstacle_)[i]), i);
    });
    return best;
  }

  const PointCloud* obstacle_;
  std::optional<GridIndex> index_;
  std::vector<double> lo_, hi_;
};

}  // namespace fracmove
