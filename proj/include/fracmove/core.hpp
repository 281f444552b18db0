#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fracmove {

// Error hierarchy. Everything thrown by the library derives from Error.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  DimensionMismatch(std::size_t a, std::size_t b)
      : Error("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

struct InvalidArgument : Error {
  using Error::Error;
};

using Coords = std::span<const double>;

/// Sentinel for "no obstacle in range": the minimum over an empty set.
inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// A point of R^n. Always finite, never empty.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) { validate(); }
  Point(std::initializer_list<double> coords) : coords_(coords) { validate(); }
  explicit Point(Coords coords) : coords_(coords.begin(), coords.end()) { validate(); }

  static Point origin(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  Coords coords() const noexcept { return coords_; }
  operator Coords() const noexcept { return coords_; }
  const std::vector<double>& vec() const noexcept { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  void validate() const {
    if (coords_.empty()) throw InvalidArgument("point must have at least one coordinate");
    for (double c : coords_)
      if (!std::isfinite(c)) throw InvalidArgument("point coordinates must be finite");
  }

  std::vector<double> coords_;
};

inline void require_same_dim(Coords a, Coords b) {
  if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
}

inline Point operator+(Coords a, Coords b) {
  require_same_dim(a, b);
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return Point(std::move(r));
}
inline Point operator+(const Point& a, const Point& b) { return a.coords() + b.coords(); }

inline Point operator-(Coords a, Coords b) {
  require_same_dim(a, b);
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return Point(std::move(r));
}
inline Point operator-(const Point& a, const Point& b) { return a.coords() - b.coords(); }

inline Point operator*(double s, Coords a) {
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return Point(std::move(r));
}
inline Point operator*(double s, const Point& a) { return s * a.coords(); }

inline double dot(Coords a, Coords b) {
  require_same_dim(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(Coords a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

inline double distance(Coords p, Coords q) {
  require_same_dim(p, q);
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = p[i] - q[i];
    s += d * d;
  }
  return std::sqrt(s);
}

struct Segment {
  Point a;
  Point b;

  Segment(Point a_, Point b_) : a(std::move(a_)), b(std::move(b_)) { require_same_dim(a, b); }
  std::size_t dim() const noexcept { return a.dim(); }
};

/// Minimum distance from p to the closed segment [a, b].
inline double segment_point_distance(Coords a, Coords b, Coords p) {
  require_same_dim(a, b);
  require_same_dim(a, p);
  const std::size_t n = a.size();
  double len2 = 0.0;
  double proj = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = b[i] - a[i];
    len2 += d * d;
    proj += (p[i] - a[i]) * d;
  }
  const double da = distance(a, p);
  if (len2 == 0.0) return da;
  const double t = std::clamp(proj / len2, 0.0, 1.0);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = p[i] - (a[i] + t * (b[i] - a[i]));
    s += d * d;
  }
  // Endpoint distances bound the result exactly, not just up to rounding.
  return std::min({std::sqrt(s), da, distance(b, p)});
}

inline double segment_point_distance(const Segment& s, Coords p) {
  return segment_point_distance(s.a, s.b, p);
}

/// Axis-aligned box with lo[i] < hi[i] on every axis.
class Window {
 public:
  Window(Point lo, Point hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    require_same_dim(lo_, hi_);
    for (std::size_t i = 0; i < lo_.dim(); ++i)
      if (!(lo_[i] < hi_[i])) throw InvalidArgument("window requires lo < hi on every axis");
  }

  static Window cube(std::size_t dim, double lo, double hi) {
    return Window(Point(std::vector<double>(dim, lo)), Point(std::vector<double>(dim, hi)));
  }

  const Point& lo() const noexcept { return lo_; }
  const Point& hi() const noexcept { return hi_; }
  std::size_t dim() const noexcept { return lo_.dim(); }

  // Closed containment; generated lattices include the boundary.
  bool contains(Coords p) const {
    require_same_dim(lo_, p);
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] < lo_[i] || p[i] > hi_[i]) return false;
    return true;
  }

 private:
  Point lo_;
  Point hi_;
};

/// Finite sample of a subset of R^n. Coordinates are stored row-major in a
/// single buffer; point(i) views are valid for the lifetime of the cloud.
class PointCloud {
 public:
  PointCloud(std::size_t dim, double resolution, std::string label = {},
             std::optional<double> true_dim = std::nullopt)
      : dim_(dim), resolution_(resolution), label_(std::move(label)), true_dim_(true_dim) {
    if (dim_ == 0) throw InvalidArgument("point cloud dimension must be positive");
    if (!(resolution_ > 0.0) || !std::isfinite(resolution_))
      throw InvalidArgument("point cloud resolution must be positive");
    if (true_dim_ && (*true_dim_ < 0.0 || *true_dim_ > static_cast<double>(dim_)))
      throw InvalidArgument("true_dim must lie in [0, ambient_dim]");
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return data_.size() / dim_; }
  bool empty() const noexcept { return data_.empty(); }
  double resolution() const noexcept { return resolution_; }
  const std::string& label() const noexcept { return label_; }
  const std::optional<double>& true_dim() const noexcept { return true_dim_; }

  void set_label(std::string label) { label_ = std::move(label); }
  void set_resolution(double h) {
    if (!(h > 0.0)) throw InvalidArgument("point cloud resolution must be positive");
    resolution_ = h;
  }
  void set_true_dim(std::optional<double> d) { true_dim_ = d; }

  Coords operator[](std::size_t i) const noexcept { return {data_.data() + i * dim_, dim_}; }
  Point point(std::size_t i) const { return Point((*this)[i]); }

  void reserve(std::size_t n) { data_.reserve(n * dim_); }

  void push_back(Coords p) {
    if (p.size() != dim_) throw DimensionMismatch(dim_, p.size());
    for (double c : p)
      if (!std::isfinite(c)) throw InvalidArgument("point coordinates must be finite");
    data_.insert(data_.end(), p.begin(), p.end());
  }

  const std::vector<double>& raw() const noexcept { return data_; }

 private:
  std::size_t dim_;
  double resolution_;
  std::string label_;
  std::optional<double> true_dim_;
  std::vector<double> data_;
};

inline void require_same_dim(const PointCloud& c, Coords p) {
  if (c.dim() != p.size()) throw DimensionMismatch(c.dim(), p.size());
}

/// Bounding box of a nonempty cloud as (lo, hi) coordinate vectors.
inline std::pair<std::vector<double>, std::vector<double>> bounding_box(const PointCloud& c) {
  if (c.empty()) throw InvalidArgument("bounding box of an empty cloud");
  std::vector<double> lo(c[0].begin(), c[0].end());
  std::vector<double> hi = lo;
  for (std::size_t i = 1; i < c.size(); ++i) {
    auto p = c[i];
    for (std::size_t k = 0; k < c.dim(); ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  }
  return {lo, hi};
}

/// Samples of `c` inside the closed window, keeping metadata.
inline PointCloud clip(const PointCloud& c, const Window& w) {
  if (c.dim() != w.dim()) throw DimensionMismatch(c.dim(), w.dim());
  PointCloud out(c.dim(), c.resolution(), c.label(), c.true_dim());
  for (std::size_t i = 0; i < c.size(); ++i)
    if (w.contains(c[i])) out.push_back(c[i]);
  return out;
}

/// Applies x -> scale * x + offset to every sample. Resolution scales with |scale|.
inline PointCloud affine(const PointCloud& c, double scale, Coords offset) {
  require_same_dim(c, offset);
  if (!(scale != 0.0) || !std::isfinite(scale)) throw InvalidArgument("affine scale must be nonzero");
  PointCloud out(c.dim(), c.resolution() * std::abs(scale), c.label(), c.true_dim());
  out.reserve(c.size());
  std::vector<double> tmp(c.dim());
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto p = c[i];
    for (std::size_t k = 0; k < c.dim(); ++k) tmp[k] = scale * p[k] + offset[k];
    out.push_back(tmp);
  }
  return out;
}

}  // namespace fracmove
