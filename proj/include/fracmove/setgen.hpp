#pragma once

// Deterministic generators for test sets: self-similar dusts with known
// dimension, lattices standing in for dense countable sets, and samples of
// simple embedded manifolds.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>
#include <utility>
#include <variant>
#include <vector>

#include "clearance.hpp"
#include "core.hpp"

namespace fracmove {

inline constexpr std::size_t kMaxGeneratedPoints = 50'000'000;

namespace detail {

inline void check_budget(double count) {
  if (count > static_cast<double>(kMaxGeneratedPoints))
    throw InvalidArgument("generator would produce more than 5e7 points");
}

// Lattice index count along [lo, hi] at the given pitch, boundary included.
inline std::size_t lattice_count(double lo, double hi, double spacing) {
  return static_cast<std::size_t>(std::floor((hi - lo) / spacing + 1e-9)) + 1;
}

// Calls f(coords) for every point of the Cartesian product of `axes`,
// first axis varying slowest.
template <class F>
void for_each_product(const std::vector<std::vector<double>>& axes, F&& f) {
  const std::size_t n = axes.size();
  for (const auto& a : axes)
    if (a.empty()) return;
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> p(n);
  while (true) {
    for (std::size_t k = 0; k < n; ++k) p[k] = axes[k][idx[k]];
    f(Coords(p));
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++idx[k] < axes[k].size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
  }
}

}  // namespace detail

/// Sorted endpoints of the level-`depth` two-piece Cantor construction on [0,1].
inline std::vector<double> cantor_endpoints(double ratio, int depth) {
  if (!(ratio > 0.0 && ratio <= 0.5)) throw InvalidArgument("cantor ratio must lie in (0, 1/2]");
  if (depth < 0) throw InvalidArgument("cantor depth must be >= 0");
  if (depth > 24) throw InvalidArgument("cantor depth too large");
  const std::size_t pieces = std::size_t{1} << depth;
  // Left end of the interval addressed by the binary digits of `code`
  // (most significant digit = first subdivision).
  auto left = [&](std::size_t code) {
    double x = 0.0;
    double scale = 1.0 - ratio;
    for (int j = depth - 1; j >= 0; --j) {
      if ((code >> j) & 1U) x += scale;
      scale *= ratio;
    }
    return x;
  };
  std::vector<double> out;
  out.reserve(2 * pieces);
  for (std::size_t code = 0; code < pieces; ++code) {
    out.push_back(left(code));
    // Right end by mirror symmetry keeps the set exactly symmetric about 1/2.
    out.push_back(depth == 0 ? 1.0 : 1.0 - left(pieces - 1 - code));
  }
  return out;
}

inline PointCloud cantor_dust(std::size_t n, double ratio, int depth) {
  if (n == 0) throw InvalidArgument("cantor dust dimension must be positive");
  const auto axis = cantor_endpoints(ratio, depth);
  detail::check_budget(std::pow(static_cast<double>(axis.size()), static_cast<double>(n)));
  const double dim = static_cast<double>(n) * std::log(2.0) / std::log(1.0 / ratio);
  PointCloud cloud(n, depth == 0 ? 1.0 : std::pow(ratio, depth), "cantor_dust", dim);
  cloud.reserve(static_cast<std::size_t>(std::pow(static_cast<double>(axis.size()), static_cast<double>(n))));
  detail::for_each_product(std::vector<std::vector<double>>(n, axis),
                           [&](Coords p) { cloud.push_back(p); });
  return cloud;
}

/// Lattice of pitch `spacing` inside `window`, minus the points within
/// `exclude_radius` of any sample of `exclude`.
inline PointCloud grid_dust(const Window& window, double spacing,
                            const PointCloud* exclude = nullptr, double exclude_radius = 0.0) {
  if (!(spacing > 0.0)) throw InvalidArgument("grid spacing must be positive");
  const std::size_t n = window.dim();
  std::vector<std::vector<double>> axes(n);
  double total = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (window.hi()[k] - window.lo()[k] < spacing)
      throw InvalidArgument("window is smaller than the grid spacing");
    const std::size_t m = detail::lattice_count(window.lo()[k], window.hi()[k], spacing);
    total *= static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) axes[k].push_back(window.lo()[k] + static_cast<double>(i) * spacing);
  }
  detail::check_budget(total);
  if (exclude && exclude->dim() != n) throw DimensionMismatch(n, exclude->dim());
  std::optional<ClearanceOracle> oracle;
  if (exclude && !exclude->empty() && exclude_radius > 0.0) oracle.emplace(*exclude, exclude_radius);
  PointCloud cloud(n, spacing, "grid_dust");
  detail::for_each_product(axes, [&](Coords p) {
    if (oracle && oracle->clearance(p) < exclude_radius) return;
    cloud.push_back(p);
  });
  return cloud;
}

/// Lattice on the affine hyperplane {x_n = height}, clipped to a window over
/// the first n-1 coordinates.
inline PointCloud hyperplane_samples(std::size_t n, double height, double spacing, const Window& window) {
  if (n < 2) throw InvalidArgument("hyperplane needs ambient dimension >= 2");
  if (window.dim() != n - 1) throw DimensionMismatch(n - 1, window.dim());
  if (!(spacing > 0.0)) throw InvalidArgument("hyperplane spacing must be positive");
  if (!std::isfinite(height)) throw InvalidArgument("hyperplane height must be finite");
  std::vector<std::vector<double>> axes(n);
  double total = 1.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const std::size_t m = detail::lattice_count(window.lo()[k], window.hi()[k], spacing);
    total *= static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) axes[k].push_back(window.lo()[k] + static_cast<double>(i) * spacing);
  }
  detail::check_budget(total);
  axes[n - 1] = {height};
  PointCloud cloud(n, spacing, "hyperplane", static_cast<double>(n - 1));
  detail::for_each_product(axes, [&](Coords p) { cloud.push_back(p); });
  return cloud;
}

struct SegmentManifold {
  Point a;
  Point b;
};

/// Round sphere S^{n-1}(radius) about `center`; n is 2 or 3.
struct SphereManifold {
  Point center;
  double radius = 1.0;
};

/// Axis-aligned rectangle [0,width] x [0,height] x {0}^(n-2).
struct PlanePatchManifold {
  std::size_t n = 3;
  double width = 1.0;
  double height = 1.0;
};

using ManifoldSpec = std::variant<SegmentManifold, SphereManifold, PlanePatchManifold>;

/// `count` equispaced samples of [a, b], endpoints included.
inline PointCloud segment_samples(const Point& a, const Point& b, std::size_t count) {
  require_same_dim(a, b);
  if (count == 0) throw InvalidArgument("segment sample count must be positive");
  const double len = distance(a, b);
  const bool degenerate = count == 1 || len == 0.0;
  PointCloud cloud(a.dim(), degenerate ? 1.0 : len / static_cast<double>(count - 1), "segment",
                   len == 0.0 ? 0.0 : 1.0);
  cloud.reserve(count);
  std::vector<double> p(a.dim());
  for (std::size_t i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    for (std::size_t k = 0; k < a.dim(); ++k) p[k] = i + 1 == count ? b[k] : a[k] + t * (b[k] - a[k]);
    cloud.push_back(p);
  }
  return cloud;
}

inline PointCloud manifold_samples(const ManifoldSpec& spec, double spacing) {
  if (!(spacing > 0.0)) throw InvalidArgument("manifold spacing must be positive");
  if (const auto* seg = std::get_if<SegmentManifold>(&spec)) {
    const double len = distance(seg->a, seg->b);
    const auto count = static_cast<std::size_t>(std::ceil(len / spacing - 1e-9)) + 1;
    detail::check_budget(static_cast<double>(count));
    return segment_samples(seg->a, seg->b, count);
  }
  if (const auto* sph = std::get_if<SphereManifold>(&spec)) {
    const std::size_t n = sph->center.dim();
    if (!(sph->radius > 0.0)) throw InvalidArgument("sphere radius must be positive");
    const double r = sph->radius;
    constexpr double pi = std::numbers::pi;
    if (n == 2) {
      const auto count = std::max<std::size_t>(3, static_cast<std::size_t>(std::llround(2.0 * pi * r / spacing)));
      detail::check_budget(static_cast<double>(count));
      PointCloud cloud(2, 2.0 * r * std::sin(pi / static_cast<double>(count)), "sphere", 1.0);
      for (std::size_t i = 0; i < count; ++i) {
        const double th = 2.0 * pi * static_cast<double>(i) / static_cast<double>(count);
        const double p[2] = {sph->center[0] + r * std::cos(th), sph->center[1] + r * std::sin(th)};
        cloud.push_back(p);
      }
      return cloud;
    }
    if (n == 3) {
      // Fibonacci lattice; hexagonal packing puts (sqrt(3)/2) s^2 of area per point.
      const double area = 4.0 * pi * r * r;
      const auto count = std::max<std::size_t>(
          4, static_cast<std::size_t>(std::llround(area / (0.5 * std::sqrt(3.0) * spacing * spacing))));
      detail::check_budget(static_cast<double>(count));
      PointCloud cloud(3, spacing, "sphere", 2.0);
      const double golden = pi * (3.0 - std::sqrt(5.0));
      for (std::size_t i = 0; i < count; ++i) {
        const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double th = golden * static_cast<double>(i);
        const double p[3] = {sph->center[0] + r * rho * std::cos(th), sph->center[1] + r * rho * std::sin(th),
                             sph->center[2] + r * z};
        cloud.push_back(p);
      }
      return cloud;
    }
    throw InvalidArgument("sphere samples are available in R^2 and R^3 only");
  }
  const auto& patch = std::get<PlanePatchManifold>(spec);
  if (patch.n < 2) throw InvalidArgument("plane patch needs ambient dimension >= 2");
  if (!(patch.width > 0.0) || !(patch.height > 0.0)) throw InvalidArgument("plane patch extent must be positive");
  const auto nx = static_cast<std::size_t>(std::ceil(patch.width / spacing - 1e-9)) + 1;
  const auto ny = static_cast<std::size_t>(std::ceil(patch.height / spacing - 1e-9)) + 1;
  detail::check_budget(static_cast<double>(nx) * static_cast<double>(ny));
  const double hx = patch.width / static_cast<double>(nx - 1);
  const double hy = patch.height / static_cast<double>(ny - 1);
  PointCloud cloud(patch.n, std::max(hx, hy), "plane_patch", 2.0);
  cloud.reserve(nx * ny);
  std::vector<double> p(patch.n, 0.0);
  for (std::size_t i = 0; i < nx; ++i) {
    p[0] = i + 1 == nx ? patch.width : static_cast<double>(i) * hx;
    for (std::size_t j = 0; j < ny; ++j) {
      p[1] = j + 1 == ny ? patch.height : static_cast<double>(j) * hy;
      cloud.push_back(p);
    }
  }
  return cloud;
}

/// Vertex set of the level-`depth` Sierpinski triangle with corners
/// (0,0), (1,0), (1/2, sqrt(3)/2).
inline PointCloud sierpinski(int depth) {
  if (depth < 0) throw InvalidArgument("sierpinski depth must be >= 0");
  if (depth > 14) throw InvalidArgument("sierpinski depth too large");
  // Integer coordinates (i, j) mean (i*e1 + j*e2) / 2^depth with
  // e1 = (1,0), e2 = (1/2, sqrt(3)/2). Subtriangles are (corner, size).
  const std::int64_t full = std::int64_t{1} << depth;
  std::vector<std::pair<std::pair<std::int64_t, std::int64_t>, std::int64_t>> level{{{0, 0}, full}};
  for (int d = 0; d < depth; ++d) {
    std::vector<std::pair<std::pair<std::int64_t, std::int64_t>, std::int64_t>> next;
    next.reserve(level.size() * 3);
    for (const auto& [c, s] : level) {
      const std::int64_t h = s / 2;
      next.push_back({{c.first, c.second}, h});
      next.push_back({{c.first + h, c.second}, h});
      next.push_back({{c.first, c.second + h}, h});
    }
    level = std::move(next);
  }
  std::set<std::pair<std::int64_t, std::int64_t>> verts;
  for (const auto& [c, s] : level) {
    verts.insert(c);
    verts.insert({c.first + s, c.second});
    verts.insert({c.first, c.second + s});
  }
  const double inv = 1.0 / static_cast<double>(full);
  const double h3 = std::sqrt(3.0) / 2.0;
  PointCloud cloud(2, inv, "sierpinski", std::log(3.0) / std::log(2.0));
  cloud.reserve(verts.size());
  for (const auto& [i, j] : verts) {
    const double p[2] = {(static_cast<double>(i) + 0.5 * static_cast<double>(j)) * inv,
                         h3 * static_cast<double>(j) * inv};
    cloud.push_back(p);
  }
  return cloud;
}

/// `count` uniform pseudorandom points in `window`; a pure function of its arguments.
inline PointCloud random_dust(std::size_t count, const Window& window, std::uint64_t seed) {
  detail::check_budget(static_cast<double>(count));
  const std::size_t n = window.dim();
  double extent = 0.0;
  for (std::size_t k = 0; k < n; ++k) extent = std::max(extent, window.hi()[k] - window.lo()[k]);
  const double per_axis = std::pow(static_cast<double>(std::max<std::size_t>(count, 1)), 1.0 / static_cast<double>(n));
  PointCloud cloud(n, extent / per_axis, "random_dust");
  std::mt19937_64 rng(seed);
  std::vector<double> p(n);
  cloud.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      p[k] = window.lo()[k] + u * (window.hi()[k] - window.lo()[k]);
    }
    cloud.push_back(p);
  }
  return cloud;
}

}  // namespace fracmove
