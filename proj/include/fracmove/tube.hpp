#pragma once

// Tubular thickening of a subset Y of an explicitly embedded manifold
// N^n in R^m: samples x + t v with x on Y, v a unit normal at x and
// |t| < eps, each remembering its base point for the projection back to N.

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "boxdim.hpp"
#include "clearance.hpp"
#include "core.hpp"

namespace fracmove {

enum class ManifoldKind { circle_in_R2, sphere_in_R3, curve_graph };

inline std::string_view to_string(ManifoldKind k) {
  switch (k) {
    case ManifoldKind::circle_in_R2: return "circle_in_R2";
    case ManifoldKind::sphere_in_R3: return "sphere_in_R3";
    case ManifoldKind::curve_graph: return "curve_graph";
  }
  return "?";
}

/// Analytic embedding with closed-form tangent and normal frames.
///   circle_in_R2: theta -> r (cos theta, sin theta)
///   sphere_in_R3: (theta, phi) -> r (sin theta cos phi, sin theta sin phi, cos theta)
///   curve_graph:  s -> (s, a sin(w s))
class EmbeddedManifold {
 public:
  static EmbeddedManifold circle(double radius = 1.0) { return {ManifoldKind::circle_in_R2, 1, 2, radius, 0.0}; }
  static EmbeddedManifold sphere(double radius = 1.0) { return {ManifoldKind::sphere_in_R3, 2, 3, radius, 0.0}; }
  static EmbeddedManifold curve_graph(double amplitude, double frequency) {
    return {ManifoldKind::curve_graph, 1, 2, amplitude, frequency};
  }

  ManifoldKind kind() const noexcept { return kind_; }
  int intrinsic_dim() const noexcept { return n_; }
  int ambient_dim() const noexcept { return m_; }
  int codim() const noexcept { return m_ - n_; }
  double scale() const noexcept { return a_; }  // radius, or graph amplitude

  Point point(std::span<const double> q) const {
    check(q);
    switch (kind_) {
      case ManifoldKind::circle_in_R2: return {a_ * std::cos(q[0]), a_ * std::sin(q[0])};
      case ManifoldKind::sphere_in_R3:
        return {a_ * std::sin(q[0]) * std::cos(q[1]), a_ * std::sin(q[0]) * std::sin(q[1]), a_ * std::cos(q[0])};
      case ManifoldKind::curve_graph: return {q[0], a_ * std::sin(w_ * q[0])};
    }
    throw InvalidArgument("unknown manifold");
  }

  /// Orthonormal tangent basis at the parameter point.
  std::vector<Point> tangent_basis(std::span<const double> q) const {
    check(q);
    switch (kind_) {
      case ManifoldKind::circle_in_R2: return {Point{-std::sin(q[0]), std::cos(q[0])}};
      case ManifoldKind::sphere_in_R3:
        return {Point{std::cos(q[0]) * std::cos(q[1]), std::cos(q[0]) * std::sin(q[1]), -std::sin(q[0])},
                Point{-std::sin(q[1]), std::cos(q[1]), 0.0}};
      case ManifoldKind::curve_graph: {
        const double slope = a_ * w_ * std::cos(w_ * q[0]);
        const double len = std::hypot(1.0, slope);
        return {Point{1.0 / len, slope / len}};
      }
    }
    throw InvalidArgument("unknown manifold");
  }

  /// Orthonormal basis of the normal space at the parameter point.
  std::vector<Point> normal_frame(std::span<const double> q) const {
    check(q);
    switch (kind_) {
      case ManifoldKind::circle_in_R2: return {Point{std::cos(q[0]), std::sin(q[0])}};
      case ManifoldKind::sphere_in_R3:
        return {Point{std::sin(q[0]) * std::cos(q[1]), std::sin(q[0]) * std::sin(q[1]), std::cos(q[0])}};
      case ManifoldKind::curve_graph: {
        const double slope = a_ * w_ * std::cos(w_ * q[0]);
        const double len = std::hypot(1.0, slope);
        return {Point{-slope / len, 1.0 / len}};
      }
    }
    throw InvalidArgument("unknown manifold");
  }

 private:
  EmbeddedManifold(ManifoldKind k, int n, int m, double a, double w) : kind_(k), n_(n), m_(m), a_(a), w_(w) {
    if (kind_ != ManifoldKind::curve_graph && !(a_ > 0.0)) throw InvalidArgument("radius must be positive");
    if (!std::isfinite(a_) || !std::isfinite(w_)) throw InvalidArgument("manifold parameters must be finite");
  }

  void check(std::span<const double> q) const {
    if (q.size() != static_cast<std::size_t>(n_)) throw DimensionMismatch(static_cast<std::size_t>(n_), q.size());
    for (double v : q)
      if (!std::isfinite(v)) throw InvalidArgument("manifold parameter out of domain");
    if (kind_ == ManifoldKind::sphere_in_R3 && (q[0] <= 0.0 || q[0] >= std::numbers::pi))
      throw InvalidArgument("polar angle must lie strictly inside (0, pi)");
  }

  ManifoldKind kind_;
  int n_;
  int m_;
  double a_;
  double w_;
};

struct TubeCloud {
  PointCloud samples;                  // x + t v
  PointCloud bases;                    // the points x of Y
  std::vector<std::size_t> base_of;    // sample -> base index
  std::vector<double> offsets;         // t per sample
  std::vector<std::size_t> normal_of;  // frame vector index per sample
};

/// Symmetric grid of `steps` offsets strictly inside (-eps, eps).
inline std::vector<double> tube_offsets(double epsilon, int steps) {
  std::vector<double> t(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
    t[static_cast<std::size_t>(i)] = epsilon * static_cast<double>(2 * i - (steps - 1)) / static_cast<double>(steps);
  return t;
}

/// Thickens the parameter samples `y_params` of Y along every normal frame
/// vector. `base_resolution` is the sampling scale of Y itself.
inline TubeCloud tube_thicken(const EmbeddedManifold& manifold, const std::vector<std::vector<double>>& y_params,
                              double epsilon, int normal_steps, double base_resolution = 0.0) {
  if (!(epsilon > 0.0)) throw InvalidArgument("tube radius must be positive");
  if (normal_steps < 2) throw InvalidArgument("need at least two normal steps");
  const auto m = static_cast<std::size_t>(manifold.ambient_dim());
  const double step = 2.0 * epsilon / static_cast<double>(normal_steps);
  const double base_res = base_resolution > 0.0 ? base_resolution : step;
  TubeCloud tube{PointCloud(m, std::max(step, base_res), "tube"), PointCloud(m, base_res, "tube_base"), {}, {}, {}};
  const auto offsets = tube_offsets(epsilon, normal_steps);
  std::vector<double> p(m);
  for (const auto& q : y_params) {
    const Point x = manifold.point(q);
    const auto frame = manifold.normal_frame(q);
    const std::size_t b = tube.bases.size();
    tube.bases.push_back(x);
    for (std::size_t f = 0; f < frame.size(); ++f) {
      for (double t : offsets) {
        for (std::size_t k = 0; k < m; ++k) p[k] = x[k] + t * frame[f][k];
        tube.samples.push_back(p);
        tube.base_of.push_back(b);
        tube.offsets.push_back(t);
        tube.normal_of.push_back(f);
      }
    }
  }
  return tube;
}

/// The projection x + t v -> x.
inline Point tube_project(const TubeCloud& tube, std::size_t sample) {
  return tube.bases.point(tube.base_of.at(sample));
}

/// Embedding check for a uniform eps: no two samples over base points more
/// than 10 eps apart come within 1e-6 of each other.
inline bool tube_embedded(const TubeCloud& tube, double epsilon) {
  constexpr double touch = 1e-6;
  const double far = 10.0 * epsilon;
  if (tube.samples.empty()) return true;
  const GridIndex grid(tube.samples, touch);
  for (std::size_t i = 0; i < tube.samples.size(); ++i) {
    bool ok = true;
    auto p = tube.samples[i];
    grid.for_each_near_segment(p, p, touch, [&](std::size_t j) {
      const std::size_t bi = tube.base_of[i], bj = tube.base_of[j];
      if (!ok || j <= i || bi == bj) return;
      if (distance(p, tube.samples[j]) < touch && distance(tube.bases[bi], tube.bases[bj]) > far) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

struct TubeBoundRecord {
  double dim_y_est = 0.0;
  double dim_tube_est = 0.0;
  int codim = 0;
  double bound = 0.0;  // dim_y_est + codim
  bool satisfied = false;
};

inline constexpr double kTubeBoundSlack = 0.2;

/// Estimates dim Y and dim of its thickening with the same ladder and
/// checks dim_tube <= dim_Y + (m - n) + 0.2.
inline TubeBoundRecord check_tube_dimension_bound(const EmbeddedManifold& manifold,
                                                  const std::vector<std::vector<double>>& y_params, double epsilon,
                                                  int normal_steps, const EstimatorConfig& cfg,
                                                  double base_resolution = 0.0) {
  const TubeCloud tube = tube_thicken(manifold, y_params, epsilon, normal_steps, base_resolution);
  if (!(cfg.delta_max < epsilon)) throw InvalidArgument("estimator scales must stay below the tube radius");
  TubeBoundRecord rec;
  rec.codim = manifold.codim();
  rec.dim_y_est = estimate_dimension(tube.bases, cfg).slope;
  rec.dim_tube_est = estimate_dimension(tube.samples, cfg).slope;
  rec.bound = rec.dim_y_est + static_cast<double>(rec.codim);
  rec.satisfied = rec.dim_tube_est <= rec.bound + kTubeBoundSlack;
  return rec;
}

}  // namespace fracmove
