#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fracmove/corpus.hpp"
#include "fracmove/tube.hpp"

using namespace fracmove;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST(Tube, SinglePointOnCircle) {
  const auto circle = EmbeddedManifold::circle();
  const TubeCloud t = tube_thicken(circle, {{0.0}}, 0.1, 5);
  ASSERT_EQ(t.samples.size(), 5u);
  double lo = kUnbounded, hi = -kUnbounded;
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_DOUBLE_EQ(t.samples[i][1], 0.0);  // all on the normal line, the x axis
    lo = std::min(lo, t.samples[i][0]);
    hi = std::max(hi, t.samples[i][0]);
  }
  EXPECT_LT(hi - lo, 0.2);
  EXPECT_GT(lo, 0.9);
  EXPECT_LT(hi, 1.1);
}

TEST(Tube, OffsetsStrictlyInside) {
  for (int steps : {2, 3, 10, 101}) {
    const auto off = tube_offsets(0.3, steps);
    ASSERT_EQ(off.size(), static_cast<std::size_t>(steps));
    for (std::size_t i = 0; i < off.size(); ++i) {
      EXPECT_GT(off[i], -0.3);
      EXPECT_LT(off[i], 0.3);
      EXPECT_DOUBLE_EQ(off[i], -off[off.size() - 1 - i]);
    }
  }
}

TEST(Tube, ProjectionAndZeroOffset) {
  const auto sphere = EmbeddedManifold::sphere(2.0);
  const std::vector<std::vector<double>> q{{0.3, 0.1}, {1.2, -2.0}, {2.9, 4.0}};
  const TubeCloud t = tube_thicken(sphere, q, 0.05, 7);
  ASSERT_EQ(t.samples.size(), 21u);
  for (std::size_t i = 0; i < t.samples.size(); ++i) {
    const Point base = sphere.point(q[t.base_of[i]]);
    EXPECT_EQ(tube_project(t, i), base);
    EXPECT_NEAR(distance(t.samples[i], base), std::abs(t.offsets[i]), 1e-15);
    EXPECT_NEAR(norm(t.samples[i]), 2.0 + t.offsets[i], 1e-14);
    if (t.offsets[i] == 0.0) {
      EXPECT_EQ(t.samples.point(i), base);
    }
  }
}

TEST(Tube, FramesOrthonormal) {
  const EmbeddedManifold ms[] = {EmbeddedManifold::circle(1.5), EmbeddedManifold::sphere(),
                                 EmbeddedManifold::curve_graph(0.4, 5.0)};
  for (const auto& m : ms) {
    for (int i = 1; i < 50; ++i) {
      std::vector<double> q{pi * i / 50.0};
      if (m.intrinsic_dim() == 2) q.push_back(0.37 * i);
      std::vector<Point> basis = m.tangent_basis(q);
      const auto normals = m.normal_frame(q);
      ASSERT_EQ(normals.size(), static_cast<std::size_t>(m.codim()));
      basis.insert(basis.end(), normals.begin(), normals.end());
      ASSERT_EQ(basis.size(), static_cast<std::size_t>(m.ambient_dim()));
      for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = 0; b < basis.size(); ++b)
          EXPECT_NEAR(dot(basis[a], basis[b]), a == b ? 1.0 : 0.0, 1e-12);
    }
  }
}

TEST(Tube, TangentMatchesFiniteDifference) {
  const auto g = EmbeddedManifold::curve_graph(0.2, 3.0);
  for (double s : {0.0, 0.3, 0.77}) {
    const double h = 1e-6;
    const Point d = (1.0 / (2.0 * h)) * (g.point(std::vector<double>{s + h}) - g.point(std::vector<double>{s - h}));
    const Point t = g.tangent_basis(std::vector<double>{s})[0];
    EXPECT_NEAR(std::abs(dot(d, t)) / norm(d), 1.0, 1e-9);
  }
}

TEST(Tube, ShrinkingRadiusCollapsesToY) {
  const auto circle = EmbeddedManifold::circle();
  std::vector<std::vector<double>> q;
  for (int i = 0; i < 16; ++i) q.push_back({2.0 * pi * i / 16.0});
  double prev = kUnbounded;
  for (double eps : {0.1, 0.01, 1e-4, 1e-8}) {
    const TubeCloud t = tube_thicken(circle, q, eps, 9);
    double worst = 0.0;
    for (std::size_t i = 0; i < t.samples.size(); ++i)
      worst = std::max(worst, distance(t.samples[i], tube_project(t, i)));
    EXPECT_LT(worst, eps);
    EXPECT_LT(worst, prev);
    prev = worst;
  }
}

TEST(Tube, EmbeddedForSmallRadius) {
  const auto circle = EmbeddedManifold::circle();
  std::vector<std::vector<double>> q;
  for (int i = 0; i < 64; ++i) q.push_back({2.0 * pi * i / 64.0});
  EXPECT_TRUE(tube_embedded(tube_thicken(circle, q, 0.05, 11), 0.05));
  // opposite points of a tiny circle: inward normals meet at the centre
  const auto tiny = EmbeddedManifold::circle(0.01);
  EXPECT_FALSE(tube_embedded(tube_thicken(tiny, {{0.0}, {pi}}, 0.02, 2), 0.001));
}

TEST(Tube, Errors) {
  const auto circle = EmbeddedManifold::circle();
  EXPECT_THROW(tube_thicken(circle, {{0.0}}, 0.0, 5), InvalidArgument);
  EXPECT_THROW(tube_thicken(circle, {{0.0}}, 0.1, 1), InvalidArgument);
  EXPECT_THROW(tube_thicken(circle, {{0.0, 1.0}}, 0.1, 5), DimensionMismatch);
  EXPECT_THROW(EmbeddedManifold::sphere().point(std::vector<double>{0.0, 1.0}), InvalidArgument);
  EXPECT_THROW(EmbeddedManifold::circle(-1.0), InvalidArgument);
  EstimatorConfig cfg{0.2, 0.01, 4, CountMethod::packing, std::nullopt};
  EXPECT_THROW(check_tube_dimension_bound(circle, {{0.0}}, 0.1, 5, cfg), InvalidArgument);
}

TEST(Tube, DimensionBoundOnFixtures) {
  for (const auto& f : corpus::tube_fixtures()) {
    SCOPED_TRACE(f.name);
    const TubeBoundRecord r =
        check_tube_dimension_bound(f.manifold, f.y_params, f.epsilon, f.normal_steps, f.cfg, f.base_resolution);
    EXPECT_EQ(r.codim, 1);
    EXPECT_DOUBLE_EQ(r.bound, r.dim_y_est + 1.0);
    EXPECT_TRUE(r.satisfied) << r.dim_tube_est << " vs " << r.bound;
    const corpus::FrameCheck fc = corpus::check_frames(f);
    EXPECT_LT(fc.max_unit_error, 1e-12);
    EXPECT_LT(fc.max_tangent_dot, 1e-9);
    EXPECT_LT(fc.max_base_offset, 1e-9);
    EXPECT_TRUE(fc.projection_exact);
    EXPECT_TRUE(fc.embedded);
  }
}

TEST(Tube, BoundDetectsThickerSet) {
  // a tube whose base is a full arc should not be reported as if its base were finite
  const auto circle = EmbeddedManifold::circle();
  std::vector<std::vector<double>> arc;
  for (int i = 0; i <= 2000; ++i) arc.push_back({pi / 2.0 * i / 2000.0});
  EstimatorConfig cfg{0.05, 0.005, 6, CountMethod::packing, std::nullopt};
  const TubeBoundRecord r = check_tube_dimension_bound(circle, arc, 0.1, 101, cfg, pi / 2.0 / 2000.0);
  EXPECT_NEAR(r.dim_y_est, 1.0, 0.15);
  EXPECT_NEAR(r.dim_tube_est, 2.0, 0.25);
  EXPECT_TRUE(r.satisfied);
}
