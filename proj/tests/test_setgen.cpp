#include <cmath>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "fracmove/setgen.hpp"

using namespace fracmove;

namespace {

std::vector<std::vector<double>> rows(const PointCloud& c) {
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < c.size(); ++i) out.emplace_back(c[i].begin(), c[i].end());
  return out;
}

}  // namespace

TEST(Cantor, Examples) {
  const PointCloud c = cantor_dust(1, 1.0 / 3.0, 1);
  ASSERT_EQ(c.size(), 4u);
  const double want[] = {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(c[i][0], want[i], 1e-15);
  EXPECT_NEAR(*c.true_dim(), std::log(2.0) / std::log(3.0), 1e-12);
  EXPECT_NEAR(*c.true_dim(), 0.6309, 1e-4);

  for (double r : {0.1, 0.25, 0.5}) {
    const PointCloud base = cantor_dust(1, r, 0);
    ASSERT_EQ(base.size(), 2u);
    EXPECT_EQ(base[0][0], 0.0);
    EXPECT_EQ(base[1][0], 1.0);
  }

  const PointCloud sq = cantor_dust(2, 1.0 / 3.0, 2);
  EXPECT_EQ(sq.size(), 64u);
  EXPECT_NEAR(*sq.true_dim(), 1.2619, 1e-4);
}

TEST(Cantor, CountAndRangeProperty) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (int depth = 0; depth <= 4; ++depth) {
      const PointCloud c = cantor_dust(n, 0.3, depth);
      EXPECT_EQ(c.size(), static_cast<std::size_t>(std::pow(std::pow(2.0, depth + 1), static_cast<double>(n))));
      for (std::size_t i = 0; i < c.size(); ++i)
        for (double v : c[i]) {
          EXPECT_GE(v, 0.0);
          EXPECT_LE(v, 1.0);
        }
    }
}

// Independent oracle: apply the two contractions x/3 and x/3 + 2/3 to the
// interval endpoints depth times.
TEST(Cantor, MatchesContractionEnumeration) {
  std::vector<double> pts{0.0, 1.0};
  for (int d = 0; d < 6; ++d) {
    std::vector<double> next;
    for (double x : pts) next.push_back(x / 3.0);
    for (double x : pts) next.push_back(x / 3.0 + 2.0 / 3.0);
    pts = next;
  }
  std::sort(pts.begin(), pts.end());
  const auto got = cantor_endpoints(1.0 / 3.0, 6);
  ASSERT_EQ(got.size(), pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_NEAR(got[i], pts[i], 1e-14);
}

TEST(Cantor, RejectsBadArguments) {
  EXPECT_THROW(cantor_dust(1, 0.6, 2), InvalidArgument);
  EXPECT_THROW(cantor_dust(1, 0.0, 2), InvalidArgument);
  EXPECT_THROW(cantor_dust(1, 0.3, -1), InvalidArgument);
  EXPECT_THROW(cantor_dust(0, 0.3, 1), InvalidArgument);
  EXPECT_THROW(cantor_dust(3, 0.3, 10), InvalidArgument);  // over the point budget
}

TEST(GridDust, Examples) {
  const PointCloud a = grid_dust(Window::cube(1, 0.0, 1.0), 0.5);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a[2][0], 1.0);
  EXPECT_EQ(grid_dust(Window::cube(2, 0.0, 1.0), 1.0).size(), 4u);
  EXPECT_THROW(grid_dust(Window::cube(2, 0.0, 0.1), 0.5), InvalidArgument);
}

TEST(GridDust, AxialExclusion) {
  const PointCloud axis = segment_samples(Point{0.0, 0.0, -0.5}, Point{0.0, 0.0, 1.5}, 401);
  const PointCloud g = grid_dust(Window::cube(3, 0.0, 1.0), 0.25, &axis, 0.3);
  const PointCloud full = grid_dust(Window::cube(3, 0.0, 1.0), 0.25);
  std::size_t inside = 0;
  for (std::size_t i = 0; i < full.size(); ++i)
    if (full[i][0] * full[i][0] + full[i][1] * full[i][1] < 0.09) ++inside;
  EXPECT_EQ(g.size() + inside, full.size());
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_GE(g[i][0] * g[i][0] + g[i][1] * g[i][1], 0.09);
}

TEST(Hyperplane, Examples) {
  const PointCloud a = hyperplane_samples(2, 0.0, 0.5, Window::cube(1, 0.0, 1.0));
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a.point(1), (Point{0.5, 0.0}));
  const PointCloud b = hyperplane_samples(3, 1.0, 1.0, Window::cube(2, 0.0, 1.0));
  ASSERT_EQ(b.size(), 4u);
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(b[i][2], 1.0);
  EXPECT_EQ(*b.true_dim(), 2.0);
  EXPECT_THROW(Window(Point{0.0, 0.0}, Point{0.0, 1.0}), InvalidArgument);
  EXPECT_THROW(hyperplane_samples(3, 0.0, 0.1, Window::cube(3, 0.0, 1.0)), DimensionMismatch);
}

TEST(ManifoldSamples, Examples) {
  const PointCloud seg = manifold_samples(SegmentManifold{Point{0.0, 0.0, 0.0}, Point{0.0, 0.0, 1.0}}, 0.5);
  ASSERT_EQ(seg.size(), 3u);
  EXPECT_EQ(*seg.true_dim(), 1.0);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(seg[i][0], 0.0);

  const PointCloud circ = manifold_samples(SphereManifold{Point{0.0, 0.0}, 1.0}, 2.0 * std::numbers::pi / 8.0);
  ASSERT_EQ(circ.size(), 8u);
  EXPECT_EQ(*circ.true_dim(), 1.0);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(norm(circ[i]), 1.0, 1e-15);

  const PointCloud patch = manifold_samples(PlanePatchManifold{3, 1.0, 1.0}, 0.5);
  EXPECT_EQ(patch.size(), 9u);
  EXPECT_EQ(*patch.true_dim(), 2.0);

  const PointCloud sph = manifold_samples(SphereManifold{Point{1.0, 2.0, 3.0}, 2.0}, 0.2);
  for (std::size_t i = 0; i < sph.size(); ++i) EXPECT_NEAR(distance(sph[i], Point{1.0, 2.0, 3.0}), 2.0, 1e-12);
}

// Independent oracle: the three contractions x -> (x + v)/2 applied to the
// corner set, deduplicated after rounding to a fine lattice.
TEST(Sierpinski, MatchesIfsEnumeration) {
  const double h = std::sqrt(3.0) / 2.0;
  const std::vector<std::pair<double, double>> corners{{0.0, 0.0}, {1.0, 0.0}, {0.5, h}};
  for (int depth = 0; depth <= 6; ++depth) {
    std::vector<std::pair<double, double>> pts = corners;
    for (int d = 0; d < depth; ++d) {
      std::vector<std::pair<double, double>> next;
      for (const auto& v : corners)
        for (const auto& p : pts) next.emplace_back((p.first + v.first) / 2.0, (p.second + v.second) / 2.0);
      pts = next;
    }
    std::set<std::pair<long long, long long>> keys;
    for (const auto& p : pts) keys.insert({std::llround(p.first * 1e9), std::llround(p.second * 1e9)});
    const PointCloud s = sierpinski(depth);
    ASSERT_EQ(s.size(), keys.size()) << "depth " << depth;
    for (std::size_t i = 0; i < s.size(); ++i)
      EXPECT_TRUE(keys.count({std::llround(s[i][0] * 1e9), std::llround(s[i][1] * 1e9)}));
    EXPECT_NEAR(*s.true_dim(), 1.58496, 1e-5);
  }
  EXPECT_EQ(sierpinski(0).size(), 3u);
  EXPECT_EQ(sierpinski(1).size(), 6u);
}

TEST(RandomDust, DeterministicAndInWindow) {
  EXPECT_TRUE(random_dust(0, Window::cube(2, 0.0, 1.0), 1).empty());
  const Window w = Window::cube(2, 0.0, 1.0);
  const PointCloud a = random_dust(1000, w, 42);
  const PointCloud b = random_dust(1000, w, 42);
  EXPECT_EQ(rows(a), rows(b));
  EXPECT_NE(rows(a), rows(random_dust(1000, w, 43)));
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(w.contains(a[i]));
}

TEST(Generators, PureFunctions) {
  EXPECT_EQ(rows(cantor_dust(2, 0.25, 3)), rows(cantor_dust(2, 0.25, 3)));
  EXPECT_EQ(rows(sierpinski(5)), rows(sierpinski(5)));
  EXPECT_EQ(rows(grid_dust(Window::cube(2, -1.0, 1.0), 0.3)), rows(grid_dust(Window::cube(2, -1.0, 1.0), 0.3)));
}
