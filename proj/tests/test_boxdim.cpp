#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fracmove/boxdim.hpp"
#include "fracmove/setgen.hpp"

using namespace fracmove;

namespace {

// Exact maximum packing: largest subset with pairwise distance > 2 delta,
// by branch and bound over a conflict bitmask (at most 64 points).
std::size_t max_packing(const PointCloud& c, double delta) {
  const std::size_t n = c.size();
  std::vector<std::uint64_t> conflict(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && distance(c[i], c[j]) <= 2.0 * delta) conflict[i] |= std::uint64_t{1} << j;
  std::size_t best = 0;
  auto rec = [&](auto&& self, std::uint64_t candidates, std::size_t size) -> void {
    if (size + static_cast<std::size_t>(std::popcount(candidates)) <= best) return;
    if (!candidates) {
      best = size;
      return;
    }
    const int v = std::countr_zero(candidates);
    const std::uint64_t bit = std::uint64_t{1} << v;
    self(self, candidates & ~bit & ~conflict[static_cast<std::size_t>(v)], size + 1);
    self(self, candidates & ~bit, size);
  };
  rec(rec, n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1, 0);
  return best;
}

// Straightforward greedy: sort lexicographically, keep a point when it is
// farther than 2 delta from every kept point.
std::size_t greedy_packing(const PointCloud& c, double delta) {
  std::vector<std::size_t> order(c.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(c[a].begin(), c[a].end(), c[b].begin(), c[b].end());
  });
  std::vector<std::size_t> kept;
  for (std::size_t i : order) {
    bool ok = true;
    for (std::size_t k : kept)
      if (distance(c[i], c[k]) <= 2.0 * delta) {
        ok = false;
        break;
      }
    if (ok) kept.push_back(i);
  }
  return kept.size();
}

std::size_t direct_box_count(const PointCloud& c, double delta, Coords anchor) {
  std::set<std::vector<long long>> cells;
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::vector<long long> key;
    for (std::size_t k = 0; k < c.dim(); ++k) key.push_back(static_cast<long long>(std::floor((c[i][k] - anchor[k]) / delta)));
    cells.insert(key);
  }
  return cells.size();
}

PointCloud random_cloud(std::size_t n, std::size_t count, std::uint64_t seed) {
  return random_dust(count, Window::cube(n, 0.0, 1.0), seed);
}

PointCloud single_point() {
  PointCloud c(2, 1e-3);
  c.push_back(Point{0.4, 0.9});
  return c;
}

}  // namespace

TEST(PackingCount, Examples) {
  PointCloud two(1, 1e-3);
  two.push_back(Point{0.0});
  two.push_back(Point{1.0});
  EXPECT_EQ(packing_count(two, 0.4), 2u);
  for (double d : {1e-3, 0.1, 10.0}) EXPECT_EQ(packing_count(single_point(), d), 1u);

  const PointCloud cantor = cantor_dust(1, 1.0 / 3.0, 4);
  ASSERT_EQ(cantor.size(), 32u);
  const double delta = std::pow(3.0, -4) / 3.0;
  EXPECT_EQ(packing_count(cantor, delta), 32u);
  EXPECT_EQ(max_packing(cantor, delta), 32u);
}

TEST(PackingCount, SandwichedByExactMaximumPackings) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 1 + seed % 3;
    const PointCloud c = random_cloud(n, 12 + seed % 29, seed);
    for (double delta : {0.03, 0.08, 0.15, 0.3}) {
      const std::size_t greedy = packing_count(c, delta);
      EXPECT_LE(greedy, max_packing(c, delta));
      EXPECT_GE(greedy, max_packing(c, 2.0 * delta));
    }
  }
}

TEST(PackingCount, MatchesQuadraticGreedy) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const PointCloud c = random_cloud(1 + seed % 3, 1500, seed + 50);
    for (double delta : {0.002, 0.01, 0.05, 0.2}) EXPECT_EQ(packing_count(c, delta), greedy_packing(c, delta));
  }
}

TEST(PackingCount, RejectsEmptyAndBadScale) {
  EXPECT_THROW(packing_count(PointCloud(2, 0.1), 0.1), InvalidArgument);
  EXPECT_THROW(packing_count(single_point(), 0.0), InvalidArgument);
}

TEST(BoxCount, Examples) {
  EXPECT_EQ(box_count(PointCloud(2, 0.1), 0.25, Point{0.0, 0.0}), 0u);
  EXPECT_EQ(box_count(single_point(), 0.25, Point{0.0, 0.0}), 1u);
  const PointCloud seg = segment_samples(Point{0.0, 0.0}, Point{1.0, 0.0}, 1001);
  EXPECT_EQ(box_count(seg, 0.25, Point{0.0, 0.0}), 5u);
  EXPECT_EQ(direct_box_count(seg, 0.25, Point{0.0, 0.0}), 5u);
}

TEST(BoxCount, MatchesDirectCellEnumeration) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-0.3, 0.0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 1 + seed % 3;
    const PointCloud c = random_cloud(n, 2000, seed);
    std::vector<double> anchor(n);
    for (auto& a : anchor) a = u(rng);
    for (double delta : {0.01, 0.05, 0.2}) EXPECT_EQ(box_count(c, delta, anchor), direct_box_count(c, delta, anchor));
  }
}

TEST(Counts, MonotoneInScale) {
  const PointCloud c = sierpinski(6);
  const Point anchor{-0.01, -0.01};
  std::size_t prev_p = 0, prev_b = 0;
  for (double delta = 0.5; delta > 0.005; delta *= 0.8) {
    const std::size_t p = packing_count(c, delta), b = box_count(c, delta, anchor);
    EXPECT_GE(p, prev_p);
    EXPECT_GE(b, prev_b);
    prev_p = p;
    prev_b = b;
  }
}

TEST(Counts, BoxCountMonotoneInSet) {
  const PointCloud big = random_cloud(2, 800, 3);
  PointCloud part(2, big.resolution());
  for (std::size_t i = 0; i < big.size(); i += 3) part.push_back(big[i]);
  for (double delta : {0.01, 0.05, 0.2}) EXPECT_LE(box_count(part, delta, Point{0.0, 0.0}), box_count(big, delta, Point{0.0, 0.0}));
}

TEST(Counts, PackingAtMostBoxesInLowDimension) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 0.0);
  for (std::size_t n = 1; n <= 3; ++n) {
    const PointCloud c = random_cloud(n, 1500, 10 + n);
    for (double delta : {0.01, 0.04, 0.15}) {
      std::vector<double> anchor(n);
      for (auto& a : anchor) a = u(rng);
      EXPECT_LE(packing_count(c, delta), box_count(c, delta, anchor));
    }
  }
}

// Greedy packing depends on the visiting order, so a rotation may change the
// count. A translation keeps the lexicographic order; a quarter turn still
// obeys the covering bound: any 2d-separated set has at most one point in
// each ball of a maximal d-separated set.
TEST(Counts, PackingUnderRigidMotion) {
  const PointCloud c = random_cloud(2, 1000, 77);
  PointCloud shifted(2, c.resolution()), turned(2, c.resolution());
  for (std::size_t i = 0; i < c.size(); ++i) {
    shifted.push_back(Point{c[i][0] + 3.0, c[i][1] - 5.0});
    turned.push_back(Point{-c[i][1], c[i][0]});
  }
  for (double delta : {0.005, 0.02, 0.1}) {
    EXPECT_EQ(packing_count(c, delta), packing_count(shifted, delta));
    EXPECT_LE(packing_count(turned, delta), packing_count(c, delta / 2.0));
    EXPECT_LE(packing_count(c, delta), packing_count(turned, delta / 2.0));
  }
}

TEST(Estimate, SlopeStableUnderTranslation) {
  const PointCloud c = sierpinski(8);
  EstimatorConfig cfg{0.5, std::pow(2.0, -8), 8, CountMethod::boxes, std::nullopt};
  const double base = estimate_dimension(c, cfg).slope;
  for (double shift : {0.013, 0.37, 2.71}) {
    const PointCloud moved = affine(c, 1.0, Point{shift, -shift / 2.0});
    EXPECT_LT(std::abs(estimate_dimension(moved, cfg).slope - base), 0.05);
  }
}

TEST(FitLogLog, ExactPowerLaw) {
  std::vector<ScaleCount> counts;
  for (double d : delta_ladder(0.5, 0.5 / 64.0, 7))
    counts.push_back({d, static_cast<std::size_t>(std::llround(3.0 * std::pow(d, -1.5))), CountMethod::packing});
  const DimensionEstimate e = fit_log_log(counts, CountMethod::packing);
  EXPECT_NEAR(e.slope, 1.5, 0.01);
  EXPECT_GT(e.r_squared, 0.999);
  EXPECT_EQ(e.deltas.size(), 5u);  // extremes dropped
}

TEST(FitLogLog, ExtremesIgnoredFromSixLevels) {
  std::vector<ScaleCount> counts;
  const auto ladder = delta_ladder(1.0, 1.0 / 32.0, 6);
  for (double d : ladder) counts.push_back({d, static_cast<std::size_t>(std::llround(1.0 / d)), CountMethod::boxes});
  counts.front().count = 1000;
  counts.back().count = 1;
  EXPECT_NEAR(fit_log_log(counts, CountMethod::boxes).slope, 1.0, 1e-9);
}

TEST(FitLogLog, DegenerateCounts) {
  std::vector<ScaleCount> counts;
  for (double d : delta_ladder(0.25, 0.01, 6)) counts.push_back({d, 1, CountMethod::packing});
  const DimensionEstimate e = fit_log_log(counts, CountMethod::packing);
  EXPECT_TRUE(e.degenerate);
  EXPECT_EQ(e.slope, 0.0);
}

TEST(Estimate, Examples) {
  const EstimatorConfig cantor_cfg{1.0 / 3.0, std::pow(3.0, -7), 7, CountMethod::packing, std::nullopt};
  EXPECT_NEAR(estimate_dimension(cantor_dust(1, 1.0 / 3.0, 8), cantor_cfg).slope, std::log(2.0) / std::log(3.0), 0.05);
  EXPECT_EQ(estimate_dimension(single_point(), EstimatorConfig{}).slope, 0.0);

  const PointCloud seg = segment_samples(Point{0.0, 0.0}, Point{1.0, 0.0}, 4097);
  const EstimatorConfig seg_cfg{1.0 / 16.0, 1.0 / 1024.0, 7, CountMethod::packing, std::nullopt};
  const DimensionEstimate e = estimate_dimension(seg, seg_cfg);
  EXPECT_NEAR(e.slope, 1.0, 0.05);
  // greedy keeps every k-th sample, k the first spacing count beyond 2 delta
  const double h = 1.0 / 4096.0;
  for (const auto& c : e.counts) {
    EXPECT_GE(static_cast<double>(c.count), std::floor(1.0 / (2.0 * c.delta + h)) + 1.0);
    EXPECT_LE(static_cast<double>(c.count), std::floor(1.0 / (2.0 * c.delta)) + 1.0);
  }
}

TEST(Estimate, PreconditionsAndErrors) {
  EXPECT_THROW(estimate_dimension(PointCloud(2, 0.1), EstimatorConfig{}), InvalidArgument);
  EXPECT_THROW(estimate_dimension(cantor_dust(1, 1.0 / 3.0, 2), EstimatorConfig{}), InvalidArgument);  // delta_min below resolution
  EXPECT_THROW(estimate_dimension(single_point(), EstimatorConfig{0.01, 0.25, 6, CountMethod::packing, std::nullopt}),
               InvalidArgument);
}

TEST(Estimate, MethodsAgreeOnSelfSimilarSets) {
  struct Case {
    PointCloud cloud;
    EstimatorConfig cfg;
  };
  std::vector<Case> cases;
  cases.push_back({cantor_dust(1, 1.0 / 3.0, 8), {1.0 / 3.0, std::pow(3.0, -7), 7, CountMethod::packing, std::nullopt}});
  cases.push_back({cantor_dust(2, 1.0 / 3.0, 6), {1.0 / 3.0, std::pow(3.0, -6), 6, CountMethod::packing, std::nullopt}});
  cases.push_back({sierpinski(7), {0.5, std::pow(2.0, -7), 7, CountMethod::packing, std::nullopt}});
  for (auto& c : cases) {
    const double p = estimate_dimension(c.cloud, c.cfg).slope;
    c.cfg.method = CountMethod::boxes;
    const double b = estimate_dimension(c.cloud, c.cfg).slope;
    EXPECT_LE(std::abs(p - b), 0.1) << c.cloud.label();
  }
}

TEST(EstimateUnbounded, Windows) {
  const PointCloud seg = segment_samples(Point{0.0, 0.0}, Point{1.0, 0.0}, 2049);
  const EstimatorConfig cfg{1.0 / 16.0, 1.0 / 512.0, 6, CountMethod::packing, std::nullopt};
  const DimensionEstimate whole = estimate_dimension(seg, cfg);
  const DimensionEstimate one = estimate_dimension_unbounded(seg, {Window::cube(2, -1.0, 2.0)}, cfg);
  EXPECT_EQ(one.slope, whole.slope);

  const PointCloud plane = hyperplane_samples(2, 0.0, 1.0 / 1024.0, Window::cube(1, -4.0, 4.0));
  const std::vector<Window> windows{Window(Point{-4.0, -1.0}, Point{-3.0, 1.0}), Window(Point{1.0, -1.0}, Point{3.0, 1.0})};
  const double a = estimate_dimension(clip(plane, windows[0]), cfg).slope;
  const double b = estimate_dimension(clip(plane, windows[1]), cfg).slope;
  EXPECT_EQ(estimate_dimension_unbounded(plane, windows, cfg).slope, std::max(a, b));

  EXPECT_THROW(estimate_dimension_unbounded(seg, {Window::cube(2, 5.0, 6.0)}, cfg), InvalidArgument);
}
