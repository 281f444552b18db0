#include <algorithm>
#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "fracmove/io.hpp"
#include "fracmove/scenario.hpp"

using namespace fracmove;

TEST(Io, CloudRoundTrip) {
  PointCloud c = cantor_dust(2, 1.0 / 3.0, 3);
  c.set_label("dust");
  const PointCloud back = cloud_from_json(json::parse(to_json(c).dump()));
  EXPECT_EQ(back.dim(), c.dim());
  EXPECT_EQ(back.resolution(), c.resolution());
  EXPECT_EQ(back.label(), "dust");
  EXPECT_EQ(back.true_dim(), c.true_dim());
  ASSERT_EQ(back.size(), c.size());
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(back.point(i), c.point(i));
}

TEST(Io, AwkwardDoublesSurviveText) {
  PointCloud c(1, 1e-3);
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, std::nextafter(1.0, 2.0)}) c.push_back(Point{v});
  const PointCloud back = cloud_from_json(json::parse(to_json(c).dump()));
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(back[i][0], c[i][0]);
}

TEST(Io, InfinityIsNull) {
  EXPECT_TRUE(real_json(kUnbounded).is_null());
  EXPECT_EQ(real_from(json(nullptr)), kUnbounded);
  EXPECT_EQ(real_from(real_json(0.25)), 0.25);
  Verification v;
  v.isometry_ok = v.avoidance_ok = true;
  EXPECT_TRUE(to_json(v)["min_clearance"].is_null());
  EXPECT_NO_THROW((void)to_json(v).dump());
}

TEST(Io, PlanRoundTrip) {
  PointCloud m = segment_samples(Point{0.0, 0.0}, Point{0.0, 1.0}, 5);
  PointCloud x(2, 1e-3);
  x.push_back(Point{3.0, 3.0});
  MotionPlan plan{m, make_path({Point{0.0, 0.0}, Point{0.5, 0.1}, Point{1.0, 0.0}}, 0.1, 0.5), x, 0.1, {},
                  Anchor{Point{0.0, 0.0}, Point{1.0, 0.0}}};
  verify_plan(plan);
  const MotionPlan back = plan_from_json(json::parse(to_json(plan).dump()));
  EXPECT_EQ(back.path.vertices, plan.path.vertices);
  EXPECT_EQ(back.path.knots, plan.path.knots);
  EXPECT_EQ(back.epsilon, plan.epsilon);
  EXPECT_EQ(back.manifold.size(), 5u);
  ASSERT_TRUE(back.anchor.has_value());
  EXPECT_EQ(back.anchor->y0, (Point{1.0, 0.0}));
  EXPECT_THROW(plan_from_json(json{{"manifold", to_json(m)}}), ParseError);
}

TEST(Io, EstimatorRoundTrip) {
  const EstimatorConfig cfg{0.25, 0.01, 7, CountMethod::boxes, Point{0.1, 0.2}};
  const EstimatorConfig back = estimator_from_json(to_json(cfg));
  EXPECT_EQ(back.delta_max, 0.25);
  EXPECT_EQ(back.delta_min, 0.01);
  EXPECT_EQ(back.levels, 7);
  EXPECT_EQ(back.method, CountMethod::boxes);
  EXPECT_EQ(*back.anchor, (Point{0.1, 0.2}));
}

TEST(Io, CountsCsv) {
  const PointCloud c = cantor_dust(1, 1.0 / 3.0, 5);
  const DimensionEstimate e = estimate_dimension(c, EstimatorConfig{1.0 / 3.0, 1.0 / 81.0, 4, CountMethod::boxes, std::nullopt});
  const std::string csv = counts_csv(e);
  EXPECT_EQ(csv.rfind("method,delta,count\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::size_t row = 0;
  while (std::getline(in, line)) {
    const auto a = line.find(','), b = line.rfind(',');
    EXPECT_EQ(line.substr(0, a), "boxes");
    EXPECT_EQ(std::stod(line.substr(a + 1, b - a - 1)), e.counts[row].delta);
    EXPECT_EQ(std::stoull(line.substr(b + 1)), e.counts[row].count);
    ++row;
  }
}

TEST(Io, GeneratorKinds) {
  EXPECT_EQ(generate(json::parse(R"({"kind":"cantor_dust","params":{"n":2,"ratio":0.25,"depth":2}})")).size(), 64u);
  EXPECT_EQ(generate(json::parse(R"({"kind":"sierpinski","params":{"depth":3}})")).size(),
            sierpinski(3).size());
  EXPECT_EQ(generate(json::parse(R"({"kind":"segment","params":{"a":[0,0],"b":[1,0],"count":11}})")).size(), 11u);
  const PointCloud g =
      generate(json::parse(R"({"kind":"grid_dust","params":{"n":2,"spacing":0.5,"lo":[0,0],"hi":[1,1]}})"));
  EXPECT_EQ(g.size(), 9u);
  const PointCloud r1 = generate(json::parse(R"({"kind":"random_dust","params":{"n":2,"count":50},"seed":4})"));
  const PointCloud r2 = generate(json::parse(R"({"kind":"random_dust","params":{"n":2,"count":50}})"), 4);
  ASSERT_EQ(r1.size(), 50u);
  for (std::size_t i = 0; i < 50; ++i) EXPECT_EQ(r1.point(i), r2.point(i));
  const PointCloud s = generate(json::parse(
      R"({"kind":"cantor_dust","params":{"n":1,"ratio":0.5,"depth":1,"scale":2,"offset":[1]},"label":"moved"})"));
  EXPECT_EQ(s.label(), "moved");
  EXPECT_EQ(s.point(0), (Point{1.0}));
  EXPECT_EQ(s.point(s.size() - 1), (Point{3.0}));
}

TEST(Io, GeneratorErrors) {
  EXPECT_THROW(generate(json::parse(R"({"params":{}})")), ParseError);
  EXPECT_THROW(generate(json::parse(R"({"kind":"mystery"})")), ParseError);
  EXPECT_THROW(generate(json::parse(R"({"kind":"cantor_dust","params":{"n":2}})")), ParseError);
  EXPECT_THROW(generate(json::parse(R"({"kind":"cantor_dust","params":{"n":"two","ratio":0.3,"depth":1}})")),
               ParseError);
  EXPECT_THROW(generate(json::parse(R"({"kind":"cantor_dust","params":{"n":2,"ratio":0.7,"depth":1}})")),
               InvalidArgument);
  EXPECT_THROW(cloud_from_json(json::parse(R"({"dim":2,"resolution":0.1})")), ParseError);
  EXPECT_THROW(cloud_from_json(json::parse(R"({"dim":2,"resolution":0.1,"points":[[1,2,3]]})")), DimensionMismatch);
  EXPECT_THROW(read_json_file("/nonexistent/nowhere.json"), ParseError);
}

TEST(Io, ScenarioRoundTripAndValidation) {
  const Scenario sc = scenario_from_json(json::parse(R"({
    "ambient_dim": 2, "sets": {"X": {"kind":"cantor_dust","params":{"n":2,"ratio":0.3,"depth":2}}},
    "source": [0.5, -1], "epsilon": 0.01, "seed": 9})"));
  const Scenario back = scenario_from_json(to_json(sc));
  EXPECT_EQ(back.ambient_dim, 2u);
  EXPECT_EQ(*back.source, (Point{0.5, -1.0}));
  EXPECT_EQ(*back.epsilon, 0.01);
  EXPECT_EQ(back.seed, 9u);
  EXPECT_EQ(back.load("X").size(), 64u);
  EXPECT_THROW(back.load("Y"), ParseError);
  EXPECT_THROW(scenario_from_json(json::parse(R"({"sets":{}})")), ParseError);
  EXPECT_THROW(scenario_from_json(json::parse(R"({"ambient_dim":2,"source":[1,2,3]})")), DimensionMismatch);
  EXPECT_THROW(scenario_from_json(json::parse(R"({"ambient_dim":2,"epsilon":-1})")), InvalidArgument);
  const Scenario wrong = scenario_from_json(json::parse(
      R"({"ambient_dim":3,"sets":{"X":{"kind":"cantor_dust","params":{"n":2,"ratio":0.3,"depth":2}}}})"));
  EXPECT_THROW(wrong.load("X"), DimensionMismatch);
}
