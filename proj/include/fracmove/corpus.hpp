#pragma once

// Bundled scenarios and end-to-end demos. Every demo returns a JSON report
// that depends only on its inputs and seed; timing is left to the caller.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "boxdim.hpp"
#include "clearance.hpp"
#include "cspace.hpp"
#include "io.hpp"
#include "motion.hpp"
#include "scenario.hpp"
#include "setgen.hpp"
#include "shadow.hpp"
#include "tube.hpp"

namespace fracmove::corpus {

// ---- scenario files ----

inline json dust_plane_sets() {
  return {{"X", {{"kind", "cantor_dust"}, {"params", {{"n", 2}, {"ratio", 1.0 / 3.0}, {"depth", 6}}}}},
          {"Y", {{"kind", "segment"}, {"params", {{"a", {0.0, 2.0}}, {"b", {1.0, 2.0}}, {"count", 500}}}}}};
}

inline json scenario_escape_dust() {
  return {{"ambient_dim", 2}, {"sets", dust_plane_sets()}, {"source", {0.5, -1.0}}, {"seed", 1}};
}

inline json scenario_escape_planes() {
  auto plane = [](double height, double lo, double hi) {
    return json{{"kind", "hyperplane"},
                {"params", {{"n", 3}, {"height", height}, {"spacing", 0.1}, {"window", {{"lo", {lo, lo}}, {"hi", {hi, hi}}}}}}};
  };
  return {{"ambient_dim", 3},
          {"sets", {{"X", plane(1.0, 0.4, 1.6)}, {"Y", plane(0.0, 0.0, 2.0)}}},
          {"source", {1.0, 1.0, 2.0}},
          {"epsilon", 0.2},
          {"seed", 1}};
}

// A segment parallel to the z axis through the central gap of a 3D dust.
inline json dust_space_sets() {
  return {{"M", {{"kind", "segment"}, {"params", {{"a", {0.5, 0.5, 0.25}}, {"b", {0.5, 0.5, 0.75}}, {"count", 64}}}}},
          {"X", {{"kind", "cantor_dust"}, {"params", {{"n", 3}, {"ratio", 1.0 / 9.0}, {"depth", 4}}}}}};
}

inline json dust_space_estimator() {
  return {{"delta_max", 1.0 / 9.0}, {"delta_min", std::pow(9.0, -4)}, {"levels", 4}, {"method", "boxes"}};
}

inline json scenario_plan_dust() {
  return {{"ambient_dim", 3}, {"sets", dust_space_sets()}, {"estimator", dust_space_estimator()}, {"seed", 1}};
}

inline json scenario_plan_anchored() {
  json j = scenario_plan_dust();
  j["anchor"] = {{"x0", {0.5, 0.5, 0.25}}, {"y0", {1.4, 1.4, 0.25}}};
  return j;
}

inline json scenario_plan_small() {
  json j = scenario_plan_dust();
  j["max_displacement"] = 0.05;
  j["epsilon"] = 0.01;
  return j;
}

inline json scenario_plan_grid() {
  const json axis{{"kind", "segment"}, {"params", {{"a", {0.5, 0.5, -0.5}}, {"b", {0.5, 0.5, 1.5}}, {"count", 2001}}}};
  return {{"ambient_dim", 3},
          {"sets",
           {{"M", dust_space_sets()["M"]},
            {"X",
             {{"kind", "grid_dust"},
              {"params", {{"n", 3}, {"spacing", 0.05}, {"exclude", axis}, {"exclude_radius", 0.2}}}}}}},
          {"estimator", {{"delta_max", 0.4}, {"delta_min", 0.1}, {"levels", 5}, {"method", "boxes"}}},
          {"seed", 1}};
}

inline std::vector<std::pair<std::string, json>> scenario_files() {
  return {{"escape-dust", scenario_escape_dust()},     {"escape-planes", scenario_escape_planes()},
          {"plan-dust", scenario_plan_dust()},         {"plan-anchored", scenario_plan_anchored()},
          {"plan-small", scenario_plan_small()}, {"plan-grid", scenario_plan_grid()}};
}

// ---- tube fixtures ----

struct TubeFixture {
  std::string name;
  EmbeddedManifold manifold;
  std::vector<std::vector<double>> y_params;
  double epsilon;
  int normal_steps;
  EstimatorConfig cfg;
  double base_resolution;
};

inline std::vector<TubeFixture> tube_fixtures() {
  constexpr double pi = std::numbers::pi;
  std::vector<TubeFixture> out;
  {
    std::vector<std::vector<double>> q;
    for (int i = 0; i < 8; ++i) q.push_back({2.0 * pi * i / 8.0});
    out.push_back({"circle_in_R2", EmbeddedManifold::circle(), std::move(q), 0.2, 801,
                   EstimatorConfig{0.064, 0.002, 6, CountMethod::packing, std::nullopt}, 1e-3});
  }
  {
    std::vector<std::vector<double>> q;
    for (double e : cantor_endpoints(1.0 / 3.0, 7)) q.push_back({pi / 2.0 * e});
    out.push_back({"circle_in_R2/cantor", EmbeddedManifold::circle(), std::move(q), 0.1, 201,
                   EstimatorConfig{pi / 2.0 * std::pow(3.0, -3), pi / 2.0 * std::pow(3.0, -6), 4, CountMethod::packing,
                                   std::nullopt},
                   pi / 2.0 * std::pow(3.0, -7)});
  }
  {
    std::vector<std::vector<double>> q;
    for (int i = 0; i <= 800; ++i) q.push_back({pi / 2.0, pi / 2.0 * i / 800.0});
    out.push_back({"sphere_in_R3", EmbeddedManifold::sphere(), std::move(q), 0.1, 101,
                   EstimatorConfig{0.05, 0.005, 6, CountMethod::packing, std::nullopt}, pi / 2.0 / 800.0});
  }
  {
    std::vector<std::vector<double>> q;
    for (int i = 0; i <= 800; ++i) q.push_back({i / 800.0});
    out.push_back({"curve_graph", EmbeddedManifold::curve_graph(0.2, 3.0), std::move(q), 0.1, 101,
                   EstimatorConfig{0.05, 0.005, 6, CountMethod::packing, std::nullopt}, 1.0 / 800.0});
  }
  return out;
}

inline std::vector<std::string> tube_fixture_names() {
  std::vector<std::string> names;
  for (const auto& f : tube_fixtures()) names.push_back(f.name);
  return names;
}

inline TubeFixture tube_fixture(const std::string& name) {
  for (auto& f : tube_fixtures())
    if (f.name == name) return f;
  throw InvalidArgument("unknown tube fixture: " + name);
}

inline json to_json(const TubeBoundRecord& r) {
  return {{"dim_y_est", r.dim_y_est}, {"dim_tube_est", r.dim_tube_est}, {"codim", r.codim},
          {"bound", r.bound},         {"slack", kTubeBoundSlack},       {"satisfied", r.satisfied}};
}

struct FrameCheck {
  double max_unit_error = 0.0;    // | |v| - 1 |
  double max_tangent_dot = 0.0;   // |v . tangent|
  double max_base_offset = 0.0;   // base point distance to the parametrized set
  bool projection_exact = true;   // tube_project returns the stored base bit for bit
  bool embedded = true;
};

inline double distance_to_manifold(const EmbeddedManifold& m, Coords x) {
  switch (m.kind()) {
    case ManifoldKind::circle_in_R2:
    case ManifoldKind::sphere_in_R3: return std::abs(norm(x) - m.scale());
    case ManifoldKind::curve_graph: {
      const double at = m.point(std::vector<double>{x[0]})[1];
      return std::abs(x[1] - at);
    }
  }
  return kUnbounded;
}

inline FrameCheck check_frames(const TubeFixture& f) {
  FrameCheck fc;
  for (const auto& q : f.y_params) {
    const auto normals = f.manifold.normal_frame(q);
    const auto tangents = f.manifold.tangent_basis(q);
    for (const Point& v : normals) {
      fc.max_unit_error = std::max(fc.max_unit_error, std::abs(norm(v) - 1.0));
      for (const Point& t : tangents) fc.max_tangent_dot = std::max(fc.max_tangent_dot, std::abs(dot(v, t)));
    }
  }
  const TubeCloud tube = tube_thicken(f.manifold, f.y_params, f.epsilon, f.normal_steps, f.base_resolution);
  for (std::size_t b = 0; b < tube.bases.size(); ++b)
    fc.max_base_offset = std::max(fc.max_base_offset, distance_to_manifold(f.manifold, tube.bases[b]));
  for (std::size_t i = 0; i < tube.samples.size(); ++i) {
    const Point p = tube_project(tube, i);
    const Point expected = f.manifold.point(f.y_params[tube.base_of[i]]);
    if (!(p == expected)) fc.projection_exact = false;
  }
  fc.embedded = tube_embedded(tube, f.epsilon);
  return fc;
}

// ---- demos ----

struct Check {
  std::string name;
  bool pass = false;
  json detail;
};

struct DemoReport {
  std::string name;
  std::vector<Check> checks;

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }

  json to_json() const {
    json cs = json::array();
    for (const auto& c : checks) cs.push_back({{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"demo", name}, {"pass", pass()}, {"checks", std::move(cs)}};
  }
};

struct AccuracyFixture {
  std::string name;
  std::function<PointCloud()> make;
  EstimatorConfig cfg;  // method is overridden per count
  double expected;
  double tol;
};

inline std::vector<AccuracyFixture> accuracy_fixtures() {
  const double ln2 = std::log(2.0), ln3 = std::log(3.0);
  auto ladder = [](double hi, double lo, int levels) {
    return EstimatorConfig{hi, lo, levels, CountMethod::packing, std::nullopt};
  };
  return {
      {"cantor_dust(1,1/3,8)", [] { return cantor_dust(1, 1.0 / 3.0, 8); }, ladder(1.0 / 3.0, std::pow(3.0, -7), 7),
       ln2 / ln3, 0.05},
      {"cantor_dust(2,1/3,6)", [] { return cantor_dust(2, 1.0 / 3.0, 6); }, ladder(1.0 / 3.0, std::pow(3.0, -6), 6),
       2.0 * ln2 / ln3, 0.10},
      {"sierpinski(8)", [] { return sierpinski(8); }, ladder(0.5, std::pow(2.0, -8), 8), ln3 / ln2, 0.10},
      {"unit segment", [] { return segment_samples(Point{0.0, 0.0}, Point{1.0, 0.0}, 4097); },
       ladder(1.0 / 16.0, 1.0 / 1024.0, 7), 1.0, 0.05},
      {"unit square", [] { return manifold_samples(PlanePatchManifold{3, 1.0, 1.0}, 1.0 / 512.0); },
       ladder(1.0 / 8.0, 1.0 / 256.0, 6), 2.0, 0.10},
      {"single point",
       [] {
         PointCloud c(2, 1e-3, "point");
         c.push_back(Point{0.3, 0.7});
         return c;
       },
       ladder(0.25, 0.01, 6), 0.0, 0.02},
  };
}

inline constexpr double kMethodAgreement = 0.1;

inline DemoReport demo_boxdim_accuracy() {
  DemoReport rep{"boxdim-accuracy", {}};
  for (const auto& f : accuracy_fixtures()) {
    const PointCloud cloud = f.make();
    EstimatorConfig cfg = f.cfg;
    cfg.method = CountMethod::packing;
    const double packing = estimate_dimension(cloud, cfg).slope;
    cfg.method = CountMethod::boxes;
    const double boxes = estimate_dimension(cloud, cfg).slope;
    const bool ok = std::abs(packing - f.expected) <= f.tol && std::abs(boxes - f.expected) <= f.tol &&
                    std::abs(packing - boxes) <= kMethodAgreement;
    rep.checks.push_back({f.name, ok,
                          {{"expected", f.expected}, {"tol", f.tol}, {"packing", packing}, {"boxes", boxes}}});
  }
  return rep;
}

inline DemoReport demo_escape_dust() {
  DemoReport rep{"escape-dust", {}};
  const Scenario sc = scenario_from_json(scenario_escape_dust());
  const CommandResult r = cmd_escape(sc);
  rep.checks.push_back({"exit code 0", r.exit_code == kExitFound, {{"exit_code", r.exit_code}}});
  if (r.exit_code != kExitFound) return rep;
  const PointCloud x = sc.load("X");
  const PointCloud y = sc.load("Y");
  const double eps = r.report["epsilon"].get<double>();
  const double res = std::max(x.resolution(), y.resolution());
  const Point a = point_from_json(r.report["segment"]["a"]);
  const Point b = point_from_json(r.report["segment"]["b"]);
  double exhaustive = kUnbounded;
  for (std::size_t i = 0; i < x.size(); ++i) exhaustive = std::min(exhaustive, segment_point_distance(a, b, x[i]));
  rep.checks.push_back({"epsilon is twice the resolution", eps == 2.0 * res, {{"epsilon", eps}, {"resolution", res}}});
  rep.checks.push_back({"exhaustive clearance >= epsilon", exhaustive >= eps,
                        {{"clearance", exhaustive}, {"reported", r.report["clearance"]}, {"epsilon", eps}}});
  rep.checks.push_back({"segment ends on Y", y.point(r.report["target_index"].get<std::size_t>()) == b, json::object()});
  return rep;
}

inline DemoReport demo_escape_planes() {
  DemoReport rep{"escape-planes", {}};
  const Scenario sc = scenario_from_json(scenario_escape_planes());
  const CommandResult r = cmd_escape(sc);
  rep.checks.push_back({"exit code 2", r.exit_code == kExitNegative, {{"exit_code", r.exit_code}}});
  rep.checks.push_back({"outcome covered", r.report["outcome"] == "covered", {{"outcome", r.report["outcome"]}}});
  if (!r.report.contains("covered_certificate")) return rep;
  const PointCloud x = sc.load("X");
  const PointCloud y = sc.load("Y");
  const double eps = r.report["epsilon"].get<double>();
  const double tol = r.report["angular_tol"].get<double>();
  const ConeFrame frame = make_cone_frame(*sc.source, y, x);
  const double cover = lipschitz_bound(frame) * eps;
  std::vector<int> seen(y.size(), 0);
  std::size_t shadow = 0, blocked = 0, bad = 0;
  for (const auto& w : r.report["covered_certificate"]) {
    const auto t = w["target"].get<std::size_t>();
    const auto o = w["obstacle"].get<std::size_t>();
    if (t >= y.size() || o >= x.size()) {
      ++bad;
      continue;
    }
    ++seen[t];
    if (w["kind"] == "shadow") {
      ++shadow;
      const auto hit = cone_membership(frame, x[o], tol);
      if (!hit || distance(y[hit->index], y[t]) > cover) ++bad;
    } else {
      ++blocked;
      if (!(segment_point_distance(*sc.source, y[t], x[o]) < eps)) ++bad;
    }
  }
  const bool complete = std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
  rep.checks.push_back({"one witness per target", complete,
                        {{"targets", y.size()}, {"witnesses", r.report["covered_certificate"].size()}}});
  rep.checks.push_back({"every witness valid", bad == 0, {{"shadow", shadow}, {"blocked", blocked}, {"invalid", bad}}});
  return rep;
}

inline constexpr std::size_t kLipschitzPairs = 10'000;
inline constexpr double kLipschitzSlack = 1e-9;

inline DemoReport demo_shadow_lipschitz(std::uint64_t seed) {
  DemoReport rep{"shadow-lipschitz", {}};
  const Scenario sc = scenario_from_json(scenario_escape_dust());
  const PointCloud x = sc.load("X");
  const PointCloud y = sc.load("Y");
  const Point& s = *sc.source;
  const ConeFrame frame = make_cone_frame(s, y, x);
  const double lip = lipschitz_bound(frame);
  const double tol = default_angular_tol(s, y);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto cone_point = [&](std::size_t& j) {
    j = static_cast<std::size_t>(rng() % y.size());
    // keep a at least safe_radius from s: (1 - t) |y - s| >= r
    const double t = unit(rng) * (1.0 - frame.safe_radius() / frame.length(j));
    std::vector<double> a(s.dim());
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = t * s[k] + (1.0 - t) * y[j][k];
    return Point(std::move(a));
  };
  std::size_t violations = 0, mismatched = 0;
  double worst = 0.0;
  for (std::size_t q = 0; q < kLipschitzPairs; ++q) {
    std::size_t j1 = 0, j2 = 0;
    const Point a1 = cone_point(j1);
    const Point a2 = cone_point(j2);
    const std::size_t f1 = project_to_target_index(frame, a1, tol);
    const std::size_t f2 = project_to_target_index(frame, a2, tol);
    if (f1 != j1 || f2 != j2) ++mismatched;
    const double lhs = distance(y[f1], y[f2]);
    const double da = distance(a1, a2);
    if (lhs > lip * da + kLipschitzSlack) ++violations;
    if (da > 0.0) worst = std::max(worst, lhs / da);
  }
  rep.checks.push_back({"zero violations", violations == 0,
                        {{"pairs", kLipschitzPairs}, {"violations", violations}, {"bound", lip}, {"max_ratio", worst}}});
  rep.checks.push_back({"projection recovers the ray", mismatched == 0, {{"mismatched", mismatched}}});
  return rep;
}

inline void plan_checks(DemoReport& rep, const CommandResult& r, bool anchored) {
  rep.checks.push_back({"exit code 0", r.exit_code == kExitFound, {{"exit_code", r.exit_code}, {"status", r.report.value("status", "")}}});
  rep.checks.push_back({"gate passes", r.report["gate"]["pass"].get<bool>(), r.report["gate"]});
  if (!r.report.contains("plan")) return;
  const json& v = r.report["plan"]["verification"];
  const double eps = r.report["epsilon"].get<double>();
  rep.checks.push_back({"K built", r.report["k_size"].get<std::size_t>() > 0,
                        {{"k_size", r.report["k_size"]}, {"subsampled", r.report["k_subsampled"]}}});
  rep.checks.push_back({"isometry", v["isometry_ok"].get<bool>(), json::object()});
  rep.checks.push_back({"avoidance with clearance >= epsilon",
                        v["avoidance_ok"].get<bool>() && v["min_clearance"].get<double>() >= eps,
                        {{"min_clearance", v["min_clearance"]}, {"kspace_clearance", v["kspace_clearance"]}, {"epsilon", eps}}});
  if (anchored)
    rep.checks.push_back({"anchor lands", v.value("anchor_ok", false), {{"anchored_target", v["anchored_target"]}}});
}

inline DemoReport demo_plan_dust() {
  DemoReport rep{"plan-dust", {}};
  plan_checks(rep, cmd_plan(scenario_from_json(scenario_plan_dust())), false);
  return rep;
}

inline DemoReport demo_plan_anchored() {
  DemoReport rep{"plan-anchored", {}};
  const Scenario sc = scenario_from_json(scenario_plan_anchored());
  const CommandResult r = cmd_plan(sc);
  plan_checks(rep, r, true);
  if (r.exit_code == kExitFound) {
    // independent of verify_anchor: move x0 with the returned path by hand
    const PolyPath path = path_from_json(r.full->at("path"));
    const Point moved = sc.anchor->x0 + path.endpoint();
    double worst = 0.0;
    for (std::size_t k = 0; k < moved.dim(); ++k) worst = std::max(worst, std::abs(moved[k] - sc.anchor->y0[k]));
    rep.checks.push_back({"x0 + alpha(1) == y0", worst <= 4.0 * detail::ulp_at(2.0), {{"max_abs_error", worst}}});
  }
  return rep;
}

inline constexpr double kSmallMotionBound = 0.05;

inline DemoReport demo_plan_small() {
  DemoReport rep{"plan-small", {}};
  const CommandResult r = cmd_plan(scenario_from_json(scenario_plan_small()));
  plan_checks(rep, r, false);
  if (r.exit_code != kExitFound) return rep;
  const PolyPath path = path_from_json(r.full->at("path"));
  double outer = 0.0;
  for (const Point& v : path.vertices) outer = std::max(outer, norm(v));
  double sampled = 0.0;
  for (std::size_t i = 0; i <= 4096; ++i) sampled = std::max(sampled, norm(evaluate_path(path, i / 4096.0)));
  rep.checks.push_back({"max |alpha| <= 0.05 (outermost vertex)", outer <= kSmallMotionBound && sampled <= outer,
                        {{"outermost_vertex", outer}, {"sampled_max", sampled}, {"endpoint_norm", norm(path.endpoint())}}});
  return rep;
}

inline constexpr double kGridDimFloor = 2.5;

inline DemoReport demo_plan_grid() {
  DemoReport rep{"plan-grid", {}};
  const CommandResult r = cmd_plan(scenario_from_json(scenario_plan_grid()));
  const double dim = r.report["gate"]["dim_x"].get<double>();
  rep.checks.push_back({"estimated dim >= 2.5", dim >= kGridDimFloor,
                        {{"dim_x", dim}, {"stderr", r.report["gate"]["dim_x_stderr"]}}});
  rep.checks.push_back({"gate fails", !r.report["gate"]["pass"].get<bool>(), r.report["gate"]});
  rep.checks.push_back({"exit code 2", r.exit_code == kExitNegative,
                        {{"exit_code", r.exit_code}, {"status", r.report.value("status", "")}}});
  return rep;
}

inline constexpr std::size_t kProductPairs = 100'000;
inline constexpr double kProductSlack = 1e-12;
inline constexpr double kSubadditivitySlack = 0.15;

inline DemoReport demo_cspace_props(std::uint64_t seed) {
  DemoReport rep{"cspace-props", {}};
  const Scenario sc = scenario_from_json(scenario_plan_dust());
  const PointCloud m = sc.load("M");
  const PointCloud x = sc.load("X");
  std::mt19937_64 rng(seed);
  std::size_t violations = 0;
  double worst = 0.0;
  std::vector<double> d1(m.dim()), d2(m.dim());
  for (std::size_t q = 0; q < kProductPairs; ++q) {
    auto x1 = m[rng() % m.size()], x2 = m[rng() % m.size()];
    auto y1 = x[rng() % x.size()], y2 = x[rng() % x.size()];
    for (std::size_t k = 0; k < d1.size(); ++k) {
      d1[k] = y1[k] - x1[k];
      d2[k] = y2[k] - x2[k];
    }
    const double lhs = distance(d1, d2);
    const double rhs = product_distance(x1, y1, x2, y2);
    if (lhs > rhs + kProductSlack) ++violations;
    if (rhs > 0.0) worst = std::max(worst, lhs / rhs);
  }
  rep.checks.push_back({"difference map is 1-Lipschitz", violations == 0,
                        {{"pairs", kProductPairs}, {"violations", violations}, {"max_ratio", worst}}});

  const CSpaceObstacle k = minkowski_difference(m, x, sc.cap);
  const EstimatorConfig cfg{0.25, 0.01, 6, CountMethod::boxes, std::nullopt};
  const double dm = estimate_dimension(m, cfg).slope;
  const double dx = estimate_dimension(x, cfg).slope;
  const double dk = estimate_dimension(k.points, cfg).slope;
  rep.checks.push_back({"dim K <= dim M + dim X + 0.15", dk <= dm + dx + kSubadditivitySlack,
                        {{"dim_m", dm}, {"dim_x", dx}, {"dim_k", dk}, {"k_size", k.points.size()}, {"config", fracmove::to_json(cfg)}}});
  return rep;
}

inline constexpr double kFrameUnitTol = 1e-12;
inline constexpr double kFrameOrthoTol = 1e-9;
inline constexpr double kOnManifoldTol = 1e-9;

inline DemoReport demo_tube_bound() {
  DemoReport rep{"tube-bound", {}};
  for (const auto& f : tube_fixtures()) {
    const TubeBoundRecord rec = check_tube_dimension_bound(f.manifold, f.y_params, f.epsilon, f.normal_steps, f.cfg,
                                                           f.base_resolution);
    rep.checks.push_back({f.name + " dimension bound", rec.satisfied, to_json(rec)});
    const FrameCheck fc = check_frames(f);
    const bool frames = fc.max_unit_error <= kFrameUnitTol && fc.max_tangent_dot <= kFrameOrthoTol &&
                        fc.max_base_offset <= kOnManifoldTol && fc.projection_exact && fc.embedded;
    rep.checks.push_back({f.name + " frame and projection", frames,
                          {{"max_unit_error", fc.max_unit_error},
                           {"max_tangent_dot", fc.max_tangent_dot},
                           {"max_base_offset", fc.max_base_offset},
                           {"projection_exact", fc.projection_exact},
                           {"embedded", fc.embedded}}});
  }
  return rep;
}

inline std::vector<std::string> demo_names() {
  return {"boxdim-accuracy", "escape-dust",  "escape-planes", "shadow-lipschitz", "plan-dust",
          "plan-anchored",  "plan-small", "plan-grid",  "cspace-props",  "tube-bound"};
}

inline DemoReport run_demo(const std::string& name, std::uint64_t seed = 1) {
  if (name == "boxdim-accuracy") return demo_boxdim_accuracy();
  if (name == "escape-dust") return demo_escape_dust();
  if (name == "escape-planes") return demo_escape_planes();
  if (name == "shadow-lipschitz") return demo_shadow_lipschitz(seed);
  if (name == "plan-dust") return demo_plan_dust();
  if (name == "plan-anchored") return demo_plan_anchored();
  if (name == "plan-small") return demo_plan_small();
  if (name == "plan-grid") return demo_plan_grid();
  if (name == "cspace-props") return demo_cspace_props(seed);
  if (name == "tube-bound") return demo_tube_bound();
  throw InvalidArgument("unknown demo: " + name);
}

}  // namespace fracmove::corpus
