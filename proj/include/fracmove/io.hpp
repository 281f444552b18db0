#pragma once

// JSON serialization of the library's value types, and construction of
// point clouds from generator specs:
//   {"kind": "...", "params": {...}, "seed": k}

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "boxdim.hpp"
#include "core.hpp"
#include "cspace.hpp"
#include "motion.hpp"
#include "pathfind.hpp"
#include "setgen.hpp"
#include "shadow.hpp"

namespace fracmove {

using json = nlohmann::json;

struct ParseError : Error {
  using Error::Error;
};

// Non-finite reals (the unbounded clearance sentinel) serialize as null.
inline json real_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline double real_from(const json& j) { return j.is_null() ? kUnbounded : j.get<double>(); }

inline json to_json(Coords p) {
  json a = json::array();
  for (double v : p) a.push_back(v);
  return a;
}

inline Point point_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("point must be a nonempty array of numbers");
  std::vector<double> v;
  for (const auto& e : j) {
    if (!e.is_number()) throw ParseError("point coordinates must be numbers");
    v.push_back(e.get<double>());
  }
  return Point(std::move(v));
}

inline json to_json(const PointCloud& c) {
  json j;
  j["dim"] = c.dim();
  j["resolution"] = c.resolution();
  j["label"] = c.label();
  if (c.true_dim()) j["true_dim"] = *c.true_dim();
  json pts = json::array();
  for (std::size_t i = 0; i < c.size(); ++i) pts.push_back(to_json(c[i]));
  j["points"] = std::move(pts);
  return j;
}

inline PointCloud cloud_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("point cloud must be a JSON object");
  for (const char* key : {"dim", "resolution", "points"})
    if (!j.contains(key)) throw ParseError(std::string("point cloud is missing \"") + key + "\"");
  std::optional<double> td;
  if (j.contains("true_dim") && !j["true_dim"].is_null()) td = j["true_dim"].get<double>();
  PointCloud c(j["dim"].get<std::size_t>(), j["resolution"].get<double>(), j.value("label", std::string{}), td);
  if (!j["points"].is_array()) throw ParseError("\"points\" must be an array");
  c.reserve(j["points"].size());
  for (const auto& p : j["points"]) c.push_back(point_from_json(p));
  return c;
}

inline json to_json(const Window& w) { return {{"lo", to_json(w.lo())}, {"hi", to_json(w.hi())}}; }

inline Window window_from_json(const json& j) {
  if (!j.is_object() || !j.contains("lo") || !j.contains("hi")) throw ParseError("window needs \"lo\" and \"hi\"");
  return Window(point_from_json(j["lo"]), point_from_json(j["hi"]));
}

inline json to_json(const DimensionEstimate& e) {
  json j;
  j["slope"] = e.slope;
  j["intercept"] = e.intercept;
  j["r_squared"] = e.r_squared;
  j["slope_stderr"] = e.slope_stderr;
  j["degenerate"] = e.degenerate;
  j["method"] = to_string(e.method);
  j["deltas"] = e.deltas;
  json counts = json::array();
  for (const auto& c : e.counts) counts.push_back({{"delta", c.delta}, {"count", c.count}});
  j["counts"] = std::move(counts);
  if (e.window) j["window"] = to_json(*e.window);
  return j;
}

inline EstimatorConfig estimator_from_json(const json& j) {
  EstimatorConfig cfg;
  if (!j.is_object()) throw ParseError("estimator must be a JSON object");
  cfg.delta_max = j.value("delta_max", cfg.delta_max);
  cfg.delta_min = j.value("delta_min", cfg.delta_min);
  cfg.levels = j.value("levels", cfg.levels);
  if (j.contains("method")) cfg.method = parse_count_method(j["method"].get<std::string>());
  if (j.contains("anchor")) cfg.anchor = point_from_json(j["anchor"]);
  return cfg;
}

inline json to_json(const EstimatorConfig& cfg) {
  json j{{"delta_max", cfg.delta_max}, {"delta_min", cfg.delta_min}, {"levels", cfg.levels},
         {"method", to_string(cfg.method)}};
  if (cfg.anchor) j["anchor"] = to_json(*cfg.anchor);
  return j;
}

/// CSV of the ladder counts: header "method,delta,count", full precision.
inline std::string counts_csv(const DimensionEstimate& e) {
  std::string out = "method,delta,count\n";
  char buf[64];
  for (const auto& c : e.counts) {
    std::snprintf(buf, sizeof buf, "%.17g", c.delta);
    out += std::string(to_string(c.method)) + "," + buf + "," + std::to_string(c.count) + "\n";
  }
  return out;
}

inline json to_json(const EscapeResult& r) {
  json j;
  j["outcome"] = r.outcome == EscapeOutcome::escape ? "escape" : "covered";
  if (r.segment) j["segment"] = {{"a", to_json(r.segment->a)}, {"b", to_json(r.segment->b)}};
  if (r.target_index) j["target_index"] = *r.target_index;
  j["clearance"] = r.clearance ? real_json(*r.clearance) : json(nullptr);
  j["uncovered_fraction"] = r.uncovered_fraction;
  j["epsilon"] = r.epsilon;
  j["safe_radius"] = r.safe_radius;
  j["reach"] = r.reach;
  j["lipschitz_bound"] = r.lipschitz;
  if (r.outcome == EscapeOutcome::covered) {
    json cert = json::array();
    for (const auto& w : r.certificate)
      cert.push_back({{"target", w.target},
                      {"obstacle", w.obstacle},
                      {"kind", w.kind == CoverWitness::Kind::shadow ? "shadow" : "blocked"}});
    j["covered_certificate"] = std::move(cert);
  }
  return j;
}

inline json to_json(const PolyPath& p) {
  json v = json::array();
  for (const auto& x : p.vertices) v.push_back(to_json(x));
  return {{"vertices", std::move(v)}, {"knots", p.knots}, {"epsilon", p.epsilon}, {"terminal_radius", p.terminal_radius}};
}

inline PolyPath path_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("knots")) throw ParseError("path needs vertices and knots");
  PolyPath p;
  for (const auto& v : j["vertices"]) p.vertices.push_back(point_from_json(v));
  p.knots = j["knots"].get<std::vector<double>>();
  p.epsilon = j.value("epsilon", 0.0);
  p.terminal_radius = j.value("terminal_radius", 0.0);
  p.validate();
  return p;
}

inline json to_json(const Verification& v) {
  json j{{"isometry_ok", v.isometry_ok},
         {"avoidance_ok", v.avoidance_ok},
         {"min_clearance", real_json(v.min_clearance)},
         {"cross_check_ok", v.cross_check_ok}};
  if (v.kspace_clearance) j["kspace_clearance"] = real_json(*v.kspace_clearance);
  if (v.anchored_target) j["anchored_target"] = to_json(*v.anchored_target);
  if (v.anchor_ok) j["anchor_ok"] = *v.anchor_ok;
  return j;
}

inline json to_json(const MotionPlan& plan, bool include_clouds = true) {
  json j;
  if (include_clouds) {
    j["manifold"] = to_json(plan.manifold);
    j["obstacle"] = to_json(plan.obstacle);
  } else {
    j["manifold"] = {{"label", plan.manifold.label()}, {"size", plan.manifold.size()}};
    j["obstacle"] = {{"label", plan.obstacle.label()}, {"size", plan.obstacle.size()}};
  }
  j["path"] = to_json(plan.path);
  j["epsilon"] = plan.epsilon;
  j["verification"] = to_json(plan.verification);
  if (plan.anchor) j["anchor"] = {{"x0", to_json(plan.anchor->x0)}, {"y0", to_json(plan.anchor->y0)}};
  return j;
}

inline MotionPlan plan_from_json(const json& j) {
  for (const char* key : {"manifold", "obstacle", "path", "epsilon"})
    if (!j.contains(key)) throw ParseError(std::string("motion plan is missing \"") + key + "\"");
  MotionPlan plan{cloud_from_json(j["manifold"]), path_from_json(j["path"]), cloud_from_json(j["obstacle"]),
                  j["epsilon"].get<double>(), {}, std::nullopt};
  if (j.contains("anchor"))
    plan.anchor = Anchor{point_from_json(j["anchor"]["x0"]), point_from_json(j["anchor"]["y0"])};
  if (plan.manifold.dim() != plan.obstacle.dim()) throw DimensionMismatch(plan.manifold.dim(), plan.obstacle.dim());
  if (plan.path.dim() != plan.manifold.dim()) throw DimensionMismatch(plan.path.dim(), plan.manifold.dim());
  return plan;
}

inline json to_json(const CSpaceObstacle& k, bool include_pairs = false) {
  json j = to_json(k.points);
  json prov{{"m_label", k.m_label},
            {"x_label", k.x_label},
            {"total_pairs", k.total_pairs},
            {"cap", k.cap},
            {"subsampled", k.subsampled}};
  if (include_pairs) {
    json pairs = json::array();
    for (const auto& [m, x] : k.source_pairs) pairs.push_back({m, x});
    prov["source_pairs"] = std::move(pairs);
  }
  j["provenance"] = std::move(prov);
  return j;
}

inline json to_json(const GateReport& g) {
  return {{"dim_x", g.dim_x}, {"dim_x_stderr", g.dim_x_stderr}, {"dim_m", g.dim_m},   {"n", g.n},
          {"budget", g.budget}, {"pass", g.pass},               {"pass_low", g.pass_low}, {"pass_high", g.pass_high}};
}

// ---- generator specs ----

namespace detail {

inline const json& param(const json& params, const char* key) {
  if (!params.contains(key)) throw ParseError(std::string("generator parameter \"") + key + "\" is required");
  return params[key];
}

inline Window window_param(const json& params, std::size_t dim) {
  if (params.contains("window")) return window_from_json(params["window"]);
  if (params.contains("lo") && params.contains("hi"))
    return Window(point_from_json(params["lo"]), point_from_json(params["hi"]));
  return Window::cube(dim, 0.0, 1.0);
}

}  // namespace detail

PointCloud cloud_or_spec(const json& j, std::uint64_t default_seed);

namespace detail {

inline PointCloud generate_unchecked(const json& spec, std::uint64_t default_seed) {
  if (!spec.is_object() || !spec.contains("kind")) throw ParseError("generator spec needs a \"kind\"");
  const std::string kind = spec["kind"].get<std::string>();
  const json params = spec.value("params", json::object());
  const std::uint64_t seed = spec.value("seed", default_seed);
  PointCloud cloud = [&]() -> PointCloud {
    if (kind == "cantor_dust")
      return cantor_dust(param(params, "n").get<std::size_t>(), param(params, "ratio").get<double>(),
                         param(params, "depth").get<int>());
    if (kind == "sierpinski") return sierpinski(param(params, "depth").get<int>());
    if (kind == "grid_dust") {
      const auto n = param(params, "n").get<std::size_t>();
      const Window w = detail::window_param(params, n);
      std::optional<PointCloud> ex;
      if (params.contains("exclude")) ex = cloud_or_spec(params["exclude"], seed);
      return grid_dust(w, param(params, "spacing").get<double>(), ex ? &*ex : nullptr,
                       params.value("exclude_radius", 0.0));
    }
    if (kind == "hyperplane") {
      const auto n = param(params, "n").get<std::size_t>();
      if (n < 2) throw InvalidArgument("hyperplane needs ambient dimension >= 2");
      return hyperplane_samples(n, params.value("height", 0.0), param(params, "spacing").get<double>(),
                                detail::window_param(params, n - 1));
    }
    if (kind == "segment") {
      const Point a = point_from_json(param(params, "a"));
      const Point b = point_from_json(param(params, "b"));
      if (params.contains("count")) return segment_samples(a, b, params["count"].get<std::size_t>());
      return manifold_samples(SegmentManifold{a, b}, param(params, "spacing").get<double>());
    }
    if (kind == "sphere") {
      const auto n = param(params, "n").get<std::size_t>();
      const Point c = params.contains("center") ? point_from_json(params["center"]) : Point::origin(n);
      if (c.dim() != n) throw DimensionMismatch(n, c.dim());
      return manifold_samples(SphereManifold{c, params.value("radius", 1.0)}, param(params, "spacing").get<double>());
    }
    if (kind == "plane_patch")
      return manifold_samples(PlanePatchManifold{params.value("n", std::size_t{3}), params.value("width", 1.0),
                                                 params.value("height", 1.0)},
                              param(params, "spacing").get<double>());
    if (kind == "random_dust") {
      const auto n = param(params, "n").get<std::size_t>();
      return random_dust(param(params, "count").get<std::size_t>(), detail::window_param(params, n), seed);
    }
    if (kind == "points") return cloud_from_json(param(params, "cloud"));
    throw ParseError("unknown generator kind: " + kind);
  }();
  if (params.contains("scale") || params.contains("offset")) {
    const double scale = params.value("scale", 1.0);
    const Point off = params.contains("offset") ? point_from_json(params["offset"]) : Point::origin(cloud.dim());
    cloud = affine(cloud, scale, off);
  }
  if (params.contains("resolution")) cloud.set_resolution(params["resolution"].get<double>());
  if (spec.contains("label")) cloud.set_label(spec["label"].get<std::string>());
  return cloud;
}

}  // namespace detail

/// Builds the cloud a generator spec describes. Optional post-transform
/// params "scale" and "offset" map x -> scale * x + offset.
inline PointCloud generate(const json& spec, std::uint64_t default_seed = 0) {
  try {
    return detail::generate_unchecked(spec, default_seed);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad generator spec: ") + e.what());
  }
}

/// A set given either inline as a point cloud (has "points") or as a generator spec.
inline PointCloud cloud_or_spec(const json& j, std::uint64_t default_seed) {
  if (j.is_object() && j.contains("points")) return cloud_from_json(j);
  return generate(j, default_seed);
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON in " + path + ": " + e.what());
  }
}

}  // namespace fracmove
