#pragma once

// Scenario files and the command pipelines built on them. Each command
// returns a JSON report and an exit status:
//   0  found / verified
//   2  sound negative (covered, gate failure, no waypoint, failed check)
//   1  bad input (reported by the caller from the thrown Error)

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "boxdim.hpp"
#include "core.hpp"
#include "cspace.hpp"
#include "io.hpp"
#include "motion.hpp"
#include "pathfind.hpp"
#include "shadow.hpp"

namespace fracmove {

inline constexpr int kExitFound = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNegative = 2;

inline constexpr std::size_t kDefaultCap = std::size_t{1} << 22;

struct Scenario {
  std::size_t ambient_dim = 0;
  json sets = json::object();  // name -> generator spec or inline cloud
  std::optional<Point> source;
  std::optional<Anchor> anchor;
  std::optional<double> epsilon;
  std::uint64_t seed = 0;
  std::optional<EstimatorConfig> estimator;
  std::optional<double> max_displacement;
  double escape_radius = 1.0;
  std::optional<double> angular_tol;
  std::size_t cap = kDefaultCap;
  std::optional<double> dim_m;  // overrides the manifold's own dimension in the gate

  bool has_set(const std::string& name) const { return sets.contains(name); }

  PointCloud load(const std::string& name) const {
    if (!has_set(name)) throw ParseError("scenario has no set \"" + name + "\"");
    PointCloud c = cloud_or_spec(sets[name], seed);
    if (c.dim() != ambient_dim) throw DimensionMismatch(ambient_dim, c.dim());
    if (c.label().empty()) c.set_label(name);
    return c;
  }

  /// The scenario epsilon, or twice the largest resolution among `clouds`.
  double epsilon_for(std::initializer_list<const PointCloud*> clouds) const {
    double res = 0.0;
    for (const PointCloud* c : clouds) res = std::max(res, c->resolution());
    const double eps = epsilon.value_or(2.0 * res);
    if (!(eps >= res)) throw InvalidArgument("epsilon is below a referenced sampling resolution");
    return eps;
  }
};

inline Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("scenario must be a JSON object");
  if (!j.contains("ambient_dim")) throw ParseError("scenario is missing \"ambient_dim\"");
  Scenario sc;
  try {
    sc.ambient_dim = j["ambient_dim"].get<std::size_t>();
    if (sc.ambient_dim == 0) throw ParseError("ambient_dim must be positive");
    if (j.contains("sets")) {
      if (!j["sets"].is_object()) throw ParseError("\"sets\" must be an object");
      sc.sets = j["sets"];
    }
    if (j.contains("source")) sc.source = point_from_json(j["source"]);
    if (j.contains("anchor")) {
      const json& a = j["anchor"];
      if (!a.contains("x0") || !a.contains("y0")) throw ParseError("anchor needs x0 and y0");
      sc.anchor = Anchor{point_from_json(a["x0"]), point_from_json(a["y0"])};
    }
    if (j.contains("epsilon") && !j["epsilon"].is_null()) sc.epsilon = j["epsilon"].get<double>();
    sc.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("estimator")) sc.estimator = estimator_from_json(j["estimator"]);
    if (j.contains("max_displacement")) sc.max_displacement = j["max_displacement"].get<double>();
    sc.escape_radius = j.value("escape_radius", 1.0);
    if (j.contains("angular_tol")) sc.angular_tol = j["angular_tol"].get<double>();
    sc.cap = j.value("cap", kDefaultCap);
    if (j.contains("dim_m")) sc.dim_m = j["dim_m"].get<double>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad scenario field: ") + e.what());
  }
  auto check = [&](const Point& p) {
    if (p.dim() != sc.ambient_dim) throw DimensionMismatch(sc.ambient_dim, p.dim());
  };
  if (sc.source) check(*sc.source);
  if (sc.anchor) {
    check(sc.anchor->x0);
    check(sc.anchor->y0);
  }
  if (sc.epsilon && !(*sc.epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  if (!(sc.escape_radius > 0.0)) throw InvalidArgument("escape_radius must be positive");
  if (sc.cap == 0) throw InvalidArgument("cap must be at least 1");
  return sc;
}

inline json to_json(const Scenario& sc) {
  json j{{"ambient_dim", sc.ambient_dim}, {"sets", sc.sets}, {"seed", sc.seed}};
  if (sc.source) j["source"] = to_json(*sc.source);
  if (sc.anchor) j["anchor"] = {{"x0", to_json(sc.anchor->x0)}, {"y0", to_json(sc.anchor->y0)}};
  if (sc.epsilon) j["epsilon"] = *sc.epsilon;
  if (sc.estimator) j["estimator"] = to_json(*sc.estimator);
  if (sc.max_displacement) j["max_displacement"] = *sc.max_displacement;
  if (sc.escape_radius != 1.0) j["escape_radius"] = sc.escape_radius;
  if (sc.angular_tol) j["angular_tol"] = *sc.angular_tol;
  if (sc.cap != kDefaultCap) j["cap"] = sc.cap;
  if (sc.dim_m) j["dim_m"] = *sc.dim_m;
  return j;
}

struct CommandResult {
  int exit_code = kExitFound;
  json report;                 // printed on standard output
  std::optional<json> full;    // written to --out when it differs from the report
  std::string csv;             // plot rows, when the command has any
};

// ---- escape ----

inline CommandResult cmd_escape(const Scenario& sc) {
  if (!sc.source) throw ParseError("escape needs a source point");
  const PointCloud x = sc.load("X");
  const PointCloud y = sc.load("Y");
  const double eps = sc.epsilon_for({&x, &y});
  const double tol = sc.angular_tol.value_or(default_angular_tol(*sc.source, y));
  const EscapeResult r = find_escape_line(*sc.source, y, x, eps, tol);
  CommandResult out;
  out.report = to_json(r);
  out.report["angular_tol"] = tol;
  out.exit_code = r.outcome == EscapeOutcome::escape ? kExitFound : kExitNegative;
  return out;
}

// ---- cspace / plan ----

inline EstimatorConfig scenario_estimator(const Scenario& sc, const PointCloud& cloud) {
  return sc.estimator.value_or(default_estimator(cloud, CountMethod::boxes));
}

inline double manifold_dimension(const Scenario& sc, const PointCloud& m) {
  if (sc.dim_m) return *sc.dim_m;
  if (m.true_dim()) return *m.true_dim();
  return estimate_dimension(m, scenario_estimator(sc, m)).slope;
}

inline GateReport scenario_gate(const Scenario& sc, const PointCloud& m, const PointCloud& x,
                                DimensionEstimate* x_est_out = nullptr) {
  const DimensionEstimate x_est = estimate_dimension(x, scenario_estimator(sc, x));
  if (x_est_out) *x_est_out = x_est;
  return evaluate_gate(x_est, manifold_dimension(sc, m), static_cast<int>(sc.ambient_dim));
}

inline CommandResult cmd_cspace(const Scenario& sc) {
  const PointCloud m = sc.load("M");
  const PointCloud x = sc.load("X");
  DimensionEstimate x_est;
  const GateReport gate = scenario_gate(sc, m, x, &x_est);
  const CSpaceObstacle k = minkowski_difference(m, x, sc.cap);
  CommandResult out;
  out.report = {{"gate", to_json(gate)},
                {"dim_x_estimate", to_json(x_est)},
                {"k_size", k.points.size()},
                {"resolution", k.points.resolution()},
                {"total_pairs", k.total_pairs},
                {"subsampled", k.subsampled}};
  out.full = to_json(k, true);
  return out;
}

/// Chooses the path endpoint: the anchor offset, a clear point inside the
/// displacement bound, or a clear point on the sphere of escape_radius.
inline PolyPath scenario_path(const Scenario& sc, const ClearanceOracle& k, double eps) {
  if (sc.anchor) return anchored_escape_path(k, sc.anchor->y0 - sc.anchor->x0, eps, sc.seed);
  if (sc.max_displacement) return small_displacement_path(k, *sc.max_displacement, eps, sc.seed);
  const Point b1 = find_sphere_waypoint(k, sc.escape_radius, std::nullopt, eps, sc.seed);
  return build_escape_path(k, b1, eps, sc.seed);
}

inline CommandResult cmd_plan(const Scenario& sc) {
  PointCloud m = sc.load("M");
  PointCloud x = sc.load("X");
  const double eps = sc.epsilon_for({&m, &x});
  CommandResult out;
  DimensionEstimate x_est;
  const GateReport gate = scenario_gate(sc, m, x, &x_est);
  out.report = {{"epsilon", eps}, {"gate", to_json(gate)}, {"dim_x_estimate", to_json(x_est)}};
  if (!gate.pass) {
    out.report["status"] = "gate_failed";
    out.exit_code = kExitNegative;
    return out;
  }
  const CSpaceObstacle k = minkowski_difference(m, x, sc.cap);
  out.report["k_size"] = k.points.size();
  out.report["k_subsampled"] = k.subsampled;
  const ClearanceOracle k_oracle(k.points, eps);
  std::optional<PolyPath> path;
  try {
    path = scenario_path(sc, k_oracle, eps);
  } catch (const NoWaypointFound& e) {
    out.report["status"] = "no_waypoint";
    out.report["radius"] = e.radius;
    out.exit_code = kExitNegative;
    return out;
  }
  MotionPlan plan{std::move(m), std::move(*path), std::move(x), eps, {}, sc.anchor};
  const Verification& v = verify_plan(plan, &k);
  const bool ok = v.isometry_ok && v.avoidance_ok && v.cross_check_ok && v.anchor_ok.value_or(true);
  out.report["status"] = ok ? "verified" : "verification_failed";
  out.report["plan"] = to_json(plan, false);
  out.full = to_json(plan, true);
  out.exit_code = ok ? kExitFound : kExitNegative;
  return out;
}

// ---- verify ----

inline CommandResult cmd_verify(MotionPlan plan, std::size_t t_samples = kDefaultTimeSamples) {
  const Verification& v = verify_plan(plan, nullptr, t_samples);
  CommandResult out;
  out.report = to_json(v);
  const bool ok = v.isometry_ok && v.avoidance_ok && v.anchor_ok.value_or(true);
  out.exit_code = ok ? kExitFound : kExitNegative;
  return out;
}

// ---- dim ----

inline CommandResult cmd_dim(const PointCloud& cloud, const EstimatorConfig& cfg) {
  if (cloud.empty()) throw InvalidArgument("cannot estimate the dimension of an empty cloud");
  const DimensionEstimate est = estimate_dimension(cloud, cfg);
  CommandResult out;
  out.report = to_json(est);
  out.csv = counts_csv(est);
  return out;
}

}  // namespace fracmove
