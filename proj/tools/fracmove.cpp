// fracmove command line front end.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fracmove/fracmove.hpp"

namespace fs = std::filesystem;
using namespace fracmove;

namespace {

struct Globals {
  std::optional<std::uint64_t> seed;
  std::optional<double> epsilon;
  std::string csv;
  std::string out;
  bool force = false;
};

void write_file(const std::string& path, const std::string& text, bool force) {
  if (fs::exists(path) && !force) throw InvalidArgument(path + " exists (use --force to overwrite)");
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw InvalidArgument("cannot write " + path);
  f << text;
  if (!f) throw InvalidArgument("write failed: " + path);
}

Scenario load_scenario(const std::string& path, const Globals& g) {
  Scenario sc = scenario_from_json(read_json_file(path));
  if (g.seed) sc.seed = *g.seed;
  if (g.epsilon) {
    if (!(*g.epsilon > 0.0)) throw InvalidArgument("--epsilon must be positive");
    sc.epsilon = *g.epsilon;
  }
  return sc;
}

int emit(const CommandResult& r, const Globals& g) {
  std::cout << r.report.dump(2) << "\n";
  if (!g.out.empty()) write_file(g.out, r.full.value_or(r.report).dump(2) + "\n", g.force);
  return r.exit_code;
}

void print_table(const corpus::DemoReport& rep) {
  std::printf("%-16s %s\n", rep.name.c_str(), rep.pass() ? "PASS" : "FAIL");
  for (const auto& c : rep.checks) std::printf("  [%s] %s\n", c.pass ? "pass" : "FAIL", c.name.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Box dimensions, escape lines and translation planning past sampled fractal obstacles"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  std::uint64_t seed = 0;
  double epsilon = 0.0;
  auto* seed_opt = app.add_option("--seed", seed, "Seed overriding the scenario's");
  auto* eps_opt = app.add_option("--epsilon", epsilon, "Clearance overriding the scenario's");
  app.add_option("--csv", g.csv, "Write (method, delta, count) rows here");
  app.add_option("--out", g.out, "Write the full JSON result here");
  app.add_flag("--force", g.force, "Overwrite existing output files");

  std::string input;
  auto* gen = app.add_subcommand("gen", "Generate a point cloud from a generator spec");
  gen->add_option("spec", input, "Generator spec JSON file")->required();

  std::string method = "packing";
  double delta_max = 0.0, delta_min = 0.0;
  int levels = 0;
  auto* dim = app.add_subcommand("dim", "Estimate the box dimension of a point cloud");
  dim->add_option("cloud", input, "Point cloud JSON file")->required();
  dim->add_option("--method", method, "packing or boxes")->check(CLI::IsMember({"packing", "boxes"}));
  auto* dmax_opt = dim->add_option("--delta-max", delta_max, "Largest scale");
  auto* dmin_opt = dim->add_option("--delta-min", delta_min, "Smallest scale");
  auto* lev_opt = dim->add_option("--levels", levels, "Number of scales");

  auto* escape = app.add_subcommand("escape", "Search for a straight escape line (needs X, Y and a source)");
  escape->add_option("scenario", input, "Scenario JSON file")->required();

  auto* cspace = app.add_subcommand("cspace", "Build the configuration-space obstacle K = X - M");
  cspace->add_option("scenario", input, "Scenario JSON file")->required();

  auto* plan = app.add_subcommand("plan", "Gate, build K, find and verify a translation path");
  plan->add_option("scenario", input, "Scenario JSON file")->required();

  std::size_t t_samples = kDefaultTimeSamples;
  auto* verify = app.add_subcommand("verify", "Re-verify a motion plan written by plan --out");
  verify->add_option("plan", input, "Motion plan JSON file")->required();
  verify->add_option("--t-samples", t_samples, "Minimum number of time samples");

  auto* tube = app.add_subcommand("tube", "Check the tube dimension bound on a named fixture");
  tube->add_option("fixture", input, "Fixture name")->required()->check(CLI::IsMember(corpus::tube_fixture_names()));

  std::string export_dir;
  auto* demo = app.add_subcommand("demo", "Run a bundled demo, or \"all\"");
  demo->add_option("name", input, "Demo name or all");
  demo->add_option("--export", export_dir, "Write the bundled scenario files into this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }
  if (*seed_opt) g.seed = seed;
  if (*eps_opt) g.epsilon = epsilon;

  try {
    if (*gen) {
      json spec = read_json_file(input);
      if (g.seed && !spec.contains("seed")) spec["seed"] = *g.seed;
      const std::string text = to_json(generate(spec, g.seed.value_or(0))).dump() + "\n";
      if (g.out.empty())
        std::cout << text;
      else
        write_file(g.out, text, g.force);
      return kExitFound;
    }
    if (*dim) {
      const PointCloud cloud = cloud_from_json(read_json_file(input));
      if (cloud.empty()) throw InvalidArgument("cannot estimate the dimension of an empty cloud");
      EstimatorConfig cfg = default_estimator(cloud, parse_count_method(method));
      if (*dmax_opt) cfg.delta_max = delta_max;
      if (*dmin_opt) cfg.delta_min = delta_min;
      if (*lev_opt) cfg.levels = levels;
      const CommandResult r = cmd_dim(cloud, cfg);
      if (!g.csv.empty()) write_file(g.csv, r.csv, g.force);
      return emit(r, g);
    }
    if (*escape) return emit(cmd_escape(load_scenario(input, g)), g);
    if (*cspace) return emit(cmd_cspace(load_scenario(input, g)), g);
    if (*plan) return emit(cmd_plan(load_scenario(input, g)), g);
    if (*verify) {
      MotionPlan mp = plan_from_json(read_json_file(input));
      if (g.epsilon) mp.epsilon = *g.epsilon;
      return emit(cmd_verify(std::move(mp), t_samples), g);
    }
    if (*tube) {
      const corpus::TubeFixture f = corpus::tube_fixture(input);
      const TubeBoundRecord rec =
          check_tube_dimension_bound(f.manifold, f.y_params, f.epsilon, f.normal_steps, f.cfg, f.base_resolution);
      const corpus::FrameCheck fc = corpus::check_frames(f);
      CommandResult r;
      r.report = corpus::to_json(rec);
      r.report["fixture"] = f.name;
      r.report["manifold"] = std::string(to_string(f.manifold.kind()));
      r.report["epsilon"] = f.epsilon;
      r.report["frame"] = {{"max_unit_error", fc.max_unit_error},
                           {"max_tangent_dot", fc.max_tangent_dot},
                           {"max_base_offset", fc.max_base_offset},
                           {"projection_exact", fc.projection_exact},
                           {"embedded", fc.embedded}};
      r.exit_code = rec.satisfied ? kExitFound : kExitNegative;
      return emit(r, g);
    }
    if (*demo) {
      if (!export_dir.empty()) {
        fs::create_directories(export_dir);
        for (const auto& [name, sc] : corpus::scenario_files())
          write_file((fs::path(export_dir) / (name + ".json")).string(), sc.dump(2) + "\n", g.force);
        if (input.empty()) return kExitFound;
      }
      if (input.empty()) throw InvalidArgument("demo needs a name (or all)");
      std::vector<std::string> names;
      if (input == "all")
        names = corpus::demo_names();
      else
        names.push_back(input);
      json all = json::array();
      bool pass = true;
      for (const auto& name : names) {
        const corpus::DemoReport rep = corpus::run_demo(name, g.seed.value_or(1));
        print_table(rep);
        pass = pass && rep.pass();
        all.push_back(rep.to_json());
      }
      if (!g.out.empty()) write_file(g.out, (names.size() == 1 ? all[0] : all).dump(2) + "\n", g.force);
      return pass ? kExitFound : kExitNegative;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
