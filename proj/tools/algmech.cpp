// algmech: command-line front end for the Lie algebroid SODE toolkit.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "algmech/app.hpp"
#include "algmech/errors.hpp"

using namespace algmech;

namespace {

struct Args {
  std::string config;
  std::string output;
  std::string example = "driftless";
  RunOptions opts;
  std::uint64_t seed = 0;
  double tol = 0.0, dt = 0.0;
  int steps = 0;
  std::string at;
};

CLI::App* add_common(CLI::App& app, const char* name, const char* help, Args& a, bool needs_config = true) {
  CLI::App* sub = app.add_subcommand(name, help);
  auto* cfg = sub->add_option("--config", a.config, "System definition (JSON)");
  if (needs_config) cfg->required();
  sub->add_option("--seed", a.seed, "Sample seed (overrides the config)");
  sub->add_option("--tol", a.tol, "Residual tolerance (overrides the config)");
  sub->add_option("--format", a.opts.format, "Output format")->check(CLI::IsMember({"json", "md"}));
  sub->add_option("--output", a.output, "Write to this file instead of stdout");
  return sub;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Second-order dynamics, connections and symmetries on Lie algebroids"};
  app.require_subcommand(1);
  Args a;

  add_common(app, "validate", "Check the algebroid axioms, metric regularity and semispray consistency", a);
  auto* geometry = add_common(app, "geometry", "Connection, curvature, Jacobi endomorphism and structures at a point", a);
  geometry->add_option("--at", a.at, "Point, e.g. \"x=0.5,1,0;y=1,2\"");
  add_common(app, "spray-check", "Test 2-homogeneity of the semispray", a);
  add_common(app, "symmetry", "Verify every candidate in the config", a);
  auto* integrate = add_common(app, "integrate", "RK4 trajectory as CSV", a);
  integrate->add_option("--at", a.at, "Initial state, e.g. \"x=0,1,0;y=1,0\"");
  integrate->add_option("--dt", a.dt, "Step size");
  integrate->add_option("--steps", a.steps, "Number of steps");
  add_common(app, "report", "Full report (validation, geometry, symmetries, integration)", a);
  auto* example = app.add_subcommand("example", "Write a built-in system definition");
  example->add_option("name", a.example, "Fixture name")->check(CLI::IsMember({"driftless"}));
  example->add_option("--output", a.output, "Write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string cmd = sub->get_name();
  auto given = [sub](const char* name) {
    const CLI::Option* o = sub->get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
  };
  if (given("--seed")) a.opts.seed = a.seed;
  if (given("--tol")) a.opts.tol = a.tol;
  if (given("--at")) a.opts.at = a.at;
  if (given("--dt")) a.opts.dt = a.dt;
  if (given("--steps")) a.opts.steps = a.steps;
  if (cmd == "report" && !given("--format")) a.opts.format = "json";

  std::ostringstream out;
  int code = kExitPass;
  try {
    if (cmd == "example") {
      code = cmd_example(a.example, out);
    } else {
      const SystemConfig cfg = apply_options(load_config(a.config), a.opts);
      if (cmd == "validate") code = cmd_validate(cfg, a.opts, out);
      else if (cmd == "geometry") code = cmd_geometry(cfg, a.opts, out);
      else if (cmd == "spray-check") code = cmd_spray_check(cfg, a.opts, out);
      else if (cmd == "symmetry") code = cmd_symmetry(cfg, a.opts, out);
      else if (cmd == "integrate") code = cmd_integrate(cfg, a.opts, out);
      else code = cmd_report(cfg, a.opts, out);
    }
  } catch (const ConfigError& e) {
    std::cerr << "algmech: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "algmech: " << e.what() << "\n";
    return kExitFail;
  }

  if (a.output.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream f(a.output, std::ios::binary);
    if (!f || !(f << out.str())) {
      std::cerr << "algmech: cannot write " << a.output << "\n";
      return kExitUsage;
    }
  }
  return code;
}
