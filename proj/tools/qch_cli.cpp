// qch: curve constants, Lipschitz bounds and scenario verification from the
// command line. Every flag has a JSON config twin with the same name.
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "qch/errors.hpp"
#include "qch/report.hpp"

namespace {

using qch::Json;

struct Flags {
  Json values = Json::object();

  void number(CLI::App* app, const std::string& name, const std::string& help) {
    app->add_option_function<double>("--" + name, [this, name](const double& v) { values[name] = v; }, help);
  }
  void integer(CLI::App* app, const std::string& name, const std::string& help) {
    app->add_option_function<int>("--" + name, [this, name](const int& v) { values[name] = v; }, help);
  }
  void text(CLI::App* app, const std::string& name, const std::string& help) {
    app->add_option_function<std::string>("--" + name, [this, name](const std::string& v) { values[name] = v; }, help);
  }
  void series(CLI::App* app) {
    app->add_option_function<std::string>(
        "--series",
        [this](const std::string& v) {
          try {
            values["series"] = Json::parse(v);
          } catch (const Json::exception& e) {
            throw qch::ConfigError(std::string("--series is not valid JSON: ") + e.what());
          }
        },
        "Fourier coefficients as JSON {\"cos\":[[..]],\"sin\":[[..]]}");
  }
};

Json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qch::ConfigError("cannot read config file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw qch::ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric constants and Lipschitz bounds for quasiconformal harmonic maps"};
  app.fallthrough();
  std::string config_path;
  Flags flags;
  app.add_option("--config", config_path, "JSON config; flags given on the command line take precedence");
  flags.text(&app, "format", "json | csv");
  flags.text(&app, "out", "write the report here instead of stdout");

  auto* constants = app.add_subcommand("constants", "length, chord-arc, Hölder and curvature constants of a curve");
  flags.text(constants, "curve", "circle | ellipse | fourier | csv");
  flags.number(constants, "radius", "circle radius");
  flags.number(constants, "a", "ellipse semi-axis along x");
  flags.number(constants, "b", "ellipse semi-axis along y");
  flags.text(constants, "csv", "samples file: rows t,x1,...,xn");
  flags.series(constants);
  flags.integer(constants, "nodes", "sample nodes (>= 16)");
  flags.number(constants, "mu", "Hölder exponent in (0,1]");

  auto* bound = app.add_subcommand("bound", "Mori constant and gradient bound from given constants");
  flags.number(bound, "K", "quasiconformality constant");
  flags.number(bound, "mu", "Hölder exponent in (0,1]");
  flags.number(bound, "upsilon", "isoperimetric constant (>= 1)");
  flags.number(bound, "lambda", "chord-arc constant");
  flags.number(bound, "c-gamma", "Hölder constant of the unit tangent");
  flags.number(bound, "length", "curve length");
  flags.number(bound, "area", "surface area (default: length^2/(4 pi upsilon))");
  flags.text(bound, "mori-variant", "statement | proof");
  bound->add_flag_function("--minimal", [&](std::int64_t) { flags.values["minimal"] = true; },
                           "also report the minimal-surface specialization");

  auto* verify = app.add_subcommand("verify", "check every inequality on a closed-form scenario");
  flags.text(verify, "scenario", "identity | affine | conformal_poly | harmonic_graph | fourier");
  flags.number(verify, "c", "affine parameter");
  flags.number(verify, "eps", "perturbation size");
  flags.integer(verify, "m", "perturbation degree");
  flags.series(verify);
  flags.integer(verify, "nodes", "boundary curve nodes");
  flags.integer(verify, "M", "angular quadrature nodes (power of two)");
  flags.number(verify, "delta", "radial cap 1 - delta");
  flags.number(verify, "mu", "Hölder exponent in (0,1]");
  flags.number(verify, "upsilon", "isoperimetric constant override");

  app.add_subcommand("scenarios", "list the scenario catalog");
  app.require_subcommand(0, 1);

  Json merged;
  try {
    app.parse(argc, argv);
    merged = config_path.empty() ? Json::object() : read_config(config_path);
    if (!merged.is_object()) throw qch::ConfigError("config file must hold a JSON object");
    for (auto it = flags.values.begin(); it != flags.values.end(); ++it) merged[it.key()] = it.value();
    for (const auto* sub : app.get_subcommands()) merged["command"] = sub->get_name();
    if (!merged.contains("command")) throw qch::ConfigError("no command given (constants, bound, verify, scenarios)");
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qch::kExitConfig;
  } catch (const qch::ConfigError& e) {
    std::cerr << "qch: " << e.what() << "\n";
    return qch::kExitConfig;
  }

  qch::RunOutcome outcome;
  qch::RunConfig cfg;
  try {
    cfg = qch::parse_run_config(merged);
  } catch (const qch::ConfigError& e) {
    std::cerr << "qch: " << e.what() << "\n";
    return qch::kExitConfig;
  }
  outcome = qch::run(cfg);
  if (!outcome.message.empty()) std::cerr << "qch: " << outcome.message << "\n";
  if (outcome.report.is_null()) return outcome.exit_code;

  const std::string text = cfg.format == "csv" ? qch::dump_csv(outcome.report) : qch::dump_json(outcome.report);
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.out, std::ios::binary);
    out << text;
    if (!out) {
      std::cerr << "qch: cannot write '" << cfg.out << "'\n";
      return qch::kExitConfig;
    }
  }
  return outcome.exit_code;
}
