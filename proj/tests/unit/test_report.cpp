#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "qch/errors.hpp"
#include "qch/report.hpp"

using namespace qch;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult cli(const std::string& args, const std::string& env = {}) {
  const std::string cmd = env + " " + std::string(QCH_CLI_PATH) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "qch_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write_file(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig c = parse_run_config(Json::parse(R"({"command":"bound","K":2,"c-gamma":0.5,"lambda":1.5,
      "length":3,"mori-variant":"proof","minimal":true})"));
  CHECK(c.command == "bound");
  CHECK(c.K == 2.0);
  CHECK(*c.c_gamma == 0.5);
  CHECK(c.mori_variant == MoriVariant::Proof);
  CHECK(c.minimal);
  CHECK_THROWS_AS(parse_run_config(Json::parse(R"({"command":"bound","gamma":1})")), ConfigError);
  CHECK_THROWS_AS(parse_run_config(Json::parse(R"({"command":"bound","K":"two"})")), ConfigError);
  CHECK_THROWS_AS(parse_run_config(Json::parse(R"({"command":"fly"})")), ConfigError);
  CHECK_THROWS_AS(parse_run_config(Json::parse(R"({"command":"verify","M":1.5})")), ConfigError);
  CHECK_THROWS_AS(parse_run_config(Json::parse(R"({"command":"constants","format":"xml"})")), ConfigError);
  CHECK_THROWS_AS(parse_run_config(Json::parse("[1,2]")), ConfigError);
}

TEST_CASE("series parsing") {
  const TrigSeries s = parse_series(Json::parse(R"({"cos":[[0,1],[0,0]],"sin":[[0,0],[0,1]]})"));
  CHECK(s.dimension() == 2);
  CHECK(s.max_frequency() == 1);
  CHECK_THROWS_AS(parse_series(Json::parse(R"({"cos":[[0,1]]})")), ConfigError);
  CHECK_THROWS_AS(parse_series(Json::parse(R"({"cos":[[0,1],[0]],"sin":[[0,0],[0,1]]})")), ConfigError);
}

TEST_CASE("json formatting") {
  Json j{{"a", 0.1}, {"b", std::nan("")}, {"c", 1.0 / 0.0}, {"d", Json::array()}, {"e", 3}};
  const std::string s = dump_json(j);
  CHECK(s.find("\"a\": 0.10000000000000001") != std::string::npos);
  CHECK(s.find("\"b\": null") != std::string::npos);
  CHECK(s.find("\"c\": null") != std::string::npos);
  CHECK(s.find("\"d\": []") != std::string::npos);
  CHECK(contains_nan(j));
  CHECK_FALSE(contains_nan(Json{{"x", 1.0}}));
  // 17 significant digits round-trip every double.
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, 5e-324}) {
    const Json back = Json::parse(dump_json(Json{{"v", v}}));
    CHECK(back["v"].get<double>() == v);
  }
}

TEST_CASE("schema validation") {
  CHECK_NOTHROW(validate_report(scenarios_report()));
  CHECK_THROWS_AS(validate_report(Json{{"kind", "bound"}}), SchemaError);
  CHECK_THROWS_AS(validate_report(Json{{"schema_version", 99}, {"kind", "bound"}}), SchemaError);
  CHECK_THROWS_AS(validate_report(Json{{"schema_version", 1}, {"kind", "unknown"}}), SchemaError);
  Json r = scenarios_report();
  r["catalog"][0].erase("name");
  CHECK_THROWS_AS(validate_report(r), SchemaError);
}

TEST_CASE("run maps errors to exit codes") {
  RunConfig c;
  c.command = "bound";
  CHECK(run(c).exit_code == kExitConfig);  // missing lambda etc.
  c.lambda = 0.5;
  c.c_gamma = 1.0;
  c.length = 1.0;
  CHECK(run(c).exit_code == kExitConfig);  // lambda < 1
  c.lambda = 1.5;
  const RunOutcome ok = run(c);
  CHECK(ok.exit_code == kExitOk);
  CHECK(ok.report["kind"] == "bound");
  c.command = "verify";
  c.scenario = "nope";
  CHECK(run(c).exit_code == kExitConfig);
}

TEST_CASE("cli: bound example") {
  const CliResult r = cli("bound --K 1 --mu 1 --upsilon 1 --lambda 1.5708 --c-gamma 1 --length 6.2832");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK_NOTHROW(validate_report(j));
  CHECK(std::abs(j["alpha"].get<double>() - 0.148454) < 5e-6);
  CHECK(j["log_L"].get<double>() == 0x1.ad19046f8e4fcp+6);
}

TEST_CASE("cli: constants example") {
  const CliResult r = cli("constants --curve ellipse --a 1.2 --b 0.8");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK_NOTHROW(validate_report(j));
  CHECK(std::abs(j["max_curvature"].get<double>() - 1.875) < 1e-4);
  CHECK(std::abs(j["length"].get<double>() - 6.3461758357162358885) < 1e-10);
  CHECK(std::abs(j["chord_arc"]["value"].get<double>() - 1.9831799486613236) < 1e-10);
  CHECK(j["converged"] == true);
}

TEST_CASE("cli: verify identity") {
  const CliResult r = cli("verify --scenario identity");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK_NOTHROW(validate_report(j));
  CHECK(j["pass"] == true);
  for (const auto& c : j["checks"]) CHECK(c["pass"] == true);
}

TEST_CASE("cli: determinism and round trip") {
  for (const char* args : {"constants --curve ellipse --a 1.5 --b 0.7 --mu 0.5", "verify --scenario affine --c 0.3",
                           "scenarios", "bound --K 2 --lambda 1.3 --c-gamma 2 --length 5 --minimal"}) {
    const CliResult a = cli(args), b = cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const Json j = Json::parse(a.out);
    CHECK_NOTHROW(validate_report(j));
    CHECK(dump_json(j) == a.out);  // re-serialisation is byte-identical
  }
}

TEST_CASE("cli: output does not depend on the worker count") {
  const CliResult one = cli("verify --scenario conformal_poly", "QCH_THREADS=1");
  const CliResult four = cli("verify --scenario conformal_poly", "QCH_THREADS=4");
  CHECK(one.code == 0);
  CHECK(one.out == four.out);
}

TEST_CASE("cli: config file and flag precedence") {
  const auto cfg = scratch("cfg.json");
  write_file(cfg, R"({"command":"bound","K":1,"lambda":1.5708,"c-gamma":1,"length":6.2832,"upsilon":2})");
  const Json from_file = Json::parse(cli("--config " + cfg.string()).out);
  CHECK(from_file["inputs"]["upsilon"] == 2.0);
  const Json overridden = Json::parse(cli("bound --config " + cfg.string() + " --upsilon 1").out);
  CHECK(overridden["log_L"].get<double>() == 0x1.ad19046f8e4fcp+6);

  write_file(cfg, "{ not json");
  CHECK(cli("--config " + cfg.string()).code == 2);
  CHECK(cli("--config /nonexistent/qch.json").code == 2);
  write_file(cfg, R"({"command":"bound","bogus":1})");
  CHECK(cli("--config " + cfg.string()).code == 2);
}

TEST_CASE("cli: output file and csv") {
  const auto out = scratch("report.csv");
  std::filesystem::remove(out);
  CHECK(cli("verify --scenario identity --format csv --out " + out.string()).code == 0);
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "name,lhs,rhs,margin,tol,pass");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows >= 10);
  const CliResult c = cli("constants --curve circle --format csv");
  CHECK(c.out.rfind("key,value\n", 0) == 0);
  CHECK(c.out.find("chord_arc.value,1.57079632") != std::string::npos);
}

TEST_CASE("cli: samples csv input") {
  const auto path = scratch("ellipse.csv");
  std::string text = "t,x,y\n";
  char line[128];
  for (int j = 0; j < 64; ++j) {
    const double t = 6.283185307179586 * j / 64;
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", t, 1.2 * std::cos(t), 0.8 * std::sin(t));
    text += line;
  }
  write_file(path, text);
  const CliResult r = cli("constants --curve csv --csv " + path.string());
  REQUIRE(r.code == 0);
  CHECK(std::abs(Json::parse(r.out)["max_curvature"].get<double>() - 1.875) < 1e-4);
  CHECK(cli("constants --curve csv --csv /nonexistent.csv").code == 2);
}

TEST_CASE("cli: exit codes") {
  CHECK(cli("").code == 2);                                 // no command
  CHECK(cli("bound --K abc").code == 2);                    // bad flag value
  CHECK(cli("bound --K 1").code == 2);                      // missing inputs
  CHECK(cli("verify --scenario affine --c 1.5").code == 2);  // domain
  CHECK(cli("verify --scenario affine --M 100").code == 2);  // quadrature
  CHECK(cli("constants --curve ellipse --a 1 --b 0").code == 2);
  // Figure eight: not a Jordan curve.
  CHECK(cli(R"(constants --curve fourier --series '{"cos":[[0,0,0],[0,0,0]],"sin":[[0,1,0],[0,0,1]]}')").code == 2);
  // High-frequency data at the minimum node count cannot be resolved.
  CHECK(cli(R"(constants --curve fourier --nodes 16 --series '{"cos":[[0,1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0.01],[0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]],"sin":[[0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0],[0,1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]]}')")
            .code == 3);
  CHECK(cli("scenarios").code == 0);
}
