#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"
#include "qch/bounds.hpp"
#include "qch/curve_constants.hpp"
#include "qch/scenarios.hpp"

namespace qch {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Exit codes of `run`.
enum ExitCode : int {
  kExitOk = 0,
  kExitViolation = 1,
  kExitConfig = 2,
  kExitNumerical = 3,
};

/// Everything a run needs; field names match the command-line flags.
struct RunConfig {
  std::string command;  ///< constants | bound | verify | scenarios
  // curve (constants)
  std::string curve = "circle";  ///< circle | ellipse | fourier | csv
  double radius = 1.0;
  double a = 1.0;
  double b = 1.0;
  std::string csv;
  std::optional<TrigSeries> series;
  int nodes = 512;
  // bound
  double K = 1.0;
  double mu = 1.0;
  std::optional<double> upsilon;
  std::optional<double> lambda;
  std::optional<double> c_gamma;
  std::optional<double> length;
  std::optional<double> area;
  MoriVariant mori_variant = MoriVariant::Statement;
  bool minimal = false;
  // verify
  std::string scenario = "identity";
  double c = 0.2;
  double eps = 0.3;
  int m = 2;
  int M = 1024;
  double delta = 0.05;
  // output
  std::string format = "json";  ///< json | csv
  std::string out;
};

/// Reads a config object whose keys are the flag names (e.g. "c-gamma").
/// Unknown keys and ill-typed values raise ConfigError.
RunConfig parse_run_config(const Json& j);

/// {"cos": [[...], ...], "sin": [[...], ...]}, one row per coordinate.
TrigSeries parse_series(const Json& j);

Json constants_report(const RunConfig& cfg, const CurveConstants& c);
Json bound_report(const BoundInputs& in, const BoundResult& r, MoriVariant variant,
                  const std::optional<BoundResult>& minimal);
Json verify_report(const Scenario& sc, const VerificationReport& r);
Json scenarios_report();

/// Deterministic JSON text: insertion-ordered keys, 2-space indent,
/// doubles as %.17g, non-finite doubles as null.
std::string dump_json(const Json& j);
/// Flat CSV view of a report (key/value rows or one row per check).
std::string dump_csv(const Json& report);

/// Structural check of a report against the versioned schema.
void validate_report(const Json& report);
/// True if any number in the tree is NaN.
bool contains_nan(const Json& j);

struct RunOutcome {
  int exit_code = kExitOk;
  Json report;
  std::string message;  ///< error text for non-zero exits without a report
};

/// Executes a command and maps failures onto exit codes: violations 1,
/// configuration and domain errors 2, numerical failures and NaN 3.
RunOutcome run(const RunConfig& cfg);

}  // namespace qch
