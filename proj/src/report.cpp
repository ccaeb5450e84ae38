#include "qch/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "qch/errors.hpp"

namespace qch {

namespace {

double number(const Json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("config: '" + key + "' must be a number");
  return v.get<double>();
}

int integer(const Json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError("config: '" + key + "' must be an integer");
  return v.get<int>();
}

std::string string(const Json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("config: '" + key + "' must be a string");
  return v.get<std::string>();
}

void one_of(const std::string& v, std::initializer_list<const char*> allowed, const std::string& key) {
  for (const char* a : allowed)
    if (v == a) return;
  throw ConfigError("config: '" + key + "' has unsupported value '" + v + "'");
}

Json sup_json(const SupEstimate& s) {
  return Json{{"value", s.value}, {"converged", s.converged}, {"depth", s.depth}, {"s", s.s}, {"t", s.t}};
}

Json constants_json(const CurveConstants& c) {
  return Json{{"mu", c.mu},
              {"length", c.length},
              {"chord_arc", sup_json(c.chord_arc)},
              {"holder_constant", sup_json(c.holder)},
              {"max_curvature", c.max_curvature},
              {"refinement_depth", c.refinement_depth},
              {"converged", c.converged()}};
}

Json nullable(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json series_json(const TrigSeries& s) {
  Json cos = Json::array(), sin = Json::array();
  for (Eigen::Index i = 0; i < s.cos_coeffs().rows(); ++i) {
    Json rc = Json::array(), rs = Json::array();
    for (Eigen::Index k = 0; k < s.cos_coeffs().cols(); ++k) {
      rc.push_back(s.cos_coeffs()(i, k));
      rs.push_back(s.sin_coeffs()(i, k));
    }
    cos.push_back(rc);
    sin.push_back(rs);
  }
  return Json{{"cos", cos}, {"sin", sin}};
}

void write(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string inner(static_cast<std::size_t>(indent + 2), ' ');
  switch (j.type()) {
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
      } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
      }
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += inner;
        write(j[i], out, indent + 2);
        out += i + 1 < j.size() ? ",\n" : "\n";
      }
      out += pad + "]";
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += inner + Json(it.key()).dump() + ": ";
        write(it.value(), out, indent + 2);
        out += i + 1 < j.size() ? ",\n" : "\n";
      }
      out += pad + "}";
      return;
    }
    default:
      out += j.dump();
  }
}

std::string csv_cell(const Json& v) {
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (!std::isfinite(d)) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    return buf;
  }
  if (v.is_null()) return "";
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  }
  return s;
}

void flatten(const Json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (!j.is_array()) {
    out += csv_cell(prefix) + "," + csv_cell(j) + "\n";
  }
}

// ---- schema -----------------------------------------------------------------

[[noreturn]] void schema_fail(const std::string& what) { throw SchemaError("report schema: " + what); }

const Json& field(const Json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) schema_fail("missing field '" + key + "'");
  return j.at(key);
}
void want_number(const Json& j, const std::string& key, bool nullable_ok = false) {
  const Json& v = field(j, key);
  if (!(v.is_number() || (nullable_ok && v.is_null()))) schema_fail("'" + key + "' must be a number");
}
void want_bool(const Json& j, const std::string& key) {
  if (!field(j, key).is_boolean()) schema_fail("'" + key + "' must be a boolean");
}
void want_string(const Json& j, const std::string& key) {
  if (!field(j, key).is_string()) schema_fail("'" + key + "' must be a string");
}
void want_sup(const Json& j, const std::string& key) {
  const Json& s = field(j, key);
  want_number(s, "value");
  want_bool(s, "converged");
  if (!field(s, "depth").is_number_integer()) schema_fail("'depth' must be an integer");
}
void want_constants(const Json& c) {
  want_number(c, "mu");
  want_number(c, "length");
  want_sup(c, "chord_arc");
  want_sup(c, "holder_constant");
  want_number(c, "max_curvature");
  want_bool(c, "converged");
}

}  // namespace

// ---------------------------------------------------------------------------

TrigSeries parse_series(const Json& j) {
  if (!j.is_object() || !j.contains("cos") || !j.contains("sin"))
    throw ConfigError("config: 'series' needs 'cos' and 'sin' coefficient arrays");
  auto matrix = [](const Json& rows, const char* name) {
    if (!rows.is_array() || rows.empty()) throw ConfigError(std::string("config: series '") + name + "' must be a nonempty array");
    const std::size_t cols = rows[0].is_array() ? rows[0].size() : 0;
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].is_array() || rows[i].size() != cols || cols == 0)
        throw ConfigError(std::string("config: series '") + name + "' rows must be equal-length arrays");
      for (std::size_t k = 0; k < cols; ++k) {
        if (!rows[i][k].is_number()) throw ConfigError("config: series coefficients must be numbers");
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k].get<double>();
      }
    }
    return m;
  };
  Eigen::MatrixXd c = matrix(j["cos"], "cos"), s = matrix(j["sin"], "sin");
  if (c.rows() != s.rows() || c.cols() != s.cols()) throw ConfigError("config: series 'cos' and 'sin' differ in shape");
  return TrigSeries(c, s);
}

RunConfig parse_run_config(const Json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  RunConfig c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const Json& v = it.value();
    if (k == "command") c.command = string(v, k);
    else if (k == "curve") c.curve = string(v, k);
    else if (k == "radius") c.radius = number(v, k);
    else if (k == "a") c.a = number(v, k);
    else if (k == "b") c.b = number(v, k);
    else if (k == "csv") c.csv = string(v, k);
    else if (k == "series") c.series = parse_series(v);
    else if (k == "nodes") c.nodes = integer(v, k);
    else if (k == "K") c.K = number(v, k);
    else if (k == "mu") c.mu = number(v, k);
    else if (k == "upsilon") c.upsilon = number(v, k);
    else if (k == "lambda") c.lambda = number(v, k);
    else if (k == "c-gamma") c.c_gamma = number(v, k);
    else if (k == "length") c.length = number(v, k);
    else if (k == "area") c.area = number(v, k);
    else if (k == "mori-variant") {
      const std::string s = string(v, k);
      one_of(s, {"statement", "proof"}, k);
      c.mori_variant = s == "proof" ? MoriVariant::Proof : MoriVariant::Statement;
    } else if (k == "minimal") {
      if (!v.is_boolean()) throw ConfigError("config: 'minimal' must be a boolean");
      c.minimal = v.get<bool>();
    } else if (k == "scenario") c.scenario = string(v, k);
    else if (k == "c") c.c = number(v, k);
    else if (k == "eps") c.eps = number(v, k);
    else if (k == "m") c.m = integer(v, k);
    else if (k == "M") c.M = integer(v, k);
    else if (k == "delta") c.delta = number(v, k);
    else if (k == "format") c.format = string(v, k);
    else if (k == "out") c.out = string(v, k);
    else throw ConfigError("config: unknown key '" + k + "'");
  }
  one_of(c.command, {"constants", "bound", "verify", "scenarios"}, "command");
  one_of(c.curve, {"circle", "ellipse", "fourier", "csv"}, "curve");
  one_of(c.format, {"json", "csv"}, "format");
  if (c.nodes < 16) throw ConfigError("config: 'nodes' must be at least 16");
  return c;
}

// ---------------------------------------------------------------------------

Json constants_report(const RunConfig& cfg, const CurveConstants& c) {
  Json curve{{"type", cfg.curve}};
  if (cfg.curve == "circle") curve["radius"] = cfg.radius;
  if (cfg.curve == "ellipse") {
    curve["a"] = cfg.a;
    curve["b"] = cfg.b;
  }
  if (cfg.curve == "csv") curve["csv"] = cfg.csv;
  if (cfg.curve == "fourier" && cfg.series) curve["series"] = series_json(*cfg.series);
  Json j{{"schema_version", kSchemaVersion}, {"kind", "constants"}, {"curve", curve}, {"nodes", cfg.nodes}};
  const Json body = constants_json(c);
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  return j;
}

Json bound_report(const BoundInputs& in, const BoundResult& r, MoriVariant variant,
                  const std::optional<BoundResult>& minimal) {
  Json inputs{{"K", in.K},           {"mu", in.mu},         {"upsilon", in.upsilon}, {"lambda", in.lambda},
              {"c_gamma", in.c_gamma}, {"length", in.length}, {"area", in.area ? Json(*in.area) : Json(nullptr)}};
  Json j{{"schema_version", kSchemaVersion},
         {"kind", "bound"},
         {"inputs", inputs},
         {"alpha", r.alpha},
         {"area_used", r.area},
         {"mori_variant", variant == MoriVariant::Proof ? "proof" : "statement"},
         {"mori_constant", r.mori},
         {"exponent", r.exponent},
         {"log_L", nullable(r.log_L)},
         {"L", nullable(r.L)}};
  if (minimal)
    j["minimal_surface"] = Json{{"alpha", minimal->alpha}, {"log_L", nullable(minimal->log_L)}, {"L", nullable(minimal->L)}};
  return j;
}

Json verify_report(const Scenario& sc, const VerificationReport& r) {
  Json params = Json::object();
  switch (sc.kind) {
    case ScenarioKind::Affine:
      params["c"] = sc.params.c;
      break;
    case ScenarioKind::ConformalPoly:
    case ScenarioKind::HarmonicGraph:
      params["eps"] = sc.params.eps;
      params["m"] = sc.params.m;
      break;
    case ScenarioKind::Fourier:
      params["series"] = series_json(static_cast<const TrigCurve&>(sc.gamma().source()).series());
      break;
    default:
      break;
  }
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e{{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"margin", c.margin}, {"tol", c.tol}, {"pass", c.pass}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    checks.push_back(e);
  }
  Json witness{{"preimages", Json(std::vector<double>(sc.witness.preimages.begin(), sc.witness.preimages.end()))},
               {"arcs", Json(std::vector<double>(sc.witness.arcs.begin(), sc.witness.arcs.end()))},
               {"a", Json{sc.witness.a.real(), sc.witness.a.imag()}},
               {"theta", sc.witness.theta}};
  return Json{{"schema_version", kSchemaVersion},
              {"kind", "verify"},
              {"scenario", Json{{"name", sc.name}, {"params", params}, {"normalization", witness}}},
              {"quadrature", Json{{"M", r.quadrature.M}, {"delta", r.quadrature.delta}, {"adaptive", r.quadrature.adaptive}}},
              {"constants", constants_json(r.constants)},
              {"K", r.K},
              {"K_numeric", r.K_numeric},
              {"upsilon", r.upsilon},
              {"gradient_sup",
               Json{{"grid", r.gradient_sup_raw},
                    {"boundary", r.gradient_sup_boundary},
                    {"extrapolated", r.gradient_sup_extrapolated},
                    {"estimate", r.gradient_sup}}},
              {"area", r.area},
              {"boundary_length", r.boundary_length},
              {"alpha", r.alpha},
              {"mori_constant", r.mori_constant},
              {"log_L", nullable(r.bound.log_L)},
              {"L", nullable(r.bound.L)},
              {"checks", checks},
              {"worst_margin", r.worst_margin()},
              {"pass", r.pass()}};
}

Json scenarios_report() {
  Json cat = Json::array();
  for (const auto& e : scenario_catalog())
    cat.push_back(Json{{"name", e.name}, {"params", e.params}, {"description", e.description}});
  return Json{{"schema_version", kSchemaVersion}, {"kind", "scenarios"}, {"catalog", cat}};
}

std::string dump_json(const Json& j) {
  std::string out;
  write(j, out, 0);
  out += "\n";
  return out;
}

std::string dump_csv(const Json& report) {
  std::string out;
  if (report.contains("checks")) {
    out += "name,lhs,rhs,margin,tol,pass\n";
    for (const auto& c : report["checks"])
      out += csv_cell(c["name"]) + "," + csv_cell(c["lhs"]) + "," + csv_cell(c["rhs"]) + "," + csv_cell(c["margin"]) +
             "," + csv_cell(c["tol"]) + "," + csv_cell(c["pass"]) + "\n";
  } else if (report.contains("catalog")) {
    out += "name,params,description\n";
    for (const auto& e : report["catalog"])
      out += csv_cell(e["name"]) + "," + csv_cell(e["params"]) + "," + csv_cell(e["description"]) + "\n";
  } else {
    out += "key,value\n";
    flatten(report, "", out);
  }
  return out;
}

void validate_report(const Json& r) {
  if (!r.is_object()) schema_fail("report must be an object");
  const Json& ver = field(r, "schema_version");
  if (!ver.is_number_integer() || ver.get<int>() != kSchemaVersion) schema_fail("unsupported schema_version");
  want_string(r, "kind");
  const std::string kind = r["kind"].get<std::string>();
  if (kind == "constants") {
    if (!field(r, "curve").is_object()) schema_fail("'curve' must be an object");
    want_string(r["curve"], "type");
    want_constants(r);
  } else if (kind == "bound") {
    const Json& in = field(r, "inputs");
    for (const char* k : {"K", "mu", "upsilon", "lambda", "c_gamma", "length"}) want_number(in, k);
    want_number(in, "area", true);
    for (const char* k : {"alpha", "area_used", "mori_constant", "exponent"}) want_number(r, k);
    want_number(r, "log_L", true);
    want_number(r, "L", true);
  } else if (kind == "verify") {
    want_string(field(r, "scenario"), "name");
    want_constants(field(r, "constants"));
    for (const char* k : {"K", "upsilon", "area", "alpha", "mori_constant"}) want_number(r, k);
    want_number(r, "log_L", true);
    want_number(r, "L", true);
    const Json& checks = field(r, "checks");
    if (!checks.is_array()) schema_fail("'checks' must be an array");
    for (const auto& c : checks) {
      want_string(c, "name");
      for (const char* k : {"lhs", "rhs", "margin", "tol"}) want_number(c, k, true);
      want_bool(c, "pass");
    }
    want_bool(r, "pass");
  } else if (kind == "scenarios") {
    const Json& cat = field(r, "catalog");
    if (!cat.is_array()) schema_fail("'catalog' must be an array");
    for (const auto& e : cat) want_string(e, "name");
  } else {
    schema_fail("unknown kind '" + kind + "'");
  }
}

bool contains_nan(const Json& j) {
  if (j.is_number_float()) return std::isnan(j.get<double>());
  if (j.is_structured())
    for (const auto& v : j)
      if (contains_nan(v)) return true;
  return false;
}

// ---------------------------------------------------------------------------

namespace {

JordanCurve curve_from(const RunConfig& cfg) {
  if (cfg.curve == "circle") return build_curve(CircleDescriptor{cfg.radius}, cfg.nodes);
  if (cfg.curve == "ellipse") return build_curve(EllipseDescriptor{cfg.a, cfg.b}, cfg.nodes);
  if (cfg.curve == "fourier") {
    if (!cfg.series) throw ConfigError("curve 'fourier' needs a 'series' entry");
    return build_curve(FourierDescriptor{*cfg.series}, cfg.nodes);
  }
  std::ifstream in(cfg.csv);
  if (!in) throw ConfigError("cannot read samples file '" + cfg.csv + "'");
  return build_curve(read_samples_csv(in), cfg.nodes);
}

RunOutcome execute(const RunConfig& cfg) {
  RunOutcome out;
  if (cfg.command == "constants") {
    const JordanCurve curve = curve_from(cfg);
    const CurveConstants c = compute_curve_constants(curve, cfg.mu);
    out.report = constants_report(cfg, c);
    out.exit_code = c.converged() ? kExitOk : kExitNumerical;
  } else if (cfg.command == "bound") {
    if (!cfg.lambda || !cfg.c_gamma || !cfg.length)
      throw ConfigError("bound needs --lambda, --c-gamma and --length");
    BoundInputs in;
    in.K = cfg.K;
    in.mu = cfg.mu;
    in.upsilon = cfg.upsilon.value_or(1.0);
    in.lambda = *cfg.lambda;
    in.c_gamma = *cfg.c_gamma;
    in.length = *cfg.length;
    in.area = cfg.area;
    BoundResult r = lipschitz_bound(in);
    r.mori = mori_constant(in.K, in.lambda, in.upsilon, r.area, cfg.mori_variant);
    std::optional<BoundResult> minimal;
    if (cfg.minimal) minimal = minimal_surface_bound(in.lambda, in.mu, in.c_gamma, in.length);
    out.report = bound_report(in, r, cfg.mori_variant, minimal);
  } else if (cfg.command == "verify") {
    ScenarioParams p;
    p.c = cfg.c;
    p.eps = cfg.eps;
    p.m = cfg.m;
    p.series = cfg.series;
    p.node_count = cfg.nodes;
    const Scenario sc = make_scenario(parse_scenario_kind(cfg.scenario), p);
    VerifyConfig vc;
    vc.mu = cfg.mu;
    vc.upsilon = cfg.upsilon;
    vc.quadrature.M = cfg.M;
    vc.quadrature.delta = cfg.delta;
    const VerificationReport r = verify(sc, vc);
    out.report = verify_report(sc, r);
    out.exit_code = r.pass() ? kExitOk : kExitViolation;
  } else {
    out.report = scenarios_report();
  }
  validate_report(out.report);
  if (contains_nan(out.report)) {
    out.exit_code = kExitNumerical;
    out.message = "report contains NaN";
  }
  return out;
}

}  // namespace

RunOutcome run(const RunConfig& cfg) {
  try {
    return execute(cfg);
  } catch (const ConfigError& e) {
    return {kExitConfig, Json(), e.what()};
  } catch (const DomainError& e) {
    return {kExitConfig, Json(), e.what()};
  } catch (const RegularityError& e) {
    return {kExitConfig, Json(), e.what()};
  } catch (const InjectivityError& e) {
    return {kExitConfig, Json(), e.what()};
  } catch (const DegenerateFrame& e) {
    return {kExitConfig, Json(), e.what()};
  } catch (const DegenerateSurface& e) {
    return {kExitConfig, Json(), e.what()};
  } catch (const NearBoundaryError& e) {
    return {kExitConfig, Json(), e.what()};
  } catch (const std::exception& e) {
    // Non-convergence, refinement requests, consistency failures.
    return {kExitNumerical, Json(), e.what()};
  }
}

}  // namespace qch
