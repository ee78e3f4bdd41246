// polyflow: batch front end for the root solver, coefficient evolution,
// particle simulation, and verification suites. Data goes to stdout (or the
// --traj file), diagnostics to stderr. Exit codes: 0 success, 1 I/O or schema
// error, 2 out-of-scope instance, 3 failing verify suite.
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "polyflow/cubic_special.hpp"
#include "polyflow/dynamics.hpp"
#include "polyflow/error.hpp"
#include "polyflow/evolution.hpp"
#include "polyflow/oracle.hpp"
#include "polyflow/poly_core.hpp"
#include "polyflow/reducer.hpp"
#include "polyflow/verify_suites.hpp"

namespace {

using nlohmann::ordered_json;
using namespace polyflow;

// ---- diagnostics ----

int log_level() {
  static const int level = [] {
    const char* env = std::getenv("POLYFLOW_LOG");
    if (!env) return 0;
    const std::string v(env);
    if (v == "debug") return 2;
    if (v == "info") return 1;
    return 0;
  }();
  return level;
}

// single insertion so lines from worker threads stay whole
void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[polyflow] " + msg + "\n";
}

void log_debug(const std::string& msg) {
  if (log_level() >= 2) std::cerr << "[polyflow] " + msg + "\n";
}

// ---- input handling ----

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::IoError, "cannot open input '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Instance {
  NormalizedPolynomial poly;
  std::vector<double> monic;  // descending, for residuals and polish
};

struct ParsedInput {
  std::vector<Instance> items;
  bool batch = false;
};

Instance instance_from_json_value(const ordered_json& v) {
  Instance inst;
  if (v.is_array()) {
    std::vector<double> monic;
    for (const auto& e : v) {
      if (!e.is_number()) raise(ErrorCode::SchemaError, "coefficient array must be numeric");
      monic.push_back(e.get<double>());
    }
    inst.poly = from_monic(monic);
    inst.monic = std::move(monic);
    return inst;
  }
  if (!v.is_object()) raise(ErrorCode::SchemaError, "expected an array or object instance");
  if (v.contains("roots")) {
    if (v.size() != 1 || !v["roots"].is_array())
      raise(ErrorCode::SchemaError, "roots form is exactly {\"roots\": [...]}");
    std::vector<double> roots;
    for (const auto& e : v["roots"]) {
      if (!e.is_number()) raise(ErrorCode::SchemaError, "roots must be numeric");
      roots.push_back(e.get<double>());
    }
    inst.poly = from_roots(roots);
    inst.monic = to_monic(inst.poly);
    return inst;
  }
  inst.poly = poly_from_json(v.dump());
  inst.monic = to_monic(inst.poly);
  return inst;
}

ParsedInput parse_instances(const std::string& text, const std::string& format) {
  ParsedInput out;
  if (format == "csv") {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line))
      if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
    if (lines.empty()) raise(ErrorCode::SchemaError, "empty CSV input");
    for (const std::string& l : lines) {
      Instance inst;
      inst.poly = poly_from_csv(l);
      inst.monic = to_monic(inst.poly);
      out.items.push_back(std::move(inst));
    }
    out.batch = lines.size() > 1;
    return out;
  }
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::exception& e) {
    raise(ErrorCode::SchemaError, std::string("input is not valid JSON: ") + e.what());
  }
  if (j.is_array() && !j.empty() && (j[0].is_array() || j[0].is_object())) {
    for (const auto& item : j) out.items.push_back(instance_from_json_value(item));
    out.batch = true;
    return out;
  }
  out.items.push_back(instance_from_json_value(j));
  return out;
}

// ---- solve ----

struct SolveCliOptions {
  std::string method = "reduce";
  double tol = -1.0;  // event tolerance; < 0 keeps the library default
  bool no_polish = false;
  bool closed_form = false;  // add the stage-mean reconstruction to the trace
};

double residual_at(const std::vector<double>& monic, double x) {
  long double acc = 0.0L;
  for (double c : monic) acc = acc * x + c;
  return std::abs(static_cast<double>(acc));
}

ordered_json roots_payload(const std::vector<double>& roots, const std::vector<double>& monic) {
  ordered_json out;
  out["roots"] = roots;
  std::vector<double> res;
  res.reserve(roots.size());
  for (double r : roots) res.push_back(residual_at(monic, r));
  out["residuals"] = res;
  return out;
}

ordered_json solve_one(const Instance& inst, const SolveCliOptions& so) {
  if (so.method == "oracle") {
    const std::vector<double> roots =
        oracle::sorted_real_roots(oracle::MonicPolynomial{inst.monic});
    ordered_json out = roots_payload(roots, inst.monic);
    out["trace"] = ordered_json{{"method", "oracle"}};
    return out;
  }
  if (so.method == "trig") {
    if (inst.poly.degree != 3)
      raise(ErrorCode::InvalidArgument, "trisection method handles exactly degree 3");
    const InvariantSet inv = depress(inst.poly);
    const DepressedRootSet dep = cubic::solve_cubic_trig(cubic::cubic_invariants(inv));
    std::vector<double> roots;
    for (double y : dep.y) roots.push_back(y + inst.poly.p1());
    ordered_json out = roots_payload(roots, inst.monic);
    out["trace"] = ordered_json{{"method", "trig"}};
    return out;
  }
  reducer::SolveOptions opts;
  if (so.tol >= 0) opts.evo.event_tol = so.tol;
  opts.polish = !so.no_polish;
  const reducer::SolveResult res = reducer::solve(inst.poly, opts);
  ordered_json out = roots_payload(res.roots.roots, inst.monic);
  ordered_json stages = ordered_json::array();
  for (const reducer::ReductionStage& st : res.trace.stages)
    stages.push_back(ordered_json{{"degree", st.degree},
                                  {"p1_before", st.p1_before},
                                  {"p1_after", st.p1_after},
                                  {"shift", st.shift},
                                  {"inv_drift", st.inv_drift}});
  ordered_json trace;
  trace["method"] = "reduce";
  trace["precondition_shift"] = res.trace.precondition_shift;
  trace["final_linear_root"] = res.trace.final_linear_root;
  trace["stages"] = std::move(stages);
  if (so.closed_form)
    trace["closed_form_roots"] = reducer::back_translate_closed_form(res.trace).roots;
  out["trace"] = std::move(trace);
  out["min_gap"] = res.roots.min_gap;
  return out;
}

std::string csv_roots_line(const ordered_json& payload) {
  std::string line;
  for (const auto& r : payload["roots"]) {
    if (!line.empty()) line += ',';
    line += format_double(r.get<double>());
  }
  return line + "\n";
}

int run_solve(const std::string& input, const std::string& format, const SolveCliOptions& so,
              int workers) {
  const ParsedInput parsed = parse_instances(read_input(input), format);
  log_info("solve: " + std::to_string(parsed.items.size()) + " instance(s), method=" + so.method);

  struct Slot {
    ordered_json payload;
    bool failed = false;
    bool hard = false;
  };
  std::vector<Slot> slots(parsed.items.size());
  auto work = [&](size_t i) {
    try {
      slots[i].payload = solve_one(parsed.items[i], so);
      log_debug("solve item " + std::to_string(i) + ": ok");
    } catch (const Error& e) {
      slots[i].failed = true;
      slots[i].hard = !out_of_scope(e.code());
      slots[i].payload =
          ordered_json{{"error", {{"code", error_code_name(e.code())}, {"message", e.what()}}}};
      log_debug("solve item " + std::to_string(i) + " failed: " + error_code_name(e.code()));
    }
  };

  if (!parsed.batch) {
    // single instance: propagate the error so the exit code reflects it
    slots[0].payload = solve_one(parsed.items[0], so);
  } else {
    const int nthreads = std::max(1, std::min<int>(workers, static_cast<int>(slots.size())));
    if (nthreads == 1) {
      for (size_t i = 0; i < slots.size(); ++i) work(i);
    } else {
      std::atomic<size_t> next{0};
      std::vector<std::thread> pool;
      for (int t = 0; t < nthreads; ++t)
        pool.emplace_back([&] {
          for (size_t i = next++; i < slots.size(); i = next++) work(i);
        });
      for (std::thread& t : pool) t.join();
    }
  }

  if (format == "csv") {
    std::string out;
    for (const Slot& s : slots)
      out += s.failed ? "error," + s.payload["error"]["code"].get<std::string>() + "\n"
                      : csv_roots_line(s.payload);
    std::cout << out;
  } else if (parsed.batch) {
    ordered_json arr = ordered_json::array();
    for (Slot& s : slots) arr.push_back(std::move(s.payload));
    std::cout << arr.dump(2) << "\n";
  } else {
    std::cout << slots[0].payload.dump(2) << "\n";
  }

  bool any_failed = false, any_hard = false;
  for (const Slot& s : slots) {
    any_failed |= s.failed;
    any_hard |= s.hard;
  }
  return any_hard ? 1 : (any_failed ? 2 : 0);
}

// ---- evolve ----

int run_evolve(const std::string& input, const std::string& format,
               const evolution::EvolutionOptions& eo) {
  // --format picks the report shape; the input representation is sniffed so a
  // json polynomial can still ask for a csv trace
  const std::string text = read_input(input);
  const size_t first = text.find_first_not_of(" \t\r\n");
  const bool json_in = first != std::string::npos && (text[first] == '[' || text[first] == '{');
  const ParsedInput parsed = parse_instances(text, json_in ? "json" : "csv");
  if (parsed.batch) raise(ErrorCode::InvalidArgument, "evolve takes a single polynomial");
  const evolution::EvolutionResult res = evolution::evolve_to_psq_zero(parsed.items[0].poly, eo);
  log_info("evolve: " + std::to_string(res.trace.steps) + " steps, drift " +
           format_double(res.trace.invariant_drift));
  if (format == "csv") {
    std::cout << evolution::trace_to_csv(res.trace);
    return 0;
  }
  ordered_json out;
  out["degree"] = res.trace.degree;
  out["scheme"] = res.trace.scheme == evolution::Scheme::EulerInX ? "euler" : "rk4";
  out["steps"] = res.trace.steps;
  out["step_used"] = res.trace.step_used;
  out["event_located"] = res.trace.event_located;
  out["invariant_drift"] = res.trace.invariant_drift;
  out["closed_form_max_dev"] = evolution::verify_against_closed_form(res.trace);
  out["samples"] = res.trace.samples.size();
  out["final"] = ordered_json{{"p1", res.final_state.poly.p1()},
                              {"psq", res.final_state.poly.psq},
                              {"x", res.final_state.x},
                              {"shift_accumulated", res.final_state.shift_accumulated}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

// ---- simulate ----

const char* kJobSchema = R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "polyflow simulate job",
  "type": "object",
  "required": ["kind", "init"],
  "additionalProperties": false,
  "properties": {
    "kind": {"enum": ["generalized", "quadratic"]},
    "potential": {
      "type": "object",
      "oneOf": [
        {"properties": {"type": {"const": "harmonic"}, "k": {"type": "number", "exclusiveMinimum": 0}},
         "required": ["type", "k"], "additionalProperties": false},
        {"properties": {"type": {"const": "coulomb"}, "charge": {"type": "number"},
                        "cutoff": {"type": "number", "exclusiveMinimum": 0}},
         "required": ["type", "charge"], "additionalProperties": false},
        {"properties": {"type": {"const": "tabulated"},
                        "radius": {"type": "array", "items": {"type": "number"}, "minItems": 3},
                        "value": {"type": "array", "items": {"type": "number"}, "minItems": 3}},
         "required": ["type", "radius", "value"], "additionalProperties": false}
      ]
    },
    "fields": {
      "type": "object", "additionalProperties": false,
      "properties": {
        "E": {"type": "array", "items": {"type": "number"}, "minItems": 3, "maxItems": 3},
        "B": {"type": "array", "items": {"type": "number"}, "minItems": 3, "maxItems": 3}
      }
    },
    "init": {
      "type": "object",
      "description": "generalized: {roots, r, direction} or {r, P, outer}; quadratic: {r, P, P0}"
    },
    "tau_span": {"type": "number", "minimum": 0, "default": 10.0},
    "steps": {"type": "integer", "minimum": 1, "default": 10000},
    "sample_stride": {"type": "integer", "minimum": 1, "default": 10},
    "richardson_audit": {"type": "boolean", "default": false}
  }
})";

void require_keys(const ordered_json& obj, const std::vector<std::string>& allowed,
                  const std::string& where) {
  for (const auto& kv : obj.items()) {
    bool ok = false;
    for (const std::string& k : allowed) ok |= kv.key() == k;
    if (!ok) raise(ErrorCode::SchemaError, "unknown key '" + kv.key() + "' in " + where);
  }
}

double number_at(const ordered_json& obj, const std::string& key, double fallback,
                 bool required = false) {
  if (!obj.contains(key)) {
    if (required) raise(ErrorCode::SchemaError, "missing required key '" + key + "'");
    return fallback;
  }
  if (!obj[key].is_number()) raise(ErrorCode::SchemaError, "'" + key + "' must be a number");
  return obj[key].get<double>();
}

std::vector<double> number_array(const ordered_json& obj, const std::string& key) {
  if (!obj.contains(key) || !obj[key].is_array())
    raise(ErrorCode::SchemaError, "'" + key + "' must be a numeric array");
  std::vector<double> out;
  for (const auto& e : obj[key]) {
    if (!e.is_number()) raise(ErrorCode::SchemaError, "'" + key + "' must be a numeric array");
    out.push_back(e.get<double>());
  }
  return out;
}

dynamics::Vec3 vec3_at(const ordered_json& obj, const std::string& key) {
  const std::vector<double> v = number_array(obj, key);
  if (v.size() != 3) raise(ErrorCode::SchemaError, "'" + key + "' must have exactly 3 components");
  return {v[0], v[1], v[2]};
}

dynamics::PotentialSpec potential_from_json(const ordered_json& p) {
  if (!p.is_object() || !p.contains("type") || !p["type"].is_string())
    raise(ErrorCode::SchemaError, "potential needs a string 'type'");
  const std::string type = p["type"].get<std::string>();
  if (type == "harmonic") {
    require_keys(p, {"type", "k"}, "potential");
    return dynamics::PotentialSpec::harmonic(number_at(p, "k", 0.0, true));
  }
  if (type == "coulomb") {
    require_keys(p, {"type", "charge", "cutoff"}, "potential");
    return dynamics::PotentialSpec::coulomb(number_at(p, "charge", 0.0, true),
                                            number_at(p, "cutoff", 0.05));
  }
  if (type == "tabulated") {
    require_keys(p, {"type", "radius", "value"}, "potential");
    return dynamics::PotentialSpec::tabulated(number_array(p, "radius"),
                                              number_array(p, "value"));
  }
  raise(ErrorCode::SchemaError, "unknown potential type '" + type + "'");
}

ordered_json report_to_json(const dynamics::ConservationReport& rep) {
  ordered_json items = ordered_json::array();
  for (const dynamics::DriftStat& st : rep.items)
    items.push_back(ordered_json{{"name", st.name},
                                 {"initial", st.initial},
                                 {"max_abs", st.max_abs},
                                 {"max_rel", st.max_rel}});
  ordered_json out;
  out["max_rel"] = rep.max_rel();
  if (rep.audit_error >= 0) out["audit_error"] = rep.audit_error;
  out["items"] = std::move(items);
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out << text;
  if (!out) raise(ErrorCode::IoError, "short write to '" + path + "'");
}

int run_simulate(const std::string& input, const std::string& traj_path) {
  ordered_json job;
  try {
    job = ordered_json::parse(read_input(input));
  } catch (const ordered_json::exception& e) {
    raise(ErrorCode::SchemaError, std::string("job is not valid JSON: ") + e.what());
  }
  if (!job.is_object()) raise(ErrorCode::SchemaError, "job must be a JSON object");
  require_keys(job,
               {"kind", "potential", "fields", "init", "tau_span", "steps", "sample_stride",
                "richardson_audit"},
               "job");
  if (!job.contains("kind") || !job["kind"].is_string())
    raise(ErrorCode::SchemaError, "missing required key 'kind'");
  const std::string kind = job["kind"].get<std::string>();
  if (!job.contains("init") || !job["init"].is_object())
    raise(ErrorCode::SchemaError, "missing required object 'init'");
  const ordered_json& init = job["init"];

  dynamics::SimOptions so;
  so.tau_span = number_at(job, "tau_span", so.tau_span);
  if (so.tau_span < 0) raise(ErrorCode::SchemaError, "'tau_span' must be nonnegative");
  so.steps = static_cast<long>(number_at(job, "steps", static_cast<double>(so.steps)));
  so.sample_stride =
      static_cast<int>(number_at(job, "sample_stride", static_cast<double>(so.sample_stride)));
  if (so.steps < 1 || so.sample_stride < 1)
    raise(ErrorCode::SchemaError, "'steps' and 'sample_stride' must be >= 1");
  if (job.contains("richardson_audit")) {
    if (!job["richardson_audit"].is_boolean())
      raise(ErrorCode::SchemaError, "'richardson_audit' must be a boolean");
    so.richardson_audit = job["richardson_audit"].get<bool>();
  }

  ordered_json report;
  report["kind"] = kind;

  if (kind == "generalized") {
    if (!job.contains("potential"))
      raise(ErrorCode::SchemaError, "generalized jobs require 'potential'");
    if (job.contains("fields"))
      raise(ErrorCode::SchemaError, "'fields' applies only to quadratic jobs");
    const dynamics::PotentialSpec pot = potential_from_json(job["potential"]);
    dynamics::DynamicsState st;
    if (init.contains("roots")) {
      require_keys(init, {"roots", "r", "direction"}, "init");
      st = dynamics::state_from_roots(number_array(init, "roots"), vec3_at(init, "r"),
                                      vec3_at(init, "direction"));
    } else {
      require_keys(init, {"r", "P", "outer"}, "init");
      st.r = vec3_at(init, "r");
      st.P = vec3_at(init, "P");
      st.outer = number_array(init, "outer");
    }
    const int n = static_cast<int>(st.outer.size()) + 1;
    const dynamics::Trajectory traj = dynamics::simulate_generalized(n, pot, st, so);
    write_text_file(traj_path, dynamics::trajectory_to_csv(traj));
    report["degree"] = traj.degree;
    report["samples"] = traj.samples.size();
    report["initial_roots"] = traj.initial_roots;
    report["trajectory"] = traj_path;
    report["report"] = report_to_json(traj.report);
  } else if (kind == "quadratic") {
    require_keys(init, {"r", "P", "P0"}, "init");
    dynamics::QuadState st;
    st.r = vec3_at(init, "r");
    st.P = vec3_at(init, "P");
    st.P0 = number_at(init, "P0", 0.0, true);
    dynamics::QuadTrajectory traj;
    if (job.contains("potential")) {
      if (job.contains("fields"))
        raise(ErrorCode::SchemaError, "give either 'potential' or 'fields', not both");
      traj = dynamics::simulate_quadratic(potential_from_json(job["potential"]), st, so);
    } else {
      if (!job.contains("fields"))
        raise(ErrorCode::SchemaError, "quadratic jobs require 'potential' or 'fields'");
      const ordered_json& f = job["fields"];
      require_keys(f, {"E", "B"}, "fields");
      dynamics::FieldSet fields;
      if (f.contains("E")) {
        const dynamics::Vec3 e = vec3_at(f, "E");
        fields.E = [e](const dynamics::Vec3&) { return e; };
      }
      if (f.contains("B")) {
        const dynamics::Vec3 b = vec3_at(f, "B");
        fields.B = [b](const dynamics::Vec3&) { return b; };
      }
      traj = dynamics::simulate_quadratic(fields, st, so);
    }
    write_text_file(traj_path, dynamics::trajectory_to_csv(traj));
    report["samples"] = traj.samples.size();
    report["trajectory"] = traj_path;
    report["report"] = report_to_json(traj.report);
  } else {
    raise(ErrorCode::SchemaError, "'kind' must be 'generalized' or 'quadratic'");
  }

  log_info("simulate: " + kind + " job, trajectory written to " + traj_path);
  std::cout << report.dump(2) << "\n";
  return 0;
}

// ---- verify ----

int run_verify(const std::string& suite, const suites::SuiteOptions& opts) {
  const suites::SuiteReport rep = suites::run_suite(suite, opts);
  ordered_json out;
  out["suite"] = rep.suite;
  out["cases"] = rep.cases;
  out["failures"] = rep.failures;
  out["max_residual"] = rep.max_residual;
  out["pass"] = rep.pass;
  out["notes"] = rep.notes;
  std::cout << out.dump(2) << "\n";
  log_info("verify: suite " + rep.suite + (rep.pass ? " passed" : " FAILED"));
  return rep.pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"translation-invariant polynomial flows: solver, tracer, simulator"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string format = "json";
  int workers = 1;

  SolveCliOptions so;
  CLI::App* solve = app.add_subcommand("solve", "find all real simple roots");
  solve->add_option("--input", input, "input path, '-' for stdin");
  solve->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  solve->add_option("--method", so.method, "reduce, trig, or oracle")
      ->check(CLI::IsMember({"reduce", "trig", "oracle"}));
  solve->add_option("--tol", so.tol, "event tolerance for the reduction march");
  solve->add_flag("--no-polish", so.no_polish, "skip the final Newton refinement");
  solve->add_flag("--closed-form", so.closed_form, "add the stage-mean root reconstruction");
  solve->add_option("--workers", workers, "thread count for batch inputs")
      ->check(CLI::PositiveNumber);

  evolution::EvolutionOptions eo;
  std::string scheme = "rk4";
  CLI::App* evolve = app.add_subcommand("evolve", "trace one P^2 -> 0 march");
  evolve->add_option("--input", input, "input path, '-' for stdin");
  evolve->add_option("--format", format, "json summary or csv trace")
      ->check(CLI::IsMember({"json", "csv"}));
  evolve->add_option("--step", eo.step, "RK4 step in s (default P1/256)");
  evolve->add_option("--steps", eo.euler_steps, "step count for the euler scheme")
      ->check(CLI::PositiveNumber);
  evolve->add_option("--scheme", scheme, "rk4 or euler")->check(CLI::IsMember({"rk4", "euler"}));
  evolve->add_option("--tol", eo.event_tol, "event tolerance");
  evolve->add_option("--drift-tol", eo.drift_tol, "invariant drift budget");
  evolve->add_option("--stride", eo.sample_stride, "record every k-th step")
      ->check(CLI::PositiveNumber);
  bool no_adaptive = false;
  evolve->add_flag("--no-adaptive", no_adaptive, "disable drift-triggered step halving");

  std::string traj_path = "trajectory.csv";
  bool print_schema = false;
  CLI::App* simulate = app.add_subcommand("simulate", "integrate particle dynamics from a job spec");
  simulate->add_option("--input", input, "job spec path, '-' for stdin");
  simulate->add_option("--traj", traj_path, "trajectory CSV output path");
  simulate->add_flag("--print-schema", print_schema, "print the job spec schema and exit");

  std::string suite;
  suites::SuiteOptions suite_opts;
  CLI::App* verify = app.add_subcommand("verify", "run a property suite");
  verify->add_option("--suite", suite, "vieta, invariants, theorem24, euler-shift, trig, elliptic, dynamics")
      ->required();
  verify->add_option("--cases", suite_opts.cases, "case count (0: suite default)");
  verify->add_option("--seed", suite_opts.seed, "RNG seed");
  verify->add_option("--tol", suite_opts.tol, "residual tolerance (suite default if negative)");
  verify->add_option("--drift-tol", suite_opts.drift_tol,
                     "drift tolerance (suite default if negative)");

  CLI::App* osolve = app.add_subcommand("oracle-solve", "");
  osolve->group("");  // hidden: reference-path root finding for tests
  osolve->add_option("--input", input, "input path, '-' for stdin");
  osolve->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return run_solve(input, format, so, workers);
    if (*evolve) {
      eo.scheme = scheme == "euler" ? evolution::Scheme::EulerInX : evolution::Scheme::P1MarchRK4;
      eo.adaptive = !no_adaptive;
      return run_evolve(input, format, eo);
    }
    if (*simulate) {
      if (print_schema) {
        std::cout << kJobSchema << "\n";
        return 0;
      }
      return run_simulate(input, traj_path);
    }
    if (*verify) return run_verify(suite, suite_opts);
    if (*osolve) {
      SolveCliOptions oso;
      oso.method = "oracle";
      return run_solve(input, format, oso, 1);
    }
  } catch (const polyflow::Error& e) {
    std::cerr << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    if (out_of_scope(e.code())) {
      if (e.code() == polyflow::ErrorCode::SingularEvolution ||
          e.code() == polyflow::ErrorCode::NoConvergence ||
          e.code() == polyflow::ErrorCode::InconsistentInit)
        std::cerr << "complex or repeated roots are out of scope for this tool\n";
      return 2;
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
