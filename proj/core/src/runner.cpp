#include "ksobs/runner.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <thread>

#include "ksobs/errors.hpp"
#include "ksobs/format.hpp"

namespace ksobs {

Scenario parse_scenario(std::string_view name) {
  if (name == "free") return Scenario::Free;
  if (name == "observe") return Scenario::Observe;
  if (name == "sweep-lambda") return Scenario::SweepLambda;
  if (name == "sweep-S") return Scenario::SweepS;
  if (name == "cps-verify") return Scenario::CpsVerify;
  if (name == "sensors-validate") return Scenario::SensorsValidate;
  throw ConfigError("key 'scenario': unknown scenario '" + std::string(name) +
                    "' (expected free|observe|sweep-lambda|sweep-S|cps-verify|sensors-validate)");
}

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::Free:
      return "free";
    case Scenario::Observe:
      return "observe";
    case Scenario::SweepLambda:
      return "sweep-lambda";
    case Scenario::SweepS:
      return "sweep-S";
    case Scenario::CpsVerify:
      return "cps-verify";
    case Scenario::SensorsValidate:
      return "sensors-validate";
  }
  return "?";
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view v) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = v.find(',');
    const auto item = trim(v.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

[[noreturn]] void type_error(std::string_view key, std::string_view expected, std::string_view got) {
  throw ConfigError("key '" + std::string(key) + "': expected " + std::string(expected) + ", got '" +
                    std::string(got) + "'");
}

double parse_plain_real(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size() || !std::isfinite(out)) {
    type_error(key, "a real number", v);
  }
  return out;
}

double parse_real(std::string_view key, std::string_view v) {
  const auto slash = v.find('/');
  if (slash == std::string_view::npos) return parse_plain_real(key, v);
  const double num = parse_plain_real(key, trim(v.substr(0, slash)));
  const double den = parse_plain_real(key, trim(v.substr(slash + 1)));
  if (den == 0.0) type_error(key, "a nonzero denominator", v);
  return num / den;
}

long long parse_integer(std::string_view key, std::string_view v) {
  long long out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) type_error(key, "an integer", v);
  return out;
}

int parse_int(std::string_view key, std::string_view v) {
  const long long x = parse_integer(key, v);
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    type_error(key, "an integer in int range", v);
  }
  return static_cast<int>(x);
}

std::vector<double> parse_real_list(std::string_view key, std::string_view v) {
  std::vector<double> out;
  for (auto item : split_list(v)) out.push_back(parse_real(key, item));
  return out;
}

std::vector<int> parse_int_list(std::string_view key, std::string_view v) {
  std::vector<int> out;
  for (auto item : split_list(v)) out.push_back(parse_int(key, item));
  return out;
}

[[noreturn]] void constraint(std::string_view key, const std::string& what) {
  throw ConfigError("key '" + std::string(key) + "': " + what);
}

// Last value per key, in document order followed by overrides.
using Entries = std::map<std::string, std::string, std::less<>>;

void collect_line(std::string_view line, Entries& entries, const std::string& where) {
  const auto hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  line = trim(line);
  if (line.empty()) return;
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError(where + ": expected 'key = value', got '" + std::string(line) + "'");
  }
  const auto key = trim(line.substr(0, eq));
  const auto value = trim(line.substr(eq + 1));
  if (key.empty()) throw ConfigError(where + ": missing key");
  entries[std::string(key)] = std::string(value);
}

void validate(const RunSpec& spec) {
  if (!(spec.params.nu2 > 0.0)) constraint("nu2", "must be positive");
  if (!(spec.params.nu1 > 0.0)) constraint("nu1", "must be positive");
  if (!(spec.params.nu0 > 0.0)) constraint("nu0", "must be positive");
  if (spec.modes < 1) constraint("N", "must be >= 1");
  if (spec.grid_size < 2) constraint("grid_M", "must be >= 2");
  if (4 * static_cast<long long>(spec.modes) > spec.grid_size) {
    constraint("N", "must satisfy N <= grid_M/4 (grid_M = " + std::to_string(spec.grid_size) + ")");
  }
  if (!(spec.dt > 0.0)) constraint("dt", "must be positive");
  if (!(spec.t_end >= spec.dt)) constraint("t_end", "must be >= dt");
  if (spec.level < 1) constraint("S", "must be >= 1");
  if (spec.reference.size() != 4) {
    constraint("reference", "needs exactly 4 points in one dimension, got " +
                                std::to_string(spec.reference.size()));
  }
  for (double x : spec.reference) {
    if (!(x >= 0.0 && x < 1.0)) constraint("reference", "points must lie in [0,1)");
  }
  if (!(spec.lambda_gain >= 0.0)) constraint("lambda", "must be >= 0");
  for (double l : spec.lambda_list) {
    if (!(l >= 0.0)) constraint("lambda_list", "entries must be >= 0");
  }
  for (int s : spec.level_list) {
    if (s < 1) constraint("S_list", "entries must be >= 1");
  }
  if (spec.fit_window && !(spec.fit_window->end > spec.fit_window->start)) {
    constraint("fit_end", "must exceed fit_start");
  }
  switch (spec.scenario) {
    case Scenario::Free:
      if (spec.lambda_gain != 0.0) constraint("lambda", "must be 0 for scenario 'free'");
      break;
    case Scenario::SweepLambda:
      if (spec.lambda_list.empty()) constraint("lambda_list", "required for scenario 'sweep-lambda'");
      break;
    case Scenario::SweepS:
      if (spec.level_list.empty()) constraint("S_list", "required for scenario 'sweep-S'");
      break;
    default:
      break;
  }
}

}  // namespace

RunSpec parse_config(std::string_view text, std::span<const std::string> overrides) {
  Entries entries;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    collect_line(text.substr(0, nl), entries, "line " + std::to_string(line_no));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  for (const auto& o : overrides) {
    collect_line(o, entries, "override '" + o + "'");
  }

  RunSpec spec;
  bool have_scenario = false;
  bool have_nu0 = false;
  std::optional<double> fit_start;
  std::optional<double> fit_end;

  for (const auto& [key, value] : entries) {
    const std::string_view v = value;
    if (key == "scenario") {
      spec.scenario = parse_scenario(v);
      have_scenario = true;
    } else if (key == "variant") {
      if (v != "flame" && v != "fluid") type_error(key, "flame|fluid", v);
      spec.params.variant = parse_variant(v);
    } else if (key == "nu2") {
      spec.params.nu2 = parse_real(key, v);
    } else if (key == "nu1") {
      spec.params.nu1 = parse_real(key, v);
    } else if (key == "nu0") {
      spec.params.nu0 = parse_real(key, v);
      have_nu0 = true;
    } else if (key == "N") {
      spec.modes = parse_int(key, v);
    } else if (key == "dt") {
      spec.dt = parse_real(key, v);
    } else if (key == "t_end") {
      spec.t_end = parse_real(key, v);
    } else if (key == "grid_M") {
      spec.grid_size = parse_int(key, v);
    } else if (key == "S") {
      spec.level = parse_int(key, v);
    } else if (key == "S_sigma") {
      throw ConfigError("key 'S_sigma': derived from S (S_sigma = 4S) and cannot be set");
    } else if (key == "reference") {
      spec.reference = parse_real_list(key, v);
    } else if (key == "lambda") {
      spec.lambda_gain = parse_real(key, v);
    } else if (key == "lambda_list") {
      spec.lambda_list = parse_real_list(key, v);
    } else if (key == "S_list") {
      spec.level_list = parse_int_list(key, v);
    } else if (key == "initial_nominal") {
      spec.initial_nominal = value;
    } else if (key == "initial_estimate") {
      spec.initial_estimate = value;
    } else if (key == "output_dir") {
      if (v.empty()) type_error(key, "a path", v);
      spec.output_dir = value;
    } else if (key == "seed") {
      const long long s = parse_integer(key, v);
      if (s < 0) constraint(key, "must be >= 0");
      spec.seed = static_cast<std::uint64_t>(s);
    } else if (key == "fit_start") {
      fit_start = parse_real(key, v);
    } else if (key == "fit_end") {
      fit_end = parse_real(key, v);
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }

  if (!have_scenario) throw ConfigError("scenario required");
  if (spec.params.variant == Variant::Fluid && !have_nu0) spec.params.nu0 = 1.0;
  if (fit_start || fit_end) {
    const FitWindow def = default_fit_window(spec.t_end);
    spec.fit_window = FitWindow{fit_start.value_or(def.start), fit_end.value_or(def.end)};
  }
  validate(spec);

  // Presets are checked here so a bad name is a config error, not a run error.
  const QuadratureGrid grid(spec.grid_size);
  for (const auto& [key, preset] :
       {std::pair{"initial_nominal", &spec.initial_nominal},
        std::pair{"initial_estimate", &spec.initial_estimate}}) {
    try {
      (void)initial_state(*preset, spec.modes, grid, spec.seed);
    } catch (const DomainError& e) {
      constraint(key, e.what());
    }
  }
  return spec;
}

SpectralState initial_state(std::string_view preset, int modes, const QuadratureGrid& grid,
                            std::uint64_t seed) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const Vector x = grid.nodes();
  if (preset == "bump-nominal") {
    const Vector s = 1.0 + (2.0 * two_pi * x.array()).sin();
    return project(s, grid, modes);
  }
  if (preset == "bump-estimate") {
    const Vector s = (two_pi * x.array()).cos() * (1.0 + (two_pi * x.array()).sin());
    return project(s, grid, modes);
  }
  if (preset == "zero") {
    return SpectralState{Vector::Zero(modes), 0.0};
  }
  if (preset == "random") {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 0.5);
    SpectralState st{Vector::Zero(modes), 0.0};
    for (int n = 0; n < std::min(modes, 9); ++n) st.coeffs[n] = dist(rng);
    return st;
  }
  constexpr std::string_view prefix = "modes:";
  if (preset.starts_with(prefix)) {
    SpectralState st{Vector::Zero(modes), 0.0};
    for (auto item : split_list(preset.substr(prefix.size()))) {
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw DomainError("expected j=value in '" + std::string(item) + "'");
      }
      int j = 0;
      try {
        j = parse_int("mode", trim(item.substr(0, eq)));
        const double v = parse_real("mode value", trim(item.substr(eq + 1)));
        if (j < 1 || j > modes) {
          throw DomainError("mode index " + std::to_string(j) + " outside 1.." +
                            std::to_string(modes));
        }
        st.coeffs[j - 1] = v;
      } catch (const ConfigError& e) {
        throw DomainError(e.what());
      }
    }
    return st;
  }
  throw DomainError("unknown initial-state preset '" + std::string(preset) + "'");
}

SimulationConfig make_simulation_config(const RunSpec& spec) {
  SimulationConfig cfg;
  cfg.params = spec.params;
  cfg.modes = spec.modes;
  cfg.dt = spec.dt;
  cfg.t_end = spec.t_end;
  cfg.grid_size = spec.grid_size;
  cfg.sensors = sensor_points(ReferenceSet::line(spec.reference), spec.level);
  cfg.lambda_gain = spec.scenario == Scenario::Free ? 0.0 : spec.lambda_gain;
  const QuadratureGrid grid(spec.grid_size);
  cfg.initial_nominal = initial_state(spec.initial_nominal, spec.modes, grid, spec.seed);
  cfg.initial_estimate = initial_state(spec.initial_estimate, spec.modes, grid, spec.seed + 1);
  return cfg;
}

int worker_count() {
  if (const char* env = std::getenv("KSOBS_WORKERS")) {
    const std::string_view v(env);
    int n = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), n);
    if (res.ec == std::errc() && n >= 1) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct RunSummary {
  double lambda = 0.0;
  int level = 0;
  std::optional<DecayFit> fit;
  double final_over_initial = kNaN;
  std::string error;  // nonempty when the run did not produce a series
  int exit_code = kExitOk;

  bool decays() const {
    return fit && fit->slope < 0.0 && final_over_initial < 1.0;
  }
};

RunSummary summarize(const TimeSeries& ts, FitWindow window) {
  RunSummary s;
  const auto series = error_norm_series(ts, NormKind::V);
  if (!series.empty() && series.front().value > 0.0) {
    s.final_over_initial = series.back().value / series.front().value;
  }
  try {
    s.fit = fit_decay_rate(series, window);
  } catch (const DomainError&) {
    s.fit.reset();
  }
  return s;
}

// One observer run: build Lambda if needed, integrate, write the series CSV.
RunSummary run_single(const RunSpec& spec, bool with_injection, const std::filesystem::path& csv) {
  RunSummary out;
  out.lambda = with_injection ? spec.lambda_gain : 0.0;
  out.level = spec.level;
  try {
    SimulationConfig cfg = make_simulation_config(spec);
    cfg.keep_states = false;
    TimeSeries ts;
    if (with_injection) {
      const SpectrumTable table(cfg.modes, cfg.params.nu2);
      const InjectionOperator op(build_output_matrices(cfg.sensors, table), cfg.lambda_gain,
                                 cfg.params.nu2);
      ts = simulate(cfg, op);
    } else {
      ts = simulate(cfg);
    }
    export_csv(ts, csv);
    const FitWindow window = spec.fit_window.value_or(default_fit_window(spec.t_end));
    RunSummary s = summarize(ts, window);
    s.lambda = out.lambda;
    s.level = out.level;
    return s;
  } catch (const BlowUpError& e) {
    out.error = e.what();
    out.exit_code = kExitBlowUp;
  } catch (const ConstructionError& e) {
    out.error = e.what();
    out.exit_code = kExitVerificationFailure;
  }
  return out;
}

std::string fmt_or_nan(const std::optional<DecayFit>& fit, double DecayFit::*field) {
  return fit ? format_double((*fit).*field) : std::string("nan");
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw IoError("cannot open '" + p.string() + "' for writing");
  return out;
}

void log_summary(std::ostream& log, const RunSummary& s) {
  if (!s.error.empty()) {
    log << "  lambda=" << format_double(s.lambda) << " S=" << s.level << ": " << s.error << '\n';
    return;
  }
  log << "  lambda=" << format_double(s.lambda) << " S=" << s.level;
  if (s.fit) {
    log << " rate=" << format_double(s.fit->rate) << " slope=" << format_double(s.fit->slope)
        << " rsq=" << format_double(s.fit->rsq) << " rho=" << format_double(s.fit->rho);
  } else {
    log << " rate=nan (no positive error samples in fit window)";
  }
  log << " final/initial=" << format_double(s.final_over_initial) << " -> "
      << (s.decays() ? "decay" : "no decay") << '\n';
}

RunOutcome run_simulation(const RunSpec& spec, std::ostream& log) {
  const bool inject = spec.scenario == Scenario::Observe;
  RunOutcome outcome;
  const auto csv = spec.output_dir / "run.csv";
  const RunSummary s = run_single(spec, inject, csv);
  log << to_string(spec.scenario) << " (" << to_string(spec.params.variant) << ", N=" << spec.modes
      << ", dt=" << format_double(spec.dt) << ", t_end=" << format_double(spec.t_end) << ")\n";
  log_summary(log, s);
  if (!s.error.empty()) {
    outcome.exit_code = s.exit_code;
    return outcome;
  }
  outcome.artifacts.push_back(csv);

  const auto summary_path = spec.output_dir / "summary.csv";
  auto out = open_out(summary_path);
  out << "scenario,variant,lambda,S,rate,slope,rsq,rho,final_over_initial,verdict\n";
  out << to_string(spec.scenario) << ',' << to_string(spec.params.variant) << ','
      << format_double(s.lambda) << ',' << s.level << ',' << fmt_or_nan(s.fit, &DecayFit::rate) << ','
      << fmt_or_nan(s.fit, &DecayFit::slope) << ',' << fmt_or_nan(s.fit, &DecayFit::rsq) << ','
      << fmt_or_nan(s.fit, &DecayFit::rho) << ',' << format_double(s.final_over_initial) << ','
      << (s.decays() ? "decay" : "no decay") << '\n';
  outcome.artifacts.push_back(summary_path);
  return outcome;
}

RunOutcome run_sweep(const RunSpec& spec, std::ostream& log) {
  const bool over_lambda = spec.scenario == Scenario::SweepLambda;
  const std::size_t count = over_lambda ? spec.lambda_list.size() : spec.level_list.size();

  std::vector<RunSpec> members(count, spec);
  std::vector<std::filesystem::path> csvs(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (over_lambda) {
      members[i].lambda_gain = spec.lambda_list[i];
      csvs[i] = spec.output_dir / ("run_lambda_" + std::to_string(i + 1) + ".csv");
    } else {
      members[i].level = spec.level_list[i];
      csvs[i] = spec.output_dir / ("run_S_" + std::to_string(spec.level_list[i]) + ".csv");
    }
  }

  std::vector<RunSummary> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        const bool inject = members[i].lambda_gain > 0.0;
        results[i] = run_single(members[i], inject, csvs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    const int n = std::min<int>(worker_count(), static_cast<int>(count));
    std::vector<std::jthread> pool;
    for (int w = 0; w < n; ++w) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  RunOutcome outcome;
  log << to_string(spec.scenario) << " (" << count << " runs, " << to_string(spec.params.variant)
      << ")\n";
  const auto summary_path = spec.output_dir / "summary.csv";
  auto out = open_out(summary_path);
  out << (over_lambda ? "" : "S,") << "lambda,rate,rsq,final_over_initial\n";
  for (std::size_t i = 0; i < count; ++i) {
    const auto& s = results[i];
    log_summary(log, s);
    if (s.error.empty()) {
      outcome.artifacts.push_back(csvs[i]);
    } else {
      outcome.exit_code = std::max(outcome.exit_code, s.exit_code);
    }
    if (!over_lambda) out << s.level << ',';
    out << format_double(s.lambda) << ',' << fmt_or_nan(s.fit, &DecayFit::rate) << ','
        << fmt_or_nan(s.fit, &DecayFit::rsq) << ',' << format_double(s.final_over_initial) << '\n';
  }
  outcome.artifacts.push_back(summary_path);
  return outcome;
}

RunOutcome run_cps_verify(const RunSpec& spec, std::ostream& log) {
  // The closed form holds for the uniform-eighths reference set.
  const auto ref = ReferenceSet::line({0.125, 0.375, 0.625, 0.875});
  const std::vector<int> levels = spec.level_list.empty() ? std::vector<int>{1, 2, 3} : spec.level_list;

  RunOutcome outcome;
  const auto path = spec.output_dir / "cps_verify.csv";
  auto out = open_out(path);
  out << "S,closed_form,numeric,rel_err\n";
  log << "cps-verify (reference {1/8,3/8,5/8,7/8}, nu2=" << format_double(spec.params.nu2) << ")\n";
  for (int s : levels) {
    const SensorSet sensors = sensor_points(ref, s);
    const SpectrumTable table(std::max(spec.modes, sensors.count()), spec.params.nu2);
    const double closed = cps_closed_form(s, spec.params.nu2);
    double numeric = kNaN;
    try {
      numeric = cps_numeric(sensors, table).value;
    } catch (const ConstructionError& e) {
      log << "  S=" << s << ": " << e.what() << '\n';
    }
    const double rel = std::abs(numeric - closed) / closed;
    const bool ok = rel < kCpsTolerance;
    out << s << ',' << format_double(closed) << ',' << format_double(numeric) << ','
        << format_double(rel) << '\n';
    log << "  S=" << s << " closed=" << format_double(closed) << " numeric=" << format_double(numeric)
        << " rel_err=" << format_double(rel) << (ok ? " ok" : " MISMATCH") << '\n';
    if (!ok) outcome.exit_code = kExitVerificationFailure;
  }
  outcome.artifacts.push_back(path);
  return outcome;
}

RunOutcome run_sensors_validate(const RunSpec& spec, std::ostream& log) {
  RunOutcome outcome;
  const auto path = spec.output_dir / "sensors_validate.csv";
  auto out = open_out(path);
  out << "check,S,verdict,detail\n";

  const auto ref = ReferenceSet::line(spec.reference);
  log << "sensors-validate (reference {";
  for (std::size_t i = 0; i < spec.reference.size(); ++i) {
    log << (i ? "," : "") << format_double(spec.reference[i]);
  }
  log << "})\n";

  const auto report = validate_reference_set(ref);
  const bool ref_ok = report.verdict == Admissibility::Admissible;
  out << "reference,1," << (ref_ok ? "admissible" : "rank-deficient") << ",rank " << report.rank
      << " of " << report.required_rank << '\n';
  log << "  reference set: " << (ref_ok ? "admissible" : "rank-deficient") << " (rank "
      << report.rank << "/" << report.required_rank << ")\n";
  if (!ref_ok) outcome.exit_code = kExitVerificationFailure;

  const std::vector<int> levels = spec.level_list.empty() ? std::vector<int>{spec.level} : spec.level_list;
  for (int s : levels) {
    const SensorSet sensors = sensor_points(ref, s);
    const int n = std::max(spec.modes, sensors.count());
    const SpectrumTable table(n, spec.params.nu2);
    std::string verdict = "admissible";
    std::string detail;
    try {
      const InjectionOperator op(build_output_matrices(sensors, table), 1.0, spec.params.nu2);
      const Vector eig = op.symmetric_spectrum();
      detail = "cond " + format_double(op.condition_number()) + "; eig(L+L^T) in [" +
               format_double(eig[0]) + " " + format_double(eig[eig.size() - 1]) + "]";
    } catch (const ConstructionError& e) {
      verdict = "inadmissible";
      detail = e.what();
      outcome.exit_code = kExitVerificationFailure;
    }
    // Keep the CSV one-line-per-row.
    std::replace(detail.begin(), detail.end(), ',', ';');
    out << "injection," << s << ',' << verdict << ',' << detail << '\n';
    log << "  S=" << s << " (S_sigma=" << sensors.count() << "): " << verdict << " - " << detail
        << '\n';
  }
  outcome.artifacts.push_back(path);
  return outcome;
}

}  // namespace

RunOutcome run(const RunSpec& spec, std::ostream& log) {
  std::error_code ec;
  std::filesystem::create_directories(spec.output_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + spec.output_dir.string() +
                  "': " + ec.message());
  }
  switch (spec.scenario) {
    case Scenario::Free:
    case Scenario::Observe:
      return run_simulation(spec, log);
    case Scenario::SweepLambda:
    case Scenario::SweepS:
      return run_sweep(spec, log);
    case Scenario::CpsVerify:
      return run_cps_verify(spec, log);
    case Scenario::SensorsValidate:
      return run_sensors_validate(spec, log);
  }
  return {};
}

}  // namespace ksobs
