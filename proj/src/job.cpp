#include "fracsemi/job.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fracsemi/cauchy.hpp"
#include "fracsemi/conformable.hpp"
#include "fracsemi/profiles.hpp"
#include "fracsemi/properties.hpp"
#include "fracsemi/semigroup.hpp"
#include "fracsemi/transport.hpp"

namespace fracsemi {

using json = nlohmann::json;

namespace {

struct CommandEntry {
  Command command;
  std::string_view name;
};

constexpr std::array<CommandEntry, 7> kCommands = {{
    {Command::deriv, "deriv"},
    {Command::integrate, "integrate"},
    {Command::semigroup_check, "semigroup-check"},
    {Command::gen_estimate, "gen-estimate"},
    {Command::solve_cauchy, "solve-cauchy"},
    {Command::solve_transport, "solve-transport"},
    {Command::properties, "properties"},
}};

constexpr std::array<std::string_view, 22> kKnownKeys = {
    "A",      "a",     "alpha",   "at_zero",  "b",     "c",        "command", "grid",
    "horizon", "method", "mu",     "n_points", "n_steps", "p",       "profile", "sigma",
    "t",      "times", "tolerance", "u0",     "x",     "x_max",
};

const std::vector<double> kDefaultLawGrid = {0.0, 0.1, 0.5, 1.0, 2.0, 4.0};
const std::vector<double> kDefaultCommutationTimes = {0.5, 1.0, 2.0};

[[noreturn]] void schema_fail(const std::string& message) { throw SchemaError(message); }

std::optional<double> read_number(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) return std::nullopt;
  if (!it->is_number()) schema_fail(std::string("field '") + key + "' must be a number");
  const double v = it->get<double>();
  if (!std::isfinite(v)) schema_fail(std::string("field '") + key + "' must be finite");
  return v;
}

std::optional<int> read_integer(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) return std::nullopt;
  if (it->is_number_integer()) {
    const auto v = it->get<long long>();
    if (v < -2147483647LL || v > 2147483647LL) {
      schema_fail(std::string("field '") + key + "' is out of range");
    }
    return static_cast<int>(v);
  }
  if (it->is_number_float()) {
    const double v = it->get<double>();
    if (std::floor(v) == v && std::abs(v) < 2147483647.0) return static_cast<int>(v);
  }
  schema_fail(std::string("field '") + key + "' must be an integer");
}

std::optional<std::string> read_string(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) return std::nullopt;
  if (!it->is_string()) schema_fail(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

std::optional<bool> read_bool(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) return std::nullopt;
  if (!it->is_boolean()) schema_fail(std::string("field '") + key + "' must be a boolean");
  return it->get<bool>();
}

std::vector<double> to_number_array(const json& value, const std::string& what) {
  if (!value.is_array()) schema_fail(what + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(value.size());
  for (const auto& v : value) {
    if (!v.is_number()) schema_fail(what + " must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::optional<std::vector<double>> read_array(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) return std::nullopt;
  return to_number_array(*it, std::string("field '") + key + "'");
}

std::optional<std::vector<std::vector<double>>> read_matrix(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) return std::nullopt;
  if (!it->is_array() || it->empty()) {
    schema_fail(std::string("field '") + key + "' must be a non-empty array of rows");
  }
  std::vector<std::vector<double>> rows;
  for (const auto& row : *it) {
    rows.push_back(to_number_array(row, std::string("each row of '") + key + "'"));
  }
  for (const auto& row : rows) {
    if (row.size() != rows.size()) schema_fail("generator must be square");
  }
  return rows;
}

void require(bool present, Command command, const char* key) {
  if (!present) {
    schema_fail(std::string("command '") + std::string(command_name(command)) +
                "' requires field '" + key + "'");
  }
}

void require_sorted_nonnegative(const std::vector<double>& values, const char* key,
                                bool strict) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    const bool ordered =
        i == 0 || (strict ? values[i] > values[i - 1] : values[i] >= values[i - 1]);
    if (values[i] < 0.0 || !ordered) {
      schema_fail(std::string("field '") + key + "' must be sorted and nonnegative");
    }
  }
}

void validate(const JobSpec& s) {
  const Command cmd = s.command;
  if (cmd != Command::properties) require(s.alpha.has_value(), cmd, "alpha");
  if (s.alpha && !(*s.alpha > 0.0 && *s.alpha <= 1.0)) schema_fail("alpha must be in (0,1]");
  if (s.profile && !is_profile_name(*s.profile)) {
    schema_fail("unknown profile '" + *s.profile + "'");
  }
  if (s.sigma && !(*s.sigma > 0.0)) schema_fail("sigma must be > 0");
  if (s.times) require_sorted_nonnegative(*s.times, "times", cmd == Command::solve_cauchy);
  if (s.grid) require_sorted_nonnegative(*s.grid, "grid", false);
  if (s.n_steps && *s.n_steps < 1) schema_fail("n_steps must be >= 1");
  if (s.n_points && *s.n_points < 3) schema_fail("n_points must be >= 3");
  if (s.b && !(*s.b > 0.0)) schema_fail("b must be > 0");
  if (s.horizon && !(*s.horizon > 0.0)) schema_fail("horizon must be > 0");
  if (s.x_max && !(*s.x_max > 0.0)) schema_fail("x_max must be > 0");
  if (s.tolerance && !(*s.tolerance > 0.0)) schema_fail("tolerance must be > 0");
  if (s.a && *s.a < 0.0) schema_fail("a must be >= 0");
  if (s.t && *s.t < 0.0) schema_fail("t must be >= 0");

  switch (cmd) {
    case Command::deriv:
      require(s.profile.has_value(), cmd, "profile");
      if (!s.at_zero.value_or(false)) require(s.t || s.times, cmd, "t");
      break;
    case Command::integrate:
      require(s.profile.has_value(), cmd, "profile");
      require(s.t || s.times, cmd, "t");
      break;
    case Command::semigroup_check:
    case Command::gen_estimate:
      require(s.generator.has_value(), cmd, "A");
      break;
    case Command::solve_cauchy: {
      require(s.generator.has_value(), cmd, "A");
      require(s.u0.has_value(), cmd, "u0");
      const std::string method = s.method.value_or("exact");
      if (method == "exact") {
        require(s.times.has_value(), cmd, "times");
        if (s.times->empty() || s.times->front() != 0.0) {
          schema_fail("field 'times' must start at 0");
        }
      } else if (method == "numeric") {
        require(s.horizon.has_value(), cmd, "horizon");
        require(s.n_steps.has_value(), cmd, "n_steps");
      } else {
        schema_fail("method must be 'exact' or 'numeric'");
      }
      break;
    }
    case Command::solve_transport: {
      require(s.profile.has_value(), cmd, "profile");
      require(s.t.has_value(), cmd, "t");
      require(s.x_max.has_value(), cmd, "x_max");
      require(s.n_points.has_value(), cmd, "n_points");
      const std::string method = s.method.value_or("exact");
      if (method == "fd") {
        require(s.n_steps.has_value(), cmd, "n_steps");
      } else if (method != "exact") {
        schema_fail("method must be 'exact' or 'fd'");
      }
      break;
    }
    case Command::properties:
      break;
  }
}

json canonicalize(const json& value) {
  if (value.is_object()) {
    json out = json::object();
    for (auto it = value.begin(); it != value.end(); ++it) out[it.key()] = canonicalize(*it);
    return out;
  }
  if (value.is_array()) {
    json out = json::array();
    for (const auto& v : value) out.push_back(canonicalize(v));
    return out;
  }
  if (value.is_number_float()) {
    const double v = value.get<double>();
    if (std::isfinite(v) && std::floor(v) == v && std::abs(v) < 9007199254740992.0) {
      return json(static_cast<std::int64_t>(v));
    }
  }
  return value;
}

}  // namespace

std::string_view command_name(Command command) {
  for (const auto& entry : kCommands) {
    if (entry.command == command) return entry.name;
  }
  return "unknown";
}

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& entry : kCommands) {
    if (entry.name == name) return entry.command;
  }
  return std::nullopt;
}

JobSpec parse_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    schema_fail(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) schema_fail("job spec must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), it.key()) == kKnownKeys.end()) {
      schema_fail("unknown field '" + it.key() + "'");
    }
  }

  JobSpec spec;
  const auto command = read_string(doc, "command");
  if (!command) schema_fail("field 'command' is required");
  const auto parsed = parse_command(*command);
  if (!parsed) schema_fail("unknown command '" + *command + "'");
  spec.command = *parsed;

  spec.alpha = read_number(doc, "alpha");
  spec.profile = read_string(doc, "profile");
  spec.p = read_number(doc, "p");
  spec.c = read_number(doc, "c");
  spec.mu = read_number(doc, "mu");
  spec.sigma = read_number(doc, "sigma");
  spec.t = read_number(doc, "t");
  spec.times = read_array(doc, "times");
  spec.at_zero = read_bool(doc, "at_zero");
  spec.a = read_number(doc, "a");
  spec.generator = read_matrix(doc, "A");
  spec.u0 = read_array(doc, "u0");
  spec.x = read_array(doc, "x");
  spec.grid = read_array(doc, "grid");
  spec.b = read_number(doc, "b");
  spec.method = read_string(doc, "method");
  spec.n_steps = read_integer(doc, "n_steps");
  spec.horizon = read_number(doc, "horizon");
  spec.x_max = read_number(doc, "x_max");
  spec.n_points = read_integer(doc, "n_points");
  spec.tolerance = read_number(doc, "tolerance");

  validate(spec);
  return spec;
}

json spec_to_json(const JobSpec& s) {
  json doc = json::object();
  doc["command"] = std::string(command_name(s.command));
  auto put = [&doc](const char* key, const auto& field) {
    if (field) doc[key] = *field;
  };
  put("alpha", s.alpha);
  put("profile", s.profile);
  put("p", s.p);
  put("c", s.c);
  put("mu", s.mu);
  put("sigma", s.sigma);
  put("t", s.t);
  put("times", s.times);
  put("at_zero", s.at_zero);
  put("a", s.a);
  put("A", s.generator);
  put("u0", s.u0);
  put("x", s.x);
  put("grid", s.grid);
  put("b", s.b);
  put("method", s.method);
  put("n_steps", s.n_steps);
  put("horizon", s.horizon);
  put("x_max", s.x_max);
  put("n_points", s.n_points);
  put("tolerance", s.tolerance);
  return doc;
}

std::string serialize_spec(const JobSpec& spec) { return canonical_json(spec_to_json(spec)); }

std::string canonical_json(const json& value) { return canonicalize(value).dump(); }

bool ResultReport::all_checks_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

namespace {

ProfileParams profile_params(const JobSpec& s) {
  ProfileParams params;
  if (s.p) params.p = *s.p;
  if (s.c) params.c = *s.c;
  if (s.mu) params.mu = *s.mu;
  if (s.sigma) params.sigma = *s.sigma;
  return params;
}

std::vector<double> sample_times(const JobSpec& s) {
  if (s.t) return {*s.t};
  return *s.times;
}

void put_derivative(ResultReport& report, double t, const DerivativeResult& d, bool single) {
  report.table.rows.push_back({t, d.value, d.step_used, d.estimated_error});
  if (single) {
    report.scalars["value"] = d.value;
    report.scalars["step_used"] = d.step_used;
    report.scalars["estimated_error"] = d.estimated_error;
  }
}

ResultReport run_deriv(const JobSpec& s, AlphaOrder alpha) {
  ResultReport report;
  report.table.columns = {"t", "value", "step_used", "estimated_error"};
  const FunctionHandle f = make_profile(*s.profile, profile_params(s), alpha);
  if (s.at_zero.value_or(false)) {
    put_derivative(report, 0.0, conformable_derivative_at_zero(f, alpha), true);
    return report;
  }
  const auto times = sample_times(s);
  for (double t : times) {
    put_derivative(report, t, conformable_derivative(f, t, alpha), times.size() == 1);
  }
  return report;
}

ResultReport run_integrate(const JobSpec& s, AlphaOrder alpha) {
  ResultReport report;
  report.table.columns = {"t", "value"};
  const FunctionHandle f = make_profile(*s.profile, profile_params(s), alpha);
  const double a = s.a.value_or(0.0);
  const auto times = sample_times(s);
  for (double t : times) {
    const double v = fractional_integral(f, a, t, alpha);
    report.table.rows.push_back({t, v});
    if (times.size() == 1) report.scalars["value"] = v;
  }
  return report;
}

StateVector probe_vector(const JobSpec& s, std::size_t n) {
  if (!s.x) return StateVector(n, 1.0);
  if (s.x->size() != n) throw DimensionError("probe x does not match the generator dimension");
  return *s.x;
}

ResultReport run_semigroup_check(const JobSpec& s, AlphaOrder alpha) {
  ResultReport report;
  const AlphaSemigroup semigroup(DenseMatrix::from_rows(*s.generator), alpha);
  const std::size_t n = semigroup.dimension();
  const double norm = frobenius_norm(semigroup.generator());
  const double factor = s.tolerance.value_or(1e-10);
  const auto& grid = s.grid ? *s.grid : kDefaultLawGrid;

  report.table.columns = {"s", "t", "residual", "bound"};
  double worst_ratio = 0.0;
  for (double a : grid) {
    for (double b : grid) {
      const double r = semigroup_law_residual(semigroup, a, b);
      // Both sides are evaluated at fractional clock (a + b) / alpha.
      const double bound = factor * std::exp(norm * (a + b) / alpha.value());
      report.table.rows.push_back({a, b, r, bound});
      worst_ratio = std::max(worst_ratio, r / bound);
    }
  }
  report.checks.push_back({"semigroup_law", worst_ratio <= 1.0, worst_ratio, 1.0});

  const bool identity = semigroup.evaluate(0.0) == DenseMatrix::identity(n);
  report.checks.push_back({"identity_at_zero", identity, identity ? 0.0 : 1.0, 0.0});

  const StateVector x = probe_vector(s, n);
  const double xnorm = euclidean_norm(x);
  double worst_commutation = 0.0;
  for (double t : kDefaultCommutationTimes) {
    const CommutationResidual c = commutation_residual(semigroup, t, x);
    const double bound = 1e-5 * std::max(xnorm, 1e-300) * std::exp(norm * alpha.clock(t));
    worst_commutation =
        std::max(worst_commutation, std::max(c.generator_first, c.semigroup_first) / bound);
  }
  report.checks.push_back({"commutation", worst_commutation <= 1.0, worst_commutation, 1.0});

  report.scalars["generator_frobenius_norm"] = norm;
  report.scalars["max_law_ratio"] = worst_ratio;
  report.scalars["max_commutation_ratio"] = worst_commutation;
  return report;
}

ResultReport run_gen_estimate(const JobSpec& s, AlphaOrder alpha) {
  ResultReport report;
  const AlphaSemigroup semigroup(DenseMatrix::from_rows(*s.generator), alpha);
  const DenseMatrix estimate = estimate_generator(semigroup, s.b.value_or(1.0));
  const DenseMatrix& a = semigroup.generator();
  report.table.columns = {"row", "col", "estimate", "generator"};
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      report.table.rows.push_back(
          {static_cast<double>(i), static_cast<double>(j), estimate(i, j), a(i, j)});
    }
  }
  const double error = frobenius_norm(estimate - a);
  const double bound = 1e-3 * std::max(1.0, frobenius_norm(a));
  report.scalars["frobenius_error"] = error;
  report.scalars["estimate"] = estimate.rows();
  report.checks.push_back({"generator_round_trip", error <= bound, error, bound});
  return report;
}

ResultReport run_solve_cauchy(const JobSpec& s, AlphaOrder alpha) {
  ResultReport report;
  const DenseMatrix a = DenseMatrix::from_rows(*s.generator);
  const std::string method = s.method.value_or("exact");
  Trajectory trajectory;
  if (method == "numeric") {
    const CauchyProblem problem(a, *s.u0, alpha, *s.horizon);
    trajectory = solve_numeric(problem, *s.n_steps);
  } else {
    const double last = s.times->back();
    const double horizon = s.horizon.value_or(last > 0.0 ? last : 1.0);
    const CauchyProblem problem(a, *s.u0, alpha, horizon);
    trajectory = solve_exact(problem, *s.times);
  }
  report.table.columns = {"t"};
  for (std::size_t i = 0; i < a.size(); ++i) {
    report.table.columns.push_back("u_" + std::to_string(i + 1));
  }
  for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
    std::vector<double> row{trajectory.times[k]};
    row.insert(row.end(), trajectory.states[k].begin(), trajectory.states[k].end());
    report.table.rows.push_back(std::move(row));
  }
  const bool initial = trajectory.states.front() == *s.u0;
  report.checks.push_back({"initial_condition", initial, initial ? 0.0 : 1.0, 0.0});
  report.scalars["method"] = method;
  report.scalars["final_state"] = trajectory.states.back();
  return report;
}

ResultReport run_solve_transport(const JobSpec& s, AlphaOrder alpha) {
  ResultReport report;
  const double t = *s.t;
  const double horizon = s.horizon.value_or(t > 0.0 ? t : 1.0);
  const Grid1D grid(*s.x_max, static_cast<std::size_t>(*s.n_points));
  const TransportProblem problem(make_profile(*s.profile, profile_params(s), alpha), alpha,
                                 grid, horizon);
  const std::string method = s.method.value_or("exact");
  const GridFunction exact = solve_transport_exact(problem, t);
  const GridFunction u = method == "fd" ? solve_transport_fd(problem, t, *s.n_steps) : exact;

  report.table.columns = {"x", "u"};
  for (std::size_t i = 0; i < grid.size(); ++i) report.table.rows.push_back({grid.point(i), u[i]});
  report.scalars["method"] = method;
  if (method == "fd") {
    double gap = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) gap = std::max(gap, std::abs(u[i] - exact[i]));
    report.scalars["max_error_vs_exact"] = gap;
  } else if (t > 0.0) {
    report.scalars["pde_residual"] = pde_residual(problem, t);
  }
  return report;
}

}  // namespace

ResultReport run(const JobSpec& spec) {
  validate(spec);
  ResultReport report;
  if (spec.command == Command::properties) {
    report.checks = run_property_suite();
    const auto passed = std::count_if(report.checks.begin(), report.checks.end(),
                                      [](const CheckResult& c) { return c.passed; });
    report.scalars["cases"] = report.checks.size();
    report.scalars["passed"] = passed;
  } else {
    const AlphaOrder alpha(*spec.alpha);
    switch (spec.command) {
      case Command::deriv: report = run_deriv(spec, alpha); break;
      case Command::integrate: report = run_integrate(spec, alpha); break;
      case Command::semigroup_check: report = run_semigroup_check(spec, alpha); break;
      case Command::gen_estimate: report = run_gen_estimate(spec, alpha); break;
      case Command::solve_cauchy: report = run_solve_cauchy(spec, alpha); break;
      case Command::solve_transport: report = run_solve_transport(spec, alpha); break;
      case Command::properties: break;
    }
    report.scalars["alpha"] = alpha.value();
  }
  report.command = spec.command;
  return report;
}

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), result.ptr);
}

std::string render(const ResultReport& report, OutputFormat format) {
  if (format == OutputFormat::csv) {
    std::ostringstream out;
    if (report.command == Command::properties) {
      out << "case,passed,value,bound\n";
      for (const auto& c : report.checks) {
        out << c.name << ',' << (c.passed ? 1 : 0) << ',' << format_number(c.value) << ','
            << format_number(c.bound) << '\n';
      }
      return out.str();
    }
    for (std::size_t i = 0; i < report.table.columns.size(); ++i) {
      out << (i ? "," : "") << report.table.columns[i];
    }
    out << '\n';
    for (const auto& row : report.table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
      out << '\n';
    }
    return out.str();
  }

  json doc = report.scalars;
  doc["command"] = std::string(command_name(report.command));
  if (!report.table.columns.empty()) {
    doc["columns"] = report.table.columns;
    doc["rows"] = report.table.rows;
  }
  if (!report.checks.empty()) {
    json checks = json::array();
    for (const auto& c : report.checks) {
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value},
                        {"bound", c.bound}});
    }
    doc["checks"] = std::move(checks);
    doc["all_passed"] = report.all_checks_passed();
  }
  if (report.wall_time_seconds) doc["wall_time_seconds"] = *report.wall_time_seconds;
  return canonical_json(doc) + "\n";
}

std::string render_error(std::string_view kind, std::string_view message,
                         std::string_view command) {
  json doc = {{"error",
               {{"kind", std::string(kind)},
                {"message", std::string(message)},
                {"command", std::string(command)}}}};
  return canonical_json(doc) + "\n";
}

int exit_code_for(const Error& error) {
  switch (error.category()) {
    case ErrorCategory::schema: return 2;
    case ErrorCategory::domain: return 3;
    case ErrorCategory::numerical: return 4;
  }
  return 1;
}

}  // namespace fracsemi
