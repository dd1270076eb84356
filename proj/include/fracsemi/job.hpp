#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "fracsemi/errors.hpp"

/// JSON job specifications and result reports for the command-line front end.
namespace fracsemi {

enum class Command {
  deriv,
  integrate,
  semigroup_check,
  gen_estimate,
  solve_cauchy,
  solve_transport,
  properties,
};

/// "deriv", "integrate", "semigroup-check", ...
std::string_view command_name(Command command);
std::optional<Command> parse_command(std::string_view name);

/// A validated job. Only the fields present in the source document are engaged, so
/// serialize_spec(parse_spec(text)) reproduces the canonical form of text.
struct JobSpec {
  Command command = Command::properties;
  std::optional<double> alpha;

  // Function profile (deriv, integrate, solve-transport).
  std::optional<std::string> profile;
  std::optional<double> p, c, mu, sigma;

  std::optional<double> t;
  std::optional<std::vector<double>> times;
  std::optional<bool> at_zero;
  std::optional<double> a;

  // Matrix problems.
  std::optional<std::vector<std::vector<double>>> generator;  ///< JSON key "A"
  std::optional<std::vector<double>> u0;
  std::optional<std::vector<double>> x;
  std::optional<std::vector<double>> grid;  ///< s, t values for the semigroup law
  std::optional<double> b;

  std::optional<std::string> method;
  std::optional<int> n_steps;
  std::optional<double> horizon;
  std::optional<double> x_max;
  std::optional<int> n_points;
  std::optional<double> tolerance;

  friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

/// Parses and validates a UTF-8 JSON job. Throws SchemaError naming the offending
/// field and constraint.
JobSpec parse_spec(std::string_view text);
nlohmann::json spec_to_json(const JobSpec& spec);
/// Canonical JSON text of a spec.
std::string serialize_spec(const JobSpec& spec);

/// Canonical text of an arbitrary JSON document: sorted keys, compact, integral
/// numbers written without a fractional part.
std::string canonical_json(const nlohmann::json& value);

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double bound = 0.0;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

/// Numeric table; columns name the header line of the CSV rendering.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ResultReport {
  Command command = Command::properties;
  nlohmann::json scalars = nlohmann::json::object();
  Table table;
  std::vector<CheckResult> checks;
  std::optional<double> wall_time_seconds;

  bool all_checks_passed() const;
};

/// Executes a job. Domain and numerical errors propagate with their own types.
ResultReport run(const JobSpec& spec);

enum class OutputFormat { json, csv };

/// CSV: header line, comma separated, LF endings, shortest round-trip numbers.
/// For properties the first column holds the case name.
std::string render(const ResultReport& report, OutputFormat format);

/// {"error": {"kind", "message", "command"}} as canonical JSON.
std::string render_error(std::string_view kind, std::string_view message,
                         std::string_view command);

/// 2 schema, 3 domain, 4 numerical.
int exit_code_for(const Error& error);

/// Shortest decimal string that round-trips to the same binary64.
std::string format_number(double value);

}  // namespace fracsemi
