// fracsemi: command-line front end.
//
//   fracsemi <command> --spec <file.json> [--out <path>] [--format csv|json] [--timing]
//
// Exit status: 0 success, 1 a properties case failed, 2 schema error, 3 domain error,
// 4 numerical failure (no limit, overflow, CFL).

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "fracsemi/job.hpp"

namespace {

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot open output file " << out_path << "\n";
    return 3;
  }
  out << text;
  return 0;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fracsemi::SchemaError("cannot read spec file '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conformable fractional calculus and alpha-semigroup toolkit"};
  app.require_subcommand(1, 1);

  std::string spec_path;
  std::string out_path;
  std::string format = "json";
  bool timing = false;

  const char* commands[] = {"deriv",          "integrate",      "semigroup-check", "gen-estimate",
                            "solve-cauchy",   "solve-transport", "properties"};
  std::map<std::string, CLI::App*> subs;
  for (const char* name : commands) {
    CLI::App* sub = app.add_subcommand(name, std::string("run the ") + name + " job");
    auto* spec_opt = sub->add_option("--spec", spec_path, "JSON job specification");
    if (std::string(name) != "properties") spec_opt->required();
    sub->add_option("--out", out_path, "write results to this file instead of stdout");
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--timing", timing, "include wall time in the JSON report");
    subs[name] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string command;
  for (const auto& [name, sub] : subs) {
    if (sub->parsed()) command = name;
  }

  const auto started = std::chrono::steady_clock::now();
  try {
    nlohmann::json doc = nlohmann::json::object();
    if (!spec_path.empty()) {
      try {
        doc = nlohmann::json::parse(read_file(spec_path));
      } catch (const nlohmann::json::parse_error& e) {
        throw fracsemi::SchemaError(std::string("malformed JSON: ") + e.what());
      }
      if (!doc.is_object()) throw fracsemi::SchemaError("job spec must be a JSON object");
    }
    if (!doc.contains("command")) {
      doc["command"] = command;
    } else if (!doc["command"].is_string() || doc["command"].get<std::string>() != command) {
      throw fracsemi::SchemaError("spec command does not match '" + command + "'");
    }

    const fracsemi::JobSpec spec = fracsemi::parse_spec(doc.dump());
    fracsemi::ResultReport report = fracsemi::run(spec);
    if (timing) {
      report.wall_time_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    }
    const auto fmt = format == "csv" ? fracsemi::OutputFormat::csv : fracsemi::OutputFormat::json;
    if (const int rc = emit(fracsemi::render(report, fmt), out_path); rc != 0) return rc;
    if (command == "properties" && !report.all_checks_passed()) return 1;
    return 0;
  } catch (const fracsemi::Error& e) {
    emit(fracsemi::render_error(e.kind(), e.what(), command), out_path);
    return fracsemi::exit_code_for(e);
  } catch (const std::exception& e) {
    emit(fracsemi::render_error("InternalError", e.what(), command), out_path);
    return 4;
  }
}
