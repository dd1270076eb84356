#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fracsemi/job.hpp"
#include "fracsemi/profiles.hpp"

using namespace fracsemi;

#ifndef FRACSEMI_CLI_PATH
#error "FRACSEMI_CLI_PATH must name the command-line binary"
#endif

namespace {

struct Run {
  int status = -1;
  std::string output;
};

Run run_cli(const std::string& args) {
  Run r;
  const std::string cmd = std::string(FRACSEMI_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
  const int status = pclose(pipe);
  r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_spec(const std::string& name, const std::string& text) {
  const std::string path =
      (std::filesystem::temp_directory_path() / ("fracsemi_test_" + name + ".json")).string();
  std::ofstream(path) << text;
  return path;
}

int error_code(const std::string& text, const std::string& command) {
  try {
    run(parse_spec(text));
  } catch (const Error& e) {
    CHECK(!render_error(e.kind(), e.what(), command).empty());
    return exit_code_for(e);
  }
  return 0;
}

}  // namespace

TEST_CASE("parse_spec examples") {
  SUBCASE("alpha out of range") {
    CHECK_THROWS_WITH_AS(parse_spec(R"({"command":"deriv","profile":"power","t":1,"alpha":1.5})"),
                         "alpha must be in (0,1]", SchemaError);
  }
  SUBCASE("non-square generator") {
    CHECK_THROWS_WITH_AS(parse_spec(R"({"command":"semigroup-check","alpha":0.5,"A":[[1,2]]})"),
                         "generator must be square", SchemaError);
  }
  SUBCASE("minimal deriv spec round trips") {
    const std::string text = R"({"alpha":0.5,"command":"deriv","p":2,"profile":"power","t":1})";
    CHECK(serialize_spec(parse_spec(text)) == text);
    const std::string shuffled = R"({"t": 1.0, "profile": "power", "command": "deriv", "p": 2, "alpha": 0.5})";
    CHECK(serialize_spec(parse_spec(shuffled)) == text);
  }
}

TEST_CASE("schema validation") {
  CHECK_THROWS_AS(parse_spec("not json"), SchemaError);
  CHECK_THROWS_AS(parse_spec("[1, 2]"), SchemaError);
  CHECK_THROWS_AS(parse_spec(R"({"alpha":0.5})"), SchemaError);
  CHECK_THROWS_AS(parse_spec(R"({"command":"frobnicate"})"), SchemaError);
  CHECK_THROWS_AS(parse_spec(R"({"command":"deriv","alpha":0.5,"profile":"nope","t":1})"), SchemaError);
  CHECK_THROWS_AS(parse_spec(R"({"command":"deriv","alpha":0.5,"profile":"power"})"), SchemaError);
  CHECK_THROWS_AS(parse_spec(R"({"command":"deriv","alpha":"x","profile":"power","t":1})"), SchemaError);
  CHECK_THROWS_AS(parse_spec(R"({"command":"deriv","alpha":0.5,"profile":"power","t":1,"extra":0})"),
                  SchemaError);
  CHECK_THROWS_AS(parse_spec(R"({"command":"solve-cauchy","alpha":0.5,"A":[[0]],"u0":[1],"times":[1,0]})"),
                  SchemaError);
  CHECK_THROWS_AS(parse_spec(R"({"command":"solve-cauchy","alpha":0.5,"A":[[0]],"u0":[1],"times":[0,-1]})"),
                  SchemaError);
  CHECK_NOTHROW(parse_spec(R"({"command":"properties"})"));
}

TEST_CASE("serialize then parse is the identity on valid specs") {
  const char* specs[] = {
      R"({"alpha":0.25,"at_zero":true,"command":"deriv","profile":"sin_alpha"})",
      R"({"a":0,"alpha":0.5,"command":"integrate","profile":"constant","times":[0.5,1,2]})",
      R"({"A":[[0,1],[-1,0]],"alpha":0.5,"command":"semigroup-check","grid":[0,0.5,1],"x":[1,0]})",
      R"({"A":[[1,0],[0,2]],"alpha":0.5,"b":1,"command":"gen-estimate"})",
      R"({"A":[[1]],"alpha":0.5,"command":"solve-cauchy","horizon":1,"method":"numeric","n_steps":100,"u0":[1]})",
      R"({"alpha":0.5,"command":"solve-transport","method":"fd","n_points":41,"n_steps":40,"profile":"exp_decay","t":1,"x_max":4})",
  };
  for (const char* text : specs) {
    CAPTURE(text);
    const JobSpec spec = parse_spec(text);
    CHECK(serialize_spec(spec) == text);
    CHECK(parse_spec(serialize_spec(spec)) == spec);
  }
}

TEST_CASE("run examples") {
  SUBCASE("deriv") {
    const auto report = run(parse_spec(R"({"command":"deriv","profile":"power","p":2,"t":1,"alpha":0.5})"));
    CHECK(report.scalars.at("value").get<double>() == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(report.scalars.at("estimated_error").get<double>() < 1e-9);
  }
  SUBCASE("zero generator trajectory") {
    const auto report =
        run(parse_spec(R"({"command":"solve-cauchy","A":[[0]],"u0":[3],"alpha":0.5,"times":[0,1]})"));
    CHECK(report.table.columns == std::vector<std::string>{"t", "u_1"});
    REQUIRE(report.table.rows.size() == 2);
    CHECK(report.table.rows[0][1] == 3.0);
    CHECK(report.table.rows[1][1] == 3.0);
    CHECK(render(report, OutputFormat::csv) == "t,u_1\n0,3\n1,3\n");
  }
  SUBCASE("row counts match the request") {
    const auto report = run(parse_spec(
        R"({"command":"solve-transport","alpha":0.5,"profile":"exp_decay","t":1,"x_max":4,"n_points":41})"));
    CHECK(report.table.columns == std::vector<std::string>{"x", "u"});
    CHECK(report.table.rows.size() == 41);
  }
  SUBCASE("error categories map to exit codes") {
    CHECK(error_code(R"({"command":"deriv","profile":"power","p":0.25,"alpha":0.5,"at_zero":true})",
                     "deriv") == 4);
    CHECK(error_code(R"({"command":"integrate","profile":"constant","alpha":0.5,"a":1,"t":0.5})",
                     "integrate") == 3);
    CHECK(error_code(
              R"({"command":"solve-transport","alpha":0.5,"profile":"exp_decay","t":1,"x_max":4,"n_points":401,"method":"fd","n_steps":10})",
              "solve-transport") == 4);
  }
}

TEST_CASE("number formatting") {
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-1e-300) == "-1e-300");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(canonical_json(nlohmann::json::parse(R"({"b":2.0,"a":[1.5,3.0]})")) == R"({"a":[1.5,3],"b":2})");
}

TEST_CASE("profile library") {
  const auto names = profile_names();
  CHECK(std::is_sorted(names.begin(), names.end()));
  CHECK(names.size() == 7);
  CHECK(is_profile_name("gaussian"));
  CHECK(!is_profile_name("sinh"));
  ProfileParams params;
  params.mu = 1.0;
  params.sigma = 0.5;
  CHECK(make_profile("gaussian", params, AlphaOrder(0.5))(1.0) == 1.0);
  CHECK_THROWS_AS(make_profile("sinh", params, AlphaOrder(0.5)), DomainError);
}

TEST_CASE("command-line binary") {
  const auto deriv = write_spec("deriv", R"({"command":"deriv","profile":"power","p":2,"t":1,"alpha":0.5})");
  SUBCASE("success and determinism") {
    const Run a = run_cli("deriv --spec " + deriv + " --format csv");
    const Run b = run_cli("deriv --spec " + deriv + " --format csv");
    CHECK(a.status == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.rfind("t,value,step_used,estimated_error\n", 0) == 0);
  }
  SUBCASE("schema error") {
    const auto bad = write_spec("bad", R"({"command":"deriv","profile":"power","t":1,"alpha":1.5})");
    const Run r = run_cli("deriv --spec " + bad);
    CHECK(r.status == 2);
    CHECK(r.output.find("alpha must be in (0,1]") != std::string::npos);
  }
  SUBCASE("domain error") {
    const auto bad = write_spec("domain", R"({"command":"integrate","profile":"constant","alpha":0.5,"a":1,"t":0.5})");
    CHECK(run_cli("integrate --spec " + bad).status == 3);
  }
  SUBCASE("numerical error") {
    const auto bad = write_spec("nolimit", R"({"command":"deriv","profile":"power","p":0.25,"alpha":0.5,"at_zero":true})");
    CHECK(run_cli("deriv --spec " + bad).status == 4);
  }
  SUBCASE("missing spec file") { CHECK(run_cli("deriv --spec does_not_exist.json").status == 2); }
  SUBCASE("command mismatch") { CHECK(run_cli("integrate --spec " + deriv).status == 2); }
  SUBCASE("out path") {
    const auto out = (std::filesystem::temp_directory_path() / "fracsemi_test_out.json").string();
    CHECK(run_cli("deriv --spec " + deriv + " --out " + out).status == 0);
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().find("\"value\"") != std::string::npos);
  }
}
