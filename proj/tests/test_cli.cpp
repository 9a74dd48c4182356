#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"

namespace fs = std::filesystem;
using holofol::json_io::Json;

namespace {

struct Run {
  int code;
  std::string out;
};

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "holofol_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Run run(const std::string& args) {
  const fs::path out = scratch() / "stdout.txt";
  const std::string cmd = std::string(HOLOFOL_CLI) + " " + args + " > " + out.string() + " 2> " +
                          (scratch() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out)};
}

std::string fixture(const char* name) { return "--input " + testing::fixture_path(name); }

fs::path write_temp(const char* name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("check-invariant") {
  const Run r = run("check-invariant " + fixture("cubic_fixture.json"));
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["invariant"] == true);
  CHECK(j["cofactor_text"] == "2z^2 + 2w^2");
}

TEST_CASE("alpha") {
  const Run r = run("alpha " + fixture("cubic_fixture.json"));
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["integrability_verified"] == true);
}

TEST_CASE("integrate with orientation and radius overrides") {
  const Run r = run("integrate " + fixture("cubic_fixture.json") + " --orientation both --radius 2");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["radius"] == 2.0);
  CHECK(std::abs(j["integrals"]["ccw"]["value"]["re"].get<double>() - 4.0 * testing::kPi) < 1e-9);
  CHECK(std::abs(j["integrals"]["cw"]["value"]["re"].get<double>() + 4.0 * testing::kPi) < 1e-9);
}

TEST_CASE("holonomy with a trace") {
  const fs::path trace = scratch() / "trace.csv";
  const Run r = run("holonomy " + fixture("linear_fixture.json") + " --method fd --eps 1e-5 --trace " +
                    trace.string());
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["results"][0]["method"] == "finite_difference");
  CHECK(std::abs(j["results"][0]["derivative"]["re"].get<double>() + 1.0) < 1e-6);
  std::ifstream in(trace);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  CHECK(header == "s,c_re,c_im");
  CHECK(first.rfind("0,", 0) == 0);
}

TEST_CASE("holonomy request fields") {
  Json req = testing::load_fixture("linear_fixture.json");
  req["method"] = "variational";
  req["samples"] = 32;
  const fs::path p = write_temp("holonomy_request.json", req.dump());
  const Run r = run("holonomy --input " + p.string());
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["results"][0]["frame"]["samples"] == 32);
}

TEST_CASE("real-points request") {
  const fs::path p = write_temp(
      "real.json", R"({"F": [{"i": 2, "j": 0, "re": 1}, {"i": 0, "j": 2, "re": 1},
                            {"i": 0, "j": 0, "re": 1}], "method": "sample", "grid": 100})");
  Run r = run("real-points --input " + p.string());
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["verdict"] == "none_found");
  CHECK(j["certifies_emptiness"] == false);
  r = run("real-points --method conic --input " + p.string());
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["verdict"] == "empty");
}

TEST_CASE("report to a file") {
  const fs::path out = scratch() / "report.json";
  const Run r = run("report " + fixture("cubic_fixture.json") + " --output " + out.string());
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const Json j = Json::parse(slurp(out));
  CHECK(j["verdict"] == "complex_limit_cycle_disjoint_from_real_plane");
}

TEST_CASE("report output is byte-identical across processes") {
  const Run a = run("report " + fixture("cubic_fixture.json"));
  const Run b = run("report " + fixture("cubic_fixture.json"));
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("exit codes") {
  CHECK(run("report --input " + write_temp("bad.json", "{not json").string()).code == 2);
  CHECK(run("report --input " + write_temp("v2.json", R"({"schema": "foliation/2"})").string())
            .code == 2);
  CHECK(run("report --input /nonexistent/file.json").code == 2);
  CHECK(run("integrate " + fixture("cubic_fixture.json") + " --orientation sideways").code == 2);
  // Expanding direction: the lifted offsets leave the tube.
  CHECK(run("holonomy " + fixture("cubic_fixture.json") + " --method fd --orientation ccw").code ==
        3);
  // No two floating-point paths agree to 1e-20.
  CHECK(run("integrate " + fixture("cubic_fixture.json") + " --tol 1e-20").code == 4);
}
