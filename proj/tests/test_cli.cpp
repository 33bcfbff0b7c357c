// Drives the built binary through a matrix of valid and invalid
// invocations and checks the documented exit-code contract plus the JSON
// reports it writes.

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

std::string g_binary;
std::string g_tmpdir;

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& cli_args) {
  std::string out_file = g_tmpdir + "/out.txt";
  std::string cmd = g_binary + " " + cli_args + " >" + out_file + " 2>&1";
  int status = std::system(cmd.c_str());
  int code = -1;
  if (WIFEXITED(status)) code = WEXITSTATUS(status);
  std::ifstream in(out_file);
  std::ostringstream buf;
  buf << in.rdbuf();
  return {code, buf.str()};
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("exit code 0: completed runs, any verdict") {
  std::string report = g_tmpdir + "/r.json";
  RunResult r =
      run("check --catalog square-2x2 --period 2,2 --json " + report);
  CHECK(r.exit_code == 0);
  auto doc = load_json(report);
  CHECK(doc["verdict"] == "periodic");
  CHECK(doc["gamma"]["table"]["11"] == "21");
  CHECK(doc["theta"]["digest"].get<std::string>().size() == 64);
  CHECK(doc["version"] == "0.1.0");
  CHECK(doc.contains("elapsed_ms"));

  // a NotPeriodic verdict is still a completed run
  r = run("check --catalog square-2x2 --period 1,1 --json " + report);
  CHECK(r.exit_code == 0);
  doc = load_json(report);
  CHECK(doc["verdict"] == "not-periodic");
  CHECK(doc["witness"].contains("kind"));
}

TEST_CASE("reports round-trip byte for byte") {
  std::string report = g_tmpdir + "/rt.json";
  run("minimal-period --catalog periodic-2x4 --max-k 4 --json " + report);
  auto doc = load_json(report);
  CHECK(nlohmann::json::parse(doc.dump()) == doc);
  CHECK(doc["period"] == nlohmann::json::array({2, 1}));
}

TEST_CASE("certificates flow into the minimal-period report") {
  std::string report = g_tmpdir + "/cert.json";
  RunResult r =
      run("minimal-period --catalog fwd3cycle-2x2 --max-k 4 --json " + report);
  CHECK(r.exit_code == 0);
  auto doc = load_json(report);
  CHECK(doc["verdict"] == "not-periodic");
  CHECK(doc["certificate"]["fixed_set"] ==
        nlohmann::json::array({1, 2}));
  CHECK(doc["certificate"]["word"] == nlohmann::json::array({2}));
  CHECK(doc["certificate"]["side"] == "alpha");
}

TEST_CASE("exit code 1: usage errors") {
  CHECK(run("check --catalog periodic-2x4 --period 3,2").exit_code == 1);
  CHECK(run("check --catalog no-such-entry --period 1,1").exit_code == 1);
  CHECK(run("check --theta-file /nonexistent.theta --period 1,1").exit_code ==
        1);
  CHECK(run("check --catalog flip-2x2").exit_code == 1);  // missing --period
  CHECK(run("check --period 1,1").exit_code == 1);        // no theta source
  CHECK(run("check --catalog flip-2x2 --theta-file x --period 1,1")
            .exit_code == 1);
  CHECK(run("").exit_code == 1);  // subcommand required
  CHECK(run("bench frobnicate").exit_code == 1);
  CHECK(run("catalog run").exit_code == 1);
  CHECK(run("check --catalog flip-2x2 --period nonsense").exit_code == 1);
}

TEST_CASE("exit code 2: enumeration limits") {
  CHECK(run("check --catalog flip-family-6 --period 24,24 --mode exhaustive")
            .exit_code == 2);
}

TEST_CASE("theta files parse per the grammar") {
  std::string theta = g_tmpdir + "/flip.theta";
  {
    std::ofstream out(theta);
    out << "# a 2x2 example\nm 2\nn 2\ncycle (1,2) (2,1)\n";
  }
  std::string report = g_tmpdir + "/file.json";
  RunResult r =
      run("check --theta-file " + theta + " --period 1,1 --json " + report);
  CHECK(r.exit_code == 0);
  CHECK(load_json(report)["verdict"] == "periodic");

  std::string broken = g_tmpdir + "/broken.theta";
  {
    std::ofstream out(broken);
    out << "m 2\nn 2\ncycle (1,1) (1,1)\n";
  }
  CHECK(run("check --theta-file " + broken + " --period 1,1").exit_code == 1);
}

TEST_CASE("catalog list prints the names") {
  RunResult r = run("catalog list");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("flip-2x2") != std::string::npos);
  CHECK(r.output.find("eight-cycle-4x4") != std::string::npos);
  CHECK(r.output.find("square-2x2") != std::string::npos);
}

TEST_CASE("catalog run reports per-entry checks") {
  std::string report = g_tmpdir + "/cat.json";
  RunResult r = run("catalog run periodic-2x4 --json " + report);
  CHECK(r.exit_code == 0);
  auto doc = load_json(report);
  CHECK(doc["results"][0]["entry"] == "periodic-2x4");
  CHECK(doc["results"][0]["pass"] == true);
}

TEST_CASE("gamma command verifies the shift identity") {
  std::string report = g_tmpdir + "/gamma.json";
  RunResult r =
      run("gamma --catalog periodic-2x4 --period 2,1 --json " + report);
  CHECK(r.exit_code == 0);
  auto doc = load_json(report);
  CHECK(doc["shift_check"] == true);
  CHECK(doc["gamma"]["table"]["21"] == "3");
}

TEST_CASE("oracle command") {
  std::string report = g_tmpdir + "/oracle.json";
  RunResult r =
      run("oracle --catalog square-2x2 --period 2,2 --json " + report);
  CHECK(r.exit_code == 0);
  CHECK(load_json(report)["verdict"] == "periodic");
}

TEST_CASE("subgraph command") {
  std::string report = g_tmpdir + "/sub.json";
  RunResult r = run(
      "subgraph --catalog eight-cycle-4x4 --p 2 --q 2 "
      "--u 11,12,13,24,34 --v 11,12,13,24,34 --json " +
      report);
  CHECK(r.exit_code == 0);
  auto doc = load_json(report);
  CHECK(doc["induced"]["m"] == 5);
  CHECK(doc["induced"]["n"] == 5);
}

TEST_CASE("tail commands") {
  std::string report = g_tmpdir + "/sym.json";
  RunResult r = run(
      "tail symmetries --catalog flip-2x2 --tail \"1,1;2,2\" --window 6 "
      "--bounds 2,2 --json " +
      report);
  CHECK(r.exit_code == 0);
  auto doc = load_json(report);
  bool found = false;
  for (const auto& pq : doc["symmetries"]["passing"])
    if (pq == nlohmann::json::array({1, -1})) found = true;
  CHECK(found);

  r = run("tail window --catalog flip-2x2 --tail \"1,1\" --window 3 --json " +
          g_tmpdir + "/win.json");
  CHECK(r.exit_code == 0);
  CHECK(load_json(g_tmpdir + "/win.json")["square_consistent"] == true);

  r = run(
      "tail build-aperiodic --catalog fwd3cycle-2x2 --segments 12 --window 8 "
      "--bounds 3,3 --json " +
      g_tmpdir + "/ap.json");
  CHECK(r.exit_code == 0);
  auto ap = load_json(g_tmpdir + "/ap.json");
  CHECK(ap["symmetries"]["passing"] ==
        nlohmann::json::array({nlohmann::json::array({0, 0})}));
}

TEST_CASE("criterion command") {
  std::string report = g_tmpdir + "/crit.json";
  RunResult r = run("criterion --catalog fwd3cycle-2x2 --json " + report);
  CHECK(r.exit_code == 0);
  auto doc = load_json(report);
  CHECK(doc["criterion"]["certificate"]["fixed_set"] ==
        nlohmann::json::array({1, 2}));

  r = run("criterion --catalog eight-cycle-3x3 --json " + report);
  CHECK(r.exit_code == 0);
  doc = load_json(report);
  CHECK(doc["criterion"]["certificate"].is_null());
  CHECK(doc["criterion"]["constancy_depth_alpha"] == 1);
  CHECK(doc["criterion"]["constancy_depth_beta"] == 2);
}

TEST_CASE("tail build-minimal and tail files") {
  std::string report = g_tmpdir + "/bm.json";
  RunResult r = run(
      "tail build-minimal --catalog square-2x2 --period 2,2 --segments 20 "
      "--window 8 --bounds 2,2 --json " +
      report);
  CHECK(r.exit_code == 0);
  auto doc = load_json(report);
  auto& passing = doc["symmetries"]["passing"];
  bool has22 = false, has11 = false;
  for (const auto& pq : passing) {
    if (pq == nlohmann::json::array({2, -2})) has22 = true;
    if (pq == nlohmann::json::array({1, -1})) has11 = true;
  }
  CHECK(has22);
  CHECK_FALSE(has11);

  std::string tail_file = g_tmpdir + "/tail.json";
  {
    std::ofstream out(tail_file);
    out << R"({"preperiod": [[2,2]], "period": [[1,1]]})";
  }
  r = run("tail window --catalog flip-2x2 --tail-file " + tail_file +
          " --window 3 --json " + g_tmpdir + "/tw.json");
  CHECK(r.exit_code == 0);
  CHECK(load_json(g_tmpdir + "/tw.json")["square_consistent"] == true);
}

TEST_CASE("family command") {
  std::string report = g_tmpdir + "/fam.json";
  RunResult r = run("family --m 5 --json " + report);
  CHECK(r.exit_code == 0);
  auto doc = load_json(report);
  CHECK(doc["identities"].size() == 4);
  CHECK(doc["certificate"].is_null());

  // m = 6 exhaustive is out of reach; sampled is the only offer
  r = run("family --m 6 --samples 500 --seed 7 --json " + report);
  CHECK(r.exit_code == 0);
  doc = load_json(report);
  CHECK(doc["verdict"] == "undecided-up-to-bound");
  CHECK(doc["seed"] == 7);
  CHECK(run("family --m 3").exit_code == 1);
}

TEST_CASE("bench usage") {
  CHECK(run("bench").exit_code == 1);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-rank2-binary>\n");
    return 2;
  }
  g_binary = argv[1];
  char tmpl[] = "/tmp/rank2-cli-XXXXXX";
  if (!mkdtemp(tmpl)) {
    std::fprintf(stderr, "cannot create temp dir\n");
    return 2;
  }
  g_tmpdir = tmpl;
  doctest::Context context;
  return context.run();
}
