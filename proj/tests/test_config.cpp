#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "orfd/config.hpp"
#include "orfd/errors.hpp"
#include "orfd/experiments.hpp"
#include "orfd/output.hpp"
#include "test_support.hpp"

using namespace orfd;
using namespace orfd::test;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("orfd-test-" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json minimal() { return {{"coefficients", {{"B", 0.1}, {"C", 1.0}, {"P", 1.0}}}}; }

void check_rejects(json j, const std::string& key) {
  CAPTURE(j.dump());
  try {
    config_from_json(j);
    FAIL("accepted an invalid config");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find(key) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("shipped configs parse and round-trip") {
  for (const char* name : {"table1.json", "closed_loop.json", "synthetic_observability.json"}) {
    CAPTURE(name);
    const ExperimentConfig c = load_config(std::string(ORFD_CONFIG_DIR) + "/" + name);
    CHECK(config_from_json(config_to_json(c)) == c);
    CHECK(config_to_json(config_from_json(config_to_json(c))) == config_to_json(c));
  }
  const ExperimentConfig t = load_config(std::string(ORFD_CONFIG_DIR) + "/table1.json");
  CHECK(t.N == std::vector<int>{10, 20, 40});
  CHECK(t.schemes == std::vector<Scheme>{Scheme::ORFD, Scheme::FD});
  CHECK(resolve_coefficients(t) == table1());
}

TEST_CASE("defaults") {
  const ExperimentConfig c = config_from_json(minimal());
  CHECK(c.N == std::vector<int>{20});
  CHECK(c.xi == std::vector<double>{0.0});
  CHECK(c.T == 10.0);
  CHECK(c.effective_dt() == 10.0 / 4096);
  CHECK(c.initial.kind == InitialSpec::Kind::Box);
  CHECK(c.initial.amplitude == 1e-3);
  CHECK(resolve_coefficients(c) == synthetic());

  json j = minimal();
  j["N"] = 12;
  j["schemes"] = "fd";
  j["initial"] = {{"type", "random"}};
  const ExperimentConfig s = config_from_json(j);
  CHECK(s.N == std::vector<int>{12});
  CHECK(s.schemes == std::vector<Scheme>{Scheme::FD});
  CHECK(s.initial.amplitude == 1.0);
}

TEST_CASE("validation names the offending key") {
  json j = minimal();
  j["N"] = json::array();
  check_rejects(j, "N");
  j = minimal();
  j["N"] = {10, 2};
  check_rejects(j, "N[1]");
  j = minimal();
  j["dt"] = 0.0;
  check_rejects(j, "dt");
  j = minimal();
  j["dt"] = 20.0;
  check_rejects(j, "dt");
  j = minimal();
  j["T"] = -1;
  check_rejects(j, "T");
  j = minimal();
  j["xi"] = {-1.0};
  check_rejects(j, "xi[0]");
  j = minimal();
  j["schemes"] = {"ORFD", "spline"};
  check_rejects(j, "schemes[1]");
  j = minimal();
  j["bogus"] = 1;
  check_rejects(j, "bogus");
  j = minimal();
  j["coefficients"]["C"] = 0.0;
  check_rejects(j, "C");
  j = minimal();
  j["initial"] = {{"type", "box"}, {"a", 0.8}, {"b", 0.2}};
  check_rejects(j, "initial");
  j = minimal();
  j["initial"] = {{"type", "random"}, {"a", 0.1}};
  check_rejects(j, "initial.a");
  j = minimal();
  j["workers"] = 0;
  check_rejects(j, "workers");
  j = minimal();
  j["layers"] = json::object();
  check_rejects(j, "exactly one");
  j = json::object();
  j["layers"] = {{"top", {{"rho", 1}, {"thickness", -1}, {"youngs_gpa", 1}, {"shear_gpa", 1}, {"poisson", 0}}},
                 {"core", {{"rho", 1}, {"thickness", 1}, {"youngs_gpa", 1}, {"shear_gpa", 1}, {"poisson", 0}}},
                 {"bottom", {{"rho", 1}, {"thickness", 1}, {"youngs_gpa", 1}, {"shear_gpa", 1}, {"poisson", 0}}}};
  check_rejects(j, "layers.top.thickness");
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ValidationError);
}

TEST_CASE("overrides") {
  json j = minimal();
  apply_override(j, "N=[5,6]");
  apply_override(j, "initial.amplitude=0.5");
  apply_override(j, "output=some/dir");
  apply_override(j, "coefficients.B=0");
  CHECK(j["N"] == json({5, 6}));
  CHECK(j["initial"]["amplitude"] == 0.5);
  CHECK(j["output"] == "some/dir");
  const ExperimentConfig c = config_from_json(j);
  CHECK(c.N == std::vector<int>{5, 6});
  CHECK(resolve_coefficients(c).B == 0.0);
  CHECK_THROWS_AS(apply_override(j, "novalue"), ValidationError);
  CHECK_THROWS_AS(apply_override(j, "=3"), ValidationError);
}

TEST_CASE("commands write summaries and data files") {
  const fs::path out = scratch_dir("commands");
  json j = minimal();
  j["N"] = {6, 8};
  j["schemes"] = {"ORFD", "FD"};
  j["xi"] = {0, 2};
  j["T"] = 8;
  j["dt"] = 8.0 / 256;
  j["output"] = out.string();
  j["snapshot_stride"] = 64;
  const ExperimentConfig c = config_from_json(j);

  const CommandResult d = cmd_derive_params(c);
  CHECK(d.exit_code == kExitOk);
  CHECK(d.summary["large_shear"].size() == 2);

  const CommandResult s = cmd_spectrum(c);
  CHECK(s.exit_code == kExitOk);
  CHECK(s.summary["results"].size() == 8);
  CHECK(fs::exists(out / "spectrum-FD-8-2.csv"));
  CHECK(fs::exists(out / "spectrum-summary.json"));

  const CommandResult m = cmd_simulate(c);
  CHECK(m.exit_code == kExitOk);
  CHECK(fs::exists(out / "trajectory-ORFD-6-0.csv"));
  CHECK(fs::exists(out / "snapshots-ORFD-6-0.csv"));
  const BeamState back = read_state_csv((out / "initial-ORFD-6-0.csv").string(), Grid(6));
  CHECK(back.z == make_box_initial(Grid(6), 1e-3, 0.25, 0.75).z);

  // Closed-loop gains are rejected before any certificate is computed.
  CHECK_THROWS_AS(cmd_observability(c), ValidationError);
  json o = j;
  o["xi"] = 0;
  o["schemes"] = "ORFD";
  o["initial"] = {{"type", "random"}};
  o["draws"] = 3;
  const CommandResult cert = cmd_observability(config_from_json(o));
  CHECK(cert.exit_code == kExitOk);
  CHECK(cert.summary["certificates"].size() == 6);
  CHECK(cert.summary["all_satisfied"] == true);

  CHECK_THROWS_AS(run_command("fly", c), ValidationError);
  fs::remove_all(out);
}

TEST_CASE("snapshot initial data is read back from CSV") {
  const fs::path out = scratch_dir("snapshot");
  fs::create_directories(out);
  const Grid g(7);
  const BeamState s = make_random_initial(g, 9, 0.01);
  write_state_csv((out / "state.csv").string(), g, s);
  json j = minimal();
  j["N"] = 7;
  j["T"] = 1;
  j["initial"] = {{"type", "snapshot"}, {"path", (out / "state.csv").string()}};
  j["output"] = (out / "run").string();
  const CommandResult r = cmd_simulate(config_from_json(j));
  CHECK(r.exit_code == kExitOk);
  const BeamState back = read_state_csv((out / "run" / "initial-ORFD-7-0.csv").string(), g);
  CHECK(back.z == s.z);
  CHECK(back.zdot == s.zdot);
  fs::remove_all(out);
}

TEST_CASE("worker count does not change any output byte") {
  const fs::path a = scratch_dir("workers-1");
  const fs::path b = scratch_dir("workers-4");
  json j = minimal();
  j["N"] = {5, 7, 9};
  j["schemes"] = {"ORFD", "FD"};
  j["xi"] = {0, 1};
  j["T"] = 2;
  for (const auto& [dir, w] : {std::pair{a, 1}, std::pair{b, 4}}) {
    json k = j;
    k["output"] = dir.string();
    k["workers"] = w;
    const ExperimentConfig c = config_from_json(k);
    cmd_spectrum(c);
    cmd_simulate(c);
  }
  int compared = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    const std::string name = e.path().filename().string();
    if (name.ends_with("-summary.json")) continue;  // embeds output and workers
    CAPTURE(name);
    CHECK(slurp(e.path()) == slurp(b / name));
    ++compared;
  }
  CHECK(compared == 36);
  fs::remove_all(a);
  fs::remove_all(b);
}
