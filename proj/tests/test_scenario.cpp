#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "idjc/scenario.hpp"

using namespace idjc;
namespace fs = std::filesystem;

namespace {
constexpr double kPi = std::numbers::pi;

fs::path scratch_dir(const std::string& tag) {
  const auto p = fs::temp_directory_path() / ("idjc_test_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ScenarioConfig small_config(const fs::path& dir) {
  ScenarioConfig c;
  c.name = "small";
  c.preset = AtomicPreset::A;
  c.nbar = 4.0;
  c.t_max = 2.0;
  c.steps = 101;
  c.out_dir = dir.string();
  return c;
}
}  // namespace

TEST_CASE("scenario registry") {
  for (const char* name : {"fig1a", "fig1b", "fig2a", "fig2b", "fig3a", "fig3b"}) {
    CHECK(find_scenario(name).has_value());
  }
  CHECK_FALSE(find_scenario("fig9").has_value());
  const auto f1a = *find_scenario("fig1a");
  CHECK(f1a.model == ModelKind::OneMode);
  CHECK(f1a.preset == AtomicPreset::A);
  CHECK(f1a.nbar == 30.0);
  CHECK(f1a.t_max == doctest::Approx(2 * kPi));
  CHECK(find_scenario("fig1b")->preset == AtomicPreset::PP);
  const auto f2b = *find_scenario("fig2b");
  CHECK(f2b.model == ModelKind::TwoMode);
  CHECK(f2b.nbar == 50.0);
  CHECK(f2b.nbar2 == 150.0);
  CHECK(find_scenario("fig3a")->preset == AtomicPreset::Phi3);
  CHECK(find_scenario("fig3b")->preset == AtomicPreset::PP);
  for (const auto& s : list_scenarios()) CHECK_NOTHROW(s.validate());
}

TEST_CASE("settings and config files") {
  ScenarioConfig c;
  apply_setting(c, "model", "two-mode");
  apply_setting(c, " nbar ", " 12.5 ");
  apply_setting(c, "tmax", "1.5pi");
  apply_setting(c, "state", "Phi2");
  CHECK(c.model == ModelKind::TwoMode);
  CHECK(c.nbar == 12.5);
  CHECK(c.t_max == doctest::Approx(1.5 * kPi));
  CHECK(c.preset == AtomicPreset::Phi2);
  CHECK_THROWS_AS(apply_setting(c, "colour", "red"), std::invalid_argument);
  CHECK_THROWS_AS(apply_setting(c, "nbar", "lots"), std::invalid_argument);
  CHECK_THROWS_AS(apply_setting(c, "steps", "2.5"), std::invalid_argument);
  CHECK_THROWS(apply_setting(c, "state", "Psi"));
  CHECK(config_keys().count("nbar") == 1);

  const auto dir = scratch_dir("cfg");
  const auto file = dir / "mine.cfg";
  std::ofstream(file) << "# custom run\nnbar = 3   # photons\nalpha = 1\ndelta = 0,1\ntmax = 2\n";
  const auto f = load_config_file(file);
  CHECK(f.name == "mine");
  CHECK(f.nbar == 3.0);
  const auto a = f.atomic_state().amplitudes();
  CHECK(std::abs(a[0] - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(a[3] - cplx(0.0, 1.0 / std::sqrt(2.0))) < 1e-12);

  std::ofstream(dir / "bad.cfg") << "nbar 3\n";
  CHECK_THROWS_AS(load_config_file(dir / "bad.cfg"), std::invalid_argument);
  CHECK_THROWS(load_config_file(dir / "missing.cfg"));
  fs::remove_all(dir);
}

TEST_CASE("validation rejects bad configurations") {
  ScenarioConfig c;
  c.nbar = -1.0;
  CHECK_THROWS(c.validate());
  c = ScenarioConfig{};
  c.t_max = c.t_min;
  CHECK_THROWS(c.validate());
  c = ScenarioConfig{};
  c.steps = 0;
  CHECK_THROWS(c.validate());
}

TEST_CASE("run writes data, manifest and plot script") {
  const auto dir = scratch_dir("run");
  const auto c = small_config(dir);
  const auto r = run_scenario(c);
  CHECK(r.data_path == dir / "small.csv");
  REQUIRE(fs::exists(r.data_path));
  REQUIRE(fs::exists(r.manifest_path));
  REQUIRE(r.plot_path.has_value());
  CHECK(fs::exists(*r.plot_path));

  std::ifstream csv(r.data_path);
  std::string header;
  std::getline(csv, header);
  CHECK(header == "gt,S,W_pp,norm");
  std::size_t rows = 0;
  std::string line;
  while (std::getline(csv, line)) {
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(ls, cell, ',')) v.push_back(std::stod(cell));
    REQUIRE(v.size() == 4);
    CHECK(std::abs(v[3] - 1.0) < 1e-9);
    CHECK(v[1] >= 0.0);
    CHECK(v[1] <= 0.75);
    ++rows;
  }
  CHECK(rows == 101);

  const auto m = nlohmann::json::parse(slurp(r.manifest_path));
  CHECK(m["config"]["nbar"] == 4.0);
  CHECK(m["cutoffs"][0] == r.cutoffs[0]);
  CHECK(m.contains("library_version"));
  CHECK(m["initial_class"] == "AB");
  CHECK(m["max_norm_deviation"].get<double>() < 1e-9);
  CHECK(slurp(*r.plot_path).find("OFFSET = 0.5") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("runs are deterministic") {
  const auto dir = scratch_dir("det");
  auto c = small_config(dir);
  const auto first = slurp(run_scenario(c).data_path);
  c.name = "small_again";
  const auto second = slurp(run_scenario(c).data_path);
  CHECK(first == second);
  fs::remove_all(dir);
}

TEST_CASE("closed-form and block scenarios write the same data") {
  const auto dir = scratch_dir("engines");
  auto c = small_config(dir);
  c.nbar = 2.0;
  c.engine = EngineKind::BlockExact;
  const auto block = run_scenario(c).series;
  c.engine = EngineKind::ClosedForm;
  const auto closed = run_scenario(c).series;
  for (std::size_t i = 0; i < block.entropy.size(); ++i) {
    CHECK(closed.entropy[i] == doctest::Approx(block.entropy[i]).epsilon(1e-8));
  }
  fs::remove_all(dir);
}

TEST_CASE("unwritable output directory is reported") {
  const auto dir = scratch_dir("blocked");
  std::ofstream(dir / "file") << "x";
  auto c = small_config(dir / "file" / "sub");
  CHECK_THROWS_AS(run_scenario(c), std::runtime_error);
  fs::remove_all(dir);
}

TEST_CASE("output directory falls back to the environment") {
  const auto dir = scratch_dir("env");
  auto c = small_config(dir);
  c.out_dir.clear();
  c.emit_plot = false;
  ::setenv(kOutputDirEnv, dir.string().c_str(), 1);
  const auto r = run_scenario(c);
  ::unsetenv(kOutputDirEnv);
  CHECK(r.data_path.parent_path() == dir);
  CHECK_FALSE(r.plot_path.has_value());
  fs::remove_all(dir);
}

TEST_CASE("predicted times inside the configured window") {
  auto f1a = *find_scenario("fig1a");
  const auto t = predicted_disentanglement_times(f1a);
  REQUIRE(t.size() == 8);
  CHECK(t.front() == doctest::Approx(kPi / 4));
  CHECK(t.back() == doctest::Approx(2 * kPi));
  f1a.preset = AtomicPreset::PP;
  const auto g = predicted_disentanglement_times(f1a);
  REQUIRE(g.size() == 2);
  CHECK(g[0] == doctest::Approx(kPi));
  CHECK(predicted_disentanglement_times(*find_scenario("dark1")).empty());
  const auto f2a = predicted_disentanglement_times(*find_scenario("fig2a"));
  REQUIRE(f2a.size() == 2);
  CHECK(f2a[0] == doctest::Approx(kPi / 2));
}

TEST_CASE("prediction report") {
  const auto r = predict_report(*find_scenario("fig1a"), 4);
  CHECK(r.find("initial atomic state class: AB") != std::string::npos);
  CHECK(r.find("0.785398163397") != std::string::npos);
  CHECK(r.find("T1R") != std::string::npos);
  const auto two = predict_report(*find_scenario("fig3b"), 3);
  CHECK(two.find("no prediction for generic two-mode") != std::string::npos);
  CHECK(two.find("0.0628318530718") != std::string::npos);
  const auto dark = predict_report(*find_scenario("dark1"), 3);
  CHECK(dark.find("decoupled") != std::string::npos);
}

TEST_CASE("engine verification passes") {
  for (const auto& c : verify_engines(7)) {
    INFO(c.name << " " << c.value);
    CHECK(c.passed);
  }
}
