// Command-line front end: run figure scenarios, print predictions, verify engines.

#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "idjc/scenario.hpp"

namespace {

struct Overrides {
  std::vector<std::pair<std::string, std::string>> settings;

  void bind(CLI::App* app) {
    for (const auto& [flag, key] : std::vector<std::pair<std::string, std::string>>{
             {"--nbar", "nbar"},       {"--nbar2", "nbar2"},   {"--phase", "phase"},
             {"--phase2", "phase2"},   {"--state", "state"},   {"--alpha", "alpha"},
             {"--beta", "beta"},       {"--gamma", "gamma"},   {"--delta", "delta"},
             {"--tmin", "tmin"},       {"--tmax", "tmax"},     {"--steps", "steps"},
             {"--cutoff-width", "cutoff_width"},               {"--engine", "engine"},
             {"--out", "out"},         {"--model", "model"},   {"--name", "name"},
             {"--plot", "plot"},       {"--plot-offset", "plot_offset"}}) {
      app->add_option_function<std::string>(
          flag, [this, key = key](const std::string& v) { settings.emplace_back(key, v); },
          "set '" + key + "'");
    }
  }

  void apply(idjc::ScenarioConfig& c) const {
    for (const auto& [k, v] : settings) idjc::apply_setting(c, k, v);
  }
};

idjc::ScenarioConfig resolve(const std::string& target) {
  if (target.empty()) return {};
  if (auto s = idjc::find_scenario(target)) return *s;
  if (std::filesystem::exists(target)) return idjc::load_config_file(target);
  throw std::invalid_argument("'" + target + "' is neither a scenario name nor a config file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-atom Jaynes-Cummings simulator with intensity-dependent coupling"};
  app.require_subcommand(1);

  std::string run_target;
  Overrides run_overrides;
  auto* run = app.add_subcommand("run", "simulate a scenario or config file");
  run->add_option("target", run_target, "scenario name or config file")->required();
  run_overrides.bind(run);

  auto* list = app.add_subcommand("list", "list built-in scenarios and config keys");

  std::string predict_target;
  Overrides predict_overrides;
  std::size_t predict_count = 6;
  auto* predict = app.add_subcommand("predict", "print revival periods and disentanglement times");
  predict->add_option("target", predict_target, "scenario name or config file");
  predict->add_option("--count", predict_count, "number of disentanglement times");
  predict_overrides.bind(predict);

  unsigned seed = 20240601;
  auto* verify = app.add_subcommand("verify", "check engine equivalence on small cutoffs");
  verify->add_option("--seed", seed, "random seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      auto config = resolve(run_target);
      run_overrides.apply(config);
      const auto r = idjc::run_scenario(config);
      std::cout << "scenario " << config.name << ": " << r.series.gt.size() << " points, cutoffs ("
                << r.cutoffs[0];
      if (config.model == idjc::ModelKind::TwoMode) std::cout << ", " << r.cutoffs[1];
      std::cout << "), " << r.wall_seconds << " s\n"
                << "  data:     " << r.data_path.string() << "\n"
                << "  manifest: " << r.manifest_path.string() << "\n";
      if (r.plot_path) std::cout << "  plot:     " << r.plot_path->string() << "\n";
    } else if (*list) {
      std::cout << "scenarios:\n";
      for (const auto& s : idjc::list_scenarios()) {
        std::cout << "  " << s.name << std::string(10 - std::min<std::size_t>(9, s.name.size()), ' ')
                  << s.description << "\n";
      }
      std::cout << "\nconfig keys (file: key = value; CLI: --key value):\n";
      for (const auto& [k, d] : idjc::config_keys()) std::cout << "  " << k << ": " << d << "\n";
    } else if (*predict) {
      auto config = resolve(predict_target);
      predict_overrides.apply(config);
      std::cout << idjc::predict_report(config, predict_count);
    } else if (*verify) {
      bool ok = true;
      for (const auto& c : idjc::verify_engines(seed)) {
        std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": max deviation " << c.value
                  << " (tolerance " << c.tolerance << ")\n";
        ok = ok && c.passed;
      }
      return ok ? EXIT_SUCCESS : EXIT_FAILURE;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_FAILURE;
  }
  return EXIT_SUCCESS;
}
