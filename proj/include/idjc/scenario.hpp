#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "idjc/evolution.hpp"
#include "idjc/fock_core.hpp"
#include "idjc/observables.hpp"
#include "idjc/predictors.hpp"

namespace idjc {

inline constexpr std::string_view kLibraryVersion = "1.0.0";
/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "IDJC_OUTPUT_DIR";
inline constexpr std::size_t kDefaultGridPoints = 2000;

struct ScenarioConfig {
  std::string name = "custom";
  std::string description;
  ModelKind model = ModelKind::OneMode;
  AtomicPreset preset = AtomicPreset::A;
  std::optional<std::array<cplx, 4>> custom_amplitudes;  // overrides the preset
  double nbar = 30.0;
  double nbar2 = 30.0;
  double phase = 0.0;
  double phase2 = 0.0;
  double t_min = 0.0;
  double t_max = 6.283185307179586;
  std::size_t steps = kDefaultGridPoints;
  double cutoff_width = kDefaultCutoffWidth;
  EngineKind engine = EngineKind::BlockExact;
  std::string out_dir;  // empty: $IDJC_OUTPUT_DIR or the working directory
  bool emit_plot = true;
  double plot_offset = 0.5;  // added to W_++ in the plot script only

  /// Throws std::invalid_argument when an invariant does not hold.
  void validate() const;

  /// phi for one mode, phi1 + phi2 for two modes.
  double theta() const;
  AtomicState atomic_state() const;
  InitialCondition initial_condition() const;
};

/// Applies one `key = value` setting; throws on unknown keys or bad values.
void apply_setting(ScenarioConfig& config, std::string_view key, std::string_view value);

/// Flat key-value file: one `key = value` per line, `#` starts a comment.
ScenarioConfig load_config_file(const std::filesystem::path& path);

/// Every recognised key with a one-line description.
const std::map<std::string, std::string>& config_keys();

/// Figure scenarios fig1a..fig3b followed by utility scenarios.
const std::vector<ScenarioConfig>& list_scenarios();
std::optional<ScenarioConfig> find_scenario(std::string_view name);

struct RunResult {
  std::filesystem::path data_path;
  std::filesystem::path manifest_path;
  std::optional<std::filesystem::path> plot_path;
  std::array<int, 2> cutoffs{0, 0};
  std::array<double, 2> truncated_mass{0.0, 0.0};
  InitialClass initial_class = InitialClass::Generic;
  std::vector<double> predicted_times;
  EntropySeries series;
  double wall_seconds = 0.0;
};

/// Writes <out>/<name>.csv (gt,S,W_pp,norm), <name>.manifest.json and,
/// if requested, <name>.plot.py.
RunResult run_scenario(const ScenarioConfig& config);

/// CSV body for a series; 12 significant digits.
std::string format_series_csv(const EntropySeries& series);

/// Disentanglement times inside [t_min, t_max] for the configured initial state.
std::vector<double> predicted_disentanglement_times(const ScenarioConfig& config);

/// Human-readable table of revival periods and disentanglement times.
std::string predict_report(const ScenarioConfig& config, std::size_t count = 6);

struct VerifyCheck {
  std::string name;
  double value;
  double tolerance;
  bool passed;
};

/// Engine-equivalence checks on small cutoffs (block vs dense, closed form vs block).
std::vector<VerifyCheck> verify_engines(unsigned seed = 20240601);

}  // namespace idjc
