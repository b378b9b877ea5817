#include "idjc/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "idjc/hamiltonians.hpp"

namespace idjc {

namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  // Accept multiples of pi, e.g. "2pi" or "pi".
  if (s.size() >= 2 && s.substr(s.size() - 2) == "pi") {
    const std::string head = s.substr(0, s.size() - 2);
    return (head.empty() ? 1.0 : parse_double(key, head)) * kPi;
  }
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw std::invalid_argument("bad number for '" + std::string(key) + "': " + s);
  }
  return v;
}

// "re" or "re,im"
cplx parse_complex(std::string_view key, std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) return {parse_double(key, text), 0.0};
  return {parse_double(key, text.substr(0, comma)), parse_double(key, text.substr(comma + 1))};
}

bool parse_bool(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw std::invalid_argument("bad boolean for '" + std::string(key) + "': " + s);
}

ModelKind parse_model(std::string_view text) {
  const std::string s = trim(text);
  if (s == "one-mode" || s == "1") return ModelKind::OneMode;
  if (s == "two-mode" || s == "2") return ModelKind::TwoMode;
  throw std::invalid_argument("unknown model '" + s + "' (one-mode | two-mode)");
}

std::string format12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

void ScenarioConfig::validate() const {
  if (!std::isfinite(t_min) || !std::isfinite(t_max)) throw std::invalid_argument("gt range must be finite");
  if (steps == 0) throw std::invalid_argument("steps must be positive");
  if (steps > 1 && !(t_max > t_min)) throw std::invalid_argument("tmax must exceed tmin");
  if (!(cutoff_width >= 0.0) || !std::isfinite(cutoff_width)) {
    throw std::invalid_argument("cutoff width must be finite and non-negative");
  }
  if (!std::isfinite(plot_offset)) throw std::invalid_argument("plot offset must be finite");
  CoherentSpec(nbar, phase);
  if (model == ModelKind::TwoMode) CoherentSpec(nbar2, phase2);
  atomic_state();
}

double ScenarioConfig::theta() const {
  return model == ModelKind::OneMode ? phase : phase + phase2;
}

AtomicState ScenarioConfig::atomic_state() const {
  if (custom_amplitudes) {
    const auto& c = *custom_amplitudes;
    return AtomicState::normalized(c[0], c[1], c[2], c[3]);
  }
  return preset_atomic_state(preset, theta());
}

InitialCondition ScenarioConfig::initial_condition() const {
  const AtomicState atomic = atomic_state();
  if (model == ModelKind::OneMode) {
    return InitialCondition::one_mode(atomic, CoherentSpec(nbar, phase),
                                      default_cutoff(nbar, cutoff_width));
  }
  return InitialCondition::two_mode(atomic, CoherentSpec(nbar, phase), CoherentSpec(nbar2, phase2),
                                    default_cutoff(nbar, cutoff_width),
                                    default_cutoff(nbar2, cutoff_width));
}

const std::map<std::string, std::string>& config_keys() {
  static const std::map<std::string, std::string> keys{
      {"name", "scenario name; also the stem of the output files"},
      {"description", "free text echoed into the manifest"},
      {"model", "one-mode | two-mode"},
      {"state", "atomic preset: Phi1 Phi2 Phi3 Phi4 A B PP PM MP MM"},
      {"alpha", "custom |++> amplitude, 're' or 're,im' (any of alpha..delta switches to custom)"},
      {"beta", "custom |+-> amplitude"},
      {"gamma", "custom |-+> amplitude"},
      {"delta", "custom |--> amplitude"},
      {"nbar", "mean photon number of mode 1"},
      {"nbar2", "mean photon number of mode 2 (two-mode only)"},
      {"phase", "coherent phase of mode 1 (radians; 'pi' suffix allowed)"},
      {"phase2", "coherent phase of mode 2"},
      {"tmin", "start of the gt grid"},
      {"tmax", "end of the gt grid"},
      {"steps", "number of grid points"},
      {"cutoff_width", "Fock cutoff width multiplier w in nbar + w sqrt(nbar)"},
      {"engine", "block | closed-form | dense"},
      {"out", "output directory"},
      {"plot", "emit a plot script (true/false)"},
      {"plot_offset", "offset added to W_pp in the plot script"},
  };
  return keys;
}

void apply_setting(ScenarioConfig& c, std::string_view key_in, std::string_view value_in) {
  const std::string key = trim(key_in);
  const std::string value = trim(value_in);
  auto custom_slot = [&](std::size_t i) {
    if (!c.custom_amplitudes) c.custom_amplitudes = std::array<cplx, 4>{};
    (*c.custom_amplitudes)[i] = parse_complex(key, value);
  };
  if (key == "name") c.name = value;
  else if (key == "description") c.description = value;
  else if (key == "model") c.model = parse_model(value);
  else if (key == "state") { c.preset = parse_preset(value); c.custom_amplitudes.reset(); }
  else if (key == "alpha") custom_slot(0);
  else if (key == "beta") custom_slot(1);
  else if (key == "gamma") custom_slot(2);
  else if (key == "delta") custom_slot(3);
  else if (key == "nbar") c.nbar = parse_double(key, value);
  else if (key == "nbar2") c.nbar2 = parse_double(key, value);
  else if (key == "phase") c.phase = parse_double(key, value);
  else if (key == "phase2") c.phase2 = parse_double(key, value);
  else if (key == "tmin") c.t_min = parse_double(key, value);
  else if (key == "tmax") c.t_max = parse_double(key, value);
  else if (key == "steps") {
    const double s = parse_double(key, value);
    if (s < 1.0 || s != std::floor(s)) throw std::invalid_argument("steps must be a positive integer");
    c.steps = static_cast<std::size_t>(s);
  }
  else if (key == "cutoff_width") c.cutoff_width = parse_double(key, value);
  else if (key == "engine") c.engine = parse_engine(value);
  else if (key == "out") c.out_dir = value;
  else if (key == "plot") c.emit_plot = parse_bool(key, value);
  else if (key == "plot_offset") c.plot_offset = parse_double(key, value);
  else throw std::invalid_argument("unknown configuration key '" + key + "'");
}

ScenarioConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  ScenarioConfig c;
  c.name = path.stem().string();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    apply_setting(c, std::string_view(line).substr(0, eq), std::string_view(line).substr(eq + 1));
  }
  return c;
}

// ---------------------------------------------------------------------------
// Registry

namespace {

ScenarioConfig figure(std::string name, std::string description, ModelKind model,
                      AtomicPreset preset, double nbar, double nbar2, double tmax,
                      std::size_t steps) {
  ScenarioConfig c;
  c.name = std::move(name);
  c.description = std::move(description);
  c.model = model;
  c.preset = preset;
  c.nbar = nbar;
  c.nbar2 = nbar2;
  c.t_max = tmax;
  c.steps = steps;
  return c;
}

std::vector<ScenarioConfig> make_registry() {
  using enum ModelKind;
  std::vector<ScenarioConfig> r;
  r.push_back(figure("fig1a", "one mode, A-state, nbar = 30", OneMode, AtomicPreset::A, 30, 0,
                     2 * kPi, kDefaultGridPoints));
  r.push_back(figure("fig1b", "one mode, |++>, nbar = 30", OneMode, AtomicPreset::PP, 30, 0,
                     2 * kPi, kDefaultGridPoints));
  // Two-mode entropy dips are ~1e-4 wide in gt, hence the denser grids.
  r.push_back(figure("fig2a", "two modes, A-state, nbar1 = nbar2 = 50", TwoMode, AtomicPreset::A,
                     50, 50, kPi + 0.1, 20001));
  r.push_back(figure("fig2b", "two modes, A-state, nbar1 = 50, nbar2 = 150", TwoMode,
                     AtomicPreset::A, 50, 150, kPi + 0.1, 20001));
  r.push_back(figure("fig3a", "two modes, Phi3, nbar1 = nbar2 = 50", TwoMode, AtomicPreset::Phi3,
                     50, 50, kPi + 0.1, 20001));
  r.push_back(figure("fig3b", "two modes, |++>, nbar1 = nbar2 = 50", TwoMode, AtomicPreset::PP,
                     50, 50, kPi + 0.1, 20001));

  r.push_back(figure("dark1", "one mode, Phi4 (stationary), nbar = 30", OneMode,
                     AtomicPreset::Phi4, 30, 0, 4 * kPi, kDefaultGridPoints));
  r.push_back(figure("dark2", "two modes, Phi4 (stationary), nbar1 = nbar2 = 50", TwoMode,
                     AtomicPreset::Phi4, 50, 50, kPi, kDefaultGridPoints));
  r.push_back(figure("revival1", "one mode, |++>, nbar = 30, W_pp revivals", OneMode,
                     AtomicPreset::PP, 30, 0, 2 * kPi, 8000));
  auto closed = figure("closed1", "one mode, |++>, nbar = 2, closed-form engine", OneMode,
                       AtomicPreset::PP, 2, 0, 10, kDefaultGridPoints);
  closed.engine = EngineKind::ClosedForm;
  r.push_back(closed);
  auto dense = figure("oracle1", "one mode, A-state, nbar = 2, dense oracle engine", OneMode,
                      AtomicPreset::A, 2, 0, 10, kDefaultGridPoints);
  dense.engine = EngineKind::DenseOracle;
  r.push_back(dense);
  return r;
}

}  // namespace

const std::vector<ScenarioConfig>& list_scenarios() {
  static const std::vector<ScenarioConfig> registry = make_registry();
  return registry;
}

std::optional<ScenarioConfig> find_scenario(std::string_view name) {
  for (const auto& s : list_scenarios()) {
    if (s.name == name) return s;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Predictions

std::vector<double> predicted_disentanglement_times(const ScenarioConfig& config) {
  const auto cls = disentanglement_class_of(classify_initial_state(config.atomic_state(), config.theta()));
  if (!cls) return {};
  if (config.model == ModelKind::TwoMode && *cls == DisentanglementClass::Generic) return {};
  // Enough terms to pass t_max: the densest series is spaced pi/4.
  const auto count = static_cast<std::size_t>(std::max(0.0, std::ceil(config.t_max / (kPi / 4.0)))) + 1;
  const auto p = disentanglement_times(config.model, *cls, 0.0, count);
  std::vector<double> out;
  for (const auto& t : p.times) {
    if (t.gt >= config.t_min && t.gt <= config.t_max) out.push_back(t.gt);
  }
  return out;
}

std::string predict_report(const ScenarioConfig& config, std::size_t count) {
  config.validate();
  std::ostringstream os;
  const InitialClass ic = classify_initial_state(config.atomic_state(), config.theta());
  os << "model: " << to_string(config.model) << "\n";
  os << "initial atomic state class: " << to_string(ic) << "\n";
  auto in_pi = [](double x) {
    std::ostringstream s;
    s << format12(x) << " (" << format12(x / kPi) << " pi)";
    return s.str();
  };

  if (config.model == ModelKind::OneMode) {
    os << "nbar: " << config.nbar << "\n";
    if (config.nbar > 0.0) {
      const auto r = revival_periods_one_mode(config.nbar, 1);
      os << "revival period g*T1R: asymptotic " << in_pi(r.t1r_asymptotic) << ", exact ["
         << format12(r.t1r_exact->lo) << ", " << format12(r.t1r_exact->hi) << "]\n";
      os << "revival period g*T2R: asymptotic " << in_pi(r.t2r_asymptotic) << ", exact ["
         << format12(r.t2r_exact->lo) << ", " << format12(r.t2r_exact->hi) << "]\n";
      if (!r.asymptotic_valid) os << "note: nbar below the large-field regime\n";
    }
  } else {
    os << "nbar1: " << config.nbar << ", nbar2: " << config.nbar2 << "\n";
    if (config.nbar > 0.0 && config.nbar2 > 0.0) {
      const auto r = revival_periods_two_mode(config.nbar, config.nbar2, 1);
      os << "revival period g*T'1R: " << format12(r.t1r_asymptotic) << "\n";
      os << "revival period g*T'2R: " << format12(r.t2r_asymptotic) << "\n";
      os << "note: revivals need not occur at every predicted period\n";
    }
  }

  const auto cls = disentanglement_class_of(ic);
  if (!cls) {
    if (ic == InitialClass::Dark) {
      os << "disentanglement: the state is decoupled and stays factorized at all times\n";
    } else {
      os << "disentanglement: semiclassical eigenstate, entanglement stays small; no series predicted\n";
    }
    return os.str();
  }
  if (config.model == ModelKind::TwoMode && *cls == DisentanglementClass::Generic) {
    os << "disentanglement: no prediction for generic two-mode initial states\n";
    return os.str();
  }
  const auto p = disentanglement_times(config.model, *cls, config.model == ModelKind::OneMode ? config.nbar : 0.0, count);
  os << "disentanglement times (" << to_string(*cls) << "):\n";
  os << "  series  index  gt (asymptotic)            gt (exact T1R)\n";
  for (const auto& t : p.times) {
    os << "  " << to_string(t.series) << "      " << t.index << "      " << in_pi(t.gt);
    if (t.exact) os << "    [" << format12(t.exact->lo) << ", " << format12(t.exact->hi) << "]";
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Running

std::string format_series_csv(const EntropySeries& s) {
  std::string out = "gt,S,W_pp,norm\n";
  for (std::size_t i = 0; i < s.gt.size(); ++i) {
    out += format12(s.gt[i]) + "," + format12(s.entropy[i]) + "," + format12(s.w_pp[i]) + "," +
           format12(s.norm[i]) + "\n";
  }
  return out;
}

namespace {

std::filesystem::path resolve_out_dir(const ScenarioConfig& c) {
  if (!c.out_dir.empty()) return c.out_dir;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return std::filesystem::current_path();
}

nlohmann::json config_json(const ScenarioConfig& c) {
  nlohmann::json j;
  j["name"] = c.name;
  j["description"] = c.description;
  j["model"] = std::string(to_string(c.model));
  if (c.custom_amplitudes) {
    nlohmann::json amps = nlohmann::json::array();
    for (auto a : *c.custom_amplitudes) amps.push_back({a.real(), a.imag()});
    j["custom_amplitudes"] = amps;
  } else {
    j["state"] = std::string(to_string(c.preset));
  }
  j["nbar"] = c.nbar;
  j["phase"] = c.phase;
  if (c.model == ModelKind::TwoMode) {
    j["nbar2"] = c.nbar2;
    j["phase2"] = c.phase2;
  }
  j["tmin"] = c.t_min;
  j["tmax"] = c.t_max;
  j["steps"] = c.steps;
  j["cutoff_width"] = c.cutoff_width;
  j["engine"] = std::string(to_string(c.engine));
  j["plot"] = c.emit_plot;
  j["plot_offset"] = c.plot_offset;
  return j;
}

std::string plot_script(const ScenarioConfig& c, const std::filesystem::path& csv,
                        const std::vector<double>& markers) {
  std::ostringstream os;
  os << "#!/usr/bin/env python3\n"
     << "# Linear entropy S and W_pp + offset for scenario '" << c.name << "'.\n"
     << "import csv\nimport sys\nimport matplotlib\nmatplotlib.use('Agg')\n"
     << "import matplotlib.pyplot as plt\n\n"
     << "OFFSET = " << format12(c.plot_offset) << "\n"
     << "MARKERS = [";
  for (std::size_t i = 0; i < markers.size(); ++i) os << (i ? ", " : "") << format12(markers[i]);
  os << "]\n\n"
     << "path = sys.argv[1] if len(sys.argv) > 1 else " << nlohmann::json(csv.filename().string()).dump() << "\n"
     << "gt, s, w = [], [], []\n"
     << "with open(path) as f:\n"
     << "    for row in csv.DictReader(f):\n"
     << "        gt.append(float(row['gt']))\n"
     << "        s.append(float(row['S']))\n"
     << "        w.append(float(row['W_pp']) + OFFSET)\n\n"
     << "fig, ax = plt.subplots(figsize=(8, 4))\n"
     << "ax.plot(gt, w, color='0.6', lw=0.8, label='W_pp + %g' % OFFSET)\n"
     << "ax.plot(gt, s, color='k', lw=0.8, label='S')\n"
     << "for t in MARKERS:\n"
     << "    ax.axvline(t, color='tab:red', ls='--', lw=0.6)\n"
     << "ax.set_xlabel('gt')\nax.legend(loc='upper right')\n"
     << "fig.tight_layout()\n"
     << "fig.savefig(path.rsplit('.', 1)[0] + '.png', dpi=150)\n";
  return os.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + p.string());
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  const auto dir = resolve_out_dir(config);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());

  RunResult r;
  const InitialCondition ic = config.initial_condition();
  r.cutoffs = {ic.cutoff1.nmax, (ic.kind == ModelKind::TwoMode) ? ic.cutoff2.nmax : 0};
  r.truncated_mass[0] = 1.0 - retained_mass(ic.field1, ic.cutoff1);
  if (ic.kind == ModelKind::TwoMode) r.truncated_mass[1] = 1.0 - retained_mass(ic.field2, ic.cutoff2);
  r.initial_class = classify_initial_state(ic.atomic, config.theta());
  r.predicted_times = predicted_disentanglement_times(config);

  const auto engine = make_engine(config.engine, ic);
  const auto grid = config.steps == 1 ? std::vector<double>{config.t_min}
                                      : uniform_grid(config.t_min, config.t_max, config.steps);
  r.series = entropy_series(*engine, grid);

  r.data_path = dir / (config.name + ".csv");
  write_file(r.data_path, format_series_csv(r.series));
  if (config.emit_plot) {
    r.plot_path = dir / (config.name + ".plot.py");
    write_file(*r.plot_path, plot_script(config, r.data_path, r.predicted_times));
  }

  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  double max_norm_dev = 0.0;
  for (double n : r.series.norm) max_norm_dev = std::max(max_norm_dev, std::abs(n - 1.0));

  nlohmann::json m;
  m["config"] = config_json(config);
  m["library_version"] = std::string(kLibraryVersion);
  m["cutoffs"] = (ic.kind == ModelKind::TwoMode) ? nlohmann::json{r.cutoffs[0], r.cutoffs[1]}
                                     : nlohmann::json{r.cutoffs[0]};
  m["truncated_mass"] = (ic.kind == ModelKind::TwoMode) ? nlohmann::json{r.truncated_mass[0], r.truncated_mass[1]}
                                            : nlohmann::json{r.truncated_mass[0]};
  m["basis_dimension"] = ic.basis().dimension();
  m["initial_class"] = std::string(to_string(r.initial_class));
  m["predicted_disentanglement_gt"] = r.predicted_times;
  m["max_norm_deviation"] = max_norm_dev;
  m["entropy_health_warnings"] = r.series.health_warnings;
  m["data_file"] = r.data_path.filename().string();
  m["wall_clock_seconds"] = r.wall_seconds;
  m["finished_at_unix"] = static_cast<long long>(std::time(nullptr));
  r.manifest_path = dir / (config.name + ".manifest.json");
  write_file(r.manifest_path, m.dump(2) + "\n");
  return r;
}

// ---------------------------------------------------------------------------
// Verification

namespace {

JointState random_state(const JointBasis& basis, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  JointState psi(basis);
  for (auto& a : psi.amplitudes()) a = {g(rng), g(rng)};
  psi.normalize();
  return psi;
}

AtomicState random_atomic(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return AtomicState::normalized({g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)},
                                 {g(rng), g(rng)});
}

}  // namespace

std::vector<VerifyCheck> verify_engines(unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> time(0.0, 10.0);
  std::vector<VerifyCheck> checks;

  auto block_vs_dense = [&](const std::string& name, const HamiltonianMatrix& h) {
    const BlockSpectrum block(h);
    const DenseSpectrum dense(h);
    double worst = 0.0;
    for (int s = 0; s < 20; ++s) {
      const JointState psi = random_state(h.basis(), rng);
      for (int k = 0; k < 20; ++k) {
        const double t = time(rng);
        worst = std::max(worst, max_abs_difference(block.apply(psi, t), dense.apply(psi, t)));
      }
    }
    checks.push_back({name, worst, 1e-10, worst < 1e-10});
  };
  block_vs_dense("block vs dense, one mode, cutoff 8", build_one_mode({8}));
  block_vs_dense("block vs dense, two modes, cutoffs (6,6)", build_two_mode({6}, {6}));

  auto closed_vs_block = [&](const std::string& name, const InitialCondition& ic) {
    const BlockExactEngine block(build_hamiltonian(ic.basis()), ic.build());
    const ClosedFormEngine closed(ic);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const double t = time(rng);
      worst = std::max(worst, max_abs_difference(closed.state_at(t), block.state_at(t)));
    }
    checks.push_back({name, worst, 1e-8, worst < 1e-8});
  };
  closed_vs_block("closed form vs block, one mode, nbar 2, cutoff 20",
                  InitialCondition::one_mode(random_atomic(rng), CoherentSpec(2.0, 0.4), {20}));
  closed_vs_block("closed form vs block, two modes, nbar (1,1), cutoffs (12,12)",
                  InitialCondition::two_mode(random_atomic(rng), CoherentSpec(1.0, 0.3),
                                             CoherentSpec(1.0, -0.8), {12}, {12}));
  return checks;
}

}  // namespace idjc
