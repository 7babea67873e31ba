#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sqz/meanfield.hpp"
#include "sqz/oracles.hpp"
#include "sqz/qprop.hpp"

namespace sqz {

enum class ScenarioKind { spdc_lowgain, sfwm_homodyne, dualpump_jsa, custom };
ScenarioKind parse_scenario(const std::string& name);
std::string to_string(ScenarioKind kind);

enum class OutputKind { jsa, schmidt, density, homodyne, moments, trace };
OutputKind parse_output(const std::string& name);
std::string to_string(OutputKind kind);

struct ModeConfig {
  std::string name;
  ModeParams params;
};

struct PumpConfig {
  std::string mode;
  PumpSpec spec;
  // Source of custom_array samples, if loaded from disk.
  std::string file;
};

struct TimeConfig {
  double t0 = 0.0;
  double t1 = 0.0;
  int n_steps = 0;
  // Optional extra resolution inside these windows.
  std::vector<std::pair<double, double>> refine_windows;
  int steps_per_window = 0;
};

struct HomodyneConfig {
  std::vector<PulseShape> shapes;
  std::vector<double> phi0;
  // Pulse width in z (m) per shape, in the order of `shapes`.
  std::vector<double> widths;
  double length = 0.0;
};

struct DualPumpConfig {
  std::vector<double> targets;
  double tolerance = 0.01;
  double photon_guess = 0.0;
  double length = 0.0;
  // Distance between the pulse and the region at the start; 0 means 8 / bandwidth.
  double margin = 0.0;
  int bulk_steps = 40;
  int edge_steps = 16;
};

struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::custom;
  Process process = Process::sfwm_single;
  std::string signal_mode;
  int n_points = 0;
  double delta_kappa = 0.0;
  std::vector<ModeConfig> modes;
  std::vector<PumpConfig> pumps;
  NonlinearCoupling coupling;
  // When set, zeta3 entries left at zero are derived from it for the signal mode.
  std::optional<double> gamma_nl;
  TimeConfig time;
  // Frame velocity; defaults to the signal group velocity.
  std::optional<double> v_ref;
  DriveSampling sampling = DriveSampling::extended;
  StepScheme scheme = StepScheme::split;
  std::vector<OutputKind> outputs;
  bool oracle_compare = false;
  HomodyneConfig homodyne;
  DualPumpConfig dualpump;

  const ModeParams& mode(const std::string& name) const;
  const ModeParams& signal() const { return mode(signal_mode); }
  double frame_velocity() const { return v_ref ? *v_ref : signal().v; }
  bool wants(OutputKind kind) const;
};

// Wavenumbers may be numbers (1/m) or strings with a unit: "41.8 cm^-1", "4180 1/m".
double parse_wavenumber(const nlohmann::json& value, const std::string& where);

ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig load_config(const std::string& path);
nlohmann::json to_json(const ScenarioConfig& c);

// Fills scenario-derived fields (times, region, frame) and checks consistency.
ScenarioConfig resolve(ScenarioConfig c);

std::string scheme_name(StepScheme scheme);

}  // namespace sqz
