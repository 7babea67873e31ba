#pragma once

#include <functional>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "sqz/analysis.hpp"
#include "sqz/config.hpp"

namespace sqz {

inline constexpr const char* kVersion = "sqz 0.1.0";

// A named table of real columns, exported as CSV.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// A complex matrix over the kappa grid, exported as real/imag CSV pairs.
struct MatrixArtifact {
  std::string name;
  Eigen::MatrixXcd values;
  Eigen::ArrayXd axis;
  double delta_kappa = 0.0;
};

struct Report {
  nlohmann::json summary;
  std::vector<Table> tables;
  std::vector<MatrixArtifact> matrices;
  std::vector<std::string> warnings;
};

// Command-line overrides, applied before resolving.
struct RunOptions {
  bool with_oracle = false;
  std::optional<int> steps;
  std::optional<int> grid;
  bool trace = false;
};

ScenarioConfig apply_overrides(ScenarioConfig c, const RunOptions& options);

struct SimulationResult {
  KappaGrid grid;
  Frame frame;
  TimeGrid times;
  std::vector<MeanField> pumps_in;
  std::vector<MeanField> pumps_out;
  PropagationResult propagation;
  std::vector<TraceRow> trace;
  std::vector<std::string> warnings;
};

KappaGrid grid_for(const ScenarioConfig& c);
Frame frame_for(const ScenarioConfig& c);
TimeGrid times_for(const ScenarioConfig& c);
std::vector<MeanField> pumps_for(const ScenarioConfig& c, const KappaGrid& grid,
                                 std::vector<std::string>* warnings = nullptr);

// Runs the pumps and the fluctuation moments of a resolved config.
SimulationResult simulate(const ScenarioConfig& c, bool track_propagator = false,
                          bool record_trace = false);

// Lab-frame oracle moment (discrete) mapped into the simulation frame.
Eigen::MatrixXcd spdc_oracle_moment(const ScenarioConfig& c, const MeanField& pump0,
                                    std::vector<std::string>* warnings = nullptr);

struct HomodynePoint {
  PulseShape shape = PulseShape::gaussian;
  double phi0 = 0.0;
  double v_minus = 1.0;
  double v_plus = 1.0;
  double analytic_v_minus = 1.0;
  // First Schmidt mode as LO.
  double schmidt_v_minus = 1.0;
  double r1 = 0.0;
};

// One sweep point: the pump is a temporal pulse of the given shape and z width
// with peak nonlinear phase phi0; the LO is the normalized output pump.
HomodynePoint simulate_homodyne_point(const ScenarioConfig& c, PulseShape shape, double width,
                                      double phi0);

struct DualPumpPoint {
  double pump_photons = 0.0;
  SimulationResult sim;
  SchmidtData schmidt;
  // L2 distance between the normalized input and output pump densities.
  double reshape = 0.0;
  double skewness = 0.0;
};

DualPumpPoint simulate_dualpump(const ScenarioConfig& c, double pump_photons);

// Finds the pump photon number giving <n> = target within the configured
// relative tolerance. Throws RangeError when no bracket is found.
DualPumpPoint tune_dualpump(const ScenarioConfig& c, double target,
                            std::vector<std::pair<double, double>>* history = nullptr);

Report run_spdc_lowgain(const ScenarioConfig& c, const RunOptions& options = {});
Report run_sfwm_homodyne(const ScenarioConfig& c, const RunOptions& options = {});
Report run_dualpump_jsa(const ScenarioConfig& c, const RunOptions& options = {});
Report run_custom(const ScenarioConfig& c, const RunOptions& options = {});

// Applies overrides, resolves and dispatches on the scenario kind.
Report run(const ScenarioConfig& c, const RunOptions& options = {});

ScenarioConfig default_config(ScenarioKind kind);

struct ScenarioInfo {
  std::string name;
  std::string description;
};
std::vector<ScenarioInfo> list_scenarios();

// Worker count from SQZ_THREADS, else the hardware concurrency.
int worker_count();

// Runs body(i) for i < count on up to worker_count() threads. The first
// exception thrown by any task is rethrown.
void parallel_for(int count, const std::function<void(int)>& body);

}  // namespace sqz
