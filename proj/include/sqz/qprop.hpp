#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sqz/kgrid.hpp"
#include "sqz/meanfield.hpp"

namespace sqz {

// Q = [[R, S], [-S*, -R*]] acting on (b, b^dagger).
struct GeneratorBlocks {
  Eigen::MatrixXcd R;
  Eigen::MatrixXcd S;
  double time = 0.0;
};

// K = [[V, W], [W*, V*]]: b(t_end) = V b(t_start) + W b^dagger(t_start).
struct BogoliubovBlocks {
  Eigen::MatrixXcd V;
  Eigen::MatrixXcd W;
  double t_start = 0.0;
  double t_end = 0.0;

  static BogoliubovBlocks identity(int n, double t);
};

// N_jj' = <b_j^dagger b_j'>, M_jj' = <b_j b_j'>.
struct GaussianMoments {
  Eigen::MatrixXcd N;
  Eigen::MatrixXcd M;
  double time = 0.0;

  static GaussianMoments vacuum(int n, double t);
};

// max(|VV^dagger - WW^dagger - I|, |VW^T - WV^T|), entrywise.
double symplectic_residual(const BogoliubovBlocks& k);

GeneratorBlocks build_generator(const DriveFields& drive, const ModeParams& mode,
                                const KappaGrid& grid, const Frame& frame = {});

// Same, without the dispersion diagonal.
GeneratorBlocks build_drive_generator(const DriveFields& drive, const KappaGrid& grid);

// Blocks of exp(i dt Q).
BogoliubovBlocks exponentiate(const GeneratorBlocks& gen, double dt);

BogoliubovBlocks concatenate(const BogoliubovBlocks& later, const BogoliubovBlocks& earlier);

GaussianMoments update_moments_unitary(const GaussianMoments& m, const BogoliubovBlocks& k);
GaussianMoments update_moments_loss(const GaussianMoments& m, double gamma_loss, double dt);

// Moments of vacuum carried through k: N = W* W^T, M = V W^T.
GaussianMoments moments_from_propagator(const BogoliubovBlocks& k);

// Step boundaries t_0 < t_1 < ... < t_K.
using TimeGrid = std::vector<double>;
TimeGrid uniform_times(double t0, double t1, int n_steps);

// Uniform steps between t0 and t1 with extra resolution inside each window:
// every window [a, b] gets `steps_per_window` steps, the remaining spans share
// `bulk_steps` in proportion to their length.
TimeGrid refined_times(double t0, double t1, int bulk_steps,
                       const std::vector<std::pair<double, double>>& windows,
                       int steps_per_window);

// split: exact dispersion half steps around the exponential of the drive-only
// generator. midpoint: exponential of the full generator.
enum class StepScheme { split, midpoint };

struct TraceRow {
  int step = 0;
  double time = 0.0;
  double trace_n = 0.0;
  double max_abs_m = 0.0;
  double symplectic_residual = 0.0;
};

struct PropagationOptions {
  StepScheme scheme = StepScheme::split;
  bool track_propagator = false;
  // Skip the per-step moment update and rebuild vacuum moments from the
  // propagator at the end. Needs gamma = 0 and vacuum input.
  bool moments_from_propagator = false;
  std::optional<GaussianMoments> initial;
  std::function<void(const TraceRow&)> trace;
};

struct PropagationResult {
  GaussianMoments moments;
  std::optional<BogoliubovBlocks> propagator;
};

PropagationResult propagate(DriveSource& drive, const ModeParams& mode, const KappaGrid& grid,
                            const TimeGrid& times, const Frame& frame,
                            const PropagationOptions& options = {});

PropagationResult propagate(DriveSource& drive, const ModeParams& mode, const KappaGrid& grid,
                            double t0, double t1, int n_steps, const Frame& frame,
                            const PropagationOptions& options = {});

// Largest dt of the default step rule, 0.1 / max(|omega|, |S|_max n, |R_off|_max n).
// The dispersion term is dropped for the split scheme, which treats it exactly.
double recommended_dt(const GeneratorBlocks& gen, StepScheme scheme);

}  // namespace sqz
