#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sqz/kgrid.hpp"

namespace sqz {

inline constexpr double kHbar = 1.054571817e-34;  // J s

// zeta = gamma hbar omega v^2 for a uniform region.
double gamma_to_zeta3(double gamma_nl, double omega, double v);

enum class PumpShape { gaussian, sech, lorentzian, rectangular, quartic_exponential, custom_array };

// spectral: the shape is the amplitude profile in kappa with width `bandwidth`.
// temporal: the shape is the power profile in z with width 1 / `bandwidth`.
enum class PumpDomain { spectral, temporal };

PumpShape parse_pump_shape(const std::string& name);
std::string to_string(PumpShape shape);
PumpDomain parse_pump_domain(const std::string& name);
std::string to_string(PumpDomain domain);

struct PumpSpec {
  PumpShape shape = PumpShape::gaussian;
  PumpDomain domain = PumpDomain::spectral;
  // One entry per lobe; several entries sum equal-weight lobes.
  std::vector<double> center_kappa{0.0};
  double bandwidth = 1.0;
  double mean_photon_number = 0.0;
  // Pulse position in the frame at the start time.
  double center_z = 0.0;
  // (kappa offset, amplitude) samples for custom_array, linearly interpolated.
  std::vector<std::pair<double, cplx>> custom_samples;
};

// Reads "kappa re im" rows (whitespace or comma separated, '#' comments).
std::vector<std::pair<double, cplx>> load_custom_pump(const std::string& path);

struct MeanField {
  Eigen::VectorXcd amplitudes;
  double time = 0.0;
  ModeParams mode;

  double photon_number() const { return amplitudes.squaredNorm(); }
};

// Profile of one pump shape: amplitude in kappa or power in z, peak 1 at x = 0.
// `edge` is the raised-cosine edge width for the rectangular shape, in units of x.
double shape_profile(PumpShape shape, PumpDomain domain, double x, double edge);

MeanField make_pump(const PumpSpec& spec, const KappaGrid& grid, const ModeParams& mode,
                    double t0 = 0.0, std::vector<std::string>* warnings = nullptr);

// Box of half-width `half` with raised-cosine edges of total width `edge`.
double smooth_box(double u, double half, double edge);

// Where the nonlinearity acts, in lab coordinates. A finite region is centered
// at `center` with length `length`; a zero edge means one sampling cell.
struct NonlinearRegion {
  enum class Kind { uniform, finite };
  Kind kind = Kind::uniform;
  double length = 0.0;
  double center = 0.0;
  double edge = 0.0;

  double value(double z_lab, double cell) const;
};

struct Zeta3 {
  double pppp = 0.0;
  double ssp1p2 = 0.0;
  double sp1sp1 = 0.0;
  double sp2sp2 = 0.0;
  double p1p2p1p2 = 0.0;
};

struct NonlinearCoupling {
  cplx zeta2{0.0, 0.0};
  Zeta3 zeta3;
  NonlinearRegion region;

  // s(z) on the z samples of `grid` at time t.
  Eigen::ArrayXd profile(const KappaGrid& grid, const Frame& frame, double t) const;
};

enum class Process { spdc, sfwm_single, sfwm_dual };
Process parse_process(const std::string& name);
std::string to_string(Process process);
int required_pumps(Process process);

// Phase rates applied to a pump: self * |psi|^2 + 2 * cross * sum |partner|^2.
struct KerrCoefficients {
  double self = 0.0;
  double cross = 0.0;
};

KerrCoefficients kerr_for(Process process, const NonlinearCoupling& coupling);

// One Strang step: half linear, Kerr phase in z at the midpoint, half linear.
// Partners enter through their intensity at the midpoint.
MeanField step_meanfield(const MeanField& field, const KerrCoefficients& kerr,
                         const NonlinearCoupling& coupling, std::span<const MeanField> partners,
                         const KappaGrid& grid, const Frame& frame, double dt);

// Advances all pumps of a process together.
void step_pumps(std::vector<MeanField>& pumps, Process process, const NonlinearCoupling& coupling,
                const KappaGrid& grid, const Frame& frame, double dt);

// extended: products formed on the 2n-point z grid, exact for band-limited
// pumps. collocated: products on the n-point grid, local in z by construction.
enum class DriveSampling { extended, collocated };
DriveSampling parse_drive_sampling(const std::string& name);
std::string to_string(DriveSampling sampling);

// S(kappa) and M(kappa) on the extended grid kappa_m = (m - n) dk, m < 2n,
// so that S(kappa_j + kappa_j') = sum[j + j'] and M(kappa_j - kappa_j') =
// diff[j - j' + n].
struct DriveFields {
  Eigen::VectorXcd sum_spectrum;
  Eigen::VectorXcd diff_spectrum;
  double time = 0.0;
};

DriveFields zero_drive(const KappaGrid& grid, double time);

DriveFields drive_fields(Process process, std::span<const MeanField> pumps,
                         const NonlinearCoupling& coupling, const KappaGrid& grid,
                         const Frame& frame, DriveSampling sampling);

// Supplies drive fields to the quantum propagator, one step at a time.
class DriveSource {
 public:
  virtual ~DriveSource() = default;
  // Drive at t + dt/2. Called once per step, in chronological order.
  virtual DriveFields midpoint_drive(double t, double dt) = 0;
};

class ZeroDriveSource : public DriveSource {
 public:
  explicit ZeroDriveSource(KappaGrid grid) : grid_(std::move(grid)) {}
  DriveFields midpoint_drive(double t, double dt) override { return zero_drive(grid_, t + dt / 2); }

 private:
  KappaGrid grid_;
};

// Pumps evolving through the waveguide, sampled at each step midpoint.
class PumpedWaveguide : public DriveSource {
 public:
  PumpedWaveguide(Process process, std::vector<MeanField> pumps, NonlinearCoupling coupling,
                  KappaGrid grid, Frame frame, DriveSampling sampling);

  DriveFields midpoint_drive(double t, double dt) override;

  const std::vector<MeanField>& pumps() const { return pumps_; }

 private:
  Process process_;
  std::vector<MeanField> pumps_;
  NonlinearCoupling coupling_;
  KappaGrid grid_;
  Frame frame_;
  DriveSampling sampling_;
};

}  // namespace sqz
