#pragma once

#include <Eigen/Dense>

namespace sqz {

using cplx = std::complex<double>;

// Uniform detuning grid kappa_j = (j - n/2) * dk around a mode center, paired
// with the periodic z grid z_l = (l - n/2) * dz of the same size.
//
// Discrete amplitudes relate to continuum ones by b_j = b(kappa_j) * sqrt(dk);
// likewise for z samples with sqrt(dz).
struct KappaGrid {
  int n_points = 0;
  double delta_kappa = 0;
  Eigen::ArrayXd kappa_values;
  double center_k = 0;
  double z_extent = 0;
  double delta_z = 0;

  double kappa(int j) const { return (j - n_points / 2) * delta_kappa; }
  double z(int l) const { return (l - n_points / 2) * delta_z; }
  Eigen::ArrayXd z_values() const;
  double half_window() const { return 0.5 * n_points * delta_kappa; }

  // Grid with twice the points and the same spacing: it covers every sum and
  // difference kappa_j +- kappa_j' of this grid, with kappa_m = (m - n) * dk.
  KappaGrid extended() const;
};

KappaGrid make_grid(int n_points, double delta_kappa, double center_k = 0.0);

struct ModeParams {
  double v = 1.0;
  double v_prime = 0.0;
  double gamma_loss = 0.0;
  double center_k = 0.0;
  double center_omega = 0.0;
};

void validate(const ModeParams& mode);

// omega(kappa) = v kappa + v' kappa^2 / 2, measured from the mode center.
double omega_of_kappa(const ModeParams& mode, double kappa);

// A reference frame moving at v_ref. Lab position of frame coordinate x at
// time t is x + v_ref (t - t_origin); frequencies shift by -v_ref kappa.
struct Frame {
  double v_ref = 0.0;
  double t_origin = 0.0;

  double lab_position(double x, double t) const { return x + v_ref * (t - t_origin); }
};

// omega on the grid, as seen in the given frame.
Eigen::ArrayXd omega_on_grid(const ModeParams& mode, const KappaGrid& grid,
                             const Frame& frame = {});

// Unitary centered DFT pair. Index n/2 is zero on both sides.
Eigen::VectorXcd fft_z_to_kappa(const KappaGrid& grid, const Eigen::VectorXcd& field_on_z);
Eigen::VectorXcd fft_kappa_to_z(const KappaGrid& grid, const Eigen::VectorXcd& field_on_kappa);

// Continuum field psi(z_l) from discrete amplitudes b_j, and back.
Eigen::VectorXcd field_on_z(const KappaGrid& grid, const Eigen::VectorXcd& amplitudes);
Eigen::VectorXcd amplitudes_from_z(const KappaGrid& grid, const Eigen::VectorXcd& psi);

// F(kappa_j) = (2 pi)^-1/2 sum_l dz e^{-i kappa_j z_l} f(z_l): the continuum
// Fourier transform of sampled f, as used for drive spectra.
Eigen::VectorXcd continuous_spectrum(const KappaGrid& grid, const Eigen::VectorXcd& f);

// Zero-pads (n -> 2n) or truncates (2n -> n) centered amplitude vectors.
Eigen::VectorXcd pad_to_extended(const Eigen::VectorXcd& amplitudes);
Eigen::VectorXcd truncate_from_extended(const Eigen::VectorXcd& amplitudes);

}  // namespace sqz
