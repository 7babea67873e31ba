#include "sqz/kgrid.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <unsupported/Eigen/FFT>

#include "sqz/errors.hpp"

namespace sqz {

namespace {

bool is_power_of_two(int n) { return n >= 2 && (n & (n - 1)) == 0; }

void check_length(const KappaGrid& grid, Eigen::Index len) {
  if (len != grid.n_points)
    throw DimensionError("array length " + std::to_string(len) + " does not match grid size " +
                         std::to_string(grid.n_points));
}

// Centered ordering puts index 0 at n/2; a cyclic shift by n/2 maps it to the
// FFT's native ordering. For even n the shift is its own inverse.
Eigen::VectorXcd half_shift(const Eigen::VectorXcd& x) {
  const Eigen::Index n = x.size();
  const Eigen::Index h = n / 2;
  Eigen::VectorXcd out(n);
  out.head(n - h) = x.tail(n - h);
  out.tail(h) = x.head(h);
  return out;
}

}  // namespace

Eigen::ArrayXd KappaGrid::z_values() const {
  Eigen::ArrayXd z(n_points);
  for (int l = 0; l < n_points; ++l) z(l) = this->z(l);
  return z;
}

KappaGrid KappaGrid::extended() const { return make_grid(2 * n_points, delta_kappa, center_k); }

KappaGrid make_grid(int n_points, double delta_kappa, double center_k) {
  if (!is_power_of_two(n_points))
    throw ConfigError("grid size must be a power of two >= 2, got " + std::to_string(n_points));
  if (!(delta_kappa > 0) || !std::isfinite(delta_kappa))
    throw ConfigError("grid spacing delta_kappa must be positive");
  KappaGrid g;
  g.n_points = n_points;
  g.delta_kappa = delta_kappa;
  g.center_k = center_k;
  g.kappa_values.resize(n_points);
  for (int j = 0; j < n_points; ++j) g.kappa_values(j) = g.kappa(j);
  g.z_extent = 2 * std::numbers::pi / delta_kappa;
  g.delta_z = g.z_extent / n_points;
  return g;
}

void validate(const ModeParams& mode) {
  if (!(mode.v > 0) || !std::isfinite(mode.v)) throw ConfigError("group velocity must be positive");
  if (!(mode.gamma_loss >= 0) || !std::isfinite(mode.gamma_loss))
    throw ConfigError("loss rate must be non-negative");
  if (!std::isfinite(mode.v_prime)) throw ConfigError("dispersion v' must be finite");
}

double omega_of_kappa(const ModeParams& mode, double kappa) {
  return mode.v * kappa + 0.5 * mode.v_prime * kappa * kappa;
}

Eigen::ArrayXd omega_on_grid(const ModeParams& mode, const KappaGrid& grid, const Frame& frame) {
  Eigen::ArrayXd w(grid.n_points);
  for (int j = 0; j < grid.n_points; ++j) {
    const double k = grid.kappa_values(j);
    w(j) = omega_of_kappa(mode, k) - frame.v_ref * k;
  }
  return w;
}

Eigen::VectorXcd fft_z_to_kappa(const KappaGrid& grid, const Eigen::VectorXcd& field_on_z) {
  check_length(grid, field_on_z.size());
  Eigen::FFT<double> fft;
  Eigen::VectorXcd in = half_shift(field_on_z);
  Eigen::VectorXcd out(in.size());
  fft.fwd(out, in);
  return half_shift(out) / std::sqrt(static_cast<double>(grid.n_points));
}

Eigen::VectorXcd fft_kappa_to_z(const KappaGrid& grid, const Eigen::VectorXcd& field_on_kappa) {
  check_length(grid, field_on_kappa.size());
  Eigen::FFT<double> fft;
  Eigen::VectorXcd in = half_shift(field_on_kappa);
  Eigen::VectorXcd out(in.size());
  fft.inv(out, in);  // Eigen's inverse already divides by n
  return half_shift(out) * std::sqrt(static_cast<double>(grid.n_points));
}

Eigen::VectorXcd field_on_z(const KappaGrid& grid, const Eigen::VectorXcd& amplitudes) {
  return fft_kappa_to_z(grid, amplitudes) / std::sqrt(grid.delta_z);
}

Eigen::VectorXcd amplitudes_from_z(const KappaGrid& grid, const Eigen::VectorXcd& psi) {
  return fft_z_to_kappa(grid, psi) * std::sqrt(grid.delta_z);
}

Eigen::VectorXcd continuous_spectrum(const KappaGrid& grid, const Eigen::VectorXcd& f) {
  return fft_z_to_kappa(grid, f) * std::sqrt(grid.delta_z / grid.delta_kappa);
}

Eigen::VectorXcd pad_to_extended(const Eigen::VectorXcd& amplitudes) {
  const Eigen::Index n = amplitudes.size();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(2 * n);
  out.segment(n / 2, n) = amplitudes;
  return out;
}

Eigen::VectorXcd truncate_from_extended(const Eigen::VectorXcd& amplitudes) {
  const Eigen::Index n = amplitudes.size() / 2;
  return amplitudes.segment(n / 2, n);
}

}  // namespace sqz
