#pragma once

#include <random>

#include "sqz/kgrid.hpp"
#include "sqz/meanfield.hpp"
#include "sqz/qprop.hpp"

namespace sqz::testutil {

inline Eigen::MatrixXcd random_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

inline Eigen::MatrixXcd random_symmetric(int n, std::mt19937_64& rng) {
  const Eigen::MatrixXcd a = random_matrix(n, n, rng);
  return 0.5 * (a + a.transpose());
}

inline Eigen::VectorXcd random_vector(int n, std::mt19937_64& rng) {
  return random_matrix(n, 1, rng).col(0);
}

// Random drive spectra with the Hermitian symmetry of a real M~(z).
inline DriveFields random_drive(const KappaGrid& grid, double amplitude, double t,
                                std::mt19937_64& rng) {
  const int n = grid.n_points;
  DriveFields d;
  d.time = t;
  d.sum_spectrum = amplitude * random_vector(2 * n, rng);
  d.diff_spectrum = amplitude * random_vector(2 * n, rng);
  d.diff_spectrum(n) = d.diff_spectrum(n).real();
  for (int m = 1; m < n; ++m) d.diff_spectrum(2 * n - m) = std::conj(d.diff_spectrum(m));
  return d;
}

class RandomDriveSource : public DriveSource {
 public:
  RandomDriveSource(KappaGrid grid, double amplitude, unsigned seed)
      : grid_(std::move(grid)), amplitude_(amplitude), rng_(seed) {}
  DriveFields midpoint_drive(double t, double dt) override {
    return random_drive(grid_, amplitude_, t + dt / 2, rng_);
  }

 private:
  KappaGrid grid_;
  double amplitude_;
  std::mt19937_64 rng_;
};

inline PropagationOptions tracking() {
  PropagationOptions o;
  o.track_propagator = true;
  return o;
}

inline PropagationOptions rebuilding() {
  PropagationOptions o;
  o.moments_from_propagator = true;
  return o;
}

inline PropagationOptions with_scheme(StepScheme s) {
  PropagationOptions o;
  o.scheme = s;
  return o;
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace sqz::testutil
